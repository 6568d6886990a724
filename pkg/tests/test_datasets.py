from pathlib import Path

import numpy as np
import pytest

from exhull import UsageError
from exhull.datasets import ParseError, generate, ingest, simplex_vertices, write_csv
from exhull.hull import construct_hull
from exhull.oracle import classify_all_bruteforce

from conftest import NINE

DATA = Path(__file__).resolve().parent.parent / "data" / "nine_points.csv"


def _write(tmp_path, text, name="pts.csv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_ingest_with_header():
    ps = ingest(DATA)
    assert (ps.n, ps.m) == (9, 2)
    assert ps.points.tolist() == [list(map(float, r)) for r in NINE]


def test_ingest_without_header(tmp_path):
    body = "\n".join(f"{x},{y}" for x, y in NINE) + "\n"
    assert np.array_equal(ingest(_write(tmp_path, body)).points, ingest(DATA).points)


def test_ingest_crlf_and_blank_lines(tmp_path):
    p = tmp_path / "crlf.csv"
    p.write_bytes(b"x,y\r\n1,2\r\n\r\n3,4\r\n")
    assert ingest(p).points.tolist() == [[1.0, 2.0], [3.0, 4.0]]


def test_ingest_non_numeric_names_line(tmp_path):
    p = _write(tmp_path, "x,y\n1,2\nabc,3\n")
    with pytest.raises(ParseError) as err:
        ingest(p)
    assert err.value.line == 3
    assert "line 3" in str(err.value) and "abc" in str(err.value)


def test_ingest_ragged(tmp_path):
    with pytest.raises(ParseError) as err:
        ingest(_write(tmp_path, "1,2\n3,4,5\n"))
    assert err.value.line == 2


def test_ingest_non_finite(tmp_path):
    with pytest.raises(ParseError):
        ingest(_write(tmp_path, "1,2\nnan,4\n"))


@pytest.mark.parametrize("text", ["", "x,y\n", "\n\n"])
def test_ingest_empty(tmp_path, text):
    with pytest.raises(ParseError):
        ingest(_write(tmp_path, text))


def test_ingest_dedup_warns(tmp_path, caplog):
    ps = ingest(_write(tmp_path, "0,0\n1,0\n0,0\n0,1\n"))
    assert ps.n == 3 and ps.origin_rows == (0, 1, 3)
    assert "duplicate" in caplog.text


def test_ingest_bad_format():
    with pytest.raises(UsageError):
        ingest(DATA, format="tsv")


def test_write_csv_round_trip(tmp_path):
    ps = generate("gaussian", 30, 3, 5)
    p = tmp_path / "g.csv"
    write_csv(ps, p)
    assert np.array_equal(ingest(p).points, ps.points)


@pytest.mark.parametrize("kind", ["cube", "gaussian", "sphere", "simplex-interior"])
def test_generate_deterministic(kind):
    a, b = generate(kind, 40, 3, 11), generate(kind, 40, 3, 11)
    assert np.array_equal(a.points, b.points)
    assert not np.array_equal(a.points, generate(kind, 40, 3, 12).points)


def test_generate_large_seed():
    assert generate("cube", 5, 2, 2**64 - 1).n == 5


def test_generate_errors():
    with pytest.raises(UsageError):
        generate("cube", 0, 3)
    with pytest.raises(UsageError):
        generate("cube", 5, 0)
    with pytest.raises(UsageError):
        generate("simplex-interior", 3, 3)
    with pytest.raises(UsageError):
        generate("torus", 5, 2)


def test_sphere_all_extreme():
    ps = generate("sphere", 100, 5, 7)
    assert np.allclose(np.linalg.norm(ps.points, axis=1), 1.0)
    assert classify_all_bruteforce(ps) == set(range(100))


def test_simplex_interior_four_extremes():
    ps = generate("simplex-interior", 20, 3, 0)
    assert np.array_equal(ps.points[:4], simplex_vertices(3))
    assert classify_all_bruteforce(ps) == {0, 1, 2, 3}
    assert construct_hull(ps).extreme_ids == {0, 1, 2, 3}
