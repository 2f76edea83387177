"""The checked-in table against a literal copy of the printed rows."""

from __future__ import annotations

import re
from fractions import Fraction

import pytest

from sunpi.harness.registry import ALLOWED_DEGREES, TableEntry, load_registry
from sunpi.numbers import GaussianRational, QuadraticIrrational
from sunpi.series import converges_absolutely

from conftest import DATA


def _frac(s: str) -> Fraction:
    """'\\frac{a}{b}', '\\frac98', '\\frac12' or an integer."""
    s = s.strip()
    m = re.fullmatch(r"\\frac\{(\d+)\}\{(\d+)\}", s) or re.fullmatch(r"\\frac(\d)(\d)", s)
    if m:
        return Fraction(int(m.group(1)), int(m.group(2)))
    return Fraction(int(s))


def _gauss(cell: str) -> GaussianRational:
    s = cell.strip().strip("$").strip()
    sign = 1
    if s.startswith("-"):
        sign, s = -1, s[1:].strip()
    m = re.fullmatch(r"\\frac\{i\}\{(\d+)\}", s)
    if m:
        return GaussianRational(0, Fraction(sign, int(m.group(1))))
    m = re.fullmatch(r"(\d+) i", s)
    if m:
        return GaussianRational(0, sign * int(m.group(1)))
    return GaussianRational(sign * _frac(s), 0)


def _tau(cell: str):
    s = cell.strip().strip("$").strip()
    m = re.fullmatch(r"i \\sqrt\{\\frac\{(\d+)\}\{(\d+)\}\}", s)
    if m:
        return Fraction(0), Fraction(1), Fraction(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"(\\frac\{1\}\{2\}|\\frac12) \+ \\frac\{(\d* ?)i\}\{2\} ?\\sqrt\{\\frac\{(\d+)\}\{(\d+)\}\}", s)
    assert m, f"unparsed tau cell {cell!r}"
    coeff = Fraction(int(m.group(2).strip() or 1), 2)
    return Fraction(1, 2), coeff, Fraction(int(m.group(3)), int(m.group(4)))


def _rows():
    out = []
    for line in (DATA / "table1_rows.tex").read_text().splitlines():
        cells = [c.strip() for c in line.rstrip("\\ ").split("&")]
        x, y, tau, p, ref, cross = cells
        pm = re.fullmatch(r"\$(\d+)(\^\\star)?\$", p)
        out.append({
            "id": re.fullmatch(r"\((3\.\d+)\)", ref).group(1),
            "x": _gauss(x), "y": _gauss(y), "tau": _tau(tau),
            "p": int(pm.group(1)), "starred": bool(pm.group(2)), "cross": cross,
        })
    return out


ROWS = _rows()
REGISTRY = load_registry()


def test_seventeen_rows():
    assert len(ROWS) == 17
    assert list(REGISTRY) == [r["id"] for r in ROWS]


@pytest.mark.parametrize("row", ROWS, ids=[r["id"] for r in ROWS])
def test_transcription(row):
    e = REGISTRY[row["id"]]
    assert e.x == row["x"]
    assert e.y == row["y"]
    assert e.tau_printed == row["tau"]
    assert e.tau == QuadraticIrrational.from_radical(*row["tau"])
    assert e.p == row["p"]
    assert e.starred == row["starred"]
    if row["cross"].startswith("(IV"):
        assert e.cross_ref == row["cross"].strip("()")
    else:
        assert e.cross_ref == "WZ (33)"


@pytest.mark.parametrize("eid", list(REGISTRY))
def test_entries_converge(eid):
    e = REGISTRY[eid]
    assert converges_absolutely(e.x, e.y).converges
    assert e.p in ALLOWED_DEGREES


def test_headline_entry():
    e = REGISTRY["3.24"]
    assert (e.x, e.y, e.p) == (GaussianRational(Fraction(1, 480)), GaussianRational(8), 5)
    assert e.tau == QuadraticIrrational(Fraction(1, 2), Fraction(3, 10), 5)


def test_bad_degree_rejected():
    with pytest.raises(ValueError):
        TableEntry("x", GaussianRational(1), GaussianRational(1),
                   QuadraticIrrational(0, 1, 1), 11, False, "")
