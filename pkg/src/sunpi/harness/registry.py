"""The checked-in table of modular parametrizations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List

from ..numbers import GaussianRational, QuadraticIrrational, _frac
from ..series import SeriesPoint

ALLOWED_DEGREES = (3, 5, 7, 13, 17, 19)


@dataclass(frozen=True)
class TableEntry:
    id: str
    x: GaussianRational
    y: GaussianRational
    tau: QuadraticIrrational
    p: int
    starred: bool
    cross_ref: str
    # tau exactly as printed: re + coeff * i * sqrt(radicand)
    tau_printed: tuple = ()

    def __post_init__(self):
        if self.p not in ALLOWED_DEGREES:
            raise ValueError(f"entry {self.id}: degree {self.p} not in {ALLOWED_DEGREES}")

    @property
    def point(self) -> SeriesPoint:
        return SeriesPoint(self.x, self.y)

    @classmethod
    def from_json(cls, d: dict) -> "TableEntry":
        t = d["tau"]
        re, coeff, rad = _frac(t["re"]), _frac(t["coeff"]), _frac(t["radicand"])
        return cls(
            id=str(d["id"]),
            x=GaussianRational.from_json(d["x"]),
            y=GaussianRational.from_json(d["y"]),
            tau=QuadraticIrrational.from_radical(re, coeff, rad),
            p=int(d["p"]),
            starred=bool(d["starred"]),
            cross_ref=str(d["cross_ref"]),
            tau_printed=(re, coeff, rad),
        )


def _load_raw() -> dict:
    text = resources.files("sunpi.harness").joinpath("data/table1.json").read_text()
    return json.loads(text)


def load_registry() -> Dict[str, TableEntry]:
    doc = _load_raw()
    out: Dict[str, TableEntry] = {}
    for row in doc["entries"]:
        e = TableEntry.from_json(row)
        if e.id in out:
            raise ValueError(f"duplicate registry id {e.id}")
        out[e.id] = e
    return out


def entry_ids() -> List[str]:
    return list(load_registry())


HEADLINE_ENTRY = "3.24"
