"""Hand-transcribed fixtures for the n=5, m=3 generators."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List

from .monomial import DenseMatrix
from .orbit import format_tuple
from .rep import build_phi_m
from .scalars import parse_scalar
from .serialize import render_row

FIXTURE = "phi_3_n5_golden.json"


def load_fixture() -> dict:
    with resources.files("braidrep").joinpath("data").joinpath(FIXTURE).open() as fh:
        return json.load(fh)


def fixture_matrices() -> Dict[int, DenseMatrix]:
    data = load_fixture()
    out = {}
    for k, rows in data["generators"].items():
        grid = [[parse_scalar(v) for v in row.strip("[]").split(",")] for row in rows]
        out[int(k)] = DenseMatrix.from_rows(grid)
    return out


@dataclass
class GoldenResult:
    basis_matches: bool
    mismatches: Dict[int, List[int]] = field(default_factory=dict)  # generator -> 1-based rows

    @property
    def passed(self) -> bool:
        return self.basis_matches and not self.mismatches


def golden_check() -> GoldenResult:
    """Compare rendered rows of the built generators with the fixture, byte for byte."""
    data = load_fixture()
    rep = build_phi_m(data["n"], data["m"])
    basis_ok = [format_tuple(x) for x in rep.basis] == data["basis"]
    mismatches = {}
    for k, rows in data["generators"].items():
        built = [render_row(r) for r in rep.generator(int(k)).to_dense().rows()]
        bad = [i + 1 for i, (a, b) in enumerate(zip(built, rows)) if a != b]
        if bad or len(built) != len(rows):
            mismatches[int(k)] = bad
    return GoldenResult(basis_ok, mismatches)
