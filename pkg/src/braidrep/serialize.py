"""JSON / CSV / text encodings for scalars, matrices, representations and certificates."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Optional, Union

from .analysis import CorankResult, IrreducibilityCertificate
from .errors import ScalarParseError, ZeroQEntry
from .monomial import DenseMatrix, MonomialMatrix
from .orbit import format_tuple, parse_tuple
from .rep import QTable, Representation, build_phi_m, build_standard_orbit
from .scalars import parse_scalar

__all__ = [
    "render_row",
    "dense_to_json",
    "dense_to_csv",
    "dense_to_text",
    "monomial_to_json",
    "representation_to_json",
    "representation_from_json",
    "qtable_to_json",
    "qtable_from_json",
    "load_qtable",
    "certificate_to_json",
    "corank_to_json",
    "dumps",
]


def render_row(row) -> str:
    return "[" + ", ".join(str(v) for v in row) + "]"


def dense_to_json(a: DenseMatrix) -> list:
    return [[str(v) for v in row] for row in a.rows()]


def dense_to_csv(a: DenseMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in a.rows():
        writer.writerow(str(v) for v in row)
    return buf.getvalue()


def dense_to_text(a: DenseMatrix) -> str:
    grid = [[str(v) for v in row] for row in a.rows()]
    width = max((len(s) for row in grid for s in row), default=1)
    return "\n".join(" ".join(s.rjust(width) for s in row) for row in grid)


def monomial_to_json(g: MonomialMatrix) -> dict:
    return {"perm": list(g.perm), "scale": [str(s) for s in g.scale]}


def qtable_to_json(q: QTable) -> dict:
    return {f"{a},{b}": str(q[(a, b)]) for a, b in q}


def qtable_from_json(data: dict) -> QTable:
    """Parse ``{"a,b": "<scalar>"}``; zero entries are rejected."""
    entries = {}
    for key, text in data.items():
        try:
            a, b = (int(p) for p in key.split(","))
        except ValueError:
            raise ValueError(f"q-table key {key!r} is not of the form 'a,b'") from None
        try:
            value = parse_scalar(str(text))
        except ScalarParseError as exc:
            raise ValueError(f"q-table entry {key!r}: {exc}") from None
        if value.is_zero():
            raise ZeroQEntry(a, b)
        entries[(a, b)] = value
    return QTable(entries)


def load_qtable(path: Union[str, Path]) -> QTable:
    with open(path) as fh:
        return qtable_from_json(json.load(fh))


def representation_to_json(rep: Representation) -> dict:
    out = {
        "n": rep.n,
        "seed": format_tuple(rep.seed),
        "basis": [format_tuple(x) for x in rep.basis],
        "q_table": qtable_to_json(rep.q),
        "generators": [monomial_to_json(g) for g in rep.generators],
    }
    if rep.family:
        out["family"] = list(rep.family)
    return out


def representation_from_json(data: dict) -> Representation:
    """Rebuild a representation; stored generators that differ from the
    q-table construction are kept as overrides."""
    seed = parse_tuple(data["seed"])
    q = qtable_from_json(data["q_table"])
    family = tuple(data["family"]) if data.get("family") else None
    if family and family[0] == "phi_m":
        rep = build_phi_m(family[1], family[2])
    elif family and family[0] == "standard":
        rep = build_standard_orbit(family[1])
    else:
        rep = Representation(seed, q)
    if rep.seed != seed or rep.q != q:
        rep = Representation(seed, q, family=family)
    if [format_tuple(x) for x in rep.basis] != list(data["basis"]):
        raise ValueError("stored basis does not match the orbit of the seed")
    for k, g in enumerate(data.get("generators", []), start=1):
        stored = MonomialMatrix(rep.dim, tuple(g["perm"]), tuple(parse_scalar(s) for s in g["scale"]))
        if stored != rep.generator(k):
            rep = rep.with_generator(k, stored)
    return rep


def corank_to_json(c: CorankResult) -> dict:
    return {
        "per_k": {str(k): v for k, v in c.measured.items()},
        "closed_form": c.closed_form,
        "k_independent": c.k_independent,
        "dense_check": {p: {str(k): v for k, v in per.items()} for p, per in c.dense.items()},
        "dense_agrees": c.dense_agrees,
    }


def _vector_to_json(v: dict) -> dict:
    return {str(i): str(c) for i, c in sorted(v.items())}


def certificate_to_json(cert: IrreducibilityCertificate, corank: Optional[CorankResult] = None) -> dict:
    out = {"verdict": cert.verdict, "method": cert.method}
    if cert.evaluation_point is not None:
        out["evaluation_point"] = str(cert.evaluation_point)
    if cert.commutant_dim is not None:
        out["commutant_dim"] = cert.commutant_dim
    if cert.witness is not None:
        w = {"kind": cert.witness["kind"], "vectors": [_vector_to_json(v) for v in cert.witness["vectors"]]}
        if "eigenvalues" in cert.witness:
            w["eigenvalues"] = {str(k): str(v) for k, v in cert.witness["eigenvalues"].items()}
        out["witness"] = w
    if cert.details:
        out["details"] = _jsonable(cert.details)
    if corank is not None:
        out["corank"] = corank_to_json(corank)
    return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        if obj and all(isinstance(v, int) for v in obj):
            return format_tuple(obj)
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
