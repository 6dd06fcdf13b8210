"""Monomial (generalized permutation) matrices and exact dense matrices.

A :class:`MonomialMatrix` sends basis vector ``e_x`` to ``scale[x] * e_{perm[x]}``.
Products, inverses and adjoints are O(dim).  :class:`DenseMatrix` is the
general matrix type used by oracles, the standard representation and rank
computations; it stores only nonzero entries but behaves as a full grid.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DimMismatch, EvalAtZero
from .scalars import ONE, ZERO, GaussianRational, Scalar, as_gaussian, as_scalar

__all__ = [
    "MonomialMatrix",
    "DenseMatrix",
    "mm_compose",
    "mm_inverse",
    "mm_adjoint",
    "mm_equal",
    "mm_to_dense",
    "dense_rank",
    "exact_rank",
]

Vector = Dict[int, Scalar]


@dataclass(frozen=True)
class MonomialMatrix:
    dim: int
    perm: Tuple[int, ...]
    scale: Tuple[Scalar, ...]

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        scale = tuple(as_scalar(s) for s in self.scale)
        if len(perm) != self.dim or len(scale) != self.dim:
            raise DimMismatch(f"perm/scale lengths {len(perm)}/{len(scale)} do not match dim {self.dim}")
        if sorted(perm) != list(range(self.dim)):
            raise ValueError(f"perm is not a bijection on 0..{self.dim - 1}: {perm}")
        for x, s in enumerate(scale):
            if s.is_zero():
                raise ValueError(f"scale for column {x} is zero")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "scale", scale)

    @classmethod
    def identity(cls, dim: int) -> "MonomialMatrix":
        return cls(dim, tuple(range(dim)), (ONE,) * dim)

    @classmethod
    def scalar(cls, dim: int, c) -> "MonomialMatrix":
        return cls(dim, tuple(range(dim)), (as_scalar(c),) * dim)

    def is_identity(self) -> bool:
        return all(p == x for x, p in enumerate(self.perm)) and all(s == ONE for s in self.scale)

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        return mm_compose(self, other)

    def inverse(self) -> "MonomialMatrix":
        return mm_inverse(self)

    def adjoint(self) -> "MonomialMatrix":
        return mm_adjoint(self)

    def apply(self, v: Mapping[int, Scalar]) -> Vector:
        """Apply to a sparse vector ``{basis index: coefficient}``."""
        out: Vector = {}
        for x, c in v.items():
            c = as_scalar(c)
            if c.is_zero():
                continue
            out[self.perm[x]] = self.scale[x] * c
        return out

    def entry(self, row: int, col: int) -> Scalar:
        return self.scale[col] if self.perm[col] == row else ZERO

    def to_dense(self) -> "DenseMatrix":
        return mm_to_dense(self)

    def specialize(self, at) -> "MonomialMatrix":
        """Substitute ``t := at`` in every scale."""
        at = as_gaussian(at)
        return MonomialMatrix(self.dim, self.perm, tuple(Scalar.const(s.eval(at)) for s in self.scale))

    def fixed_points(self) -> List[int]:
        return [x for x, p in enumerate(self.perm) if p == x]


def _check_dims(a, b):
    if a.dim != b.dim:
        raise DimMismatch(f"dimension mismatch: {a.dim} vs {b.dim}")


def mm_compose(a: MonomialMatrix, b: MonomialMatrix) -> MonomialMatrix:
    """Matrix product ``a @ b`` (``b`` acts first)."""
    _check_dims(a, b)
    perm = tuple(a.perm[p] for p in b.perm)
    scale = tuple(sb * a.scale[p] for sb, p in zip(b.scale, b.perm))
    return MonomialMatrix(a.dim, perm, scale)


def mm_inverse(a: MonomialMatrix) -> MonomialMatrix:
    # a e_x = s_x e_{p(x)}  =>  a^-1 e_{p(x)} = s_x^-1 e_x
    perm = [0] * a.dim
    scale = [ONE] * a.dim
    for x, (p, s) in enumerate(zip(a.perm, a.scale)):
        perm[p] = x
        scale[p] = s.inverse()
    return MonomialMatrix(a.dim, tuple(perm), tuple(scale))


def mm_adjoint(a: MonomialMatrix) -> MonomialMatrix:
    """Conjugate transpose in the orthonormal basis."""
    perm = [0] * a.dim
    scale = [ONE] * a.dim
    for x, (p, s) in enumerate(zip(a.perm, a.scale)):
        perm[p] = x
        scale[p] = s.conj()
    return MonomialMatrix(a.dim, tuple(perm), tuple(scale))


def mm_equal(a: MonomialMatrix, b: MonomialMatrix) -> bool:
    _check_dims(a, b)
    return a.perm == b.perm and a.scale == b.scale


def mm_to_dense(a: MonomialMatrix) -> "DenseMatrix":
    return DenseMatrix(a.dim, a.dim, {(p, x): s for x, (p, s) in enumerate(zip(a.perm, a.scale))})


class DenseMatrix:
    """Exact ``nrows x ncols`` matrix of :class:`Scalar` entries.

    Only nonzero entries are stored; indexing a missing entry returns zero.
    """

    __slots__ = ("nrows", "ncols", "_entries")

    def __init__(self, nrows: int, ncols: Optional[int] = None, entries: Optional[Mapping[Tuple[int, int], object]] = None):
        ncols = nrows if ncols is None else ncols
        self.nrows = nrows
        self.ncols = ncols
        store = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i},{j}) outside {nrows}x{ncols}")
            v = as_scalar(v)
            if not v.is_zero():
                store[(i, j)] = v
        self._entries = store

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "DenseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise DimMismatch("ragged rows")
            for j, v in enumerate(row):
                entries[(i, j)] = v
        return cls(nrows, ncols, entries)

    @classmethod
    def identity(cls, dim: int) -> "DenseMatrix":
        return cls(dim, dim, {(i, i): ONE for i in range(dim)})

    @classmethod
    def zero(cls, nrows: int, ncols: Optional[int] = None) -> "DenseMatrix":
        return cls(nrows, ncols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def dim(self) -> int:
        if self.nrows != self.ncols:
            raise DimMismatch(f"matrix is not square: {self.shape}")
        return self.nrows

    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return self._entries.get((i, j), ZERO)

    def items(self):
        """Nonzero entries as ``((row, col), value)`` pairs."""
        return self._entries.items()

    def nonzero_count(self) -> int:
        return len(self._entries)

    def rows(self) -> List[List[Scalar]]:
        grid = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self._entries.items():
            grid[i][j] = v
        return grid

    def row_dicts(self) -> List[Dict[int, Scalar]]:
        out: List[Dict[int, Scalar]] = [dict() for _ in range(self.nrows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self._entries.items()})

    def conj_transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.ncols, self.nrows, {(j, i): v.conj() for (i, j), v in self._entries.items()})

    def map(self, fn) -> "DenseMatrix":
        return DenseMatrix(self.nrows, self.ncols, {ij: fn(v) for ij, v in self._entries.items()})

    def specialize(self, at) -> "DenseMatrix":
        at = as_gaussian(at)
        return self.map(lambda s: Scalar.const(s.eval(at)))

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    __hash__ = None

    def __add__(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.shape != other.shape:
            raise DimMismatch(f"{self.shape} vs {other.shape}")
        acc = dict(self._entries)
        for ij, v in other._entries.items():
            acc[ij] = acc.get(ij, ZERO) + v
        return DenseMatrix(self.nrows, self.ncols, acc)

    def __neg__(self):
        return self.map(lambda v: -v)

    def __sub__(self, other: "DenseMatrix") -> "DenseMatrix":
        return self + (-other)

    def scaled(self, c) -> "DenseMatrix":
        c = as_scalar(c)
        return self.map(lambda v: v * c)

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.ncols != other.nrows:
            raise DimMismatch(f"cannot multiply {self.shape} by {other.shape}")
        right = other.row_dicts()
        acc: Dict[Tuple[int, int], Scalar] = {}
        for (i, k), a in self._entries.items():
            for j, b in right[k].items():
                acc[(i, j)] = acc.get((i, j), ZERO) + a * b
        return DenseMatrix(self.nrows, other.ncols, acc)

    def apply(self, v: Mapping[int, object]) -> Vector:
        out: Vector = {}
        cols = defaultdict(list)
        for (i, j), a in self._entries.items():
            cols[j].append((i, a))
        for j, c in v.items():
            c = as_scalar(c)
            for i, a in cols.get(j, ()):
                out[i] = out.get(i, ZERO) + a * c
        return {i: c for i, c in out.items() if not c.is_zero()}

    def __repr__(self):
        return f"DenseMatrix({self.nrows}x{self.ncols}, nnz={len(self._entries)})"


# -- exact rank -----------------------------------------------------------

def exact_rank(rows: Iterable[Mapping[int, object]]) -> int:
    """Rank of a sparse matrix given as row dicts ``{col: value}``.

    Entries may be any exact integral-domain elements supporting ``*``, ``-``
    and ``is_zero()`` (``Scalar`` or ``GaussianRational``).  Elimination is
    fraction-free (``r <- p*r - a*row_p``) with a Markowitz-style pivot choice
    to keep fill-in low on the very sparse matrices produced here.
    """
    active: Dict[int, Dict[int, object]] = {}
    col_rows: Dict[int, set] = defaultdict(set)
    for rid, row in enumerate(rows):
        r = {c: v for c, v in row.items() if not v.is_zero()}
        if r:
            active[rid] = r
            for c in r:
                col_rows[c].add(rid)
    rank = 0
    while active:
        prow_id = min(active, key=lambda rid: (len(active[rid]), rid))
        prow = active.pop(prow_id)
        pcol = min(prow, key=lambda c: (len(col_rows[c]), c))
        pval = prow[pcol]
        for c in prow:
            col_rows[c].discard(prow_id)
        for rid in list(col_rows[pcol]):
            row = active[rid]
            a = row[pcol]
            new = {c: v * pval for c, v in row.items()}
            for c, pv in prow.items():
                val = new.get(c)
                val = -(pv * a) if val is None else val - pv * a
                if val.is_zero():
                    if c in new:
                        del new[c]
                else:
                    new[c] = val
            for c in row:
                if c not in new:
                    col_rows[c].discard(rid)
            for c in new:
                col_rows[c].add(rid)
            if new:
                active[rid] = new
            else:
                del active[rid]
        rank += 1
    return rank


def dense_rank(a: Union[DenseMatrix, MonomialMatrix], at=None) -> int:
    """Exact rank of ``a``.

    With ``at`` given, ``t`` is specialized to that Gaussian rational first and
    elimination runs over the Gaussian rationals.  With ``at=None`` the rank is
    taken over the fraction field of the Laurent ring (generic ``t``).
    """
    if isinstance(a, MonomialMatrix):
        a = a.to_dense()
    rows = a.row_dicts()
    if at is None:
        return exact_rank(rows)
    at = as_gaussian(at)
    if at.is_zero():
        raise EvalAtZero("rank evaluation point must be nonzero")
    return exact_rank({c: v.eval(at) for c, v in row.items()} for row in rows)
