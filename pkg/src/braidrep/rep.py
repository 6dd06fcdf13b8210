"""Braid group representations on orbit spaces.

Given a seed tuple and a q-table assigning a nonzero scalar to every ordered
pair of seed values, generator ``k`` (1-based) acts on the orbit basis by

    tau_k . v_x = q(x_k, x_{k+1}) * v_{sigma_k(x)}

so every generator image is a monomial matrix.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import BadRange, GeneratorOutOfRange, MissingQEntry, ParseError, ZeroGenerator, ZeroQEntry
from .monomial import DenseMatrix, MonomialMatrix, mm_adjoint, mm_compose, mm_equal, mm_inverse
from .orbit import OrbitIndex, ValueTuple, as_tuple, orbit_generate, sigma_k
from .scalars import ONE, T, Scalar, as_scalar

__all__ = [
    "QTable",
    "Representation",
    "BraidWord",
    "RelationCheck",
    "RelationReport",
    "GeneratorAdjointness",
    "build_generic",
    "build_phi_m",
    "build_standard_orbit",
    "build_standard",
    "phi_m_qtable",
    "standard_qtable",
    "verify_braid_relations",
    "classify_adjointness",
    "parse_braid_word",
    "evaluate_word",
    "transport_word",
]

Pair = Tuple[int, int]


class QTable(Mapping[Pair, Scalar]):
    """Immutable map ``(a, b) -> q_{a,b}`` over ordered value pairs."""

    def __init__(self, entries: Union[Mapping[Pair, object], Iterable[Tuple[Pair, object]]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        self._entries: Dict[Pair, Scalar] = {}
        for (a, b), v in items:
            self._entries[(int(a), int(b))] = as_scalar(v)

    @classmethod
    def from_function(cls, values: Iterable[int], fn: Callable[[int, int], object]) -> "QTable":
        values = sorted(set(values))
        return cls({(a, b): fn(a, b) for a in values for b in values})

    @classmethod
    def constant(cls, values: Iterable[int], c) -> "QTable":
        return cls.from_function(values, lambda a, b: c)

    def __getitem__(self, pair: Pair) -> Scalar:
        try:
            return self._entries[pair]
        except KeyError:
            raise MissingQEntry(*pair) from None

    def __iter__(self):
        return iter(sorted(self._entries))

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if isinstance(other, QTable):
            return self._entries == other._entries
        return NotImplemented

    __hash__ = None

    def validate(self, values: Iterable[int]) -> None:
        """Require a nonzero entry for every ordered pair of ``values``."""
        values = sorted(set(values))
        for a in values:
            for b in values:
                if (a, b) not in self._entries:
                    raise MissingQEntry(a, b)
                if self._entries[(a, b)].is_zero():
                    raise ZeroQEntry(a, b)

    def __repr__(self):
        body = ", ".join(f"({a},{b}): {v}" for (a, b), v in sorted(self._entries.items()))
        return f"QTable({{{body}}})"


def phi_m_qtable() -> QTable:
    """``q = 1`` on equal pairs and ``t`` on unequal pairs of 0/1 values."""
    return QTable.from_function((0, 1), lambda a, b: ONE if a == b else T)


def standard_qtable() -> QTable:
    """``q(a, b) = 1 + (t - 1) * b`` on 0/1 values."""
    return QTable.from_function((0, 1), lambda a, b: ONE + (T - ONE) * b)


class Representation:
    """Generator images of a braid group representation on an orbit space.

    Generators are built on first access and cached.  Use
    :meth:`with_generator` to obtain a copy with one image replaced (e.g. to
    exercise the relation verifier on a non-representation).
    """

    def __init__(self, seed: Sequence[int], q: QTable, *, family: Optional[Tuple] = None,
                 orbit: Optional[OrbitIndex] = None,
                 overrides: Optional[Mapping[int, MonomialMatrix]] = None):
        self.seed: ValueTuple = as_tuple(seed)
        self.orbit: OrbitIndex = orbit if orbit is not None else orbit_generate(self.seed)
        self.q = q
        self.family = family
        self._cache: Dict[int, MonomialMatrix] = dict(overrides or {})
        self._overridden = frozenset(self._cache)

    @property
    def n(self) -> int:
        return len(self.seed)

    @property
    def dim(self) -> int:
        return self.orbit.dim

    @property
    def basis(self) -> Tuple[ValueTuple, ...]:
        return self.orbit.basis

    @property
    def is_modified(self) -> bool:
        return bool(self._overridden)

    def generator(self, k: int) -> MonomialMatrix:
        """Image of ``tau_k`` (1-based ``k``)."""
        if not 1 <= k <= self.n - 1:
            raise GeneratorOutOfRange(f"generator {k} outside 1..{self.n - 1}")
        g = self._cache.get(k)
        if g is None:
            rank = self.orbit.rank
            perm = []
            scale = []
            for x in self.orbit.basis:
                perm.append(rank[sigma_k(x, k)])
                scale.append(self.q[(x[k - 1], x[k])])
            g = MonomialMatrix(self.dim, tuple(perm), tuple(scale))
            self._cache[k] = g
        return g

    @property
    def generators(self) -> Tuple[MonomialMatrix, ...]:
        return tuple(self.generator(k) for k in range(1, self.n))

    def q_at(self, x: Sequence[int], k: int) -> Scalar:
        """The scalar ``q(x_k, x_{k+1})``."""
        return self.q[(x[k - 1], x[k])]

    def with_generator(self, k: int, matrix: MonomialMatrix) -> "Representation":
        overrides = {j: g for j, g in self._cache.items() if j in self._overridden}
        overrides[k] = matrix
        return Representation(self.seed, self.q, family=self.family, orbit=self.orbit, overrides=overrides)

    def __repr__(self):
        fam = f", family={self.family}" if self.family else ""
        return f"Representation(n={self.n}, seed={self.seed}, dim={self.dim}{fam})"


def build_generic(seed: Sequence[int], q: Union[QTable, Mapping[Pair, object]]) -> Representation:
    seed = as_tuple(seed)
    if not isinstance(q, QTable):
        q = QTable(q)
    q.validate(seed)
    return Representation(seed, q)


def build_phi_m(n: int, m: int) -> Representation:
    """The family member with ``m`` ones followed by ``n - m`` zeros."""
    if n < 2 or not 1 <= m < n:
        raise BadRange(f"phi_m needs n >= 2 and 1 <= m < n, got n={n}, m={m}")
    seed = (1,) * m + (0,) * (n - m)
    q = phi_m_qtable()
    q.validate(seed)
    return Representation(seed, q, family=("phi_m", n, m))


def build_standard_orbit(n: int) -> Representation:
    """Orbit of ``(1, 0, ..., 0)`` with ``q(a, b) = 1 + (t - 1) b``."""
    if n < 2:
        raise BadRange(f"n must be >= 2, got {n}")
    seed = (1,) + (0,) * (n - 1)
    q = standard_qtable()
    q.validate(seed)
    return Representation(seed, q, family=("standard", n))


def build_standard(n: int) -> List[DenseMatrix]:
    """Dense matrices of the classical ``n``-dimensional representation.

    ``rho(tau_k)`` is the identity except for the block ``[[0, t], [1, 0]]``
    on rows/columns ``k, k+1`` (1-based).
    """
    if n < 2:
        raise BadRange(f"n must be >= 2, got {n}")
    mats = []
    for k in range(1, n):
        entries = {(i, i): ONE for i in range(n) if i not in (k - 1, k)}
        entries[(k - 1, k)] = T
        entries[(k, k - 1)] = ONE
        mats.append(DenseMatrix(n, n, entries))
    return mats


# -- relation verification ------------------------------------------------

@dataclass
class RelationCheck:
    kind: str  # "commute" or "braid"
    k: int
    j: int
    passed: bool
    witness: Optional[ValueTuple] = None
    lhs_image: Optional[ValueTuple] = None
    rhs_image: Optional[ValueTuple] = None
    lhs_scalar: Optional[Scalar] = None
    rhs_scalar: Optional[Scalar] = None

    @property
    def label(self) -> str:
        k, j = self.k, self.j
        if self.kind == "commute":
            return f"t{k} t{j} = t{j} t{k}"
        return f"t{k} t{j} t{k} = t{j} t{k} t{j}"


@dataclass
class RelationReport:
    n: int
    checks: List[RelationCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[RelationCheck]:
        return [c for c in self.checks if not c.passed]

    def __bool__(self):
        return self.passed


def _compare(rep: Representation, kind: str, k: int, j: int, lhs: MonomialMatrix, rhs: MonomialMatrix) -> RelationCheck:
    if mm_equal(lhs, rhs):
        return RelationCheck(kind, k, j, True)
    for x in range(rep.dim):
        if lhs.perm[x] != rhs.perm[x] or lhs.scale[x] != rhs.scale[x]:
            basis = rep.basis
            return RelationCheck(kind, k, j, False, witness=basis[x],
                                 lhs_image=basis[lhs.perm[x]], rhs_image=basis[rhs.perm[x]],
                                 lhs_scalar=lhs.scale[x], rhs_scalar=rhs.scale[x])
    raise AssertionError("unequal matrices without a differing column")


def verify_braid_relations(rep: Representation) -> RelationReport:
    """Check every defining relation of ``B_n`` by exact monomial equality.

    Failures carry a witness basis tuple together with where each side sends
    it and the scalar each side picks up.
    """
    report = RelationReport(rep.n)
    gens = rep.generators
    for k, j in combinations(range(1, rep.n), 2):
        if j - k > 1:
            a, b = gens[k - 1], gens[j - 1]
            report.checks.append(_compare(rep, "commute", k, j, mm_compose(a, b), mm_compose(b, a)))
    for k in range(1, rep.n - 1):
        a, b = gens[k - 1], gens[k]
        lhs = mm_compose(a, mm_compose(b, a))
        rhs = mm_compose(b, mm_compose(a, b))
        report.checks.append(_compare(rep, "braid", k, k + 1, lhs, rhs))
    return report


# -- adjointness ----------------------------------------------------------

@dataclass
class GeneratorAdjointness:
    k: int
    self_adjoint: bool
    unitary: bool
    # oracle results from the matrix adjoint
    oracle_self_adjoint: bool
    oracle_unitary: bool

    @property
    def consistent(self) -> bool:
        return self.self_adjoint == self.oracle_self_adjoint and self.unitary == self.oracle_unitary

    @property
    def label(self) -> str:
        if self.self_adjoint and self.unitary:
            return "self_adjoint+unitary"
        if self.self_adjoint:
            return "self_adjoint"
        if self.unitary:
            return "unitary"
        return "neither"


def classify_adjointness(rep: Representation) -> List[GeneratorAdjointness]:
    """Per-generator self-adjoint / unitary classification.

    Decided from the q-table over the value pairs that actually occur at
    positions ``(k, k+1)``: self-adjoint iff ``q(b,a) = conj(q(a,b))``, unitary
    iff ``q(a,b) conj(q(a,b)) = 1``.  Each verdict is checked against the
    matrix adjoint.
    """
    out = []
    for k in range(1, rep.n):
        g = rep.generator(k)
        pairs = {(x[k - 1], x[k]) for x in rep.basis}
        if rep.is_modified:
            # q-table no longer describes the matrix; classify per column
            sa = mm_equal(mm_adjoint(g), g)
            un = mm_compose(mm_adjoint(g), g).is_identity()
        else:
            sa = all(rep.q[(b, a)] == rep.q[(a, b)].conj() for a, b in pairs)
            un = all(rep.q[(a, b)].abs_sq() == ONE for a, b in pairs)
        adj = mm_adjoint(g)
        out.append(GeneratorAdjointness(
            k=k,
            self_adjoint=sa,
            unitary=un,
            oracle_self_adjoint=mm_equal(adj, g),
            oracle_unitary=mm_compose(adj, g).is_identity(),
        ))
    return out


# -- braid words ----------------------------------------------------------

class BraidWord(tuple):
    """Sequence of signed generator indices; ``-k`` is the inverse of ``tau_k``."""

    def __new__(cls, letters: Iterable[int] = ()):
        letters = tuple(int(x) for x in letters)
        if any(x == 0 for x in letters):
            raise ZeroGenerator("generator index 0 is not allowed")
        return super().__new__(cls, letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(-x for x in reversed(self))

    def __add__(self, other):
        return BraidWord(tuple(self) + tuple(other))

    def __str__(self):
        return " ".join(str(x) for x in self)

    def __repr__(self):
        return f"BraidWord({list(self)})"


def parse_braid_word(text: str) -> BraidWord:
    """Parse whitespace-separated signed integers with optional ``^power``.

    ``"1 -2 3^-2"`` gives ``[1, -2, -3, -3]``.
    """
    letters: List[int] = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        start = pos
        while pos < n and not text[pos].isspace():
            pos += 1
        token = text[start:pos]
        base, caret, power = token.partition("^")
        try:
            g = int(base)
        except ValueError:
            raise ParseError(f"bad generator {base!r}", text, start) from None
        if not base.lstrip("+-").isdigit():
            raise ParseError(f"bad generator {base!r}", text, start)
        if g == 0:
            raise ZeroGenerator("generator index 0 is not allowed", text, start)
        p = 1
        if caret:
            if not power.lstrip("+-").isdigit():
                raise ParseError(f"bad exponent {power!r}", text, start + len(base) + 1)
            p = int(power)
        sign = 1 if p > 0 else -1
        letters.extend([g * sign] * abs(p))
    return BraidWord(letters)


def evaluate_word(rep: Representation, word: Union[BraidWord, str, Sequence[int]]) -> MonomialMatrix:
    """Matrix of a braid word: letters multiply left to right as written.

    The word ``a b`` evaluates to ``phi(tau_a) @ phi(tau_b)``, so the last
    letter acts first on a column vector.
    """
    if isinstance(word, str):
        word = parse_braid_word(word)
    word = BraidWord(word)
    inverses: Dict[int, MonomialMatrix] = {}
    result = MonomialMatrix.identity(rep.dim)
    for letter in word:
        k = abs(letter)
        if k > rep.n - 1:
            raise GeneratorOutOfRange(f"generator {letter} outside 1..{rep.n - 1}")
        g = rep.generator(k)
        if letter < 0:
            if k not in inverses:
                inverses[k] = mm_inverse(g)
            g = inverses[k]
        result = mm_compose(result, g)
    return result


def transport_word(rep: Representation, x: Sequence[int], y: Sequence[int]) -> BraidWord:
    """A positive word whose image sends ``v_x`` to a multiple of ``v_y``.

    Bubble-sorts ``x`` into ``y`` by adjacent swaps; the swaps applied first
    appear last in the word.
    """
    cur = list(x)
    target = list(y)
    if sorted(cur) != sorted(target):
        raise ValueError(f"{tuple(x)} and {tuple(y)} are not in the same orbit")
    applied: List[int] = []
    for pos in range(len(target)):
        if cur[pos] == target[pos]:
            continue
        src = cur.index(target[pos], pos)
        for i in range(src, pos, -1):
            cur[i - 1], cur[i] = cur[i], cur[i - 1]
            applied.append(i)  # sigma_i swaps 1-based positions i, i+1
    return BraidWord(reversed(applied))
