"""Irreducibility certificates, commutant dimension and corank.

Irreducibility is decided in stages: a one-dimensional space is trivially
irreducible; self-adjoint generators whose squared-modulus profiles separate
every pair of basis vectors give irreducibility for generic ``t``; otherwise
an explicit invariant subspace is searched for, and the commutant at a
concrete evaluation point decides what remains.

For the balanced 0/1 family (``n = 2m``) the bit-complement map commutes with
every generator, so ``span{v_x + v_xbar}`` is invariant and the certificate is
"reducible".  The complement-pair plane refutation is still computed and
attached to the certificate.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
import random
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BadRange, EvalAtZero
from .monomial import DenseMatrix, MonomialMatrix, dense_rank, exact_rank, mm_adjoint, mm_compose, mm_equal
from .orbit import ValueTuple, complement_tuple, sigma_k
from .rep import Representation, build_phi_m, build_standard, build_standard_orbit, classify_adjointness
from .scalars import ONE, ZERO, GaussianRational, Scalar, as_gaussian

__all__ = [
    "SeparationReport",
    "IrreducibilityCertificate",
    "CorankResult",
    "EquivalenceReport",
    "DEFAULT_POINTS",
    "separation_check",
    "certify_irreducible",
    "commutant_basis",
    "commutant_dimension",
    "commutant_dimension_dense",
    "corank",
    "structural_rank",
    "corank_closed_form",
    "check_standard_equivalence",
    "sum_vector_witness",
    "complement_symmetric_witness",
    "verify_invariant_subspace",
    "random_points",
    "dimension_closed_form",
]

# generic evaluation points avoiding the excluded values 0, 1, -1
DEFAULT_POINTS = (GaussianRational(2), GaussianRational(3), GaussianRational(Fraction(5, 2)))


@dataclass
class SeparationReport:
    holds: bool
    self_adjoint: bool
    mode: str = "all"
    witness_pair: Optional[Tuple[ValueTuple, ValueTuple]] = None
    # every pair of basis tuples with identical profiles (mode="all" only)
    indistinguishable: List[Tuple[ValueTuple, ValueTuple]] = field(default_factory=list)


def _profile(rep: Representation, gens: Sequence[MonomialMatrix], x: int) -> Tuple[Scalar, ...]:
    return tuple(g.scale[x].abs_sq() for g in gens)


def separation_check(rep: Representation, mode: str = "all") -> SeparationReport:
    """Check that squared moduli of the acting scalars separate basis tuples.

    ``mode="all"`` requires every pair ``x != y`` to differ at some generator
    position.  ``mode="consecutive"`` only asks this of neighbours in the
    basis order, which is what the block-diagonal induction actually uses.
    """
    if mode not in ("all", "consecutive"):
        raise ValueError(f"unknown mode {mode!r}")
    gens = rep.generators
    self_adjoint = all(c.oracle_self_adjoint for c in classify_adjointness(rep))
    basis = rep.basis
    profiles = [_profile(rep, gens, x) for x in range(rep.dim)]

    if mode == "consecutive":
        for x in range(rep.dim - 1):
            if profiles[x] == profiles[x + 1]:
                return SeparationReport(False, self_adjoint, mode, (basis[x], basis[x + 1]))
        return SeparationReport(True, self_adjoint, mode)

    groups: Dict[Tuple[Scalar, ...], List[int]] = {}
    for x, p in enumerate(profiles):
        groups.setdefault(p, []).append(x)
    pairs = []
    for members in groups.values():
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                pairs.append((basis[a], basis[b]))
    pairs.sort()
    witness = pairs[0] if pairs else None
    return SeparationReport(not pairs, self_adjoint, mode, witness, pairs)


@dataclass
class IrreducibilityCertificate:
    verdict: str  # irreducible | reducible | undecided
    method: str  # separation | phi_m_special_case | commutant | witness
    evaluation_point: Optional[GaussianRational] = None
    commutant_dim: Optional[int] = None
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    @property
    def irreducible(self) -> bool:
        return self.verdict == "irreducible"


def _adjoint_closed(gens: Sequence[MonomialMatrix]) -> bool:
    for g in gens:
        adj = mm_adjoint(g)
        if not (mm_equal(adj, g) or mm_compose(adj, g).is_identity()):
            return False
    return True


def _special_case(rep: Representation, sep: SeparationReport) -> Optional[dict]:
    """Refute invariance of each complement-pair plane, or return None.

    For a pair ``{x, y}`` with ``y`` the bitwise complement of ``x``, choose the
    smallest ``k`` moving ``x`` outside the pair.  The image of ``a v_x + b v_y``
    is supported on ``{sigma_k x, sigma_k y}``; for nonzero ``a, b`` it is
    proportional to the original vector only if the supports coincide.
    """
    refutations = []
    for x, y in sep.indistinguishable:
        if set(x) - {0, 1} or complement_tuple(x) != y:
            return None
        pair = {x, y}
        k = next((k for k in range(1, rep.n) if sigma_k(x, k) not in pair), None)
        if k is None:
            raise AssertionError(f"no generator moves {x} off its complement pair (n={rep.n})")
        g = rep.generator(k)
        rx, ry = rep.orbit.rank[x], rep.orbit.rank[y]
        # image of a*v_x + b*v_y with a, b formal nonzero
        image = {g.perm[rx]: (g.scale[rx], ZERO), g.perm[ry]: (ZERO, g.scale[ry])}
        if set(image) == {rx, ry}:
            return None
        refutations.append({"x": x, "y": y, "k": k,
                            "image_support": tuple(sorted(rep.basis[i] for i in image))})
    return {"complement_pairs": refutations}


def certify_irreducible(rep: Representation, at=2) -> IrreducibilityCertificate:
    at = as_gaussian(at)
    if rep.dim == 1:
        return IrreducibilityCertificate("irreducible", "separation", details={"reason": "one-dimensional"})

    sep = separation_check(rep)
    if sep.holds and sep.self_adjoint:
        return IrreducibilityCertificate("irreducible", "separation",
                                         details={"pairs_checked": rep.dim * (rep.dim - 1) // 2})

    fam = rep.family
    special = None
    if (fam and fam[0] == "phi_m" and not rep.is_modified and rep.n == 2 * fam[2] and rep.n > 2
            and sep.self_adjoint):
        special = _special_case(rep, sep)

    basis = commutant_basis(rep, at)
    cdim = len(basis)
    gens_at = [g.specialize(at) for g in rep.generators]
    closed = _adjoint_closed(gens_at)

    # the pair-plane refutation only excludes invariant lines inside a single
    # complement plane; it is promoted to a verdict only if no invariant
    # subspace is found and the commutant is trivial
    witness = _find_witness(rep, basis, at)
    if witness is not None:
        details = {"special_case_refutations": special} if special is not None else {}
        return IrreducibilityCertificate("reducible", "witness", evaluation_point=witness.get("evaluation_point"),
                                         commutant_dim=cdim, witness=witness, details=details)
    if special is not None and cdim == 1 and closed:
        return IrreducibilityCertificate("irreducible", "phi_m_special_case", evaluation_point=at,
                                         commutant_dim=1, details=special)
    if cdim == 1 and closed:
        return IrreducibilityCertificate("irreducible", "commutant", evaluation_point=at, commutant_dim=1)
    return IrreducibilityCertificate("undecided", "commutant", evaluation_point=at, commutant_dim=cdim,
                                     details={"adjoint_closed": closed,
                                              "separation_witness": sep.witness_pair})


# -- reducibility witnesses -------------------------------------------------

def sum_vector_witness(rep: Representation) -> Optional[Dict[int, Scalar]]:
    """Eigenvalue of each generator on ``sum_x v_x`` if that line is invariant."""
    eigen = {}
    for k, g in enumerate(rep.generators, start=1):
        values = set(g.scale)
        if len(values) != 1:
            return None
        eigen[k] = next(iter(values))
    return eigen


def verify_invariant_subspace(rep: Representation, vectors: Sequence[Dict[int, object]], at=None) -> bool:
    """True when ``span(vectors)`` is mapped into itself by every generator.

    With ``at`` given the check runs at ``t = at``; otherwise over generic ``t``.
    """
    def prep(v):
        v = {i: Scalar.coerce(c) for i, c in v.items()}
        if at is None:
            return v
        return {i: c.eval(at) for i, c in v.items()}

    span = [prep(v) for v in vectors]
    base_rank = exact_rank(span)
    if base_rank == 0:
        return False
    for g in rep.generators:
        for v in vectors:
            image = prep(g.apply(v))
            if exact_rank(span + [image]) != base_rank:
                return False
    return True


def complement_symmetric_witness(rep: Representation) -> Optional[List[Dict[int, Scalar]]]:
    """Basis of ``span{v_x + v_xbar}`` when bit complement commutes with every generator.

    Applies to 0/1 seeds; returns None when the complement map is not a
    symmetry (or the seed is not binary).
    """
    if set(rep.seed) - {0, 1} or rep.dim < 2:
        return None
    rank = rep.orbit.rank
    flip = [rank.get(complement_tuple(x)) for x in rep.basis]
    if any(f is None for f in flip):
        return None
    for g in rep.generators:
        for x in range(rep.dim):
            # C g e_x = s_x e_{flip(perm x)};  g C e_x = s_{flip x} e_{perm(flip x)}
            if flip[g.perm[x]] != g.perm[flip[x]] or g.scale[x] != g.scale[flip[x]]:
                return None
    return [{x: ONE, flip[x]: ONE} for x in range(rep.dim) if x < flip[x]]


def _find_witness(rep: Representation, comm_basis, at) -> Optional[dict]:
    eigen = sum_vector_witness(rep)
    if eigen is not None and rep.dim > 1:
        v = {x: ONE for x in range(rep.dim)}
        if verify_invariant_subspace(rep, [v]):
            return {"kind": "sum_vector", "vectors": [v], "eigenvalues": eigen, "evaluation_point": None}
    sym = complement_symmetric_witness(rep)
    if sym is not None and verify_invariant_subspace(rep, sym):
        return {"kind": "complement_symmetric", "vectors": sym, "evaluation_point": None}
    # the image of a singular nonzero commuting matrix is a proper invariant subspace
    for element in comm_basis:
        rows = [dict() for _ in range(rep.dim)]
        for (i, j), val in element.items():
            rows[j][i] = val  # column j as a vector
        cols = [c for c in rows if c]
        r = exact_rank(cols)
        if 0 < r < rep.dim:
            chosen: List[dict] = []
            for c in cols:
                if exact_rank(chosen + [c]) > len(chosen):
                    chosen.append(c)
            vectors = [{i: Scalar.const(v) for i, v in c.items()} for c in chosen]
            if verify_invariant_subspace(rep, vectors, at=at):
                return {"kind": "commutant_image", "vectors": vectors, "evaluation_point": at}
    return None


# -- commutant --------------------------------------------------------------

def _evaluated_scales(rep: Representation, at: GaussianRational):
    out = []
    for g in rep.generators:
        vals = [s.eval(at) for s in g.scale]
        if any(v.is_zero() for v in vals):
            raise ValueError(f"generator is singular at t={at}")
        out.append((g.perm, vals))
    return out


def commutant_basis(rep: Representation, at=2) -> List[Dict[Tuple[int, int], GaussianRational]]:
    """Basis of the matrices commuting with every generator at ``t = at``.

    Conjugation by a monomial generator moves entry ``(i, j)`` to
    ``(perm i, perm j)`` and multiplies it by ``s_i / s_j``.  Positions are
    grouped into orbits under these moves; an orbit supports a commuting
    matrix exactly when the accumulated weights agree around every cycle.
    Each consistent orbit contributes one basis element.
    """
    at = as_gaussian(at)
    if at.is_zero():
        raise EvalAtZero("commutant evaluation point must be nonzero")
    d = rep.dim
    gens = _evaluated_scales(rep, at)
    inverse_perms = []
    for perm, _ in gens:
        inv = [0] * d
        for x, p in enumerate(perm):
            inv[p] = x
        inverse_perms.append(inv)

    value: Dict[Tuple[int, int], GaussianRational] = {}
    basis = []
    for start in ((i, j) for i in range(d) for j in range(d)):
        if start in value:
            continue
        comp = {start: GaussianRational(1)}
        value[start] = comp[start]
        queue = deque([start])
        consistent = True
        while queue:
            i, j = queue.popleft()
            v = comp[(i, j)]
            for (perm, s), inv in zip(gens, inverse_perms):
                # forward: M[perm i, perm j] = s_i / s_j * M[i, j]
                nxt = (perm[i], perm[j])
                want = v * s[i] / s[j]
                got = comp.get(nxt)
                if got is None:
                    comp[nxt] = want
                    value[nxt] = want
                    queue.append(nxt)
                elif got != want:
                    consistent = False
                # backward: M[i, j] = s_a / s_b * M[a, b] with (a, b) = inverse image
                a, b = inv[i], inv[j]
                prev = (a, b)
                want = v * s[b] / s[a]
                got = comp.get(prev)
                if got is None:
                    comp[prev] = want
                    value[prev] = want
                    queue.append(prev)
                elif got != want:
                    consistent = False
        if consistent:
            basis.append(comp)
    return basis


def commutant_dimension(rep: Representation, at=2) -> int:
    return len(commutant_basis(rep, at))


def commutant_dimension_dense(rep: Representation, at=2) -> int:
    """Oracle: nullity of the linear system ``M G - G M = 0`` over dense ``G``."""
    at = as_gaussian(at)
    if at.is_zero():
        raise EvalAtZero("commutant evaluation point must be nonzero")
    d = rep.dim
    unknown = lambda r, c: r * d + c  # noqa: E731
    equations = []
    for g in rep.generators:
        dense = g.to_dense()
        by_col: Dict[int, List[Tuple[int, GaussianRational]]] = {}
        by_row: Dict[int, List[Tuple[int, GaussianRational]]] = {}
        for (i, j), s in dense.items():
            val = s.eval(at)
            by_col.setdefault(j, []).append((i, val))
            by_row.setdefault(i, []).append((j, val))
        for r in range(d):
            for c in range(d):
                eq: Dict[int, GaussianRational] = {}
                # (M G)[r, c] = sum_k M[r, k] G[k, c]
                for k, gv in by_col.get(c, ()):
                    key = unknown(r, k)
                    eq[key] = eq.get(key, GaussianRational(0)) + gv
                # (G M)[r, c] = sum_k G[r, k] M[k, c]
                for k, gv in by_row.get(r, ()):
                    key = unknown(k, c)
                    eq[key] = eq.get(key, GaussianRational(0)) - gv
                eq = {key: v for key, v in eq.items() if not v.is_zero()}
                if eq:
                    equations.append(eq)
    return d * d - exact_rank(equations)


# -- corank -----------------------------------------------------------------

def structural_rank(g: MonomialMatrix) -> int:
    """Rank of ``g - 1`` for generic ``t`` from its block structure.

    A fixed column gives a 1x1 block ``s - 1``; a swapped pair ``x <-> y``
    gives ``[[-1, s_y], [s_x, -1]]``, of rank 1 when ``s_x s_y = 1`` and 2
    otherwise.  Longer cycles fall back to symbolic elimination.
    """
    rank = 0
    for x, p in enumerate(g.perm):
        if p == x:
            rank += g.scale[x] != ONE
        elif g.perm[p] == x:
            if x < p:
                rank += 1 if g.scale[x] * g.scale[p] == ONE else 2
        else:
            return dense_rank(g.to_dense() - DenseMatrix.identity(g.dim))
    return rank


@dataclass
class CorankResult:
    measured: Dict[int, int]
    dense: Dict[str, Dict[int, int]]
    closed_form: Optional[int]
    k_independent: bool

    @property
    def value(self) -> Optional[int]:
        return self.measured[1] if self.k_independent and self.measured else None

    @property
    def dense_agrees(self) -> bool:
        return all(d == self.measured for d in self.dense.values())

    @property
    def matches_closed_form(self) -> Optional[bool]:
        if self.closed_form is None:
            return None
        return self.k_independent and self.value == self.closed_form


def corank(rep: Representation, points: Sequence = DEFAULT_POINTS) -> CorankResult:
    measured = {k: structural_rank(rep.generator(k)) for k in range(1, rep.n)}
    dense = {}
    for p in points:
        p = as_gaussian(p)
        per_k = {}
        for k in range(1, rep.n):
            g = rep.generator(k)
            per_k[k] = dense_rank(g.to_dense() - DenseMatrix.identity(g.dim), at=p)
        dense[str(p)] = per_k
    closed = None
    fam = rep.family
    if fam and fam[0] == "phi_m" and fam[1] > 2:
        closed = corank_closed_form(fam[1], fam[2])
    return CorankResult(measured, dense, closed, len(set(measured.values())) <= 1)


def corank_closed_form(n: int, m: int) -> int:
    """``2 (n-2)! / ((m-1)! (n-m-1)!)``."""
    if n <= 2 or not 1 <= m < n:
        raise BadRange(f"closed form needs n > 2 and 1 <= m < n, got n={n}, m={m}")
    return 2 * factorial(n - 2) // (factorial(m - 1) * factorial(n - m - 1))


# -- standard representation ---------------------------------------------

@dataclass
class EquivalenceCheck:
    k: int
    passed: bool
    witness_column: Optional[int] = None  # 1-based column of the first mismatch


@dataclass
class EquivalenceReport:
    n: int
    checks: List[EquivalenceCheck]
    # phi_1(t) against rho(t^2) through alpha composed with diag(1, t, ..., t^(n-1))
    phi_1_checks: List[EquivalenceCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def phi_1_passed(self) -> bool:
        return all(c.passed for c in self.phi_1_checks)


def _intertwiner(rep: Representation) -> DenseMatrix:
    """Permutation matrix sending the j-th unit vector to ``v_{x_j}``."""
    n = rep.n
    entries = {}
    for j in range(n):
        x = tuple(1 if i == j else 0 for i in range(n))
        entries[(rep.orbit.rank[x], j)] = ONE
    return DenseMatrix(n, n, entries)


def _first_bad_column(a: DenseMatrix, b: DenseMatrix) -> Optional[int]:
    for j in range(a.ncols):
        if any(a[i, j] != b[i, j] for i in range(a.nrows)):
            return j + 1
    return None


def check_standard_equivalence(n: int, rep: Optional[Representation] = None) -> EquivalenceReport:
    """Check ``alpha rho(tau_k) = phi(tau_k) alpha`` for every generator.

    ``rep`` defaults to the orbit of ``(1, 0, ..., 0)`` with
    ``q(a, b) = 1 + (t - 1) b``.  The report also checks that the symmetric
    ``phi_1`` (``q = t`` off the diagonal) is conjugate to ``rho`` at ``t^2``
    via ``alpha D`` with ``D = diag(1, t, ..., t^(n-1))``.
    """
    if n < 2:
        raise BadRange(f"n must be >= 2, got {n}")
    rep = rep if rep is not None else build_standard_orbit(n)
    rho = build_standard(n)
    alpha = _intertwiner(rep)
    checks = []
    for k in range(1, n):
        lhs = alpha @ rho[k - 1]
        rhs = rep.generator(k).to_dense() @ alpha
        bad = _first_bad_column(lhs, rhs)
        checks.append(EquivalenceCheck(k, bad is None, bad))

    phi1 = build_phi_m(n, 1)
    alpha1 = _intertwiner(phi1)
    diag = DenseMatrix(n, n, {(j, j): Scalar.monomial(1, j) for j in range(n)})
    conj = alpha1 @ diag
    phi_checks = []
    for k in range(1, n):
        rho_sq = rho[k - 1].map(lambda s: s.substitute_power(2))
        lhs = conj @ rho_sq
        rhs = phi1.generator(k).to_dense() @ conj
        bad = _first_bad_column(lhs, rhs)
        phi_checks.append(EquivalenceCheck(k, bad is None, bad))
    return EquivalenceReport(n, checks, phi_checks)


def dimension_closed_form(n: int, m: int) -> int:
    return comb(n, m)


def random_points(rng_seed: int, count: int = 3, bound: int = 50) -> List[GaussianRational]:
    """Distinct reproducible rational points outside ``{0, 1, -1}``."""
    rng = random.Random(rng_seed)
    points: List[GaussianRational] = []
    while len(points) < count:
        p = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if p in (0, 1, -1) or GaussianRational(p) in points:
            continue
        points.append(GaussianRational(p))
    return points
