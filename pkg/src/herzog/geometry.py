"""Projective checks: points, Jacobian ranks, smoothness of curves, projection
from P0, fibres over coordinate points, Hilbert polynomial and genus."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import (
    DegreeCeilingExceeded,
    DimensionError,
    HypothesisNotMetError,
    InternalConsistencyError,
    PreconditionError,
)
from .groebner import (
    DEFAULT_DEGREE_CEILING,
    GroebnerBasis,
    Ideal,
    buchberger,
    check_projection_hypotheses,
    eliminate_block,
    extract_projection_basis,
    initial_ideal,
    restrict_ring,
    same_ideal,
)
from .hilbert import hilbert_polynomial, is_artinian, krull_dimension, variables_without_pure_power
from .linalg import mat_mul_poly, poly_det, rank
from .poly import DEGREVLEX, LEX, Field, MonomialOrder, PolyRing, Polynomial, unit_monomial

DEFAULT_POWER_BOUND = 8
DEFAULT_MINOR_LIMIT = 60
DEFAULT_FP_POINT_LIMIT = 5000


@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous coordinates normalised so the first nonzero entry is 1."""

    coords: tuple
    field: Field

    def __init__(self, coords: Sequence, field: Field):
        vals = [field(c) for c in coords]
        lead = next((c for c in vals if c != 0), None)
        if lead is None:
            raise ValueError("all coordinates are zero")
        inv = field.inv(lead)
        p = field.p
        vals = tuple((c * inv) % p if p else c * inv for c in vals)
        object.__setattr__(self, "coords", vals)
        object.__setattr__(self, "field", field)

    @classmethod
    def coordinate(cls, nvars: int, a: int, field: Field) -> "ProjectivePoint":
        """P_a: the point whose only nonzero coordinate is in position ``a``."""
        return cls([1 if i == a else 0 for i in range(nvars)], field)

    def __len__(self):
        return len(self.coords)

    def to_json(self) -> list:
        return [self.field.format(c) for c in self.coords]

    def __str__(self):
        return "[" + ":".join(self.field.format(c) for c in self.coords) + "]"


def _gens(I) -> list:
    if isinstance(I, (Ideal, GroebnerBasis)):
        return list(I.elements if isinstance(I, GroebnerBasis) else I.generators)
    return list(I)


def point_on_variety(I, P: ProjectivePoint) -> bool:
    return all(g.evaluate(P.coords) == 0 for g in _gens(I))


def jacobian_matrix(polys: Sequence[Polynomial]) -> list:
    polys = list(polys)
    nvars = polys[0].ring.nvars
    return [[f.derivative(k) for k in range(nvars)] for f in polys]


def jacobian_rank_at(I, P: ProjectivePoint) -> int:
    """Rank over the base field of the Jacobian of the generators of ``I`` at ``P``.

    The generators should generate the ideal (a Groebner basis is safest).
    """
    gens = _gens(I)
    if not point_on_variety(gens, P):
        raise PreconditionError(f"{P} is not on the variety")
    J = [[f.derivative(k).evaluate(P.coords) for k in range(len(P))] for f in gens]
    return rank(J, P.field)


def is_nonsingular_at(I, P: ProjectivePoint, dim_X: int = 1) -> bool:
    """Jacobian criterion: rank equals n - dim X."""
    gens = _gens(I)
    n = gens[0].ring.nvars - 1
    return jacobian_rank_at(gens, P) == n - dim_X


# --------------------------------------------------------------------------
# smoothness of curves


@dataclass
class SmoothnessVerdict:
    """``smooth`` is True, False or ``"inconclusive"``.

    A True verdict carries ``power_certificate`` = {i: k} with X_i^k in the
    singular-locus ideal.  A False verdict carries singular points and/or the
    non-emptiness certificate (variables with no pure power in the initial
    ideal of the singular-locus ideal, whose Krull dimension is positive).
    """

    smooth: object
    field: str
    method: str
    singular_points: list = field(default_factory=list)
    power_certificate: dict | None = None
    nonempty_certificate: dict | None = None
    minors_used: int = 0
    detail: str = ""

    @property
    def is_smooth(self) -> bool:
        return self.smooth is True

    @property
    def is_singular(self) -> bool:
        return self.smooth is False

    @property
    def is_inconclusive(self) -> bool:
        return self.smooth == "inconclusive"

    def to_json(self) -> dict:
        return {
            "smooth": self.smooth,
            "field": self.field,
            "method": self.method,
            "singular_points": [p.to_json() for p in self.singular_points],
            "power_certificate": ({f"X{i}": k for i, k in sorted(self.power_certificate.items())}
                                  if self.power_certificate else None),
            "nonempty_certificate": self.nonempty_certificate,
            "minors_used": self.minors_used,
        }


def curve_dimension_check(G: GroebnerBasis) -> list:
    """Hilbert polynomial of S/in(I); raises DimensionError unless it is linear."""
    hp = hilbert_polynomial(initial_ideal(G))
    if len(hp) != 2 or hp[1] == 0:
        raise DimensionError(f"expected a curve; Hilbert polynomial has coefficients {[str(c) for c in hp]}")
    return hp


def singular_coordinate_points(gens: Sequence[Polynomial], dim_X: int = 1) -> list:
    ring = gens[0].ring
    out = []
    for a in range(ring.nvars):
        P = ProjectivePoint.coordinate(ring.nvars, a, ring.field)
        if point_on_variety(gens, P) and not is_nonsingular_at(gens, P, dim_X):
            out.append(P)
    return out


def projective_points(nvars: int, field: Field):
    """All points of P^{nvars-1}(F_p), normalised."""
    p = field.p
    for lead in range(nvars):
        for tail in itertools.product(range(p), repeat=nvars - lead - 1):
            yield ProjectivePoint((0,) * lead + (1,) + tail, field)


def singular_fp_points(gens: Sequence[Polynomial], limit: int = DEFAULT_FP_POINT_LIMIT, dim_X: int = 1) -> list:
    """Singular F_p-rational points, if P^n(F_p) has at most ``limit`` points."""
    ring = gens[0].ring
    p = ring.field.p
    if not p:
        return []
    count = (p ** ring.nvars - 1) // (p - 1)
    if count > limit:
        return []
    return [P for P in projective_points(ring.nvars, ring.field)
            if point_on_variety(gens, P) and not is_nonsingular_at(gens, P, dim_X)]


def _all_minors(jac: list, c: int) -> list:
    rows, cols = len(jac), len(jac[0])
    out = []
    for rs in combinations(range(rows), c):
        for cs in combinations(range(cols), c):
            d = poly_det([[jac[r][k] for k in cs] for r in rs])
            if d:
                out.append(d)
    return out


def _random_minors(jac: list, c: int, count: int, rng: random.Random, field: Field) -> list:
    rows, cols = len(jac), len(jac[0])
    pick = (lambda: rng.randrange(field.p)) if field.p else (lambda: rng.randint(-2, 2))
    out = []
    for _ in range(count):
        A = [[pick() for _ in range(rows)] for _ in range(c)]
        B = [[pick() for _ in range(c)] for _ in range(cols)]
        d = poly_det(mat_mul_poly(A, jac, B))
        if d:
            out.append(d)
    return out


def _power_certificate(GJ: GroebnerBasis, power_bound: int):
    ring = GJ.ring
    cert = {}
    for i in range(ring.nvars):
        for k in range(1, power_bound + 1):
            if not GJ.normal_form(ring.monomial(unit_monomial(ring.nvars, i, k))):
                cert[i] = k
                break
        else:
            return None
    return cert


def is_smooth_projective_curve(I, order: MonomialOrder = DEGREVLEX, basis: GroebnerBasis | None = None,
                               power_bound: int = DEFAULT_POWER_BOUND,
                               degree_ceiling: int | None = DEFAULT_DEGREE_CEILING,
                               minor_limit: int = DEFAULT_MINOR_LIMIT,
                               fp_point_limit: int = DEFAULT_FP_POINT_LIMIT,
                               seed: int = 0) -> SmoothnessVerdict:
    """Decide whether V(I) ⊂ P^n is a smooth curve over the algebraic closure of the base field.

    Singular coordinate points are probed first.  Otherwise the singular
    locus V(I + (n-1)-minors of the Jacobian) is tested for emptiness: all
    minors when there are at most ``minor_limit`` of them, else seeded random
    combinations ``det(A · Jac · B)`` (each lies in the minor ideal, so an
    empty locus for them is a valid certificate; a non-empty one is not).
    """
    G = basis if basis is not None else buchberger(I, order, degree_ceiling=degree_ceiling)
    gens = list(G.elements)
    ring = G.ring
    fld = ring.field
    curve_dimension_check(G)
    c = ring.nvars - 2
    verdict = SmoothnessVerdict(smooth="inconclusive", field=fld.name, method="")

    sing = singular_coordinate_points(gens)
    if sing:
        verdict.smooth = False
        verdict.method = "coordinate-point"
        verdict.singular_points = sing
        return verdict

    jac = jacobian_matrix(gens)
    n_minors = len(list(combinations(range(len(gens)), c))) * len(list(combinations(range(ring.nvars), c)))
    rng = random.Random(seed)
    attempts = []
    if n_minors <= minor_limit:
        attempts.append(("all-minors", None))
    else:
        attempts.extend(("random-minors", k) for k in (ring.nvars, 2 * ring.nvars, 3 * ring.nvars))
    minors: list = []
    for method, k in attempts:
        if method == "all-minors":
            minors = _all_minors(jac, c)
        else:
            minors = minors + _random_minors(jac, c, k - len(minors), rng, fld)
        verdict.minors_used = len(minors)
        try:
            GJ = buchberger(gens + minors, DEGREVLEX, degree_ceiling=degree_ceiling, verify=False)
        except DegreeCeilingExceeded as exc:
            verdict.detail = str(exc)
            continue
        MJ = initial_ideal(GJ)
        if is_artinian(MJ):
            cert = _power_certificate(GJ, power_bound)
            if cert is None:
                verdict.method = method
                verdict.detail = f"singular locus empty but a variable power exceeds {power_bound}"
                return verdict
            verdict.smooth = True
            verdict.method = method
            verdict.power_certificate = cert
            return verdict
        if method == "all-minors":
            verdict.smooth = False
            verdict.method = "nonempty-singular-locus"
            verdict.nonempty_certificate = {
                "krull_dimension": krull_dimension(MJ),
                "variables_without_pure_power": [f"X{i}" for i in variables_without_pure_power(MJ)],
            }
            verdict.singular_points = singular_fp_points(gens, fp_point_limit)
            return verdict
    # random minors never certified emptiness; try explicit F_p witnesses
    pts = singular_fp_points(gens, fp_point_limit)
    if pts:
        verdict.smooth = False
        verdict.method = "fp-point"
        verdict.singular_points = pts
        return verdict
    verdict.method = verdict.method or "random-minors"
    verdict.detail = verdict.detail or "random minor combinations did not certify an empty singular locus"
    return verdict


# --------------------------------------------------------------------------
# projection from P0 and fibres


def project_from_p0(I: Ideal | None, G: GroebnerBasis, cross_check: bool = True) -> Ideal:
    """I' = I ∩ K[X1..Xn], returned in the ring K[X1..Xn] renumbered from X0.

    Uses the elements of ``G`` whose leading monomial avoids X0; requires a
    0-reduced basis {g_σ} whose squarefree initial ideal has vertex 0 free.
    With ``cross_check`` the result is compared against block elimination.
    """
    try:
        check_projection_hypotheses(G)
    except HypothesisNotMetError as exc:
        raise PreconditionError(f"{exc} (use zero_reduce, or eliminate(route='block'))") from exc
    sub = extract_projection_basis(G)
    if cross_check:
        gens = _gens(I) if I is not None else list(G.elements)
        block = eliminate_block(gens, [0], G.order if G.order.kind != "block" else LEX)
        if not same_ideal(sub, block, LEX):
            raise InternalConsistencyError("extracted basis and block elimination disagree")
    small = PolyRing(G.ring.nvars - 1, G.ring.field)
    return Ideal(small, restrict_ring(sub, 1, G.ring) if sub else [])


@dataclass
class FiberResult:
    """The unique point Q = [μ:0..1..0] of X over P'_a, with μ·λ + α = 0."""

    a: int
    j: int
    point: ProjectivePoint
    mu: object
    lam: object
    alpha: object
    q_nonsingular: bool
    pa_nonsingular: bool

    @property
    def verdicts_agree(self) -> bool:
        return self.q_nonsingular == self.pa_nonsingular

    def to_json(self) -> dict:
        f = self.point.field
        return {
            "a": self.a, "j": self.j, "Q": self.point.to_json(),
            "mu": f.format(self.mu), "lambda": f.format(self.lam), "alpha": f.format(self.alpha),
            "Q_nonsingular": self.q_nonsingular, "Pa_prime_nonsingular": self.pa_nonsingular,
        }


def _x0_neighbours(G: GroebnerBasis) -> dict:
    """{j: g_{0j}} for the elements with leading monomial X0*Xj."""
    out = {}
    nv = G.ring.nvars
    for g, lm in zip(G.elements, G.leading_monomials):
        if lm[0] == 1 and sum(lm) == 2:
            j = next(i for i in range(1, nv) if lm[i])
            out[j] = g
    return out


def fiber_over_coordinate_point(I: Ideal | None, G: GroebnerBasis, a: int,
                                projected: Ideal | None = None) -> FiberResult:
    """Locate the point of X lying over P'_a under projection from P0."""
    from .collapse import Graph
    from .simplicial import complex_of

    ring = G.ring
    nv = ring.nvars
    if not 1 <= a < nv:
        raise PreconditionError(f"a must lie in 1..{nv - 1}")
    M = initial_ideal(G)
    if not M.is_squarefree():
        raise HypothesisNotMetError(f"initial ideal {M} is not squarefree")
    delta = complex_of(M, nv)
    if delta.dimension > 1 or not Graph.from_complex(delta).is_free(0):
        raise HypothesisNotMetError("vertex 0 is not a free vertex of the complex of in(I)")
    if projected is None:
        if G.is_zero_reduced and len(M.generators) == len(G.elements):
            projected = project_from_p0(I, G, cross_check=False)
        else:
            gens = _gens(I) if I is not None else list(G.elements)
            block = eliminate_block(gens, [0], LEX)
            projected = Ideal(PolyRing(nv - 1, ring.field), restrict_ring(block, 1, ring) if block else [])
    small = projected.ring
    Pa_prime = ProjectivePoint.coordinate(small.nvars, a - 1, ring.field)
    if not point_on_variety(projected, Pa_prime):
        raise PreconditionError(f"P'_{a} is not on the projected curve")

    nbrs = _x0_neighbours(G)
    x0xa = tuple(1 if i in (0, a) else 0 for i in range(nv))
    xa2 = unit_monomial(nv, a, 2)
    order_j = ([a] if a in nbrs else []) + sorted(j for j in nbrs if j != a)
    j = next((j for j in order_j if nbrs[j].coefficient(x0xa) != 0), None)
    if j is None:
        raise HypothesisNotMetError(f"no g_0j contains X0*X{a}")
    g = nbrs[j]
    lam = g.coefficient(x0xa)
    alpha = g.coefficient(xa2)
    fld = ring.field
    mu = fld.neg(alpha * fld.inv(lam))
    if fld.p:
        mu %= fld.p
    coords = [0] * nv
    coords[0] = mu
    coords[a] = 1
    Q = ProjectivePoint(coords, fld)
    if not point_on_variety(G, Q):
        raise InternalConsistencyError(f"fibre point {Q} is not on X")
    q_ok = is_nonsingular_at(G, Q, 1)
    pa_ok = jacobian_rank_at(projected, Pa_prime) == small.nvars - 2
    return FiberResult(a, j, Q, mu, lam, alpha, q_ok, pa_ok)


# --------------------------------------------------------------------------
# Hilbert polynomial and genus


@dataclass
class CurveSummary:
    hilbert_polynomial: tuple
    degree: int
    genus: int
    smooth: object = None
    singular_points: list = field(default_factory=list)
    verdict: SmoothnessVerdict | None = None

    def to_json(self) -> dict:
        return {
            "smooth": self.smooth,
            "genus": self.genus,
            "degree": self.degree,
            "singular_points": [p.to_json() for p in self.singular_points],
            "hilbert_polynomial": [_num(c) for c in self.hilbert_polynomial],
        }


def _num(c: Fraction):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else str(c)


def genus(I, order: MonomialOrder = DEGREVLEX, basis: GroebnerBasis | None = None,
          degree_ceiling: int | None = DEFAULT_DEGREE_CEILING) -> CurveSummary:
    """Arithmetic genus 1 - P(0) from the Hilbert polynomial of the initial ideal."""
    G = basis if basis is not None else buchberger(I, order, degree_ceiling=degree_ceiling)
    hp = curve_dimension_check(G)
    c0, c1 = Fraction(hp[0]), Fraction(hp[1])
    return CurveSummary(hilbert_polynomial=(c0, c1), degree=int(c1), genus=int(1 - c0))


def curve_summary(I, order: MonomialOrder = DEGREVLEX, basis: GroebnerBasis | None = None,
                  power_bound: int = DEFAULT_POWER_BOUND,
                  degree_ceiling: int | None = DEFAULT_DEGREE_CEILING, seed: int = 0) -> CurveSummary:
    G = basis if basis is not None else buchberger(I, order, degree_ceiling=degree_ceiling)
    s = genus(None, order, basis=G)
    v = is_smooth_projective_curve(None, order, basis=G, power_bound=power_bound,
                                   degree_ceiling=degree_ceiling, seed=seed)
    s.smooth = v.smooth
    s.singular_points = v.singular_points
    s.verdict = v
    return s
