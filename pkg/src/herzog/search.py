"""Candidate Groebner deformations of a graph's Stanley-Reisner ideal, and the
sweeps that test them for smoothness.

A candidate for a graph Δ is a list ``g_σ = X_σ + Σ c_m m`` over the minimal
non-faces σ, where each trailing monomial ``m`` is a standard monomial of
I_Δ with the same degree as X_σ and smaller than X_σ.  A candidate is
*valid* when these polynomials form a Groebner basis, i.e. when the initial
ideal of the ideal they generate is exactly I_Δ.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .collapse import Graph, is_connected, is_tree
from .errors import DegreeCeilingExceeded, PreconditionError
from .geometry import (
    DEFAULT_POWER_BOUND,
    ProjectivePoint,
    genus,
    is_nonsingular_at,
    is_smooth_projective_curve,
)
from .groebner import (
    DEFAULT_DEGREE_CEILING,
    GroebnerBasis,
    buchberger,
    initial_ideal,
    is_groebner_basis,
    reduced_basis,
)
from .poly import LEX, QQ, Field, MonomialOrder, PolyRing, Polynomial, monomials_of_degree, squarefree_monomial
from .simplicial import SimplicialComplex, minimal_nonfaces, stanley_reisner

DEFAULT_MAX_CANDIDATES = 200_000


@dataclass
class CandidateFamily:
    """Sweep configuration for one graph, order and field.

    ``mode`` is ``exhaustive`` (every coefficient vector over ``coeff_grid``,
    which defaults to all of F_p), ``random`` (``count`` vectors drawn with
    ``seed``; a slot is nonzero with probability ``density``, or uniform over
    the grid when ``density`` is None) or ``orbit`` (``count`` random
    order-preserving coordinate changes of the ``seeds`` ideals, brought to
    reduced form).  ``slot_filter`` optionally restricts the trailing
    monomials per generator.
    """

    graph: Graph
    order: MonomialOrder = LEX
    field: Field = QQ
    mode: str = "exhaustive"
    coeff_grid: tuple | None = None
    seed: int = 0
    count: int = 0
    density: float | None = None
    seeds: tuple = ()
    slot_filter: dict | None = None
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    time_budget: float | None = None
    degree_ceiling: int | None = DEFAULT_DEGREE_CEILING
    power_bound: int = DEFAULT_POWER_BOUND

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random", "orbit"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.coeff_grid is None:
            self.coeff_grid = tuple(range(self.field.p)) if self.field.p else (-1, 0, 1)
        self.coeff_grid = tuple(self.coeff_grid)

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.graph.nvertices, self.field)

    @property
    def complex(self) -> SimplicialComplex:
        return self.graph.to_complex()

    def describe(self) -> dict:
        return {
            "graph": {"n": self.graph.n, "edges": [list(e) for e in self.graph.sorted_edges()]},
            "order": self.order.name,
            "field": self.field.name,
            "mode": self.mode,
            "coeff_grid": [int(c) for c in self.coeff_grid],
            "seed": self.seed,
            "count": self.count,
            "density": self.density,
            "max_candidates": self.max_candidates,
            "degree_ceiling": self.degree_ceiling,
            "power_bound": self.power_bound,
        }


def leading_targets(fam: CandidateFamily) -> list:
    """[(σ, X_σ)] over the minimal non-faces, largest X_σ first."""
    n = fam.graph.nvertices
    out = [(s, squarefree_monomial(n, s)) for s in minimal_nonfaces(fam.complex)]
    out.sort(key=lambda t: fam.order.key(t[1]), reverse=True)
    return out


def slots(fam: CandidateFamily) -> list:
    """[(σ, X_σ, [trailing monomials, largest first])]."""
    targets = leading_targets(fam)
    gens = [m for _, m in targets]
    key = fam.order.key
    n = fam.graph.nvertices
    out = []
    for s, lead in targets:
        k = key(lead)
        ms = [m for m in monomials_of_degree(n, sum(lead))
              if key(m) < k and not any(all(a <= b for a, b in zip(g, m)) for g in gens)]
        if fam.slot_filter and s in fam.slot_filter:
            allowed = set(map(tuple, fam.slot_filter[s]))
            ms = [m for m in ms if m in allowed]
        ms.sort(key=key, reverse=True)
        out.append((s, lead, ms))
    return out


def slot_count(fam: CandidateFamily) -> int:
    return sum(len(ms) for _, _, ms in slots(fam))


def build_candidate(fam: CandidateFamily, coeffs: Sequence, layout=None) -> list:
    """Polynomials X_σ + Σ c_m m from a flat coefficient vector."""
    layout = layout or slots(fam)
    ring = fam.ring
    f = fam.field
    out = []
    pos = 0
    for _, lead, ms in layout:
        terms = {lead: f(1)}
        for m in ms:
            c = f(coeffs[pos])
            pos += 1
            if c != 0:
                terms[m] = c
        out.append(Polynomial(ring, terms))
    return out


@dataclass
class Candidate:
    index: int
    coeffs: tuple
    generators: list
    basis: GroebnerBasis

    def to_json(self, order: MonomialOrder) -> list:
        return [g.to_str(order) for g in self.generators]


class CandidateStream:
    """Iterates over valid candidates; counters are filled in as it goes."""

    def __init__(self, fam: CandidateFamily):
        self.fam = fam
        self.layout = slots(fam)
        self.generated = 0
        self.rejected = 0
        self.truncated = False
        self.target = stanley_reisner(fam.complex)

    def _vectors(self):
        fam = self.fam
        k = sum(len(ms) for _, _, ms in self.layout)
        if fam.mode == "exhaustive":
            yield from itertools.product(fam.coeff_grid, repeat=k)
        elif fam.mode == "random":
            rng = random.Random(fam.seed)
            nonzero = [c for c in fam.coeff_grid if c != 0] or [0]
            for _ in range(fam.count):
                if fam.density is None:
                    yield tuple(rng.choice(fam.coeff_grid) for _ in range(k))
                else:
                    yield tuple(rng.choice(nonzero) if rng.random() < fam.density else 0 for _ in range(k))
        else:
            yield from orbit_vectors(fam, self.layout)

    def __iter__(self):
        fam = self.fam
        start = time.monotonic()
        for coeffs in self._vectors():
            if self.generated >= fam.max_candidates or (
                    fam.time_budget is not None and time.monotonic() - start > fam.time_budget):
                self.truncated = True
                return
            self.generated += 1
            gens = build_candidate(fam, coeffs, self.layout)
            if not is_groebner_basis(gens, fam.order):
                self.rejected += 1
                continue
            G = GroebnerBasis(gens, fam.order)
            if initial_ideal(G) != self.target:
                raise AssertionError("valid candidate with the wrong initial ideal")
            yield Candidate(self.generated - 1, tuple(coeffs), gens, G)


def enumerate_candidates(fam: CandidateFamily) -> CandidateStream:
    return CandidateStream(fam)


def unitriangular_change(polys: Sequence[Polynomial], rng: random.Random, grid: Sequence) -> list:
    """Apply X_i -> X_i + Σ_{j>i} c_ij X_j (all at once); this preserves every initial ideal."""
    ring = polys[0].ring
    n = ring.nvars
    images = []
    for i in range(n):
        img = ring.var(i)
        for j in range(i + 1, n):
            c = rng.choice(grid)
            if c:
                img = img + ring.var(j).scale(c)
        images.append(img)
    out = []
    for f in polys:
        acc = ring.zero
        for m, c in f.terms.items():
            t = ring.constant(1).scale(c)
            for i, e in enumerate(m):
                if e:
                    t = t * images[i] ** e
            acc = acc + t
        out.append(acc)
    return out


def orbit_vectors(fam: CandidateFamily, layout) -> Iterable[tuple]:
    """Coefficient vectors of reduced bases of random coordinate changes of the seed ideals."""
    if not fam.seeds:
        raise PreconditionError("orbit mode needs seed ideals")
    rng = random.Random(fam.seed)
    for t in range(fam.count):
        base = fam.seeds[t % len(fam.seeds)]
        moved = unitriangular_change(list(base), rng, fam.coeff_grid)
        R = reduced_basis(buchberger(moved, fam.order, degree_ceiling=fam.degree_ceiling))
        by_lead = {g.leading_monomial(fam.order): g for g in R.elements}
        vec = []
        for _, lead, ms in layout:
            g = by_lead.get(lead)
            if g is None:
                raise PreconditionError("seed ideal does not have the target initial ideal")
            vec.extend(g.coefficient(m) for m in ms)
        yield tuple(vec)


# --------------------------------------------------------------------------
# evaluating candidates


@dataclass
class CandidateOutcome:
    index: int
    generators: list
    smooth: object
    method: str
    singular_points: list
    p0_nonsingular: bool
    genus: int | None = None

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "generators": self.generators,
            "smooth": self.smooth,
            "method": self.method,
            "singular_points": self.singular_points,
            "p0_nonsingular": self.p0_nonsingular,
            "genus": self.genus,
        }


def evaluate_candidate(fam: CandidateFamily, cand: Candidate) -> CandidateOutcome:
    G = cand.basis
    P0 = ProjectivePoint.coordinate(G.ring.nvars, 0, fam.field)
    p0_ok = is_nonsingular_at(G, P0, 1)
    try:
        v = is_smooth_projective_curve(None, fam.order, basis=G, power_bound=fam.power_bound,
                                       degree_ceiling=fam.degree_ceiling, seed=fam.seed + cand.index)
        smooth, method, pts = v.smooth, v.method, [p.to_json() for p in v.singular_points]
    except DegreeCeilingExceeded as exc:
        smooth, method, pts = "inconclusive", f"degree ceiling: {exc}", []
    g = genus(None, fam.order, basis=G).genus if smooth is True else None
    return CandidateOutcome(cand.index, cand.to_json(fam.order), smooth, method, pts, p0_ok, g)


def _evaluate_job(args):
    fam, cand = args
    return evaluate_candidate(fam, cand)


@dataclass
class VerificationReport:
    """Counts satisfy generated = valid + rejected and valid = smooth + singular + inconclusive."""

    family: dict
    generated: int = 0
    valid: int = 0
    rejected: int = 0
    smooth: int = 0
    singular: int = 0
    inconclusive: int = 0
    truncated: bool = False
    exemplars: dict = field(default_factory=dict)
    alarms: list = field(default_factory=list)
    p0_mismatches: list = field(default_factory=list)
    genus_violations: list = field(default_factory=list)
    elapsed: float = 0.0
    expect_smooth: bool = False

    @property
    def passed(self) -> bool:
        """No smooth and no inconclusive candidate (for non-trees), and no property violations."""
        base = not self.p0_mismatches and not self.genus_violations
        if self.expect_smooth:
            return base
        return base and self.smooth == 0 and self.inconclusive == 0

    def record(self, out: CandidateOutcome, free0: bool):
        self.valid += 1
        kind = {True: "smooth", False: "singular"}.get(out.smooth, "inconclusive")
        setattr(self, kind, getattr(self, kind) + 1)
        self.exemplars.setdefault(kind, out.to_json())
        if out.smooth is True and not self.expect_smooth:
            self.alarms.append(out.to_json())
        if out.p0_nonsingular != free0:
            self.p0_mismatches.append(out.to_json())
        if out.smooth is True and out.genus != 0:
            self.genus_violations.append(out.to_json())

    def to_json(self, timing: bool = False) -> dict:
        d = {
            "family": self.family,
            "counts": {
                "generated": self.generated, "valid": self.valid, "rejected": self.rejected,
                "smooth": self.smooth, "singular": self.singular, "inconclusive": self.inconclusive,
            },
            "truncated": self.truncated,
            "passed": self.passed,
            "exemplars": self.exemplars,
            "alarms": self.alarms,
            "p0_mismatches": self.p0_mismatches,
            "genus_violations": self.genus_violations,
        }
        if timing:
            d["elapsed_seconds"] = round(self.elapsed, 3)
        return d

    def table(self) -> str:
        fam = self.family
        rows = [
            ("graph edges", str(fam["graph"]["edges"])),
            ("field / order / mode", f"{fam['field']} / {fam['order']} / {fam['mode']}"),
            ("generated", self.generated), ("valid", self.valid), ("rejected", self.rejected),
            ("smooth", self.smooth), ("singular", self.singular), ("inconclusive", self.inconclusive),
            ("truncated", self.truncated), ("P0 mismatches", len(self.p0_mismatches)),
            ("PASS", self.passed),
        ]
        w = max(len(r[0]) for r in rows)
        return "\n".join(f"{k.ljust(w)}  {v}" for k, v in rows)


def sweep(fam: CandidateFamily, jobs: int = 1, expect_smooth: bool = False,
          keep: list | None = None) -> VerificationReport:
    """Evaluate every valid candidate of the family.

    Results are merged in candidate order, so the report does not depend on ``jobs``.
    If ``keep`` is a list, valid candidates are appended to it.
    """
    start = time.monotonic()
    stream = enumerate_candidates(fam)
    report = VerificationReport(family=fam.describe(), expect_smooth=expect_smooth)
    free0 = fam.graph.is_free(0)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            cands = list(stream)
            outs = ex.map(_evaluate_job, [(fam, c) for c in cands], chunksize=16)
            for c, out in zip(cands, outs):
                report.record(out, free0)
                if keep is not None:
                    keep.append((c, out))
    else:
        for c in stream:
            out = evaluate_candidate(fam, c)
            report.record(out, free0)
            if keep is not None:
                keep.append((c, out))
    report.generated = stream.generated
    report.rejected = stream.rejected
    report.truncated = stream.truncated
    report.elapsed = time.monotonic() - start
    return report


def verify_non_tree_is_singular(graph: Graph, fam: CandidateFamily, jobs: int = 1) -> VerificationReport:
    """Every valid candidate of a connected non-tree must be singular."""
    if is_tree(graph) or not is_connected(graph):
        raise PreconditionError("expected a connected graph that is not a tree")
    if fam.graph != graph:
        raise PreconditionError("family graph differs from the graph under test")
    return sweep(fam, jobs=jobs)


@dataclass
class SmoothingSearchResult:
    status: str  # "found" or "not found within budget"
    source: str | None = None  # "seed" or "search"
    generators: list | None = None
    summary: dict | None = None
    report: VerificationReport | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_json(self) -> dict:
        return {"status": self.status, "source": self.source, "generators": self.generators,
                "summary": self.summary,
                "search": self.report.to_json() if self.report else None}


def find_tree_smoothing(graph: Graph, fam: CandidateFamily,
                        seeds: Sequence[Sequence[Polynomial]] = ()) -> SmoothingSearchResult:
    """First valid, smooth, genus-0 candidate; known witnesses in ``seeds`` are re-certified first."""
    if not is_tree(graph):
        raise PreconditionError("expected a tree")
    target = stanley_reisner(graph.to_complex())
    for gens in seeds:
        G = buchberger(gens, fam.order, degree_ceiling=fam.degree_ceiling)
        if initial_ideal(G) != target:
            continue
        v = is_smooth_projective_curve(None, fam.order, basis=G, power_bound=fam.power_bound,
                                       degree_ceiling=fam.degree_ceiling, seed=fam.seed)
        if v.smooth is True:
            g = genus(None, fam.order, basis=G)
            if g.genus == 0:
                g.smooth, g.verdict = True, v
                return SmoothingSearchResult("found", "seed", [f.to_str(fam.order) for f in reduced_basis(G)],
                                             g.to_json())
    stream = enumerate_candidates(fam)
    report = VerificationReport(family=fam.describe(), expect_smooth=True)
    free0 = graph.is_free(0)
    for c in stream:
        out = evaluate_candidate(fam, c)
        report.record(out, free0)
        if out.smooth is True and out.genus == 0:
            report.generated, report.rejected = stream.generated, stream.rejected
            s = genus(None, fam.order, basis=c.basis)
            s.smooth = True
            return SmoothingSearchResult("found", "search", out.generators, s.to_json(), report)
    report.generated, report.rejected, report.truncated = stream.generated, stream.rejected, stream.truncated
    return SmoothingSearchResult("not found within budget", None, None, None, report)
