from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from herzog.collapse import Graph, cycle_graph, path_graph, star_graph
from herzog.errors import PreconditionError
from herzog.groebner import MonomialIdeal
from herzog.poly import GF, QQ, format_monomial
from herzog.simplicial import (
    SimplicialComplex,
    a_invariant_negative,
    complex_of,
    hilbert_series,
    hochster_degree_zero,
    is_acyclic,
    is_cohen_macaulay,
    minimal_nonfaces,
    reduced_homology,
    standard_monomial_count,
    stanley_reisner,
)

from oracles import graph_homology, standard_count

FIELDS = [QQ, GF(2), GF(3)]


def antichains(nvertices):
    """Every simplicial complex on {0..nvertices-1}, given by its facets."""
    subsets = sorted((frozenset(c) for k in range(nvertices + 1) for c in combinations(range(nvertices), k)),
                     key=len, reverse=True)

    def rec(i, chosen):
        if i == len(subsets):
            yield list(chosen)
            return
        s = subsets[i]
        yield from rec(i + 1, chosen)
        if not any(s <= c for c in chosen):
            chosen.append(s)
            yield from rec(i + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


ALL4 = [SimplicialComplex(4, f) for f in antichains(4)]


def sr_strings(delta):
    return [format_monomial(m) for m in stanley_reisner(delta).generators]


def graph(n, edges):
    return Graph(n, edges).to_complex()


class TestStanleyReisner:
    def test_simplex_has_no_nonfaces(self):
        assert minimal_nonfaces(SimplicialComplex.simplex(4)) == []

    def test_four_cycle(self):
        assert minimal_nonfaces(cycle_graph(4).to_complex()) == [frozenset({0, 2}), frozenset({1, 3})]

    def test_triangle(self):
        assert minimal_nonfaces(cycle_graph(3).to_complex()) == [frozenset({0, 1, 2})]

    def test_path_and_star(self):
        assert sorted(sr_strings(path_graph(4).to_complex())) == ["X0*X2", "X0*X3", "X1*X3"]
        assert sorted(sr_strings(star_graph(4, 3).to_complex())) == ["X0*X1", "X0*X2", "X1*X2"]

    def test_graph_nonfaces_have_size_two_or_three(self):
        for mask in range(1 << 10):
            pairs = list(combinations(range(5), 2))
            delta = graph(5, [pairs[i] for i in range(10) if mask >> i & 1])
            assert all(len(s) in (2, 3) for s in minimal_nonfaces(delta))

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_round_trip_exhaustive(self, n):
        count = 0
        for facets in antichains(n):
            delta = SimplicialComplex(n, facets)
            assert complex_of(stanley_reisner(delta), n) == delta
            count += 1
        assert count == {1: 3, 2: 6, 3: 20, 4: 168, 5: 7581}[n]

    def test_complex_of_rejects_non_squarefree(self):
        with pytest.raises(ValueError):
            complex_of(MonomialIdeal.from_monomials(2, [(2, 0)]), 2)

    def test_full_vertex_flag(self):
        with pytest.raises(PreconditionError):
            SimplicialComplex(3, [{0, 1}], full_vertex_set=True)


class TestHomology:
    @pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.name)
    def test_trees_acyclic(self, field):
        for G in (path_graph(5), star_graph(5), Graph(4, [(0, 1), (1, 2), (1, 3)])):
            h = reduced_homology(G.to_complex(), field)
            assert h.as_list() == [0, 0, 0] and is_acyclic(G.to_complex(), field)

    @pytest.mark.parametrize("k", [3, 4, 5, 6])
    @pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.name)
    def test_cycles(self, k, field):
        h = reduced_homology(cycle_graph(k).to_complex(), field)
        assert h[0] == 0 and h[1] == 1

    def test_two_disjoint_edges(self):
        assert reduced_homology(graph(4, [(0, 1), (2, 3)]), QQ)[0] == 1

    def test_empty_face_only(self):
        assert reduced_homology(SimplicialComplex(0, [frozenset()]), QQ).ranks == {-1: 1}

    @given(st.integers(1, 6), st.data(), st.sampled_from(FIELDS))
    def test_graphs_against_components_oracle(self, n, data, field):
        pairs = list(combinations(range(n), 2))
        edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        h = reduced_homology(graph(n, edges), field)
        ref = graph_homology(n, edges)
        assert all(h[i] == ref[i] for i in (-1, 0, 1))

    def test_euler_characteristic(self):
        for delta in ALL4:
            if not delta.facets:
                continue
            fv = delta.f_vector()
            chi = sum((-1) ** (i - 1) * f for i, f in enumerate(fv))
            for field in (QQ, GF(2)):
                h = reduced_homology(delta, field)
                assert chi == sum((-1) ** i * r for i, r in h.ranks.items())

    def test_fields_agree_on_graphs(self):
        for mask in range(1 << 10):
            pairs = list(combinations(range(5), 2))
            delta = graph(5, [pairs[i] for i in range(10) if mask >> i & 1])
            assert reduced_homology(delta, QQ).ranks == reduced_homology(delta, GF(2)).ranks


class TestCohenMacaulay:
    def test_path(self):
        d = path_graph(4).to_complex()
        assert is_cohen_macaulay(d, QQ) and a_invariant_negative(d, QQ)

    def test_four_cycle(self):
        d = cycle_graph(4).to_complex()
        assert is_cohen_macaulay(d, QQ) and not a_invariant_negative(d, QQ)

    def test_disjoint_edges(self):
        assert not is_cohen_macaulay(graph(4, [(0, 1), (2, 3)]), QQ)

    def test_hochster_dictionary(self):
        assert hochster_degree_zero(path_graph(5).to_complex()) == {1: 0, 2: 0}
        assert hochster_degree_zero(cycle_graph(4).to_complex())[2] == 1
        assert hochster_degree_zero(cycle_graph(3).to_complex())[2] == 1

    def test_hochster_is_shifted_homology(self):
        for delta in ALL4:
            if delta.dimension < 0:
                continue
            h = reduced_homology(delta, QQ)
            assert hochster_degree_zero(delta, QQ) == {i + 1: h[i] for i in range(delta.dimension + 1)}


class TestSeries:
    def test_point(self):
        s = hilbert_series(SimplicialComplex(1, [{0}]))
        assert (s.h_vector, s.d) == ((1,), 1)

    def test_path_three_vertices(self):
        d = path_graph(3).to_complex()
        s = hilbert_series(d)
        assert (s.h_vector, s.d) == ((1, 1), 2)
        mnf = [tuple(1 if i in f else 0 for i in range(3)) for f in minimal_nonfaces(d)]
        for t in range(5):
            assert standard_monomial_count(d, t) == standard_count(mnf, 3, t)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_path_polynomial(self, n):
        assert hilbert_series(path_graph(n + 1).to_complex()).hilbert_polynomial == (1, n)

    def test_series_matches_counting(self):
        for delta in ALL4:
            if not delta.facets:
                continue
            s = hilbert_series(delta)
            # expand h(t)/(1-t)^d and compare coefficients up to degree 5
            for t in range(6):
                val = sum(h * comb(t - j + s.d - 1, s.d - 1) for j, h in enumerate(s.h_vector) if j <= t) \
                    if s.d else (s.h_vector[t] if t < len(s.h_vector) else 0)
                assert val == standard_monomial_count(delta, t)
