"""m-divisible posets: construction, censuses, M-triangles both ways."""

import pytest

from catwb.errors import BudgetExceeded
from catwb.exactmath import M, MPoly, MUniPoly
from catwb.ftriangle import narayana_closed, row_sum
from catwb.ncposet import (
    build_ncm,
    export_poset_obj,
    m_triangle_bruteforce,
    m_triangle_formula,
    mtriangle_rhs_transform,
    rank_census,
)
from catwb.rootdata import ir
from catwb.wgroup import build_nc


class TestBuildNcm:
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_rank_one(self, m):
        p = build_ncm(ir("A1"), m)
        assert p.size == m + 1
        assert p.poset.rank_counts() == [m, 1]
        assert p.minimal_count() == m

    def test_m1_is_nc(self):
        t = ir("A2")
        core = build_nc(t)
        p = build_ncm(t, 1)
        assert p.size == core.size
        # coordinate-0 mapping is a rank-preserving order isomorphism
        index_map = [delta[0] for delta in p.elements]
        for i in range(p.size):
            assert p.poset.ranks[i] == core.poset.ranks[index_map[i]]
            for j in range(p.size):
                assert p.poset.leq(i, j) == core.poset.leq(index_map[i], index_map[j])

    def test_i2_5_m2_census(self):
        p = build_ncm(ir("I2(5)"), 2)
        assert p.size == 18
        assert p.poset.rank_counts() == [7, 10, 1]
        assert row_sum(ir("I2(5)"), 2).eval(2) == 18

    def test_unique_maximum(self):
        p = build_ncm(ir("B2"), 3)
        top = p.maximum()
        assert all(p.poset.leq(i, top) for i in range(p.size))

    @pytest.mark.parametrize("s,m", [("B2", 2), ("A3", 2), ("I2(5)", 3)])
    def test_ground_set_definition(self, s, m):
        # every delta tuple multiplies out to the Coxeter element with
        # additive reflection lengths, and rank is the length of slot zero
        t = ir(s)
        p = build_ncm(t, m)
        core = p.core
        from catwb.wgroup import enumerate_group

        g = enumerate_group(t.single())
        mul = g.backend.mul
        for idx, delta in enumerate(p.elements):
            words = [core.elements[i] for i in delta]
            prod = words[0]
            for w in words[1:]:
                prod = mul(prod, w)
            assert prod == g.coxeter
            assert sum(g.abs_length_of(w) for w in words) == t.rank
            assert p.poset.ranks[idx] == g.abs_length_of(words[0])

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            build_ncm(ir("A3"), 3, poset_cap=100)

    @pytest.mark.parametrize("s,m", [("A2", 2), ("B2", 2), ("I2(5)", 3)])
    def test_graded(self, s, m):
        # every element of positive rank has a lower cover one rank down
        p = build_ncm(ir(s), m).poset
        for j in range(p.size):
            if p.ranks[j] == 0:
                continue
            covers = [
                i
                for i in range(p.size)
                if i != j and p.leq(i, j) and p.ranks[i] == p.ranks[j] - 1
            ]
            assert covers, f"element {j} has no lower cover"


class TestRankCensus:
    @pytest.mark.parametrize("s,m", [("A2", 2), ("A3", 2), ("B2", 3), ("B3", 2)])
    def test_matches_closed_formula(self, s, m):
        t = ir(s)
        vec = rank_census(t, m)
        closed = [e.eval(m) for e in narayana_closed(t).entries]
        assert list(vec.entries) == closed

    def test_a2_m2_rank1(self):
        assert rank_census(ir("A2"), 2).entries[1] == 6

    def test_census_total_equals_top_row_sum(self):
        for s, m in [("A2", 3), ("B2", 2), ("D4", 2), ("H3", 2), ("I2(6)", 3)]:
            t = ir(s)
            total = sum(rank_census(t, m).entries)
            assert total == row_sum(t, t.rank).eval(m)


class TestMTriangles:
    def test_a1_bruteforce(self):
        for m in (1, 2, 3, 4):
            mt = m_triangle_bruteforce(ir("A1"), m)
            expected = MPoly(
                {(0, 0): MUniPoly.const(m), (1, 1): MUniPoly.const(1), (0, 1): MUniPoly.const(-m)}
            )
            assert mt.poly == expected

    def test_a2_m1(self):
        mt = m_triangle_bruteforce(ir("A2"), 1).poly
        x, y = MPoly.x(), MPoly.y()
        expected = 1 - 3 * y + 2 * y**2 + 3 * x * y - 3 * x * y**2 + x**2 * y**2
        assert mt == expected

    def test_const_term_counts_minimals(self):
        for s, m in [("A2", 2), ("B2", 3), ("I2(7)", 2)]:
            p = build_ncm(ir(s), m)
            mt = m_triangle_bruteforce(ir(s), m).poly
            assert mt.coeff(0, 0).constant_value() == p.minimal_count()
            assert mt.coeff(ir(s).rank, ir(s).rank) == MUniPoly.const(1)

    def test_formula_a1(self):
        assert m_triangle_formula(ir("A1")).poly == MPoly(
            {(0, 0): MUniPoly.const(1), (1, 0): M, (1, 1): M}
        )

    @pytest.mark.parametrize("s", ["A2", "A3", "B2", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "H3"])
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_formula_matches_bruteforce(self, s, m):
        t = ir(s)
        sym = m_triangle_formula(t).poly.eval_m(m)
        brute = mtriangle_rhs_transform(m_triangle_bruteforce(t, m).poly, t.rank)
        assert sym == brute

    def test_i2_formula_expansion(self):
        # the displayed expansion for the dihedral types
        for a in (4, 7):
            t = ir(f"I2({a})")
            from catwb.exactmath import gen_binomial

            x, y = MPoly.x(), MPoly.y()
            expected = (
                MPoly.term(2, 0, 1) * (y**2 + a * y + (a - 1)) * M
                + MPoly.term(2, 0, a) * (-y - 1) ** 2 * gen_binomial(M, 2)
                + MPoly.term(1, 0, a) * (-y - 1) * (-1) * M
                + 1
            )
            assert m_triangle_formula(t).poly == expected


class TestZetaRoute:
    @pytest.mark.parametrize("s,m", [("B2", 2), ("A2", 2), ("I2(5)", 2)])
    def test_m_triangle_via_zeta_interpolation(self, s, m):
        # rebuild the M-triangle from multichain counts interpolated at z = -1;
        # fully independent of the Mobius recursion apart from its own assert
        t = ir(s)
        p = build_ncm(t, m).poset
        terms = {}
        for u in range(p.size):
            for w in range(p.size):
                if not p.leq(u, w):
                    continue
                coeffs = p.zeta_poly(u, w)
                mu = sum(c * (-1) ** i for i, c in enumerate(coeffs))
                key = (p.ranks[u], p.ranks[w])
                terms[key] = terms.get(key, 0) + mu
        rebuilt = MPoly({k: MUniPoly.const(v) for k, v in terms.items() if v})
        assert rebuilt == m_triangle_bruteforce(t, m).poly


class TestExport:
    def test_a2_m1(self):
        obj = export_poset_obj(ir("A2"), 1)
        assert obj["num_elements"] == 5
        assert obj["num_minimal"] == 1
        # hasse edges: identity below three reflections, three reflections below top
        assert len(obj["hasse_edges"]) == 6

    def test_a1_m4(self):
        obj = export_poset_obj(ir("A1"), 4)
        assert obj["num_elements"] == 5
        assert obj["num_minimal"] == 4

    def test_schema(self):
        import json
        import jsonschema
        from pathlib import Path

        schema = json.loads(
            (Path(__file__).parent.parent / "src/catwb/schemas/poset.schema.json").read_text()
        )
        jsonschema.validate(export_poset_obj(ir("B2"), 2), schema)
