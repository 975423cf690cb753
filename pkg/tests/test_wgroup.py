"""Reflection-group engine: enumeration, absolute order, NC posets, Mobius
machinery, classification, decomposition numbers, chain counts."""

import random

import pytest

from catwb.errors import BudgetExceeded, NotComparable
from catwb.rootdata import group_order, ir
from catwb.wgroup import (
    _iter_bits,
    abs_length,
    abs_leq,
    build_nc,
    chain_count_formula,
    chain_counts_classical,
    char_poly,
    coxeter_element,
    decomposition_numbers,
    enumerate_group,
    interval_rank_genfun,
    mobius,
    nc_rank_genfun,
    zeta_poly,
)

from golden import GOLDEN_CHAR, golden_char_i2, golden_decomp_i2, GOLDEN_DECOMP

SMALL_GROUPS = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "D5", "H3", "F4"] + [
    f"I2({a})" for a in range(3, 11)
]


class TestEnumeration:
    def test_a2(self):
        g = enumerate_group(ir("A2").single())
        assert g.order == 6
        assert len(g.reflections) == 3

    def test_h3(self):
        g = enumerate_group(ir("H3").single())
        assert g.order == 120
        assert len(g.reflections) == 15

    def test_dihedral(self):
        g = enumerate_group(ir("I2(7)").single())
        assert g.order == 14
        assert len(g.reflections) == 7

    @pytest.mark.parametrize("s", SMALL_GROUPS)
    def test_orders_match_catalog(self, s):
        f = ir(s).single()
        assert enumerate_group(f).order == group_order(ir(s))

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            enumerate_group(ir("E7").single())
        with pytest.raises(BudgetExceeded):
            enumerate_group(ir("E6").single(), group_cap=1000)


class TestAbsoluteOrder:
    def test_identity_and_reflections(self):
        g = enumerate_group(ir("B3").single())
        assert abs_length(g, g.backend.identity) == 0
        for t in g.reflections:
            assert abs_length(g, t) == 1

    def test_coxeter_length_f4(self):
        g = enumerate_group(ir("F4").single())
        assert abs_length(g, coxeter_element(g)) == 4

    @pytest.mark.parametrize("s", SMALL_GROUPS)
    def test_methods_agree_full_sweep(self, s):
        g = enumerate_group(ir(s).single())
        if g.order > 2000:
            pytest.skip("covered by the sampled sweep")
        for i, w in enumerate(g.elements):
            assert g.backend.fixed_space_codim(w) == g.abs_len[i]

    @pytest.mark.parametrize("s", ["H4", "E6"])
    def test_methods_agree_sampled(self, s):
        g = enumerate_group(ir(s).single())
        rng = random.Random(17)
        for w in rng.sample(g.elements, 500):
            assert g.backend.fixed_space_codim(w) == g.abs_length_of(w)

    def test_abs_leq(self):
        g = enumerate_group(ir("A3").single())
        c = coxeter_element(g)
        e = g.backend.identity
        assert abs_leq(g, e, c)
        assert abs_leq(g, c, c)
        assert not abs_leq(g, c, e)


class TestNCPoset:
    def test_sizes(self):
        assert build_nc(ir("A2")).size == 5
        assert build_nc(ir("B2")).size == 6
        assert build_nc(ir("D4")).size == 50
        assert build_nc(ir("I2(6)")).size == 8

    def test_rank_census_b2(self):
        assert build_nc(ir("B2")).poset.rank_counts() == [1, 4, 1]

    def test_mobius(self):
        core = build_nc(ir("A2"))
        assert mobius(core, 0, 0) == 1
        assert mobius(core, 0, core.top) == 2
        with pytest.raises(NotComparable):
            mobius(core, 1, 2)  # two distinct reflections

    def test_mobius_h4_top(self):
        core = build_nc(ir("H4"))
        assert mobius(core, 0, core.top) == 232

    def test_mobius_alternating_sum_zero(self):
        # column sums of the Mobius vector vanish for rank >= 1
        for s in ("A3", "B3", "I2(7)", "H3"):
            core = build_nc(ir(s))
            g_top = core.poset.mobius_column_vectors()[core.top]
            assert sum(g_top) == 0

    def test_zeta_poly(self):
        core = build_nc(ir("A2"))
        coeffs = zeta_poly(core, 0, core.top)
        # Z(1) = 1, Z(2) = interval size = 5
        def ev(z):
            return sum(c * z**i for i, c in enumerate(coeffs))

        assert ev(1) == 1
        assert ev(2) == 5
        assert ev(-1) == 2

    def test_parabolic_types(self):
        core = build_nc(ir("D4"))
        assert str(core.partypes[core.top]) == "D4"
        counts = {}
        for t in core.partypes:
            counts[str(t)] = counts.get(str(t), 0) + 1
        assert counts["e"] == 1
        assert counts["A1"] == 12  # one per positive root

    def test_parabolic_type_of_reflection_in_h3(self):
        core = build_nc(ir("H3"))
        refl_types = [str(core.partypes[i]) for i in range(core.size) if core.poset.ranks[i] == 1]
        assert refl_types == ["A1"] * 15

    def test_nc_e6_size(self):
        assert build_nc(ir("E6")).size == 833

    @pytest.mark.parametrize("s", ["A3", "B3", "H3", "I2(8)"])
    def test_order_relation_is_a_partial_order(self, s):
        poset = build_nc(ir(s)).poset
        for i in range(poset.size):
            assert poset.leq(i, i)
            for j in _iter_bits(poset.up[i]):
                # transitivity: everything above j sits above i
                assert poset.up[j] & ~poset.up[i] == 0
                # antisymmetry via strict rank increase off the diagonal
                if i != j:
                    assert poset.ranks[i] < poset.ranks[j]


class TestCharPoly:
    @pytest.mark.parametrize("s", ["A1", "A2", "A3", "A4", "B3", "D4", "H3", "F4"])
    def test_matches_table(self, s):
        assert char_poly(ir(s)) == GOLDEN_CHAR[s]

    def test_i2(self):
        for a in range(3, 11):
            assert char_poly(ir(f"I2({a})")) == golden_char_i2(a)

    def test_multiplicative(self):
        assert char_poly(ir("A2xA1")) == char_poly(ir("A2")) * char_poly(ir("A1"))

    def test_chi_at_one_vanishes(self):
        for s in ("A4", "B3", "D4", "H3", "I2(9)"):
            chi = char_poly(ir(s))
            total = sum(c.constant_value() for _, _, c in chi.iter_terms())
            assert total == 0


class TestDecomposition:
    def test_i2(self):
        for a in (3, 4, 5, 6, 9):
            table = decomposition_numbers(ir(f"I2({a})"))
            for key, value in golden_decomp_i2(a).items():
                assert table.n(*(ir(s) for s in key)) == value
            assert table.counts[()] == 1

    def test_h3_exact_table(self):
        table = decomposition_numbers(ir("H3"))
        for key, value in GOLDEN_DECOMP["H3"].items():
            assert table.n(*(ir(s) for s in key)) == value, key
        # full-rank support is exactly the listed set
        listed = {tuple(sorted((ir(s) for s in key), key=lambda t: (t.rank, str(t)))) for key in GOLDEN_DECOMP["H3"]}
        assert set(table.full_rank_entries()) == listed
        assert table.closure_violations() == []

    def test_f4_closure(self):
        table = decomposition_numbers(ir("F4"))
        assert table.closure_violations() == []

    def test_symmetry_is_enforced(self):
        # the builder itself verifies permutation symmetry; reaching here means it held
        table = decomposition_numbers(ir("B3"))
        assert table.n(ir("A1"), ir("B2")) == table.n(ir("B2"), ir("A1"))


class TestDiskCache:
    def test_core_roundtrip_bit_identical(self, tmp_path):
        from catwb.cache import ResultCache
        from catwb.wgroup import nc_core_from_obj, nc_core_to_obj

        core = build_nc(ir("B3"))
        obj = nc_core_to_obj(core)
        again = nc_core_to_obj(nc_core_from_obj(obj))
        assert again == obj
        cache = ResultCache(tmp_path)
        cache.put("nccore", "B3", obj)
        assert cache.get("nccore", "B3") == obj
        loaded = nc_core_from_obj(cache.get("nccore", "B3"))
        assert loaded.poset.up == core.poset.up
        assert loaded.quot == core.quot
        assert loaded.partypes == core.partypes

    def test_loaded_core_drives_downstream(self, tmp_path):
        from catwb.wgroup import nc_core_from_obj, nc_core_to_obj

        core = nc_core_from_obj(nc_core_to_obj(build_nc(ir("H3"))))
        g_top = core.poset.mobius_column_vectors()[core.top]
        assert g_top == [-21, 35, -15, 1]


class TestBessisIntervals:
    @pytest.mark.parametrize("s", ["A4", "B3", "D4", "H3", "F4"])
    def test_interval_rank_genfun_matches_parabolic(self, s):
        core = build_nc(ir(s))
        for w in range(core.size):
            got = tuple(interval_rank_genfun(core, w))
            expected = nc_rank_genfun(core.partypes[w])
            assert got == expected, (s, w, core.partypes[w])


class TestChainCounts:
    def test_formula_examples(self):
        assert chain_count_formula(ir("A2"), 1, (1, 1)) == 3
        assert chain_count_formula(ir("B2"), 2, (2,)) == 1

    def test_a2_brute(self):
        res = chain_counts_classical(ir("A2"), 1, (1, 1))
        assert res.formula == res.brute == 3

    def test_d4_eq40(self):
        res = chain_counts_classical(ir("D4"), 1, (1, 1, 2))
        assert res.brute is not None
        assert res.formula == res.brute

    def test_zero_jumps_allowed(self):
        full = chain_counts_classical(ir("A2"), 2, (1, 1))
        padded = chain_counts_classical(ir("A2"), 2, (1, 0, 1))
        assert padded.formula == full.formula
        assert padded.brute == full.brute
