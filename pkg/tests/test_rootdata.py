"""Root-system catalog: type algebra, simple systems, deletions, and the
subsystem classifier."""

import random
from fractions import Fraction

import pytest

from catwb.errors import ClassificationError, TypeParseError
from catwb.rootdata import (
    RootSystemType,
    classify_subsystem,
    deletion_types,
    diagram_edges,
    dot,
    golden_root_system,
    group_order,
    ir,
    positive_root_count,
    simple_system,
)
from catwb.rootdata import _pair_label


class TestTypeAlgebra:
    @pytest.mark.parametrize(
        "s,canon",
        [
            ("A5", "A5"),
            ("B3xA1", "B3xA1"),
            ("A1xB3", "B3xA1"),
            ("I2(7)", "I2(7)"),
            ("I2(3)", "A2"),
            ("I2(4)", "B2"),
            ("I2(5)", "I2(5)"),
            ("B1", "A1"),
            ("D2", "A1xA1"),
            ("D3", "A3"),
            ("D4", "D4"),
            ("D2xD3", "A3xA1xA1"),
            ("e", "e"),
        ],
    )
    def test_parse_canonical(self, s, canon):
        assert str(RootSystemType.parse(s)) == canon

    def test_roundtrip(self):
        for s in ["A5", "B3xA1", "I2(7)", "D4", "E8", "H4xA2"]:
            t = RootSystemType.parse(s)
            assert RootSystemType.parse(str(t)) == t

    @pytest.mark.parametrize("bad", ["Q3", "A", "I2()", "A0", "D1", "F5", "E5", "H5", "I2(2)"])
    def test_parse_errors(self, bad):
        with pytest.raises(TypeParseError):
            RootSystemType.parse(bad)

    def test_rank_and_product(self):
        t = ir("B3") * ir("A2")
        assert t.rank == 5
        assert str(t) == "B3xA2"

    def test_group_orders(self):
        assert group_order(ir("A3")) == 24
        assert group_order(ir("B3")) == 48
        assert group_order(ir("D4")) == 192
        assert group_order(ir("H3")) == 120
        assert group_order(ir("E8")) == 696729600
        assert group_order(ir("I2(7)")) == 14


class TestDeletions:
    def test_a3(self):
        assert [str(t) for t in deletion_types(ir("A3"))] == ["A2", "A1xA1", "A2"]

    def test_d4(self):
        got = sorted(str(t) for t in deletion_types(ir("D4")))
        assert got == ["A1xA1xA1", "A3", "A3", "A3"]

    def test_i2(self):
        assert [str(t) for t in deletion_types(ir("I2(9)"))] == ["A1", "A1"]

    def test_h3_h4(self):
        assert sorted(str(t) for t in deletion_types(ir("H3"))) == ["A1xA1", "A2", "I2(5)"]
        assert sorted(str(t) for t in deletion_types(ir("H4"))) == [
            "A2xA1",
            "A3",
            "H3",
            "I2(5)xA1",
        ]

    def test_f4(self):
        assert sorted(str(t) for t in deletion_types(ir("F4"))) == ["A2xA1", "A2xA1", "B3", "B3"]

    def test_e8(self):
        got = sorted(str(t) for t in deletion_types(ir("E8")))
        assert got == sorted(
            ["D7", "A7", "A6xA1", "A4xA2xA1", "A4xA3", "D5xA2", "E6xA1", "E7"]
        )

    @pytest.mark.parametrize(
        "s", ["A5", "B6", "D6", "E6", "E7", "E8", "F4", "H3", "H4", "I2(10)"]
    )
    def test_rank_bookkeeping(self, s):
        t = ir(s)
        dels = deletion_types(t)
        assert len(dels) == t.rank
        assert all(d.rank == t.rank - 1 for d in dels)


class TestSimpleSystems:
    @pytest.mark.parametrize("s", ["A4", "B4", "D5", "F4", "E6", "E7", "E8", "H3", "H4"])
    def test_angles_reproduce_diagram(self, s):
        f = ir(s).single()
        ss = simple_system(f)
        expected = {(i, j): lab for i, j, lab in diagram_edges(f)}
        n = f.rank
        for i in range(n):
            for j in range(i + 1, n):
                lab = _pair_label(ss.vectors[i], ss.vectors[j])
                assert lab == expected.get((i, j), 2)

    def test_golden_root_counts(self):
        assert len(golden_root_system(3)) == 30
        assert len(golden_root_system(4)) == 120

    def test_positive_root_counts(self):
        assert positive_root_count(ir("H3")) == 15
        assert positive_root_count(ir("H4")) == 60
        assert positive_root_count(ir("F4")) == 24
        assert positive_root_count(ir("E6")) == 36
        assert positive_root_count(ir("A5")) == 15
        assert positive_root_count(ir("D4")) == 12


def _span_roots(vectors):
    """Closed subsystem generated inside a known root list: here input roots
    are already full subsystems, so this is the identity."""
    return list(vectors)


class TestClassify:
    def test_orthogonal_pair(self):
        roots = [(1, -1, 0, 0), (0, 0, 1, -1)]
        roots = [tuple(Fraction(c) for c in v) for v in roots]
        assert str(classify_subsystem(roots)) == "A1xA1"

    def test_full_f4(self):
        ss = simple_system(ir("F4").single())
        # generate all roots by reflection closure of the simple system
        from catwb.rootdata import _reflect

        roots = set(ss.vectors)
        frontier = list(ss.vectors)
        while frontier:
            new = []
            for beta in frontier:
                for alpha in ss.vectors:
                    img = _reflect(beta, alpha, dot)
                    if img not in roots:
                        roots.add(img)
                        new.append(img)
            frontier = new
        assert len(roots) == 48
        assert str(classify_subsystem(roots)) == "F4"

    def test_a2_from_three_roots(self):
        roots = [(1, -1, 0), (0, 1, -1), (1, 0, -1)]
        roots = [tuple(Fraction(c) for c in v) for v in roots]
        assert str(classify_subsystem(roots)) == "A2"

    def test_b2_inside_b3(self):
        roots = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0)]
        roots = [tuple(Fraction(c) for c in v) for v in roots]
        assert str(classify_subsystem(roots)) == "B2"

    def test_signed_permutation_invariance(self):
        rng = random.Random(5)
        base = [(1, -1, 0, 0), (0, 1, -1, 0), (1, 0, -1, 0)]  # an A2 inside B4
        base = [tuple(Fraction(c) for c in v) for v in base]
        for _ in range(10):
            perm = list(range(4))
            rng.shuffle(perm)
            signs = [rng.choice((1, -1)) for _ in range(4)]
            moved = [
                tuple(signs[perm[i]] * v[perm[i]] for i in range(4)) for v in base
            ]
            assert str(classify_subsystem(moved)) == "A2"

    def test_not_closed_raises(self):
        roots = [(1, -1, 0), (1, 0, -1)]  # reflection closure needs (0, 1, -1)
        roots = [tuple(Fraction(c) for c in v) for v in roots]
        with pytest.raises(ClassificationError):
            classify_subsystem(roots)
