"""The m-divisible non-crossing partition poset: construction by delta
sequences along NC, rank census, brute-force M-triangles, and the symbolic
M-triangle from decomposition numbers.

Elements are tuples (w_0; w_1, ..., w_m) of NC indices whose group product is
the Coxeter element with additive absolute lengths; they are enumerated as
m-multichains of NC, which bounds the work by the poset size rather than by
|W|^(m+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from .errors import BudgetExceeded
from .exactmath import M, MPoly, gen_binomial
from .ftriangle import NarayanaVector
from .rootdata import RootSystemType
from .wgroup import (
    DEFAULT_POSET_CAP,
    NCCore,
    Poset,
    build_nc,
    char_poly_at_neg_y,
    decomposition_numbers,
    _iter_bits,
)


@dataclass
class NCmPoset:
    """The m-divisible poset over one irreducible type."""

    type: RootSystemType
    m: int
    core: NCCore
    elements: list[tuple[int, ...]]  # delta tuples of NC indices
    poset: Poset

    @property
    def size(self) -> int:
        return self.poset.size

    def maximum(self) -> int:
        """Index of the unique maximal element (c; identity, ..., identity)."""
        target = (self.core.top,) + (0,) * self.m
        return self.elements.index(target)

    def minimal_count(self) -> int:
        return sum(1 for r in self.poset.ranks if r == 0)


@dataclass(frozen=True)
class MTriangle:
    """Rank-weighted Mobius generating polynomial of an m-divisible poset."""

    type: RootSystemType
    m: int | None
    poly: MPoly


def _count_multichains(core: NCCore, m: int) -> int:
    size = core.size
    vec = [1] * size
    for _ in range(m - 1):
        nxt = [0] * size
        for j in range(size):
            total = 0
            for i in _iter_bits(core.poset.down[j]):
                total += vec[i]
            nxt[j] = total
        vec = nxt
    return sum(vec)


def build_ncm(
    t: RootSystemType,
    m: int,
    group_cap: int | None = None,
    poset_cap: int | None = None,
) -> NCmPoset:
    """Construct the m-divisible poset for an irreducible type at concrete m.

    The order relation is the component-wise reverse of the NC order on
    coordinates 1..m; coordinate 0 is unconstrained.  BudgetExceeded when the
    Mobius pair sweep would exceed the poset cap.
    """
    return _build_ncm(t, m, group_cap, poset_cap)


@lru_cache(maxsize=None)
def _build_ncm(
    t: RootSystemType,
    m: int,
    group_cap: int | None,
    poset_cap: int | None,
) -> NCmPoset:
    if m < 1:
        raise ValueError("m must be a positive integer")
    cap = DEFAULT_POSET_CAP if poset_cap is None else poset_cap
    core = build_nc(t, group_cap)
    n_elements = _count_multichains(core, m)
    if n_elements * n_elements > cap:
        raise BudgetExceeded(
            f"NC^{m}({t}) has {n_elements} elements; {n_elements}^2 pairs exceed the poset cap {cap}",
            n_elements,
        )
    size = core.size
    ups_list = [sorted(_iter_bits(core.poset.up[i])) for i in range(size)]
    top = core.top
    quot = core.quot
    elements: list[tuple[int, ...]] = []

    def extend(chain: list[int]):
        if len(chain) == m:
            delta = [chain[0]]
            for a, b in zip(chain, chain[1:]):
                delta.append(quot[a][b])
            delta.append(quot[chain[-1]][top])
            elements.append(tuple(delta))
            return
        for nxt in ups_list[chain[-1]]:
            chain.append(nxt)
            extend(chain)
            chain.pop()

    for start in range(size):
        extend([start])
    assert len(elements) == n_elements
    elements.sort()
    N = len(elements)
    ranks = [core.poset.ranks[delta[0]] for delta in elements]

    # up-mask per element: intersection over coordinates 1..m of the sets
    # {B : B[i] <= delta[i] in NC}
    coord_masks: list[dict[int, int]] = []
    for i in range(1, m + 1):
        with_coord: dict[int, int] = {}
        for b_idx, delta in enumerate(elements):
            with_coord[delta[i]] = with_coord.get(delta[i], 0) | (1 << b_idx)
        le_mask: dict[int, int] = {}
        for p in range(size):
            acc = 0
            for q in _iter_bits(core.poset.down[p]):
                acc |= with_coord.get(q, 0)
            le_mask[p] = acc
        coord_masks.append(le_mask)
    up = []
    for delta in elements:
        mask = coord_masks[0][delta[1]] if m >= 1 else (1 << N) - 1
        for i in range(2, m + 1):
            mask &= coord_masks[i - 1][delta[i]]
        up.append(mask)
    poset = Poset(ranks, up)
    ncm = NCmPoset(t, m, core, elements, poset)
    # the unique maximum (c; identity, ..., identity)
    top_idx = ncm.maximum()
    assert all(up[i] >> top_idx & 1 for i in range(N)), "maximum is not above everything"
    assert ranks[top_idx] == t.rank
    return ncm


def rank_census(
    t: RootSystemType, m: int, group_cap: int | None = None, poset_cap: int | None = None
) -> NarayanaVector:
    """Counts of elements by rank: the Fuss-Narayana numbers at concrete m."""
    ncm = build_ncm(t, m, group_cap, poset_cap)
    counts = ncm.poset.rank_counts()
    return NarayanaVector(t, tuple(counts))


def m_triangle_bruteforce(
    t: RootSystemType, m: int, group_cap: int | None = None, poset_cap: int | None = None
) -> MTriangle:
    """The M-triangle by the generic Mobius recursion over all related pairs."""
    ncm = build_ncm(t, m, group_cap, poset_cap)
    return MTriangle(t, m, ncm.poset.m_triangle())


def mtriangle_rhs_transform(mt: MPoly, n: int) -> MPoly:
    """Re-index an M-triangle by the dual-poset sign conventions: each term
    c x^i y^j becomes c (-1)^(2n-i-j) x^(n-i) y^(n-j)."""
    terms = {}
    for (i, j), c in mt.terms.items():
        sign = -1 if (2 * n - i - j) % 2 else 1
        terms[(n - i, n - j)] = c * sign
    return MPoly(terms)


def m_triangle_formula(t: RootSystemType, group_cap: int | None = None) -> MTriangle:
    """The symbolic-m counterpart of the transformed M-triangle, assembled
    from decomposition numbers, characteristic polynomials at -y, and
    binomial weights in m.

    The result carries the same sign and dual conventions as
    mtriangle_rhs_transform of the brute-force M-triangle.
    """
    table = decomposition_numbers(t, group_cap=group_cap)
    acc = MPoly.zero()
    from math import factorial

    for key, n_value in table.counts.items():
        d = len(key)
        orderings = factorial(d)
        seen: dict[RootSystemType, int] = {}
        for T in key:
            seen[T] = seen.get(T, 0) + 1
        for cnt in seen.values():
            orderings //= factorial(cnt)
        prod = MPoly.const(1)
        for T in key:
            prod = prod * char_poly_at_neg_y(T, group_cap)
        rksum = sum(T.rank for T in key)
        weight = gen_binomial(M, d) * (n_value * orderings)
        sign = -1 if rksum % 2 else 1
        acc = acc + prod * MPoly.term(rksum, 0, weight * sign)
    return MTriangle(t, None, acc)


def export_poset_obj(
    t: RootSystemType, m: int, group_cap: int | None = None, poset_cap: int | None = None
) -> dict:
    """Hasse diagram export: ranks plus covering edges, JSON-ready."""
    ncm = build_ncm(t, m, group_cap, poset_cap)
    poset = ncm.poset
    edges = []
    for i in range(poset.size):
        ri = poset.ranks[i]
        for j in _iter_bits(poset.up[i]):
            if j != i and poset.ranks[j] == ri + 1:
                edges.append([i, j])
    edges.sort()
    return {
        "type": str(t),
        "m": m,
        "num_elements": poset.size,
        "ranks": list(poset.ranks),
        "elements": [list(d) for d in ncm.elements],
        "hasse_edges": edges,
        "num_minimal": ncm.minimal_count(),
    }
