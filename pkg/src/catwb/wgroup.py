"""Finite reflection-group engine.

Provides per-family exact element representations (permutations for A, signed
permutations for B/D, root-index permutations with exact matrices for F4, E6,
H3, H4, abstract rotation/reflection indices for the dihedral types), absolute
length and order, the non-crossing partition poset NC, Mobius machinery,
characteristic polynomials, parabolic-type classification and decomposition
numbers.

Element tables and posets are immutable once built and cached per type.  E7
and E8 exceed the default group cap and are rejected up front.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import factorial

from .errors import BudgetExceeded, ClassificationError, NotComparable, UnsupportedType
from .exactmath import M, MPoly, MUniPoly, QuadExt, gen_binomial
from .rootdata import (
    Irreducible,
    RootSystemType,
    _classify_diagram,
    _label_from_cos2 as _angle_label,
    dot,
    group_order,
    simple_system,
)

DEFAULT_GROUP_CAP = 100_000
DEFAULT_POSET_CAP = 2_000_000  # pairs visited by a Mobius sweep


# ---------------------------------------------------------------------------
# Exact linear algebra helpers (tiny matrices over Fraction or QuadExt)
# ---------------------------------------------------------------------------


def _nullspace(rows, zero, one):
    """Kernel basis of the matrix given by `rows` acting on column vectors."""
    ncols = len(rows[0]) if rows else 0
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    basis = []
    pivot_of_col = {c: i for i, c in enumerate(pivots)}
    for fc in range(ncols):
        if fc in pivot_of_col:
            continue
        v = [zero] * ncols
        v[fc] = one
        for pc, pr in pivot_of_col.items():
            v[pc] = zero - mat[pr][fc]
        basis.append(tuple(v))
    return basis


def _iter_bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


# ---------------------------------------------------------------------------
# Group backends
# ---------------------------------------------------------------------------


class GoldInt:
    """u + v*tau with integer components, tau the golden ratio (tau^2 = tau+1).
    The coordinate ring for the H types; pure integer arithmetic."""

    __slots__ = ("u", "v")

    def __init__(self, u: int, v: int):
        self.u = u
        self.v = v

    def __add__(self, o):
        return GoldInt(self.u + o.u, self.v + o.v)

    def __sub__(self, o):
        return GoldInt(self.u - o.u, self.v - o.v)

    def __neg__(self):
        return GoldInt(-self.u, -self.v)

    def __mul__(self, o):
        return GoldInt(self.u * o.u + self.v * o.v, self.u * o.v + self.v * o.u + self.v * o.v)

    def __bool__(self):
        return self.u != 0 or self.v != 0

    def __eq__(self, o):
        return isinstance(o, GoldInt) and self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __repr__(self):
        return f"GoldInt({self.u},{self.v})"

    def half(self) -> "GoldInt":
        assert self.u % 2 == 0 and self.v % 2 == 0
        return GoldInt(self.u // 2, self.v // 2)

    def sign(self) -> int:
        # u + v*tau = ((2u+v) + v*sqrt5)/2
        a, b = 2 * self.u + self.v, self.v
        if b == 0:
            return -1 if a < 0 else (1 if a > 0 else 0)
        if a == 0:
            return 1 if b > 0 else -1
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        return (1 if a > 0 else -1) if a * a > 5 * b * b else (1 if b > 0 else -1)

    def to_quadext(self) -> QuadExt:
        return QuadExt(Fraction(2 * self.u + self.v, 2), Fraction(self.v, 2))


def _scalar_sign(x) -> int:
    if isinstance(x, GoldInt):
        return x.sign()
    return -1 if x < 0 else (1 if x > 0 else 0)


class RootGeometry:
    """Index-level root geometry shared by the concrete backends: the full
    signed root list, the permutation each reflection induces on it, and
    classification of parabolic sub-root-systems by index arithmetic."""

    def __init__(self, pos_roots, inner, reflect, exact):
        self.pos_roots = pos_roots
        self.inner = inner
        self.exact = exact
        self.all_roots = list(pos_roots) + [tuple(-c for c in v) for v in pos_roots]
        self.index = {v: i for i, v in enumerate(self.all_roots)}
        self.npos = len(pos_roots)
        self.refl_perms = [
            tuple(self.index[reflect(alpha, beta)] for beta in self.all_roots)
            for alpha in pos_roots
        ]

    def pos_rep(self, idx: int) -> int:
        return idx if idx < self.npos else idx - self.npos

    def orthogonal_positives(self, fix_basis) -> list[int]:
        inner = self.inner
        return [
            i
            for i, alpha in enumerate(self.pos_roots)
            if all(not inner(alpha, v) for v in fix_basis)
        ]

    def classify(self, pos_indices: list[int]) -> RootSystemType:
        """Classify the closed subsystem with the given positive-root indices:
        extract simples by the one-negative criterion, label the diagram by
        exact angles, and match against the catalog."""
        if not pos_indices:
            return RootSystemType.empty()
        inset = set(pos_indices)
        simples = []
        for i in pos_indices:
            perm = self.refl_perms[i]
            negatives = 0
            for j in pos_indices:
                img = perm[j]
                if img in inset:
                    continue
                if self.pos_rep(img) in inset:
                    negatives += 1
                    if negatives > 1:
                        break
                else:
                    raise ClassificationError("root subset is not closed")
            if negatives == 1:
                simples.append(i)
        inner, exact = self.inner, self.exact
        edges = []
        for ii in range(len(simples)):
            for jj in range(ii + 1, len(simples)):
                u, v = self.pos_roots[simples[ii]], self.pos_roots[simples[jj]]
                p = inner(u, v)
                if p:
                    cos2 = exact(p) * exact(p) / (exact(inner(u, u)) * exact(inner(v, v)))
                    edges.append((ii, jj, _angle_label(cos2)))
        result = _classify_diagram(len(simples), edges)
        from .rootdata import positive_root_count

        if positive_root_count(result) != len(pos_indices):
            raise ClassificationError(
                f"{result} expects {positive_root_count(result)} positive roots, got {len(pos_indices)}"
            )
        return result


def _int_reflect_factory(inner):
    def reflect(alpha, beta):
        p2 = inner(alpha, beta)
        if not p2:
            return beta
        n2 = inner(alpha, alpha)
        coef, rem = divmod(2 * p2, n2)
        assert rem == 0
        return tuple(b - coef * a for a, b in zip(alpha, beta))

    return reflect


class PermBackend:
    """Type A_n as permutations of n+1 points, stored in one-line form."""

    field_zero = Fraction(0)
    field_one = Fraction(1)

    def __init__(self, n: int):
        self.type = Irreducible("A", n)
        self.rank = n
        self.points = n + 1
        self.identity = tuple(range(n + 1))
        dim = n + 1
        roots = []
        refls = []
        for i in range(dim):
            for j in range(i + 1, dim):
                v = [0] * dim
                v[i], v[j] = 1, -1
                roots.append(tuple(v))
                p = list(range(dim))
                p[i], p[j] = j, i
                refls.append(tuple(p))
        self.pos_roots = roots
        self.reflections = refls
        self.simple_reflections = [refls[self._pair_index(i, i + 1)] for i in range(n)]
        self.inner = _int_dot
        self.geometry = RootGeometry(roots, _int_dot, _int_reflect_factory(_int_dot), Fraction)

    def _pair_index(self, i, j):
        dim = self.points
        return sum(dim - 1 - k for k in range(i)) + (j - i - 1)

    def mul(self, p, q):
        return tuple(p[x] for x in q)

    def inv(self, p):
        out = [0] * len(p)
        for i, v in enumerate(p):
            out[v] = i
        return tuple(out)

    def matrix(self, p):
        dim = self.points
        return [tuple(1 if i == p[j] else 0 for j in range(dim)) for i in range(dim)]

    def to_field(self, x):
        return Fraction(x)

    def vec_from_field(self, vec):
        return _clear_fraction_vec(vec)

    def fixed_space_codim(self, p) -> int:
        seen = [False] * self.points
        cycles = 0
        for i in range(self.points):
            if not seen[i]:
                cycles += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = p[j]
        return self.points - cycles


def _int_dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _clear_fraction_vec(vec):
    from math import lcm

    denom = 1
    for x in vec:
        denom = lcm(denom, Fraction(x).denominator)
    return tuple(int(Fraction(x) * denom) for x in vec)


def _clear_quadext_vec(vec):
    from math import lcm

    denom = 1
    pairs = []
    for x in vec:
        u, v = x.a - x.b, 2 * x.b  # x = u + v*tau
        pairs.append((u, v))
        denom = lcm(denom, u.denominator, v.denominator)
    return tuple(GoldInt(int(u * denom), int(v * denom)) for u, v in pairs)


class SignedPermBackend:
    """Types B_n and D_n as signed permutations in one-line form: entry i is
    the signed image of i+1."""

    field_zero = Fraction(0)
    field_one = Fraction(1)

    def __init__(self, n: int, family: str):
        self.type = Irreducible(family, n)
        self.rank = n
        self.family = family
        self.identity = tuple(range(1, n + 1))
        roots = []
        refls = []
        for i in range(n):
            for j in range(i + 1, n):
                v = [0] * n
                v[i], v[j] = 1, -1
                roots.append(tuple(v))
                refls.append(self._swap(i, j, 1))
                v = [0] * n
                v[i], v[j] = 1, 1
                roots.append(tuple(v))
                refls.append(self._swap(i, j, -1))
        if family == "B":
            for i in range(n):
                v = [0] * n
                v[i] = 1
                roots.append(tuple(v))
                p = list(range(1, n + 1))
                p[i] = -p[i]
                refls.append(tuple(p))
        self.pos_roots = roots
        self.reflections = refls
        simples = []
        for i in range(n - 1):
            simples.append(self._swap(i, i + 1, 1))
        if family == "B":
            p = list(range(1, n + 1))
            p[n - 1] = -p[n - 1]
            simples.append(tuple(p))
        else:
            simples.append(self._swap(n - 2, n - 1, -1))
        self.simple_reflections = simples
        self.inner = _int_dot
        self.geometry = RootGeometry(roots, _int_dot, _int_reflect_factory(_int_dot), Fraction)

    def _swap(self, i, j, sign):
        p = list(range(1, self.rank + 1))
        p[i], p[j] = sign * (j + 1), sign * (i + 1)
        return tuple(p)

    def mul(self, p, q):
        out = []
        for s in q:
            t = p[abs(s) - 1]
            out.append(t if s > 0 else -t)
        return tuple(out)

    def inv(self, p):
        out = [0] * len(p)
        for i, v in enumerate(p):
            if v > 0:
                out[v - 1] = i + 1
            else:
                out[-v - 1] = -(i + 1)
        return tuple(out)

    def matrix(self, p):
        n = self.rank
        rows = [[0] * n for _ in range(n)]
        for j in range(n):
            v = p[j]
            rows[abs(v) - 1][j] = 1 if v > 0 else -1
        return [tuple(r) for r in rows]

    def to_field(self, x):
        return Fraction(x)

    def vec_from_field(self, vec):
        return _clear_fraction_vec(vec)

    def fixed_space_codim(self, p) -> int:
        n = self.rank
        seen = [False] * n
        positive_cycles = 0
        for i in range(n):
            if seen[i]:
                continue
            sign = 1
            j = i
            while not seen[j]:
                seen[j] = True
                v = p[j]
                sign *= 1 if v > 0 else -1
                j = abs(v) - 1
            if sign > 0:
                positive_cycles += 1
        return n - positive_cycles


class RootPermBackend:
    """F4, E6, H3, H4: elements act as permutations of the full root list,
    stored as 256-padded byte tables so composition is a single translate().

    Root coordinates live in the simple-root basis: integers for the
    crystallographic types (with the Gram form doubled to stay integral) and
    GoldInt pairs for the H types.  Exact matrices over Fraction or QuadExt
    are reconstructed from the images of the simple roots when geometry is
    needed.
    """

    def __init__(self, irr: Irreducible):
        self.type = irr
        self.rank = n = irr.rank
        ss = simple_system(irr)
        gram_exact = ss.gram()
        self.is_gold = irr.family == "H"
        if self.is_gold:
            self.field_zero, self.field_one = QuadExt.of(0), QuadExt.of(1)
            # golden-coordinate gram entries lie in Z[tau]
            def to_gold(x):
                u, v = x.a - x.b, 2 * x.b
                assert u.denominator == 1 and v.denominator == 1
                return GoldInt(int(u), int(v))

            gram = [[to_gold(x) for x in row] for row in gram_exact]
            zero = GoldInt(0, 0)
            one = GoldInt(1, 0)
            exact = GoldInt.to_quadext
        else:
            self.field_zero, self.field_one = Fraction(0), Fraction(1)
            gram = [[int(2 * Fraction(x)) for x in row] for row in gram_exact]  # doubled
            zero, one = 0, 1
            exact = Fraction
        self.gram = gram
        self._mode_zero, self._mode_one = zero, one

        def inner(u, v):
            acc = zero
            for i in range(n):
                ui = u[i]
                if ui:
                    row = gram[i]
                    s = zero
                    for j in range(n):
                        if v[j]:
                            s = s + row[j] * v[j]
                    acc = acc + ui * s
            return acc

        self.inner = inner
        if self.is_gold:

            def reflect(alpha, beta):
                p = inner(alpha, beta)
                if not p:
                    return beta
                coef = (p + p).half().half()  # all H roots have gram-norm 4
                return tuple(b - coef * a for a, b in zip(alpha, beta))

        else:
            reflect = _int_reflect_factory(inner)
        self._reflect = reflect

        units = [tuple(one if j == i else zero for j in range(n)) for i in range(n)]
        roots = set(units)
        frontier = list(units)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(n):
                    img = reflect(units[i], beta)
                    if img not in roots:
                        roots.add(img)
                        nxt.append(img)
            frontier = nxt
        for beta in list(roots):
            roots.add(tuple(-c for c in beta))
        self.root_coords = sorted(roots, key=self._sort_key)
        self.root_index = {v: i for i, v in enumerate(self.root_coords)}
        self.nroots = len(self.root_coords)
        if self.nroots > 255:
            raise BudgetExceeded(f"too many roots for byte tables in {irr}", self.nroots)
        self.pos_roots = [v for v in self.root_coords if self._is_pos(v)]
        tail = bytes(range(self.nroots, 256))
        self.identity = bytes(range(self.nroots)) + tail
        self.reflections = [
            bytes(self.root_index[reflect(alpha, beta)] for beta in self.root_coords) + tail
            for alpha in self.pos_roots
        ]
        self.simple_root_indices = [self.root_index[u] for u in units]
        pos_index = {v: i for i, v in enumerate(self.pos_roots)}
        self.simple_reflections = [self.reflections[pos_index[u]] for u in units]
        self.geometry = RootGeometry(self.pos_roots, inner, reflect, exact)

    @staticmethod
    def _sort_key(v):
        return tuple((c.u, c.v) if isinstance(c, GoldInt) else (c, 0) for c in v)

    def _is_pos(self, v) -> bool:
        for c in v:
            s = _scalar_sign(c)
            if s:
                return s > 0
        return False

    def mul(self, p, q):
        return q.translate(p)

    def inv(self, p):
        out = bytearray(256)
        for i, v in enumerate(p):
            out[v] = i
        return bytes(out)

    def matrix(self, p):
        n = self.rank
        cols = [self.root_coords[p[idx]] for idx in self.simple_root_indices]
        return [tuple(cols[j][i] for j in range(n)) for i in range(n)]

    def to_field(self, x):
        return x.to_quadext() if self.is_gold else Fraction(x)

    def vec_from_field(self, vec):
        return _clear_quadext_vec(vec) if self.is_gold else _clear_fraction_vec(vec)

    def fixed_space_codim(self, p) -> int:
        mat = self.matrix(p)
        n = self.rank
        zero, one = self.field_zero, self.field_one
        to_f = self.to_field
        shifted = [
            tuple(to_f(mat[i][j]) - (one if i == j else zero) for j in range(n))
            for i in range(n)
        ]
        return n - len(_nullspace(shifted, zero, one))


class DihedralBackend:
    """I2(a) handled abstractly: ('r', k) rotations and ('s', k) reflections,
    with s_k = r^k s_0; no coordinates and no new number fields."""

    def __init__(self, a: int):
        self.type = Irreducible("I", 2, a)
        self.rank = 2
        self.a = a
        self.identity = ("r", 0)
        self.reflections = [("s", k) for k in range(a)]
        self.simple_reflections = [("s", 0), ("s", 1)]
        self.pos_roots = None
        self.inner = None

    def mul(self, p, q):
        a = self.a
        pk, pv = p
        qk, qv = q
        if pk == "r" and qk == "r":
            return ("r", (pv + qv) % a)
        if pk == "r" and qk == "s":
            return ("s", (pv + qv) % a)
        if pk == "s" and qk == "r":
            return ("s", (pv - qv) % a)
        return ("r", (pv - qv) % a)

    def inv(self, p):
        if p[0] == "s":
            return p
        return ("r", (-p[1]) % self.a)

    def fixed_space_codim(self, p) -> int:
        if p == ("r", 0):
            return 0
        return 1 if p[0] == "s" else 2

    def parabolic_type(self, p) -> RootSystemType:
        if p == ("r", 0):
            return RootSystemType.empty()
        if p[0] == "s":
            return RootSystemType.irreducible("A", 1)
        return RootSystemType.irreducible("I", 2, self.a)


def _backend_for(irr: Irreducible):
    if irr.family == "A":
        return PermBackend(irr.rank)
    if irr.family in ("B", "D"):
        return SignedPermBackend(irr.rank, irr.family)
    if irr.family == "I":
        return DihedralBackend(irr.param)
    if irr.family in ("F", "E", "H"):
        return RootPermBackend(irr)
    raise UnsupportedType(str(irr))


# ---------------------------------------------------------------------------
# Group tables
# ---------------------------------------------------------------------------


@dataclass
class GroupTable:
    """A fully enumerated reflection group with absolute lengths."""

    type: Irreducible
    backend: object
    elements: list
    index: dict
    abs_len: list[int]
    coxeter: object

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def reflections(self) -> list:
        return self.backend.reflections

    def abs_length_of(self, w) -> int:
        return self.abs_len[self.index[w]]


def enumerate_group(irr: Irreducible, group_cap: int | None = None) -> GroupTable:
    """Enumerate W for one irreducible type; BudgetExceeded above the cap."""
    return _enumerate_group(irr, group_cap)


@lru_cache(maxsize=None)
def _enumerate_group(irr: Irreducible, group_cap: int | None) -> GroupTable:
    cap = DEFAULT_GROUP_CAP if group_cap is None else group_cap
    order = group_order(RootSystemType.make(irr))
    if order > cap:
        raise BudgetExceeded(f"|W({irr})| = {order} exceeds group cap {cap}", order)
    backend = _backend_for(irr)
    mul = backend.mul
    # closure under the simple reflections
    seen = {backend.identity}
    frontier = [backend.identity]
    while frontier:
        nxt = []
        for w in frontier:
            for s in backend.simple_reflections:
                v = mul(s, w)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    assert len(seen) == order, f"enumerated {len(seen)} of expected {order}"
    elements = sorted(seen)
    index = {w: i for i, w in enumerate(elements)}
    # absolute length by breadth-first layering over the full reflection set
    lengths = {backend.identity: 0}
    frontier = [backend.identity]
    level = 0
    while frontier:
        nxt = []
        level += 1
        for w in frontier:
            for t in backend.reflections:
                v = mul(t, w)
                if v not in lengths:
                    lengths[v] = level
                    nxt.append(v)
        frontier = nxt
    abs_len = [lengths[w] for w in elements]
    coxeter = reduce(mul, backend.simple_reflections)
    table = GroupTable(irr, backend, elements, index, abs_len, coxeter)
    assert table.abs_length_of(coxeter) == irr.rank
    return table


def abs_length(table: GroupTable, w) -> int:
    """Absolute length via the fixed-space codimension; asserted to agree
    with the breadth-first layering oracle."""
    codim = table.backend.fixed_space_codim(w)
    bfs = table.abs_length_of(w)
    assert codim == bfs, f"length methods disagree on {w!r}: {codim} vs {bfs}"
    return codim


def abs_leq(table: GroupTable, u, w) -> bool:
    """The absolute-order test: lengths add along u, u^-1 w."""
    lu = table.abs_length_of(u)
    lw = table.abs_length_of(w)
    if lu > lw:
        return False
    q = table.backend.mul(table.backend.inv(u), w)
    return lu + table.abs_length_of(q) == lw


def coxeter_element(table: GroupTable):
    return table.coxeter


def parabolic_type_of(table: GroupTable, w) -> RootSystemType:
    """Type of w as a parabolic Coxeter element: classify the sub-root-system
    orthogonal to the fixed space of w."""
    backend = table.backend
    if isinstance(backend, DihedralBackend):
        return backend.parabolic_type(w)
    mat = backend.matrix(w)
    n_ambient = len(mat)
    zero, one = backend.field_zero, backend.field_one
    to_f = backend.to_field
    shifted = [
        tuple(to_f(mat[i][j]) - (one if i == j else zero) for j in range(n_ambient))
        for i in range(n_ambient)
    ]
    fix_basis = [backend.vec_from_field(v) for v in _nullspace(shifted, zero, one)]
    geom = backend.geometry
    return geom.classify(geom.orthogonal_positives(fix_basis))


# ---------------------------------------------------------------------------
# Generic graded posets with bitmask order relations
# ---------------------------------------------------------------------------


@dataclass
class Poset:
    """A finite graded poset: ranks plus an up-relation stored as bit rows."""

    ranks: list[int]
    up: list[int]  # up[i] has bit j set iff element i <= element j

    def __post_init__(self):
        self.size = len(self.ranks)
        down = [0] * self.size
        for i, mask in enumerate(self.up):
            for j in _iter_bits(mask):
                down[j] |= 1 << i
        self.down = down
        self._mobius: dict[tuple[int, int], int] = {}

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def mobius(self, i: int, j: int) -> int:
        """Mobius function of the interval [i, j]."""
        if not self.leq(i, j):
            raise NotComparable(f"{i} is not below {j}")
        memo = self._mobius
        got = memo.get((i, j))
        if got is not None:
            return got
        total = 0
        interval = self.up[i] & self.down[j]
        for v in _iter_bits(interval & ~(1 << j)):
            total += self.mobius(i, v)
        out = 1 if i == j else -total
        memo[(i, j)] = out
        return out

    def mobius_column_vectors(self) -> list[list[int]]:
        """For each w, the x-polynomial sum of mu(u, w) x^rank(u) over u <= w,
        as integer coefficient lists indexed by rank."""
        top_rank = max(self.ranks, default=0)
        order = sorted(range(self.size), key=lambda i: self.ranks[i])
        g: list[list[int] | None] = [None] * self.size
        for w in order:
            vec = [0] * (top_rank + 1)
            vec[self.ranks[w]] = 1
            for v in _iter_bits(self.down[w] & ~(1 << w)):
                gv = g[v]
                for idx in range(len(gv)):
                    if gv[idx]:
                        vec[idx] -= gv[idx]
            g[w] = vec
        return g

    def m_triangle(self) -> MPoly:
        """Sum of mu(u, w) x^rank(u) y^rank(w) over all pairs u <= w."""
        g = self.mobius_column_vectors()
        terms: dict[tuple[int, int], MUniPoly] = {}
        acc: dict[tuple[int, int], int] = {}
        for w, vec in enumerate(g):
            rw = self.ranks[w]
            for ru, cval in enumerate(vec):
                if cval:
                    key = (ru, rw)
                    acc[key] = acc.get(key, 0) + cval
        for key, v in acc.items():
            if v:
                terms[key] = MUniPoly.const(v)
        return MPoly(terms)

    def zeta_values(self, i: int, j: int, max_z: int) -> list[int]:
        """Multichain counts from i to j with z links, for z = 0..max_z."""
        interval = sorted(_iter_bits(self.up[i] & self.down[j]))
        pos = {e: k for k, e in enumerate(interval)}
        vec = [0] * len(interval)
        vec[pos[i]] = 1
        out = [1 if i == j else 0]
        for _ in range(max_z):
            nxt = [0] * len(interval)
            for k, e in enumerate(interval):
                if vec[k]:
                    for f in _iter_bits(self.up[e] & self.down[j]):
                        nxt[pos[f]] += vec[k]
            vec = nxt
            out.append(vec[pos[j]])
        return out

    def zeta_poly(self, i: int, j: int) -> list[Fraction]:
        """Exact coefficients of the zeta polynomial Z(i, j; z), interpolated
        from multichain counts; Z(-1) is asserted to equal the Mobius value."""
        if not self.leq(i, j):
            raise NotComparable(f"{i} is not below {j}")
        deg = self.ranks[j] - self.ranks[i]
        values = self.zeta_values(i, j, deg)
        coeffs = _lagrange(list(range(deg + 1)), values)
        z_at_neg1 = _poly_eval(coeffs, Fraction(-1))
        mu = self.mobius(i, j)
        assert z_at_neg1 == mu, f"zeta(-1) = {z_at_neg1} but mobius = {mu}"
        return coeffs

    def rank_counts(self) -> list[int]:
        top = max(self.ranks, default=0)
        out = [0] * (top + 1)
        for r in self.ranks:
            out[r] += 1
        return out


def _lagrange(xs: list[int], ys: list[int]) -> list[Fraction]:
    """Interpolating polynomial coefficients (ascending) through (xs, ys)."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for k in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for i in range(n):
            if i == k:
                continue
            basis = _poly_mul_linear(basis, -xs[i])
            denom *= xs[k] - xs[i]
        scale = Fraction(ys[k]) / denom
        for i, b in enumerate(basis):
            coeffs[i] += scale * b
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul_linear(coeffs: list[Fraction], const) -> list[Fraction]:
    # multiply by (z + const)
    out = [Fraction(0)] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] += c * const
        out[i + 1] += c
    return out


def _poly_eval(coeffs, at):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * at + c
    return acc


# ---------------------------------------------------------------------------
# The non-crossing partition poset NC and its quotient structure
# ---------------------------------------------------------------------------


@dataclass
class NCCore:
    """NC for one irreducible type: the interval below the Coxeter element,
    with the order relation, rank function, per-pair quotients u^-1 w (again
    indices into NC), and the parabolic type of every element."""

    type: RootSystemType
    rank: int
    poset: Poset
    quot: list[dict[int, int]]
    partypes: list[RootSystemType]
    elements: list = field(repr=False, default=None)

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def top(self) -> int:
        return self.size - 1


REPR_VERSION = 1

_disk_cache = None  # ResultCache set by the CLI; library default is in-memory only


def set_disk_cache(cache) -> None:
    """Install a ResultCache so expensive poset cores persist across runs."""
    global _disk_cache
    _disk_cache = cache


def nc_core_to_obj(core: NCCore) -> dict:
    """Canonical JSON form of a poset core, keyed by representation version."""
    return {
        "repr_version": REPR_VERSION,
        "type": str(core.type),
        "rank": core.rank,
        "ranks": list(core.poset.ranks),
        "up": [format(mask, "x") for mask in core.poset.up],
        "quot": [[[j, q[j]] for j in sorted(q)] for q in core.quot],
        "partypes": [str(t) for t in core.partypes],
    }


def nc_core_from_obj(obj: dict) -> NCCore:
    if obj.get("repr_version") != REPR_VERSION:
        raise ValueError("stale representation version")
    poset = Poset(list(obj["ranks"]), [int(h, 16) for h in obj["up"]])
    quot = [{int(j): int(q) for j, q in pairs} for pairs in obj["quot"]]
    partypes = [RootSystemType.parse(s) for s in obj["partypes"]]
    return NCCore(RootSystemType.parse(obj["type"]), obj["rank"], poset, quot, partypes)


def build_nc(t: RootSystemType, group_cap: int | None = None) -> NCCore:
    """Build NC for an irreducible catalog type."""
    return _build_nc(t, group_cap)


@lru_cache(maxsize=None)
def _build_nc(t: RootSystemType, group_cap: int | None) -> NCCore:
    if not t.is_irreducible:
        raise UnsupportedType(f"build_nc requires an irreducible type, got {t}")
    if _disk_cache is not None:
        stored = _disk_cache.get("nccore", str(t))
        if stored is not None:
            return nc_core_from_obj(stored)
    core = _build_nc_fresh(t, group_cap)
    if _disk_cache is not None:
        _disk_cache.put("nccore", str(t), nc_core_to_obj(core))
    return core


def _build_nc_fresh(t: RootSystemType, group_cap: int | None) -> NCCore:
    irr = t.single()
    table = enumerate_group(irr, group_cap)
    backend = table.backend
    mul, inv = backend.mul, backend.inv
    n = irr.rank
    c = table.coxeter
    lengths = {w: table.abs_len[i] for i, w in enumerate(table.elements)}
    # length of w^-1 c computed as length of c^-1 w, avoiding per-element inverses
    c_inv = inv(c)
    members = []
    for w in table.elements:
        lw = lengths[w]
        if lw + lengths[mul(c_inv, w)] == n:
            members.append((lw, w))
    members.sort()
    elems = [w for _, w in members]
    ranks = [lw for lw, _ in members]
    nc_index = {w: i for i, w in enumerate(elems)}
    size = len(elems)
    up = [0] * size
    quot: list[dict[int, int]] = [dict() for _ in range(size)]
    inverses = [inv(w) for w in elems]
    for i in range(size):
        up[i] |= 1 << i
        quot[i][i] = 0
        ri = ranks[i]
        for j in range(size):
            if ranks[j] <= ri or i == j:
                continue
            q = mul(inverses[i], elems[j])
            if ri + lengths[q] == ranks[j]:
                up[i] |= 1 << j
                quot[i][j] = nc_index[q]
    poset = Poset(ranks, up)
    partypes = [parabolic_type_of(table, w) for w in elems]
    assert partypes[0] == RootSystemType.empty()
    assert partypes[-1] == t, f"Coxeter element classified as {partypes[-1]}"
    return NCCore(t, n, poset, quot, partypes, elems)


def mobius(core_or_poset, u: int, w: int) -> int:
    poset = core_or_poset.poset if isinstance(core_or_poset, NCCore) else core_or_poset
    return poset.mobius(u, w)


def zeta_poly(core_or_poset, u: int, w: int) -> list[Fraction]:
    poset = core_or_poset.poset if isinstance(core_or_poset, NCCore) else core_or_poset
    return poset.zeta_poly(u, w)


def char_poly(t: RootSystemType, group_cap: int | None = None) -> MPoly:
    """Characteristic polynomial of NC(t) in the variable y: the rank-weighted
    Mobius sums toward the top element.  Multiplicative over factors."""
    return _char_poly(t, group_cap)


@lru_cache(maxsize=None)
def _char_poly(t: RootSystemType, group_cap: int | None) -> MPoly:
    if not t.factors:
        return MPoly.const(1)
    if not t.is_irreducible:
        out = MPoly.const(1)
        for f in t.factors:
            out = out * char_poly(RootSystemType.make(f), group_cap)
        return out
    core = build_nc(t, group_cap)
    g_top = core.poset.mobius_column_vectors()[core.top]
    return MPoly({(0, i): MUniPoly.const(v) for i, v in enumerate(g_top) if v})


def char_poly_at_neg_y(t: RootSystemType, group_cap: int | None = None) -> MPoly:
    p = char_poly(t, group_cap)
    return MPoly({(k, l): c * ((-1) ** l) for (k, l), c in p.terms.items()})


def interval_rank_genfun(core: NCCore, w: int) -> list[int]:
    """Rank census of the lower interval [identity, w] inside NC."""
    out = [0] * (core.poset.ranks[w] + 1)
    for v in _iter_bits(core.poset.down[w]):
        out[core.poset.ranks[v]] += 1
    return out


def nc_rank_genfun(t: RootSystemType, group_cap: int | None = None) -> tuple[int, ...]:
    """Rank census of NC(t); multiplicative (convolution) over factors."""
    return _nc_rank_genfun(t, group_cap)


@lru_cache(maxsize=None)
def _nc_rank_genfun(t: RootSystemType, group_cap: int | None) -> tuple[int, ...]:
    out = [1]
    for f in t.factors:
        core = build_nc(RootSystemType.make(f), group_cap)
        counts = core.poset.rank_counts()
        new = [0] * (len(out) + len(counts) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(counts):
                new[i + j] += a * b
        out = new
    return tuple(out)


# ---------------------------------------------------------------------------
# Decomposition numbers
# ---------------------------------------------------------------------------


def _type_sort_key(t: RootSystemType):
    return (t.rank, str(t))


@dataclass
class DecompositionTable:
    """Counts of minimal length-additive factor tuples below the Coxeter
    element, bucketed by the multiset of parabolic types (keys are tuples
    sorted by rank then name; the empty tuple has count 1)."""

    type: RootSystemType
    counts: dict[tuple[RootSystemType, ...], int]

    def n(self, *types: RootSystemType) -> int:
        key = tuple(sorted(types, key=_type_sort_key))
        return self.counts.get(key, 0)

    def full_rank_entries(self) -> dict[tuple[RootSystemType, ...], int]:
        n = self.type.rank
        return {k: v for k, v in self.counts.items() if sum(T.rank for T in k) == n and k}

    def closure_violations(self) -> list[str]:
        """Entries breaking the completion identity: each lower-rank count
        must equal the sum of its one-step full-rank-direction completions."""
        n = self.type.rank
        out = []
        types_by_rank: dict[int, set[RootSystemType]] = {}
        for key in self.counts:
            for T in key:
                types_by_rank.setdefault(T.rank, set()).add(T)
        for key, v in self.counts.items():
            deficit = n - sum(T.rank for T in key)
            if deficit <= 0:
                continue
            total = 0
            for T in types_by_rank.get(deficit, ()):  # absent completions count zero
                total += self.n(*key, T)
            if total != v:
                out.append(f"N{key} = {v} but completions sum to {total}")
        return out


def decomposition_numbers(
    t: RootSystemType, max_d: int | None = None, group_cap: int | None = None
) -> DecompositionTable:
    """Count minimal products below the Coxeter element by parabolic type
    tuple, walking strict chains from the identity; order symmetry of the
    counts is verified before collapsing to sorted keys."""
    return _decomposition_numbers(t, max_d, group_cap)


@lru_cache(maxsize=None)
def _decomposition_numbers(
    t: RootSystemType, max_d: int | None, group_cap: int | None
) -> DecompositionTable:
    core = build_nc(t, group_cap)
    n = core.rank
    depth = n if max_d is None else min(max_d, n)
    size = core.size
    type_ids: dict[RootSystemType, int] = {}
    types: list[RootSystemType] = []

    def tid(T: RootSystemType) -> int:
        got = type_ids.get(T)
        if got is None:
            got = len(types)
            type_ids[T] = got
            types.append(T)
        return got

    ups: list[list[int]] = []
    stepty: list[list[int]] = []
    poset = core.poset
    for i in range(size):
        js = [j for j in _iter_bits(poset.up[i]) if j != i]
        ups.append(js)
        stepty.append([tid(core.partypes[core.quot[i][j]]) for j in js])

    buckets: Counter = Counter()

    def walk(i: int, prefix: tuple):
        nxt_len = len(prefix) + 1
        for j, ty in zip(ups[i], stepty[i]):
            tau = prefix + (ty,)
            buckets[tau] += 1
            if nxt_len < depth:
                walk(j, tau)

    if depth >= 1:
        walk(0, ())

    by_key: dict[tuple[RootSystemType, ...], dict[tuple, int]] = {}
    for tau, cnt in buckets.items():
        key = tuple(sorted((types[i] for i in tau), key=_type_sort_key))
        by_key.setdefault(key, {})[tau] = cnt
    counts: dict[tuple[RootSystemType, ...], int] = {(): 1}
    for key, variants in by_key.items():
        mult = factorial(len(key))
        for _, grp in itertools.groupby(sorted(key, key=_type_sort_key)):
            mult //= factorial(len(list(grp)))
        values = set(variants.values())
        if len(values) != 1 or len(variants) != mult:
            raise AssertionError(f"type-tuple symmetry violated at {key}: {variants}")
        counts[key] = values.pop()
    return DecompositionTable(t, counts)


# ---------------------------------------------------------------------------
# Rank-selected chain counts: closed formulas and brute force
# ---------------------------------------------------------------------------


@dataclass
class ChainCountResult:
    type: RootSystemType
    m: int
    jumps: tuple[int, ...]
    formula: int
    brute: int | None

    @property
    def equal(self) -> bool:
        return self.brute is None or self.formula == self.brute


def chain_count_formula(t: RootSystemType, m: int, jumps: tuple[int, ...]) -> int:
    """Closed chain counts for the classical families: products of binomials
    over the rank jumps (type D only at m = 1)."""
    f = t.single()
    n = f.rank
    if sum(jumps) != n:
        raise ValueError("jumps must sum to the rank")
    if f.family == "A":
        v = Fraction(1, n + 1) * gen_binomial(n + 1, jumps[-1])
        for s in jumps[:-1]:
            v *= gen_binomial(m * (n + 1), s)
    elif f.family == "B":
        v = gen_binomial(n, jumps[-1])
        for s in jumps[:-1]:
            v *= gen_binomial(m * n, s)
    elif f.family == "D":
        if m != 1:
            raise UnsupportedType("type D chain counts are only available at m = 1")
        v = 2 * reduce(lambda a, s: a * gen_binomial(n - 1, s), jumps, Fraction(1))
        for i in range(len(jumps)):
            term = Fraction(1)
            for j, s in enumerate(jumps):
                term *= gen_binomial(n - 2, s - 2) if j == i else gen_binomial(n - 1, s)
            v += term
    else:
        raise UnsupportedType(f"no closed chain count for {t}")
    assert v.denominator == 1
    return v.numerator


def chain_count_brute(poset: Poset, rank: int, jumps: tuple[int, ...]) -> int:
    """Multichains in the dual of an m-divisible poset with the given rank
    jumps: descending multichains with prescribed co-ranks."""
    partial = list(itertools.accumulate(jumps))
    if partial[-1] != rank:
        raise ValueError("jumps must sum to the rank")
    needed = [rank - p for p in partial[:-1]]  # ranks in the primal order
    if not needed:
        return 1
    slices: dict[int, list[int]] = {}
    for i, r in enumerate(poset.ranks):
        slices.setdefault(r, []).append(i)
    current = {e: 1 for e in slices.get(needed[0], [])}
    for r in needed[1:]:
        nxt: dict[int, int] = {}
        for f in slices.get(r, []):
            total = 0
            mask = poset.up[f]
            for e, cnt in current.items():
                if mask >> e & 1:
                    total += cnt
            if total:
                nxt[f] = total
        current = nxt
    return sum(current.values())


def chain_counts_classical(
    t: RootSystemType,
    m: int,
    jumps: tuple[int, ...],
    group_cap: int | None = None,
    poset_cap: int | None = None,
) -> ChainCountResult:
    """Closed-form chain count plus, when the poset fits the budget, the
    brute-force count from the m-divisible poset; they must agree."""
    formula = chain_count_formula(t, m, jumps)
    from .ncposet import build_ncm

    try:
        poset = build_ncm(t, m, group_cap=group_cap, poset_cap=poset_cap).poset
        brute = chain_count_brute(poset, t.rank, tuple(jumps))
    except BudgetExceeded:
        brute = None
    return ChainCountResult(t, m, tuple(jumps), formula, brute)
