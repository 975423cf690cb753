"""Catalog of finite root-system types: Cartan/Coxeter data, simple systems in
exact coordinates, parabolic deletion structure, and classification of
sub-root-systems by their Coxeter diagrams.

Types are multisets of irreducible factors.  The aliases B1 = A1, D2 = A1xA1,
D3 = A3, I2(3) = A2 and I2(4) = B2 are normalized at construction so that
every formula downstream is stated once per canonical label.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import factorial
from typing import Callable, Iterable, Sequence

from .errors import ClassificationError, TypeParseError, UnsupportedType
from .exactmath import GOLDEN, QuadExt

_FAMILIES = ("A", "B", "D", "E", "F", "H", "I")


@dataclass(frozen=True, order=False)
class Irreducible:
    """One irreducible factor: family letter, rank, and the dihedral label a
    for family I (None otherwise).  Instances are canonical labels only; use
    RootSystemType.make to apply the alias rewrites."""

    family: str
    rank: int
    param: int | None = None

    def sort_key(self):
        return (-self.rank, _FAMILIES.index(self.family), self.param or 0)

    def __str__(self):
        if self.family == "I":
            return f"I2({self.param})"
        return f"{self.family}{self.rank}"

    def __repr__(self):
        return str(self)


def _canonical_factors(factors: Iterable[Irreducible]) -> tuple[Irreducible, ...]:
    out: list[Irreducible] = []
    for f in factors:
        fam, n, a = f.family, f.rank, f.param
        if fam == "A":
            if n < 1:
                raise UnsupportedType(f"A{n} is not a valid type")
            out.append(f)
        elif fam == "B":
            if n == 1:
                out.append(Irreducible("A", 1))
            elif n >= 2:
                out.append(f)
            else:
                raise UnsupportedType(f"B{n} is not a valid type")
        elif fam == "D":
            if n == 2:
                out.extend([Irreducible("A", 1), Irreducible("A", 1)])
            elif n == 3:
                out.append(Irreducible("A", 3))
            elif n >= 4:
                out.append(f)
            else:
                raise UnsupportedType(f"D{n} is not a valid type")
        elif fam == "I":
            if a is None or a < 3:
                raise UnsupportedType(f"I2({a}) requires a >= 3")
            if a == 3:
                out.append(Irreducible("A", 2))
            elif a == 4:
                out.append(Irreducible("B", 2))
            else:
                out.append(f)
        elif fam == "E":
            if n not in (6, 7, 8):
                raise UnsupportedType(f"E{n} is not a valid type")
            out.append(f)
        elif fam == "F":
            if n != 4:
                raise UnsupportedType(f"F{n} is not a valid type")
            out.append(f)
        elif fam == "H":
            if n not in (3, 4):
                raise UnsupportedType(f"H{n} is not a valid type")
            out.append(f)
        else:
            raise UnsupportedType(f"unknown family {fam!r}")
    return tuple(sorted(out, key=Irreducible.sort_key))


@dataclass(frozen=True)
class RootSystemType:
    """A formal, possibly reducible and possibly empty, root-system type."""

    factors: tuple[Irreducible, ...]

    @staticmethod
    def make(*factors: Irreducible) -> "RootSystemType":
        return RootSystemType(_canonical_factors(factors))

    @staticmethod
    def irreducible(family: str, rank: int, param: int | None = None) -> "RootSystemType":
        return RootSystemType.make(Irreducible(family, rank, param))

    @staticmethod
    def empty() -> "RootSystemType":
        return RootSystemType(())

    @staticmethod
    def parse(s: str) -> "RootSystemType":
        s = s.strip()
        if s in ("e", ""):
            return RootSystemType.empty()
        factors = []
        for part in s.split("x"):
            part = part.strip()
            m = re.fullmatch(r"I2\((\d+)\)", part)
            if m:
                factors.append(Irreducible("I", 2, int(m.group(1))))
                continue
            m = re.fullmatch(r"([ABDEFH])(\d+)", part)
            if not m:
                raise TypeParseError(f"cannot parse type factor {part!r}")
            factors.append(Irreducible(m.group(1), int(m.group(2))))
        try:
            return RootSystemType.make(*factors)
        except UnsupportedType as exc:
            raise TypeParseError(str(exc)) from exc

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def is_irreducible(self) -> bool:
        return len(self.factors) == 1

    def single(self) -> Irreducible:
        if not self.is_irreducible:
            raise ValueError(f"{self} is not irreducible")
        return self.factors[0]

    def __str__(self):
        if not self.factors:
            return "e"
        return "x".join(str(f) for f in self.factors)

    def __repr__(self):
        return str(self)

    def __mul__(self, other: "RootSystemType") -> "RootSystemType":
        return RootSystemType.make(*(self.factors + other.factors))


def ir(s: str) -> RootSystemType:
    """Shorthand parser, mainly for tests and tables."""
    return RootSystemType.parse(s)


# ---------------------------------------------------------------------------
# Catalog constants
# ---------------------------------------------------------------------------


def group_order_irr(f: Irreducible) -> int:
    if f.family == "A":
        return factorial(f.rank + 1)
    if f.family == "B":
        return 2**f.rank * factorial(f.rank)
    if f.family == "D":
        return 2 ** (f.rank - 1) * factorial(f.rank)
    if f.family == "I":
        return 2 * f.param
    if f.family == "H":
        return 120 if f.rank == 3 else 14400
    if f.family == "F":
        return 1152
    return {6: 51840, 7: 2903040, 8: 696729600}[f.rank]


def group_order(t: RootSystemType) -> int:
    return reduce(lambda acc, f: acc * group_order_irr(f), t.factors, 1)


def positive_root_count_irr(f: Irreducible) -> int:
    if f.family == "A":
        return f.rank * (f.rank + 1) // 2
    if f.family == "B":
        return f.rank**2
    if f.family == "D":
        return f.rank * (f.rank - 1)
    if f.family == "I":
        return f.param
    if f.family == "H":
        return 15 if f.rank == 3 else 60
    if f.family == "F":
        return 24
    return {6: 36, 7: 63, 8: 120}[f.rank]


def positive_root_count(t: RootSystemType) -> int:
    return sum(positive_root_count_irr(f) for f in t.factors)


def diagram_edges(f: Irreducible) -> list[tuple[int, int, int]]:
    """Coxeter diagram of an irreducible factor: (i, j, label) with nodes in
    catalog order 0..rank-1; only edges with label >= 3 are listed."""
    n = f.rank
    if f.family == "A":
        return [(i, i + 1, 3) for i in range(n - 1)]
    if f.family == "B":
        return [(i, i + 1, 3) for i in range(n - 2)] + [(n - 2, n - 1, 4)]
    if f.family == "D":
        return [(i, i + 1, 3) for i in range(n - 2)] + [(n - 3, n - 1, 3)]
    if f.family == "I":
        return [(0, 1, f.param)]
    if f.family == "H":
        return [(0, 1, 5)] + [(i, i + 1, 3) for i in range(1, n - 1)]
    if f.family == "F":
        return [(0, 1, 3), (1, 2, 4), (2, 3, 3)]
    # E types, Bourbaki numbering shifted to 0-based: node 1 hangs off node 3.
    edges = [(0, 2, 3), (2, 3, 3), (1, 3, 3)]
    edges += [(i, i + 1, 3) for i in range(3, n - 1)]
    return edges


# ---------------------------------------------------------------------------
# Simple systems in exact coordinates
# ---------------------------------------------------------------------------

Vector = tuple
InnerProduct = Callable[[Vector, Vector], object]


def dot(u: Vector, v: Vector):
    """Standard inner product; exact over Fraction or QuadExt entries."""
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


@dataclass(frozen=True)
class SimpleSystem:
    """Simple roots of an irreducible factor as exact coordinate vectors,
    together with the diagram edge labels they must reproduce."""

    type: Irreducible
    vectors: tuple[Vector, ...]
    edges: tuple[tuple[int, int, int], ...]

    def gram(self) -> list[list]:
        return [[dot(u, v) for v in self.vectors] for u in self.vectors]


def _e(i: int, dim: int) -> Vector:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(dim))


def _vec(*entries) -> Vector:
    return tuple(Fraction(x) for x in entries)


_E8_SIMPLES = (
    tuple(Fraction(1, 2) * s for s in (1, -1, -1, -1, -1, -1, -1, 1)),
    _vec(1, 1, 0, 0, 0, 0, 0, 0),
    _vec(-1, 1, 0, 0, 0, 0, 0, 0),
    _vec(0, -1, 1, 0, 0, 0, 0, 0),
    _vec(0, 0, -1, 1, 0, 0, 0, 0),
    _vec(0, 0, 0, -1, 1, 0, 0, 0),
    _vec(0, 0, 0, 0, -1, 1, 0, 0),
    _vec(0, 0, 0, 0, 0, -1, 1, 0),
)


@lru_cache(maxsize=None)
def golden_root_system(rank: int) -> tuple[Vector, ...]:
    """All roots of H3 (30) or H4 (120) in golden-ratio coordinates, norm 4."""
    tau = GOLDEN
    inv_tau = tau - 1  # 1/tau = tau - 1
    one = QuadExt.of(1)
    zero = QuadExt.of(0)
    two = QuadExt.of(2)
    roots: set[Vector] = set()
    if rank == 3:
        base = [two, zero, zero]
        for i in range(3):
            for s in (1, -1):
                v = [zero] * 3
                v[i] = two * s
                roots.add(tuple(v))
        cyc = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
        for perm in cyc:
            for s0 in (1, -1):
                for s1 in (1, -1):
                    for s2 in (1, -1):
                        vals = [one * s0, tau * s1, inv_tau * s2]
                        v = [zero] * 3
                        for pos, val in zip(perm, vals):
                            v[pos] = val
                        roots.add(tuple(v))
    elif rank == 4:
        for i in range(4):
            for s in (1, -1):
                v = [zero] * 4
                v[i] = two * s
                roots.add(tuple(v))
        for signs in range(16):
            v = tuple(one * (1 if signs >> i & 1 else -1) for i in range(4))
            roots.add(v)
        import itertools

        for perm in itertools.permutations(range(4)):
            # even permutations only
            inv = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
            if inv % 2:
                continue
            for s1 in (1, -1):
                for s2 in (1, -1):
                    for s3 in (1, -1):
                        vals = [zero, one * s1, tau * s2, inv_tau * s3]
                        v = [zero] * 4
                        for pos, val in zip(perm, vals):
                            v[pos] = val
                        roots.add(tuple(v))
    else:
        raise UnsupportedType(f"H{rank}")
    return tuple(sorted(roots, key=lambda v: tuple((c.a, c.b) for c in v)))


def _lex_positive(v: Vector) -> bool:
    for c in v:
        s = c.sign() if isinstance(c, QuadExt) else (0 if c == 0 else (1 if c > 0 else -1))
        if s > 0:
            return True
        if s < 0:
            return False
    return False


def _negate(v: Vector) -> Vector:
    return tuple(-c for c in v)


def _reflect(beta: Vector, alpha: Vector, inner: InnerProduct) -> Vector:
    coef = 2 * inner(alpha, beta) / inner(alpha, alpha)
    return tuple(b - coef * a for a, b in zip(alpha, beta))


def _simple_roots_of_positive_system(positives: Sequence[Vector], inner: InnerProduct) -> list[Vector]:
    """Roots sending only themselves negative: the simple system."""
    pos_set = set(positives)
    simples = []
    for alpha in positives:
        negatives = 0
        for beta in positives:
            img = _reflect(beta, alpha, inner)
            if img in pos_set:
                continue
            if _negate(img) in pos_set:
                negatives += 1
                if negatives > 1:
                    break
            else:
                raise ClassificationError("input is not a closed root subsystem")
        if negatives == 1:
            simples.append(alpha)
    return simples


@lru_cache(maxsize=None)
def _golden_simple_system(rank: int) -> tuple[Vector, ...]:
    roots = golden_root_system(rank)
    positives = [v for v in roots if _lex_positive(v)]
    simples = _simple_roots_of_positive_system(positives, dot)
    if len(simples) != rank:
        raise ClassificationError(f"H{rank} simple system has size {len(simples)}")
    # order along the path so that the unique 5-labelled edge sits first
    chain = _order_path(simples, lambda u, v: dot(u, v) != 0)
    if _pair_label(chain[0], chain[1]) != 5:
        chain.reverse()
    return tuple(chain)


def _order_path(nodes: list, adjacent) -> list:
    """Order the nodes of a path graph from one endpoint to the other."""
    degs = {i: sum(1 for j, v in enumerate(nodes) if j != i and adjacent(nodes[i], v)) for i in range(len(nodes))}
    ends = [i for i, d in degs.items() if d == 1]
    cur = min(ends)
    order = [cur]
    seen = {cur}
    while len(order) < len(nodes):
        for j in range(len(nodes)):
            if j not in seen and adjacent(nodes[order[-1]], nodes[j]):
                order.append(j)
                seen.add(j)
                break
        else:
            raise ClassificationError("nodes do not form a path")
    return [nodes[i] for i in order]


def _pair_label(u: Vector, v: Vector, nu=None, nv=None) -> int:
    """Edge label for two simple roots from the exact angle: cos^2(pi/label)."""
    p = dot(u, v)
    if not p:
        return 2
    nu = nu if nu is not None else dot(u, u)
    nv = nv if nv is not None else dot(v, v)
    return _label_from_cos2(p * p / (nu * nv))


def _label_from_cos2(c2) -> int:
    table = {
        Fraction(1, 4): 3,
        Fraction(1, 2): 4,
        Fraction(3, 4): 6,
    }
    if isinstance(c2, QuadExt):
        if c2 == QuadExt(Fraction(3, 8), Fraction(1, 8)):  # (3 + sqrt5)/8 = cos^2(pi/5)
            return 5
        if c2.b == 0:
            c2 = c2.a
        else:
            raise ClassificationError(f"unrecognized angle cos^2 = {c2}")
    c2 = Fraction(c2)
    if c2 in table:
        return table[c2]
    raise ClassificationError(f"unrecognized angle cos^2 = {c2}")


@lru_cache(maxsize=None)
def simple_system(f: Irreducible) -> SimpleSystem:
    """Exact simple roots for an irreducible catalog factor.

    A_n lives in (n+1)-space as e_i - e_{i+1}; B_n and D_n use signed
    coordinates; F4 and the E types use the standard crystallographic
    coordinates; H3 and H4 use golden-ratio coordinates over Q(sqrt 5).
    I2(a) is handled abstractly and carries no coordinates.
    """
    n = f.rank
    if f.family == "A":
        vecs = tuple(tuple(_e(i, n + 1)[j] - _e(i + 1, n + 1)[j] for j in range(n + 1)) for i in range(n))
    elif f.family == "B":
        vecs = tuple(
            tuple(_e(i, n)[j] - _e(i + 1, n)[j] for j in range(n)) for i in range(n - 1)
        ) + (_e(n - 1, n),)
    elif f.family == "D":
        vecs = tuple(
            tuple(_e(i, n)[j] - _e(i + 1, n)[j] for j in range(n)) for i in range(n - 1)
        ) + (tuple(_e(n - 2, n)[j] + _e(n - 1, n)[j] for j in range(n)),)
    elif f.family == "F":
        vecs = (
            _vec(0, 1, -1, 0),
            _vec(0, 0, 1, -1),
            _vec(0, 0, 0, 1),
            tuple(Fraction(1, 2) * s for s in (1, -1, -1, -1)),
        )
    elif f.family == "E":
        vecs = _E8_SIMPLES[:n]
    elif f.family == "H":
        vecs = _golden_simple_system(n)
    else:
        raise UnsupportedType(f"no coordinates for {f}")
    return SimpleSystem(f, vecs, tuple(diagram_edges(f)))


# ---------------------------------------------------------------------------
# Deletion structure and subsystem classification
# ---------------------------------------------------------------------------


def _classify_labeled_component(nodes: list[int], edges: list[tuple[int, int, int]]) -> Irreducible:
    """Match one connected labeled tree against the catalog diagrams."""
    n = len(nodes)
    if n == 1:
        return Irreducible("A", 1)
    if len(edges) != n - 1:
        raise ClassificationError("diagram component is not a tree")
    if n == 2:
        a = edges[0][2]
        if a == 3:
            return Irreducible("A", 2)
        if a == 4:
            return Irreducible("B", 2)
        return Irreducible("I", 2, a)
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in nodes}
    for i, j, lab in edges:
        adj[i].append((j, lab))
        adj[j].append((i, lab))
    degs = {v: len(adj[v]) for v in nodes}
    max_deg = max(degs.values())
    if max_deg == 2:
        start = min(v for v in nodes if degs[v] == 1)
        seq = []
        prev, cur = None, start
        while True:
            nxt = [(w, lab) for w, lab in adj[cur] if w != prev]
            if not nxt:
                break
            w, lab = nxt[0]
            seq.append(lab)
            prev, cur = cur, w
        labels = sorted(set(seq))
        if labels == [3]:
            return Irreducible("A", n)
        if seq.count(4) == 1 and all(l in (3, 4) for l in seq):
            idx = seq.index(4)
            if idx in (0, n - 2):
                return Irreducible("B", n)
            if n == 4 and idx == 1:
                return Irreducible("F", 4)
        if seq.count(5) == 1 and all(l in (3, 5) for l in seq):
            idx = seq.index(5)
            if idx in (0, n - 2) and n in (3, 4):
                return Irreducible("H", n)
        raise ClassificationError(f"path with labels {seq} matches no catalog type")
    if max_deg == 3 and all(lab == 3 for _, _, lab in edges):
        branch = [v for v in nodes if degs[v] == 3]
        if len(branch) == 1:
            arms = []
            for w, _ in adj[branch[0]]:
                length, prev, cur = 1, branch[0], w
                while True:
                    nxt = [x for x, _ in adj[cur] if x != prev]
                    if not nxt:
                        break
                    prev, cur = cur, nxt[0]
                    length += 1
                arms.append(length)
            arms.sort()
            if arms[:2] == [1, 1]:
                return Irreducible("D", arms[2] + 3)
            if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
                return Irreducible("E", arms[2] + 4)
    raise ClassificationError("diagram component matches no catalog type")


def _classify_diagram(num: int, edges: list[tuple[int, int, int]]) -> RootSystemType:
    parent = list(range(num))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j, _ in edges:
        parent[find(i)] = find(j)
    comps: dict[int, list[int]] = {}
    for v in range(num):
        comps.setdefault(find(v), []).append(v)
    factors = []
    for vs in comps.values():
        sub_edges = [(i, j, lab) for i, j, lab in edges if find(i) == find(vs[0])]
        factors.append(_classify_labeled_component(vs, sub_edges))
    return RootSystemType.make(*factors)


@lru_cache(maxsize=None)
def deletion_types(t: RootSystemType) -> tuple[RootSystemType, ...]:
    """For each simple root of an irreducible type, the type generated by the
    remaining simple roots; entries follow catalog node order."""
    if not t.is_irreducible:
        raise UnsupportedType(f"deletion_types requires an irreducible type, got {t}")
    f = t.single()
    n = f.rank
    edges = diagram_edges(f)
    out = []
    for removed in range(n):
        keep = [v for v in range(n) if v != removed]
        remap = {v: i for i, v in enumerate(keep)}
        sub_edges = [(remap[i], remap[j], lab) for i, j, lab in edges if i != removed and j != removed]
        out.append(_classify_diagram(len(keep), sub_edges))
    return tuple(out)


def classify_subsystem(roots: Iterable[Vector], inner: InnerProduct = dot) -> RootSystemType:
    """Classify a closed sub-root-system given by exact vectors.

    Signs are normalized lexicographically, a simple system is extracted, and
    the resulting labeled diagram is matched against the catalog.
    """
    pos: dict[Vector, None] = {}
    for v in roots:
        if all((c.sign() if isinstance(c, QuadExt) else (1 if c > 0 else (-1 if c < 0 else 0))) == 0 for c in v):
            raise ClassificationError("zero vector is not a root")
        pos.setdefault(v if _lex_positive(v) else _negate(v), None)
    positives = list(pos)
    if not positives:
        return RootSystemType.empty()
    simples = _simple_roots_of_positive_system(positives, inner)
    edges = []
    for i in range(len(simples)):
        for j in range(i + 1, len(simples)):
            p = inner(simples[i], simples[j])
            if p:
                lab = _label_from_cos2(p * p / (inner(simples[i], simples[i]) * inner(simples[j], simples[j])))
                edges.append((i, j, lab))
    result = _classify_diagram(len(simples), edges)
    if positive_root_count(result) != len(positives):
        raise ClassificationError(
            f"classified {result} expects {positive_root_count(result)} positive roots, got {len(positives)}"
        )
    return result
