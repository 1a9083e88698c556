"""Orbit complexes of curves on the n-punctured sphere.

A curve on ``S_{0,n}`` is determined, up to pure mapping classes, by the set
of punctures on one of its sides.  We always record the side *not*
containing puncture 1, so a curve is a subset ``A`` of ``{2..n}`` with
``2 <= |A| <= n-2``.  Two curves can be made disjoint iff their subsets are
nested or disjoint, so multicurve orbits are exactly laminar families of such
subsets, and these are also the stable trees with legs labelled ``1..n``
indexing boundary strata of the moduli space of stable genus 0 curves.

The ``b`` variant keeps only curves bounding a twice-punctured disc, i.e.
``|A| == 2`` or ``|A| == n - 2``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional

from .errors import ComplexTooLarge, InvalidFamily, NoEssentialCurves, RangeError
from .smith import SparseMatrix, invariant_factors

VARIANTS = ("full", "b")
GROUPS = ("pure", "full")
MAX_FULL_GROUP_N = 8
MAX_HOMOLOGY_N = 8
DEFAULT_SIMPLEX_CAP = 500_000


def _check_variant(variant, group="pure"):
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if group not in GROUPS:
        raise ValueError(f"group must be one of {GROUPS}, got {group!r}")


def normalize_subset(subset: Iterable[int], n: int) -> frozenset:
    """Record a curve by its side not containing puncture 1."""
    side = frozenset(subset)
    if 1 in side:
        side = frozenset(range(1, n + 1)) - side
    return side


def in_variant(subset: frozenset, n: int, variant: str) -> bool:
    return variant == "full" or len(subset) in (2, n - 2)


def compatible(a: frozenset, b: frozenset) -> bool:
    """Curves with normalized sides ``a`` and ``b`` can be realized disjointly."""
    return a != b and (a <= b or b <= a or not (a & b))


def _sort_key(subset):
    return tuple(sorted(subset))


@dataclass(frozen=True)
class LaminarFamily:
    n: int
    members: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 4:
            raise NoEssentialCurves(f"S_(0,{self.n}) has no essential curves")
        members = [frozenset(m) for m in self.members]
        if len(set(members)) != len(members):
            raise InvalidFamily("duplicate members")
        for m in members:
            if 1 in m:
                raise InvalidFamily(f"member {sorted(m)} contains puncture 1; normalize it first")
            if not m <= frozenset(range(2, self.n + 1)):
                raise InvalidFamily(f"member {sorted(m)} not inside 2..{self.n}")
            if not 2 <= len(m) <= self.n - 2:
                raise InvalidFamily(f"member {sorted(m)} is not an essential curve")
        for a, b in itertools.combinations(members, 2):
            if not compatible(a, b):
                raise InvalidFamily(f"members {sorted(a)} and {sorted(b)} cross")
        object.__setattr__(self, "members", frozenset(members))

    @classmethod
    def from_sides(cls, n: int, sides: Iterable[Iterable[int]]) -> LaminarFamily:
        """Build from arbitrary sides of curves (either side may be given)."""
        return cls(n, frozenset(normalize_subset(s, n) for s in sides))

    @property
    def dimension(self) -> int:
        return len(self.members) - 1

    def __len__(self):
        return len(self.members)

    def sorted_members(self) -> list[tuple[int, ...]]:
        return sorted((_sort_key(m) for m in self.members), key=lambda t: (len(t), t))

    def literal(self) -> list[list[int]]:
        """Sorted list of sorted subsets, e.g. ``[[2, 3], [2, 3, 4, 5]]``."""
        return [list(m) for m in sorted(_sort_key(m) for m in self.members)]

    def key(self) -> tuple:
        return tuple(sorted(_sort_key(m) for m in self.members))

    def in_variant(self, variant: str) -> bool:
        return all(in_variant(m, self.n, variant) for m in self.members)

    def relabel(self, perm) -> LaminarFamily:
        """Apply ``perm`` (a map i -> perm[i-1] on 1..n) and re-normalize."""
        return LaminarFamily(self.n, frozenset(
            normalize_subset((perm[i - 1] for i in m), self.n) for m in self.members))

    def faces(self) -> list[LaminarFamily]:
        """Codimension-one faces."""
        return [LaminarFamily(self.n, self.members - {m}) for m in self.members]

    def to_json(self) -> dict:
        return {"n": self.n, "members": self.literal()}

    @classmethod
    def from_json(cls, data: dict) -> LaminarFamily:
        return cls(data["n"], frozenset(frozenset(m) for m in data["members"]))

    def __str__(self):
        return json.dumps(self.literal())


def parse_family(text: str, n: int) -> LaminarFamily:
    """Parse a family literal such as ``[[2,3],[2,3,4,5]]``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidFamily(f"cannot parse family literal {text!r}") from exc
    if not isinstance(data, list) or not all(isinstance(m, list) for m in data):
        raise InvalidFamily("family literal must be a list of lists")
    return LaminarFamily.from_sides(n, data)


# -- stable trees ---------------------------------------------------------------

@dataclass(frozen=True)
class StableTree:
    """Dual tree of a boundary stratum.

    ``legs[v]`` are the marked points on vertex ``v``; vertex 0 carries leg 1.
    ``edges`` are ``(parent, child)`` pairs, oriented away from vertex 0.
    """

    n: int
    legs: tuple
    edges: tuple

    def __post_init__(self):
        seen = [x for ls in self.legs for x in ls]
        if sorted(seen) != list(range(1, self.n + 1)):
            raise InvalidFamily("leg labels must partition 1..n")
        if len(self.edges) != len(self.legs) - 1:
            raise InvalidFamily("a tree on V vertices has V-1 edges")
        for v in range(len(self.legs)):
            if self.valence(v) < 3:
                raise InvalidFamily(f"vertex {v} is unstable")

    def valence(self, v: int) -> int:
        return len(self.legs[v]) + sum(v in e for e in self.edges)

    def children(self, v: int) -> list[int]:
        return [c for p, c in self.edges if p == v]

    def below(self, v: int) -> frozenset:
        """All legs in the subtree hanging from ``v``."""
        out = set(self.legs[v])
        for c in self.children(v):
            out |= self.below(c)
        return frozenset(out)

    def to_family(self) -> LaminarFamily:
        return LaminarFamily(self.n, frozenset(self.below(c) for _, c in self.edges))

    def to_dot(self, name: str = "stratum") -> str:
        lines = [f"graph {name} {{"]
        for v, ls in enumerate(self.legs):
            label = ",".join(map(str, sorted(ls)))
            lines.append(f'  v{v} [shape=circle, label="{label}"];')
        for p, c in self.edges:
            side = ",".join(map(str, sorted(self.below(c))))
            lines.append(f'  v{p} -- v{c} [label="{side}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"n": self.n, "legs": [sorted(ls) for ls in self.legs],
                "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> StableTree:
        return cls(data["n"], tuple(frozenset(ls) for ls in data["legs"]),
                   tuple(tuple(e) for e in data["edges"]))


def family_to_tree(f: LaminarFamily) -> StableTree:
    """One vertex per nesting gap, one edge per member.

    Vertex 0 is the region containing puncture 1; the vertex of member ``A``
    is the region inside ``A`` but outside every member properly inside ``A``.
    Vertices other than 0 are listed in the order of ``f.sorted_members()``.
    """
    members = [frozenset(m) for m in f.sorted_members()]
    index = {m: i + 1 for i, m in enumerate(members)}
    parent = {}
    for m in members:
        above = [x for x in members if m < x]
        parent[m] = index[min(above, key=len)] if above else 0
    legs = [set(range(1, f.n + 1))] + [set(m) for m in members]
    for m in members:
        legs[parent[m]] -= m
    edges = tuple(sorted((parent[m], index[m]) for m in members))
    return StableTree(f.n, tuple(frozenset(ls) for ls in legs), edges)


def tree_to_family(t: StableTree) -> LaminarFamily:
    return t.to_family()


# -- enumeration ------------------------------------------------------------------

def vertex_subsets(n: int, variant: str = "full") -> list[frozenset]:
    """All curve orbits under the pure group, in (size, lexicographic) order."""
    _check_variant(variant)
    if n < 4:
        raise NoEssentialCurves(f"S_(0,{n}) has no essential curves")
    out = []
    for k in range(2, n - 1):
        if variant == "b" and k not in (2, n - 2):
            continue
        out.extend(frozenset(c) for c in itertools.combinations(range(2, n + 1), k))
    return out


def _adjacency(vertices):
    adj = [0] * len(vertices)
    for i, a in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            if compatible(a, vertices[j]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _cliques(n, variant, max_size=None):
    """Yield every laminar family (as tuple of vertex indices) up to ``max_size`` members."""
    vertices = vertex_subsets(n, variant)
    adj = _adjacency(vertices)

    def extend(clique, candidates):
        yield clique
        if max_size is not None and len(clique) >= max_size:
            return
        for v in _bits(candidates):
            # only larger indices, so each clique is produced once
            yield from extend(clique + (v,), candidates & adj[v] & ~((1 << (v + 1)) - 1))

    full = (1 << len(vertices)) - 1
    return vertices, extend((), full)


def _permutations(n):
    return list(itertools.permutations(range(1, n + 1)))


def canonical_form(f: LaminarFamily, perms=None) -> LaminarFamily:
    """Lexicographically least relabeling of ``f`` over all of Sym(n)."""
    if f.n > MAX_FULL_GROUP_N:
        raise RangeError(f"full-group canonical forms are limited to n <= {MAX_FULL_GROUP_N}")
    perms = perms if perms is not None else _permutations(f.n)
    return min((f.relabel(p) for p in perms), key=LaminarFamily.key)


def enumerate_simplices(n: int, dim: int, variant: str = "full",
                        group: str = "pure") -> list[LaminarFamily]:
    """All laminar families with ``dim + 1`` members in the given variant.

    With ``group="full"`` one canonical representative per Sym(n)-orbit is
    returned.  Output is sorted by :meth:`LaminarFamily.key`.
    """
    _check_variant(variant, group)
    if dim < 0:
        return []
    vertices, cliques = _cliques(n, variant, dim + 1)
    families = [LaminarFamily(n, frozenset(vertices[i] for i in c))
                for c in cliques if len(c) == dim + 1]
    families.sort(key=LaminarFamily.key)
    if group == "pure":
        return families
    if n > MAX_FULL_GROUP_N:
        raise RangeError(f"group=full enumeration is limited to n <= {MAX_FULL_GROUP_N}")
    perms = _permutations(n)
    seen: set = set()
    reps = []
    for f in families:
        if f.key() in seen:
            continue
        orbit = {f.relabel(p) for p in perms}
        seen.update(x.key() for x in orbit)
        reps.append(min(orbit, key=LaminarFamily.key))
    reps.sort(key=LaminarFamily.key)
    return reps


def count_vertex_orbits(n: int, variant: str = "full", group: str = "pure") -> int:
    """Number of curve orbits on S_(0,n).

    Under the pure group this is 2^(n-1) - n - 1 (full) or C(n, 2) (b).
    At n = 4 the two sides of every curve are both pairs, so the b count
    drops to C(4, 2) / 2 = 3.  Under the full group a curve orbit is
    determined by the smaller side size.
    """
    _check_variant(variant, group)
    if n < 4:
        raise NoEssentialCurves(f"S_(0,{n}) has no essential curves")
    if group == "pure":
        if variant == "full":
            return 2 ** (n - 1) - n - 1
        return comb(n, 2) if n > 4 else 3
    sizes = range(2, n // 2 + 1) if variant == "full" else [2]
    return len(list(sizes))


def complex_dimension(n: int, variant: str = "full") -> int:
    """Largest laminar family size minus one, by exact branch and bound."""
    _check_variant(variant)
    vertices = vertex_subsets(n, variant)
    adj = _adjacency(vertices)
    best = [0]

    def colour_bound(candidates):
        # greedy colouring: a clique uses each colour class at most once
        colours = 0
        rest = candidates
        while rest:
            colours += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                rest &= ~(1 << v)
                avail &= ~adj[v] & ~(1 << v)
        return colours

    def search(size, candidates):
        if size > best[0]:
            best[0] = size
        if not candidates or size + colour_bound(candidates) <= best[0]:
            return
        while candidates:
            if size + bin(candidates).count("1") <= best[0]:
                return
            v = candidates.bit_length() - 1
            candidates &= ~(1 << v)
            search(size + 1, candidates & adj[v])

    search(0, (1 << len(vertices)) - 1)
    return best[0] - 1


def predicted_dimension(n: int, variant: str = "full") -> int:
    """Closed-form dimension: n - 4 for the full complex, [n/2] - 1 for C_b (0 at n = 4)."""
    if variant == "full":
        return n - 4
    return 0 if n == 4 else n // 2 - 1


# -- homology -------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyResult:
    n: Optional[int]
    variant: Optional[str]
    f_vector: tuple
    betti: tuple
    torsion: tuple

    @property
    def euler_from_faces(self) -> int:
        return sum((-1) ** i * f for i, f in enumerate(self.f_vector))

    @property
    def euler_from_betti(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti))

    def to_json(self) -> dict:
        return {"n": self.n, "variant": self.variant, "f_vector": list(self.f_vector),
                "betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}

    @classmethod
    def from_json(cls, data: dict) -> HomologyResult:
        return cls(data["n"], data["variant"], tuple(data["f_vector"]),
                   tuple(data["betti"]), tuple(tuple(t) for t in data["torsion"]))


def simplicial_homology(simplices: Iterable[Iterable], max_dim: Optional[int] = None,
                        n=None, variant=None) -> HomologyResult:
    """Integral homology of a finite simplicial complex given by all of its simplices.

    Vertices may be any sortable hashables.  Ranks and torsion come from the
    Smith normal forms of the boundary matrices.
    """
    by_dim: dict[int, list[tuple]] = {}
    for s in simplices:
        s = tuple(sorted(s))
        by_dim.setdefault(len(s) - 1, []).append(s)
    top = max(by_dim, default=-1)
    if max_dim is None:
        max_dim = top
    f_vector = tuple(len(by_dim.get(d, [])) for d in range(max_dim + 1))
    index = {d: {s: i for i, s in enumerate(sorted(by_dim.get(d, [])))}
             for d in range(max_dim + 2)}

    ranks, torsion = {}, {}
    for d in range(1, max_dim + 2):
        entries = []
        lower = index[d - 1]
        for s, col in index[d].items():
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                entries.append((lower[face], col, (-1) ** k))
        factors = invariant_factors(SparseMatrix(len(lower), len(index[d]), entries))
        ranks[d] = len(factors)
        torsion[d - 1] = tuple(f for f in factors if f > 1)
    betti = tuple(f_vector[d] - ranks.get(d, 0) - ranks.get(d + 1, 0) for d in range(max_dim + 1))
    tors = tuple(torsion.get(d, ()) for d in range(max_dim + 1))
    return HomologyResult(n, variant, f_vector, betti, tors)


def all_simplices(n: int, variant: str = "full", max_dim: Optional[int] = None,
                  cap: int = DEFAULT_SIMPLEX_CAP) -> list[LaminarFamily]:
    """Every nonempty laminar family (the pure quotient complex), up to ``max_dim``."""
    _check_variant(variant)
    vertices, cliques = _cliques(n, variant, None if max_dim is None else max_dim + 1)
    out = []
    for c in cliques:
        if not c:
            continue
        out.append(LaminarFamily(n, frozenset(vertices[i] for i in c)))
        if len(out) > cap:
            raise ComplexTooLarge(f"more than {cap} simplices")
    return out


def f_vector(n: int, variant: str = "full") -> tuple:
    counts: dict[int, int] = {}
    for f in all_simplices(n, variant):
        counts[f.dimension] = counts.get(f.dimension, 0) + 1
    return tuple(counts[d] for d in range(len(counts)))


def homology(n: int, variant: str = "full", max_dim: Optional[int] = None,
             cap: int = DEFAULT_SIMPLEX_CAP) -> HomologyResult:
    """Betti numbers of the complex of laminar families on n legs.

    ``max_dim`` defaults to the dimension of the complex; simplices one
    dimension higher are included so that the top requested Betti number is
    exact.
    """
    _check_variant(variant)
    if n < 4:
        raise NoEssentialCurves(f"S_(0,{n}) has no essential curves")
    if n > MAX_HOMOLOGY_N:
        raise ComplexTooLarge(f"homology is limited to n <= {MAX_HOMOLOGY_N}")
    if max_dim is None:
        max_dim = predicted_dimension(n, variant)
    vertices = vertex_subsets(n, variant)
    order = {v: i for i, v in enumerate(vertices)}
    families = all_simplices(n, variant, max_dim + 1, cap)
    result = simplicial_homology(
        (tuple(order[m] for m in f.members) for f in families), max_dim, n, variant)
    return result


def random_family(n: int, rng, variant: str = "full", keep: float = 0.5) -> LaminarFamily:
    """Random laminar family: scan curves in random order, keeping compatible ones at rate ``keep``."""
    vertices = vertex_subsets(n, variant)
    rng.shuffle(vertices)
    chosen: list[frozenset] = []
    for v in vertices:
        if rng.random() < keep and all(compatible(v, c) for c in chosen):
            chosen.append(v)
    return LaminarFamily(n, frozenset(chosen))
