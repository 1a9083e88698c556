"""Lifting curve systems from the sphere to the closed hyperelliptic surface.

The hyperelliptic cover ``S_g -> S_(0,2g+2)`` is branched over all 2g+2
punctures and its monodromy sends every loop around a branch point to the
nontrivial element of Z/2.  A sphere curve cutting off ``k`` branch points
therefore has one lift when ``k`` is odd and two lifts when ``k`` is even, and
every piece of a cut sphere lifts according to the parity of what it sees.
Nothing here builds an explicit cover; all answers follow from those parities
and Riemann-Hurwitz.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable, Optional

from .errors import InvalidCurve, InvalidFamily
from .strata import LaminarFamily, family_to_tree
from .surface import DisconnectedHyperellipticSurface, HyperellipticSurface, Surface

NONSEPARATING = "nonseparatingInvariant"
SEPARATING = "separatingInvariant"
SWAPPED = "swappedPair"
KINDS = (NONSEPARATING, SEPARATING, SWAPPED)


@dataclass(frozen=True)
class SymmetricCurveClass:
    kind: str
    subset: frozenset
    genera: Optional[tuple] = None

    @property
    def upstairs_curves(self) -> int:
        return 2 if self.kind == SWAPPED else 1

    @property
    def separating(self) -> bool:
        return self.kind == SEPARATING

    def __str__(self):
        if self.genera is None:
            return self.kind
        return f"{self.kind}({self.genera[0]},{self.genera[1]})"

    def to_json(self) -> dict:
        data = {"kind": self.kind, "subset": sorted(self.subset)}
        if self.genera is not None:
            data["genera"] = list(self.genera)
        return data

    @classmethod
    def from_json(cls, data: dict) -> SymmetricCurveClass:
        genera = tuple(data["genera"]) if "genera" in data else None
        return cls(data["kind"], frozenset(data["subset"]), genera)


def classify_curve(subset: Iterable[int], g: int) -> SymmetricCurveClass:
    """Type of the symmetric multicurve lying over a sphere curve with side ``subset``."""
    a = frozenset(subset)
    n = 2 * g + 2
    if g < 1:
        raise InvalidCurve(f"genus must be >= 1, got {g}")
    if not a <= frozenset(range(2, n + 1)):
        raise InvalidCurve(f"subset {sorted(a)} must lie in 2..{n}")
    k = len(a)
    if not 2 <= k <= 2 * g:
        raise InvalidCurve(f"subset size {k} outside 2..{2 * g}")
    if k in (2, 2 * g):
        return SymmetricCurveClass(NONSEPARATING, a)
    if k % 2:
        left = (k - 1) // 2
        return SymmetricCurveClass(SEPARATING, a, (left, g - left))
    return SymmetricCurveClass(SWAPPED, a, ((k - 2) // 2, (2 * g - k) // 2))


def _genus_of(f: LaminarFamily) -> int:
    if f.n % 2 or f.n < 4:
        raise InvalidFamily(f"a hyperelliptic quotient has an even number >= 4 of branch points, got {f.n}")
    return (f.n - 2) // 2


def _check_genus(f: LaminarFamily, g: Optional[int]) -> int:
    genus = _genus_of(f)
    if g is not None and g != genus:
        raise InvalidFamily(f"family on {f.n} legs lives over genus {genus}, not {g}")
    return genus


@dataclass(frozen=True)
class Lift:
    classes: tuple
    upstairs_simplex_size: int

    def to_json(self) -> dict:
        return {"classes": [c.to_json() for c in self.classes],
                "upstairsSimplexSize": self.upstairs_simplex_size}

    @classmethod
    def from_json(cls, data: dict) -> Lift:
        return cls(tuple(SymmetricCurveClass.from_json(c) for c in data["classes"]),
                   data["upstairsSimplexSize"])


def lift_multicurve(f: LaminarFamily, g: Optional[int] = None) -> Lift:
    g = _check_genus(f, g)
    classes = tuple(classify_curve(m, g) for m in f.sorted_members())
    return Lift(classes, sum(c.upstairs_curves for c in classes))


# -- cut surfaces ----------------------------------------------------------------

@dataclass(frozen=True)
class CutComponent:
    genus: int
    boundary: int
    branch: int
    fixed_boundary: int
    piece: int
    partner: Optional[int] = None   # index of the swapped twin, if any

    @property
    def invariant(self) -> bool:
        return self.partner is None

    @property
    def action(self) -> str:
        return "invariant" if self.partner is None else f"swapped:{self.partner}"

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary

    def to_json(self) -> dict:
        return {"genus": self.genus, "boundary": self.boundary, "branch": self.branch,
                "action": self.action, "fixedBoundary": self.fixed_boundary,
                "piece": self.piece}

    @classmethod
    def from_json(cls, data: dict) -> CutComponent:
        action = data["action"]
        partner = None if action == "invariant" else int(action.split(":")[1])
        return cls(data["genus"], data["boundary"], data["branch"],
                   data["fixedBoundary"], data["piece"], partner)


@dataclass(frozen=True)
class SpherePiece:
    """A component of the cut sphere: ``edges`` boundary circles, ``branch`` legs."""

    edges: int
    branch: int

    @property
    def euler_characteristic(self) -> int:
        return 2 - self.edges


@dataclass(frozen=True)
class HypCutProfile:
    genus: int
    classes: tuple
    components: tuple
    pieces: tuple
    upstairs_simplex_size: int

    def __post_init__(self):
        total = sum(c.euler_characteristic for c in self.components)
        if total != 2 - 2 * self.genus:
            raise AssertionError(f"Euler characteristics sum to {total}, not {2 - 2 * self.genus}")
        for i, c in enumerate(self.components):
            if c.partner is not None:
                twin = self.components[c.partner]
                if twin.partner != i or (twin.genus, twin.boundary) != (c.genus, c.boundary):
                    raise AssertionError(f"component {i} has no matching swapped twin")
        for p in {c.piece for c in self.components}:
            up = sum(c.euler_characteristic for c in self.components if c.piece == p)
            down = self.pieces[p]
            if up != 2 * down.euler_characteristic - down.branch:
                raise AssertionError(f"Riemann-Hurwitz fails over sphere piece {p}")

    def riemann_hurwitz_holds(self) -> bool:
        return all(
            sum(c.euler_characteristic for c in self.components if c.piece == p)
            == 2 * self.pieces[p].euler_characteristic - self.pieces[p].branch
            for p in {c.piece for c in self.components})

    @property
    def euler_characteristic(self) -> int:
        return sum(c.euler_characteristic for c in self.components)

    def as_surface(self) -> DisconnectedHyperellipticSurface:
        """The cut surface as invariant components plus representatives of swapped pairs."""
        invariant, swapped = [], []
        for i, c in enumerate(self.components):
            if c.partner is None:
                invariant.append(HyperellipticSurface(
                    Surface(c.genus, 0, c.boundary), c.branch, 0, c.fixed_boundary))
            elif i < c.partner:
                swapped.append(Surface(c.genus, 0, c.boundary))
        return DisconnectedHyperellipticSurface(tuple(invariant), tuple(swapped))

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "classes": [c.to_json() for c in self.classes],
            "components": [c.to_json() for c in self.components],
            "pieces": [{"edges": p.edges, "branch": p.branch} for p in self.pieces],
            "upstairsSimplexSize": self.upstairs_simplex_size,
        }

    @classmethod
    def from_json(cls, data: dict) -> HypCutProfile:
        return cls(
            data["genus"],
            tuple(SymmetricCurveClass.from_json(c) for c in data["classes"]),
            tuple(CutComponent.from_json(c) for c in data["components"]),
            tuple(SpherePiece(p["edges"], p["branch"]) for p in data["pieces"]),
            data["upstairsSimplexSize"],
        )


def cut_profile(f: LaminarFamily, g: Optional[int] = None, merge_annuli: bool = True) -> HypCutProfile:
    """Components of S_g cut along the symmetric multicurve lying over ``f``.

    A curve cutting off exactly two branch points has two lifts bounding an
    annulus, i.e. one isotopy class.  With ``merge_annuli`` (the default) that
    annulus is dropped so the curve is cut once; pass ``False`` to see the
    raw preimage of every sphere piece.
    """
    g = _check_genus(f, g)
    lift = lift_multicurve(f, g)
    tree = family_to_tree(f)
    n = f.n
    edge_parity = {}
    for parent, child in tree.edges:
        odd = len(tree.below(child)) % 2
        edge_parity.setdefault(parent, []).append(odd)
        edge_parity.setdefault(child, []).append(odd)

    dropped = set()
    if merge_annuli:
        index = {frozenset(m): i + 1 for i, m in enumerate(f.sorted_members())}
        for m, v in index.items():
            if len(m) == 2:
                dropped.add(v)
            elif len(m) == n - 2:
                dropped.add(0)

    pieces, components = [], []
    for v, legs in enumerate(tree.legs):
        parities = edge_parity.get(v, [])
        piece = SpherePiece(len(parities), len(legs))
        pieces.append(piece)
        if v in dropped:
            continue
        odd = sum(parities)
        even = len(parities) - odd
        if piece.branch == 0 and odd == 0:
            # trivial monodromy: two disjoint copies exchanged by the involution
            i = len(components)
            for copy, twin in ((i, i + 1), (i + 1, i)):
                components.append(CutComponent(0, piece.edges, 0, 0, v, twin))
            continue
        boundary = odd + 2 * even
        euler = 2 * piece.euler_characteristic - piece.branch
        genus2 = 2 - boundary - euler
        assert genus2 >= 0 and genus2 % 2 == 0, "inconsistent lift"
        components.append(CutComponent(genus2 // 2, boundary, piece.branch, odd, v))

    profile = HypCutProfile(g, lift.classes, tuple(components), tuple(pieces),
                            lift.upstairs_simplex_size)
    profile.as_surface()  # validates every invariant component as a hyperelliptic surface
    return profile


# -- stabilizers -------------------------------------------------------------------

@dataclass(frozen=True)
class TwistGenerator:
    curve: SymmetricCurveClass
    kind: str       # "twist" about one invariant curve, or "bitwist" about a swapped pair
    lattice: str    # "Z" or "2Z"

    def to_json(self) -> dict:
        return {"kind": self.kind, "lattice": self.lattice, "subset": sorted(self.curve.subset),
                "curve": self.curve.kind}


@dataclass(frozen=True)
class StabilizerProfile:
    flavor: str
    twist_generators: tuple
    cut: HypCutProfile
    symmetry_order: int

    @property
    def cut_factors(self) -> tuple:
        return self.cut.components

    def to_json(self) -> dict:
        data = self.cut.to_json()
        data["flavor"] = self.flavor
        data["twists"] = [t.to_json() for t in self.twist_generators]
        data["symmetryOrder"] = self.symmetry_order
        return data

    @classmethod
    def from_json(cls, data: dict) -> StabilizerProfile:
        cut = HypCutProfile.from_json(data)
        by_subset = {c.subset: c for c in cut.classes}
        twists = tuple(TwistGenerator(by_subset[frozenset(t["subset"])], t["kind"], t["lattice"])
                       for t in data["twists"])
        return cls(data["flavor"], twists, cut, data["symmetryOrder"])


FLAVORS = ("full", "pureOriented")


def stabilizer_profile(f: LaminarFamily, g: Optional[int] = None,
                       flavor: str = "pureOriented") -> StabilizerProfile:
    """Twist part and cut factors of the stabilizer of the symmetric multicurve over ``f``.

    ``full``: every curve contributes its whole twist group Z.
    ``pureOriented``: nonseparating invariant curves contribute only even
    powers 2Z; separating curves contribute Z.  A swapped pair contributes the
    bitwist (one twist on each curve of the pair) with lattice Z in both flavors.
    """
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
    cut = cut_profile(f, g)
    twists = []
    for c in cut.classes:
        if c.kind == SWAPPED:
            twists.append(TwistGenerator(c, "bitwist", "Z"))
        elif c.kind == NONSEPARATING and flavor == "pureOriented":
            twists.append(TwistGenerator(c, "twist", "2Z"))
        else:
            twists.append(TwistGenerator(c, "twist", "Z"))
    return StabilizerProfile(flavor, tuple(twists), cut,
                             factorial(2 * cut.upstairs_simplex_size))
