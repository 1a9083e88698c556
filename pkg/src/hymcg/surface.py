"""Topological types of surfaces and hyperelliptic surfaces.

A surface ``S_{g,n}^k`` is recorded by its genus ``g``, number of punctures
``n`` and number of boundary circles ``k``.  A hyperelliptic surface adds the
counts of points, punctures and boundary circles fixed by the involution;
everything else about the involution is forced by those counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FixedLocusMismatch, InvalidTopologicalType, PairingViolation


@dataclass(frozen=True)
class Surface:
    genus: int
    punctures: int = 0
    boundary: int = 0

    def __post_init__(self):
        for name in ("genus", "punctures", "boundary"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidTopologicalType(f"{name} must be an integer, got {value!r}")
            if value < 0:
                raise InvalidTopologicalType(f"{name} must be non-negative, got {value}")

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.punctures - self.boundary

    @property
    def hyperbolic(self) -> bool:
        return self.euler_characteristic < 0

    def interior(self) -> Surface:
        """Remove the boundary: every boundary circle becomes a puncture."""
        return Surface(self.genus, self.punctures + self.boundary, 0)

    def filled(self) -> Surface:
        """Fill in punctures and cap boundary circles with discs."""
        return Surface(self.genus, 0, 0)

    def to_json(self) -> dict:
        return {"genus": self.genus, "punctures": self.punctures, "boundary": self.boundary}

    @classmethod
    def from_json(cls, data: dict) -> Surface:
        return cls(data["genus"], data.get("punctures", 0), data.get("boundary", 0))

    def __str__(self):
        return f"S_{{{self.genus},{self.punctures}}}^{self.boundary}"


def make_surface(g: int, n: int = 0, k: int = 0) -> Surface:
    return Surface(g, n, k)


def _hyperelliptic_violations(s: Surface, w_points, w_punctures, w_boundary):
    problems = []
    if min(w_points, w_punctures, w_boundary) < 0:
        problems.append(("InvalidTopologicalType", "fixed-locus counts must be non-negative"))
    total = w_points + w_punctures + w_boundary
    if total != 2 * s.genus + 2:
        problems.append((
            "FixedLocusMismatch",
            f"fixed locus has {total} elements, expected 2g+2 = {2 * s.genus + 2}",
        ))
    for kind, count, fixed in (
        ("punctures", s.punctures, w_punctures),
        ("boundary", s.boundary, w_boundary),
    ):
        rest = count - fixed
        if rest < 0 or rest % 2:
            problems.append((
                "PairingViolation",
                f"{rest} non-fixed {kind} cannot be split into swapped pairs",
            ))
    return problems


@dataclass(frozen=True)
class HyperellipticSurface:
    base: Surface
    wPoints: int
    wPunctures: int = 0
    wBoundary: int = 0

    def __post_init__(self):
        problems = _hyperelliptic_violations(
            self.base, self.wPoints, self.wPunctures, self.wBoundary)
        if not problems:
            return
        names = [name for name, _ in problems]
        message = "; ".join(msg for _, msg in problems)
        if "InvalidTopologicalType" in names:
            raise InvalidTopologicalType(message)
        if "FixedLocusMismatch" in names:
            raise FixedLocusMismatch(message, names)
        raise PairingViolation(message, names)

    @property
    def genus(self) -> int:
        return self.base.genus

    @property
    def euler_characteristic(self) -> int:
        return self.base.euler_characteristic

    @property
    def swapped_puncture_pairs(self) -> int:
        return (self.base.punctures - self.wPunctures) // 2

    @property
    def swapped_boundary_pairs(self) -> int:
        return (self.base.boundary - self.wBoundary) // 2

    def to_json(self) -> dict:
        data = self.base.to_json()
        data.update(wPoints=self.wPoints, wPunctures=self.wPunctures, wBoundary=self.wBoundary)
        return data

    @classmethod
    def from_json(cls, data: dict) -> HyperellipticSurface:
        return cls(Surface.from_json(data), data["wPoints"],
                   data.get("wPunctures", 0), data.get("wBoundary", 0))


def make_hyperelliptic(s: Surface, wP: int, wO: int = 0, wB: int = 0) -> HyperellipticSurface:
    return HyperellipticSurface(s, wP, wO, wB)


@dataclass(frozen=True)
class QuotientProfile:
    quotient: Surface
    branchPoints: int

    def __post_init__(self):
        if self.quotient.genus != 0:
            raise InvalidTopologicalType("quotient of a hyperelliptic surface has genus 0")

    def to_json(self) -> dict:
        data = self.quotient.to_json()
        data["branchPoints"] = self.branchPoints
        return data

    @classmethod
    def from_json(cls, data: dict) -> QuotientProfile:
        return cls(Surface.from_json(data), data["branchPoints"])


def quotient_surface(h: HyperellipticSurface) -> QuotientProfile:
    s = h.base
    quotient = Surface(
        0,
        h.wPunctures + h.swapped_puncture_pairs,
        h.wBoundary + h.swapped_boundary_pairs,
    )
    profile = QuotientProfile(quotient, h.wPoints)
    # Riemann-Hurwitz, both for the open surfaces and their closed-up models
    assert s.euler_characteristic == 2 * quotient.euler_characteristic - h.wPoints
    assert s.filled().euler_characteristic == (
        2 * quotient.filled().euler_characteristic - (h.wPoints + h.wPunctures + h.wBoundary))
    return profile


@dataclass(frozen=True)
class DisconnectedHyperellipticSurface:
    """A possibly disconnected surface with an involution.

    ``invariant`` holds the components mapped to themselves.  Each entry of
    ``swapped`` stands for a pair of components exchanged by the involution;
    only one representative of the pair is stored.
    """

    invariant: tuple = field(default_factory=tuple)
    swapped: tuple = field(default_factory=tuple)

    @property
    def component_count(self) -> int:
        return len(self.invariant) + 2 * len(self.swapped)

    @property
    def euler_characteristic(self) -> int:
        return (sum(c.euler_characteristic for c in self.invariant)
                + 2 * sum(c.euler_characteristic for c in self.swapped))

    def to_json(self) -> dict:
        return {
            "invariant": [c.to_json() for c in self.invariant],
            "swapped": [c.to_json() for c in self.swapped],
        }

    @classmethod
    def from_json(cls, data: dict) -> DisconnectedHyperellipticSurface:
        return cls(
            tuple(HyperellipticSurface.from_json(c) for c in data["invariant"]),
            tuple(Surface.from_json(c) for c in data["swapped"]),
        )
