"""Words in the chain Dehn twists t1 .. t(2g+1) and their action on Weierstrass points.

Words act left to right: ``u * v`` means "apply u, then v".  The same
convention is used for permutations and for the symplectic matrices in
:mod:`hymcg.symplectic`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidGenus, InvalidWord, RangeError

_TOKEN = re.compile(r"^t(\d+)(?:\^([+-]?\d+))?$")


@dataclass(frozen=True)
class TwistWord:
    genus: int
    letters: tuple = ()

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 1:
            raise InvalidGenus(f"genus must be >= 1, got {self.genus!r}")
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        top = self.generator_count
        for i, e in letters:
            if not 1 <= i <= top:
                raise InvalidWord(f"twist index {i} outside 1..{top}")
            if e == 0:
                raise InvalidWord("zero exponent in word")
        object.__setattr__(self, "letters", letters)

    @property
    def generator_count(self) -> int:
        return 2 * self.genus + 1

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def __mul__(self, other: TwistWord) -> TwistWord:
        if not isinstance(other, TwistWord):
            return NotImplemented
        if other.genus != self.genus:
            raise InvalidWord("cannot multiply words of different genus")
        return TwistWord(self.genus, self.letters + other.letters)

    def __pow__(self, k: int) -> TwistWord:
        if k < 0:
            return self.inverse() ** (-k)
        return TwistWord(self.genus, self.letters * k)

    def inverse(self) -> TwistWord:
        return TwistWord(self.genus, tuple((i, -e) for i, e in reversed(self.letters)))

    def is_reduced(self) -> bool:
        return all(a[0] != b[0] for a, b in zip(self.letters, self.letters[1:]))

    def __str__(self):
        return format_word(self)


def generator(g: int, i: int, e: int = 1) -> TwistWord:
    return TwistWord(g, ((i, e),))


def parse_word(text: str, g: int) -> TwistWord:
    """Parse ``"t1 t2 t3^2 t2^-1"``; an empty string is the identity."""
    letters = []
    for token in text.split():
        m = _TOKEN.match(token)
        if m is None:
            raise InvalidWord(f"cannot parse token {token!r}")
        letters.append((int(m.group(1)), int(m.group(2) or 1)))
    return TwistWord(g, tuple(letters))


def format_word(w: TwistWord) -> str:
    return " ".join(f"t{i}" if e == 1 else f"t{i}^{e}" for i, e in w.letters)


def reduce(w: TwistWord) -> TwistWord:
    """Freely reduce: merge neighbouring powers of the same twist, drop zeros."""
    stack: list[list[int]] = []
    for i, e in w.letters:
        if stack and stack[-1][0] == i:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([i, e])
    return TwistWord(w.genus, tuple((i, e) for i, e in stack))


def involution_word(g: int) -> TwistWord:
    """t1 t2 ... t2g t(2g+1)^2 t2g ... t1, the hyperelliptic involution."""
    if not isinstance(g, int) or g < 1:
        raise InvalidGenus(f"genus must be >= 1, got {g!r}")
    up = [(i, 1) for i in range(1, 2 * g + 1)]
    return TwistWord(g, tuple(up + [(2 * g + 1, 2)] + up[::-1]))


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..N}; ``images[i-1]`` is the image of ``i``."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def transposition(cls, degree: int, a: int, b: int) -> Permutation:
        images = list(range(1, degree + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        # apply self, then other
        return Permutation(tuple(other.images[x - 1] for x in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cycle, x = [], start
            while x not in seen:
                seen.add(x)
                cycle.append(x)
                x = self(x)
            out.append(tuple(cycle))
        return out

    def __str__(self):
        cycles = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles) or "()"

    def to_json(self) -> dict:
        return {"images": list(self.images)}

    @classmethod
    def from_json(cls, data: dict) -> Permutation:
        return cls(tuple(data["images"]))


def rho_w(w: TwistWord) -> Permutation:
    """Permutation of the 2g+2 Weierstrass points induced by ``w``.

    The twist t_i lifts the half-twist exchanging branch points i and i+1.
    """
    degree = 2 * w.genus + 2
    result = Permutation.identity(degree)
    for i, e in w.letters:
        if e % 2:
            result = result * Permutation.transposition(degree, i, i + 1)
    return result


# -- permutation group order via Schreier-Sims ---------------------------------

def _mul(p, q):
    return tuple(q[x] for x in p)


def _inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _is_id(p):
    return all(x == i for i, x in enumerate(p))


def _orbit(base, gens, degree):
    trans = {base: tuple(range(degree))}
    frontier = [base]
    while frontier:
        nxt = []
        for b in frontier:
            for s in gens:
                c = s[b]
                if c not in trans:
                    trans[c] = _mul(trans[b], s)
                    nxt.append(c)
        frontier = nxt
    return trans


def _sift(base, trans, g, start):
    for k in range(start, len(base)):
        u = trans[k].get(g[base[k]])
        if u is None:
            return g, k
        g = _mul(g, _inv(u))
    return g, len(base)


def group_order(generators: Iterable[Permutation]) -> int:
    """Order of the permutation group generated by ``generators`` (Schreier-Sims)."""
    strong = [tuple(x - 1 for x in p.images) for p in generators]
    strong = [s for s in strong if not _is_id(s)]
    if not strong:
        return 1
    degree = len(strong[0])
    base = [next(p for p in range(degree) if strong[0][p] != p)]

    def level_gens(i):
        return [s for s in strong if all(s[b] == b for b in base[:i])]

    gens = [level_gens(0)]
    trans = [_orbit(base[0], gens[0], degree)]
    i = 0
    while i >= 0:
        restart = False
        for b, u in list(trans[i].items()):
            for s in gens[i]:
                schreier = _mul(_mul(u, s), _inv(trans[i][s[b]]))
                h, j = _sift(base, trans, schreier, i + 1)
                if _is_id(h):
                    continue
                strong.append(h)
                if j == len(base):
                    base.append(next(p for p in range(degree) if h[p] != p))
                    gens.append([])
                    trans.append({})
                for level in range(i + 1, j + 1):
                    gens[level] = level_gens(level)
                    trans[level] = _orbit(base[level], gens[level], degree)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return math.prod(len(t) for t in trans)


def weierstrass_generators(g: int) -> list[Permutation]:
    return [rho_w(generator(g, i)) for i in range(1, 2 * g + 2)]


def perm_group_order(g: int) -> int:
    """Order of the image of the chain twists in the symmetric group on 2g+2 points."""
    if not isinstance(g, int) or not 1 <= g <= 4:
        raise RangeError(f"perm_group_order supports 1 <= g <= 4, got {g!r}")
    return group_order(weierstrass_generators(g))


def random_word(g: int, length: int, rng, max_exponent: int = 3) -> TwistWord:
    """Uniform random word with ``length`` letters and exponents in ±1..max_exponent."""
    letters = []
    for _ in range(length):
        e = rng.randint(1, max_exponent) * rng.choice((-1, 1))
        letters.append((rng.randint(1, 2 * g + 1), e))
    return TwistWord(g, tuple(letters))

