"""Action of twist words on the first homology of the closed genus g surface.

Conventions
-----------
* Basis ``a1, b1, a2, b2, ..., ag, bg`` with ``<a_i, b_i> = 1``; the Gram
  matrix ``J`` is block diagonal with blocks ``[[0, 1], [-1, 0]]``.
* Vectors are rows and matrices act on the right, ``x -> x M``, so that the
  matrix of a word is the product of its letters' matrices in word order.
* A Dehn twist about a curve of class ``v`` acts by the transvection
  ``x -> x + <x, v> v``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    ClosureTooLarge,
    InvalidGenus,
    InvalidModulus,
    UnsupportedModulus,
)
from .words import TwistWord, generator, involution_word

DEFAULT_CLOSURE_CAP = 10**7


def form_matrix(g: int) -> tuple:
    size = 2 * g
    rows = [[0] * size for _ in range(size)]
    for i in range(g):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return tuple(tuple(r) for r in rows)


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    """Algebraic intersection number <x, y> in the interleaved basis."""
    return sum(x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i] for i in range(len(x) // 2))


def _matmul(a, b, modulus=None):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row_a = a[i]
        row = []
        for j in range(m):
            s = 0
            for t in range(k):
                s += row_a[t] * b[t][j]
            row.append(s % modulus if modulus else s)
        out.append(tuple(row))
    return tuple(out)


def _transpose(a):
    return tuple(zip(*a))


@dataclass(frozen=True)
class SympMatrix:
    rows: tuple
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise InvalidModulus(f"modulus must be >= 2, got {self.modulus}")
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if self.modulus:
            rows = tuple(tuple(x % self.modulus for x in r) for r in rows)
        if any(len(r) != len(rows) for r in rows) or len(rows) % 2:
            raise ValueError("symplectic matrices are square of even size")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def genus(self) -> int:
        return self.size // 2

    @classmethod
    def identity(cls, size: int, modulus: Optional[int] = None) -> SympMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(size)) for i in range(size)), modulus)

    def __mul__(self, other: SympMatrix) -> SympMatrix:
        if self.size != other.size or self.modulus != other.modulus:
            raise ValueError("size or modulus mismatch")
        return SympMatrix(_matmul(self.rows, other.rows, self.modulus), self.modulus)

    def __neg__(self) -> SympMatrix:
        return SympMatrix(tuple(tuple(-x for x in r) for r in self.rows), self.modulus)

    def __pow__(self, k: int) -> SympMatrix:
        base = self if k >= 0 else self.inverse()
        result = SympMatrix.identity(self.size, self.modulus)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> SympMatrix:
        # M^T J M = J  gives  M^{-1} = -J M^T J
        j = form_matrix(self.genus)
        inv = _matmul(_matmul(j, _transpose(self.rows)), j)
        return SympMatrix(tuple(tuple(-x for x in r) for r in inv), self.modulus)

    def reduce(self, modulus: int) -> SympMatrix:
        return SympMatrix(self.rows, modulus)

    def is_symplectic(self) -> bool:
        j = form_matrix(self.genus)
        lhs = _matmul(_matmul(_transpose(self.rows), j), self.rows, self.modulus)
        if self.modulus:
            j = tuple(tuple(x % self.modulus for x in r) for r in j)
        return lhs == j

    def is_identity(self) -> bool:
        return self == SympMatrix.identity(self.size, self.modulus)

    def is_minus_identity(self) -> bool:
        return self == -SympMatrix.identity(self.size, self.modulus)

    def key(self) -> tuple:
        """Row-major entries; the exact canonical key used by closures."""
        return tuple(x for r in self.rows for x in r)

    def to_json(self) -> dict:
        data = {"size": self.size, "rows": [list(r) for r in self.rows]}
        if self.modulus is not None:
            data["modulus"] = self.modulus
        return data

    @classmethod
    def from_json(cls, data: dict) -> SympMatrix:
        m = cls(tuple(tuple(r) for r in data["rows"]), data.get("modulus"))
        if m.size != data["size"]:
            raise ValueError("size field does not match rows")
        return m

    def __str__(self):
        width = max(len(str(x)) for r in self.rows for x in r)
        body = "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)
        return body if self.modulus is None else f"{body}\n(mod {self.modulus})"


def _basis(g, index):
    v = [0] * (2 * g)
    v[index] = 1
    return v


def _determinant(rows) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class ChainClasses:
    genus: int
    vectors: tuple

    def __post_init__(self):
        vs = self.vectors
        if len(vs) != 2 * self.genus + 1:
            raise AssertionError("a maximal chain has 2g+1 curves")
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                p = abs(pairing(vs[i], vs[j]))
                if p != (1 if j == i + 1 else 0):
                    raise AssertionError(f"chain pairing <v{i + 1}, v{j + 1}> = {p}")
        for v in vs:
            if np.gcd.reduce([abs(x) for x in v]) != 1:
                raise AssertionError(f"chain class {v} is not primitive")
        if abs(self.spanning_minor()) != 1:
            raise AssertionError("chain classes do not span H_1")

    def spanning_minor(self) -> int:
        """Determinant of the first 2g chain classes."""
        return _determinant(self.vectors[: 2 * self.genus])

    def __getitem__(self, i: int) -> tuple:
        """1-based access, matching twist indices."""
        return self.vectors[i - 1]


def chain_classes(g: int) -> ChainClasses:
    """Homology classes of a maximal chain of symmetric nonseparating curves.

    v1 = a1, v2i = b_i, v(2i+1) = a_i + a_(i+1) for i < g, v(2g+1) = a_g.
    """
    if not isinstance(g, int) or g < 1:
        raise InvalidGenus(f"genus must be >= 1, got {g!r}")
    vs = [_basis(g, 0)]
    for i in range(1, g + 1):
        vs.append(_basis(g, 2 * i - 1))
        if i < g:
            vs.append([x + y for x, y in zip(_basis(g, 2 * i - 2), _basis(g, 2 * i))])
    vs.append(_basis(g, 2 * g - 2))
    return ChainClasses(g, tuple(tuple(v) for v in vs))


def transvection(v: Sequence[int], modulus: Optional[int] = None, power: int = 1) -> SympMatrix:
    """Matrix of x -> x + power * <x, v> v."""
    size = len(v)
    # jv = J v^T
    jv = [0] * size
    for i in range(size // 2):
        jv[2 * i] = v[2 * i + 1]
        jv[2 * i + 1] = -v[2 * i]
    rows = tuple(
        tuple(int(r == c) + power * jv[r] * v[c] for c in range(size)) for r in range(size)
    )
    return SympMatrix(rows, modulus)


def evaluate(w: TwistWord, modulus: Optional[int] = None) -> SympMatrix:
    """Symplectic matrix of a twist word (over Z, or mod ``modulus``)."""
    if modulus is not None and modulus < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {modulus}")
    chain = chain_classes(w.genus)
    result = SympMatrix.identity(2 * w.genus, modulus)
    for i, e in w.letters:
        # <v, v> = 0, so the e-th power of a transvection is linear in e
        result = result * transvection(chain[i], modulus, power=e)
    return result


def level_membership(w: TwistWord, m: int) -> bool:
    """True iff ``w`` acts trivially on H_1 with Z/m coefficients."""
    if not isinstance(m, int) or m < 2:
        raise InvalidModulus(f"level must be >= 2, got {m!r}")
    return evaluate(w, m).is_identity()


def braid_relation_failures(g: int, modulus: Optional[int] = None) -> list[str]:
    """Braid and commutation relations among chain twists that fail; empty when all hold."""
    failures = []
    top = 2 * g + 1
    t = [None] + [evaluate(generator(g, i), modulus) for i in range(1, top + 1)]
    for i in range(1, top + 1):
        for j in range(i + 1, top + 1):
            if j == i + 1:
                if t[i] * t[j] * t[i] != t[j] * t[i] * t[j]:
                    failures.append(f"t{i} t{j} t{i} != t{j} t{i} t{j}")
            elif t[i] * t[j] != t[j] * t[i]:
                failures.append(f"t{i} t{j} != t{j} t{i}")
    return failures


def involution_is_minus_identity(g: int) -> bool:
    return evaluate(involution_word(g)).is_minus_identity()


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def sp_order(g: int, p: int) -> int:
    """|Sp(2g, F_p)| = p^(g^2) * prod_{i=1..g} (p^(2i) - 1)."""
    if not isinstance(g, int) or g < 1:
        raise InvalidGenus(f"genus must be >= 1, got {g!r}")
    if not _is_prime(p):
        raise UnsupportedModulus(f"order formula needs a prime, got {p}")
    order = p ** (g * g)
    for i in range(1, g + 1):
        order *= p ** (2 * i) - 1
    return order


def closure_cap() -> int:
    return int(os.environ.get("HYMCG_CLOSURE_CAP", DEFAULT_CLOSURE_CAP))


class Closure:
    """Finite matrix group produced by :func:`group_closure`.

    Supports ``len`` (the order) and exact membership via ``in``.
    """

    def __init__(self, size, modulus, keys, dtype):
        self.size = size
        self.modulus = modulus
        self._keys = keys
        self._dtype = dtype

    @property
    def order(self) -> int:
        return len(self._keys)

    def __len__(self):
        return len(self._keys)

    def __contains__(self, m: SympMatrix) -> bool:
        if m.size != self.size:
            return False
        m = m.reduce(self.modulus)
        return np.asarray(m.key(), dtype=self._dtype).tobytes() in self._keys

    def contains(self, m: SympMatrix) -> bool:
        return m in self


def _dtype_for(modulus):
    if modulus <= 2**8:
        return np.uint8
    if modulus <= 2**16:
        return np.uint16
    return np.uint32


def group_closure(gens: Iterable[SympMatrix], cap: Optional[int] = None) -> Closure:
    """Breadth-first closure of ``gens`` (and their inverses) mod m.

    Elements are keyed by their full row-major residue tuples, so equality is
    exact.  Raises :class:`ClosureTooLarge` once more than ``cap`` elements
    have been found.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    size, modulus = gens[0].size, gens[0].modulus
    if modulus is None:
        raise InvalidModulus("closures are computed over Z/m; give the generators a modulus")
    if modulus >= 2**31:
        raise InvalidModulus("modulus must be below 2^31")
    if any(g.size != size or g.modulus != modulus for g in gens):
        raise ValueError("generators must share size and modulus")
    cap = closure_cap() if cap is None else cap
    dtype = _dtype_for(modulus)

    steps = {g.key(): g for g in gens}
    for g in gens:
        inv = g.inverse()
        steps.setdefault(inv.key(), inv)
    step_arrays = [np.array(g.rows, dtype=np.int64) for g in steps.values()]

    ident = np.eye(size, dtype=np.int64)
    seen = {ident.astype(dtype).tobytes()}
    frontier = ident[None, :, :]
    while len(frontier):
        found = []
        for s in step_arrays:
            products = np.matmul(frontier, s) % modulus
            packed = products.astype(dtype)
            for idx in range(len(packed)):
                key = packed[idx].tobytes()
                if key not in seen:
                    seen.add(key)
                    found.append(products[idx])
                    if len(seen) > cap:
                        raise ClosureTooLarge(
                            f"closure exceeded cap of {cap} elements", len(seen))
        frontier = np.array(found, dtype=np.int64).reshape(-1, size, size)
    return Closure(size, modulus, seen, dtype)


def transvection_generators(g: int, modulus: int, power: int = 1) -> list[SympMatrix]:
    """Images mod ``modulus`` of t_i^power for every chain twist."""
    chain = chain_classes(g)
    return [transvection(chain[i], modulus, power) for i in range(1, 2 * g + 2)]
