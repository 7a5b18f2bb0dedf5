"""Base rings: Z, Z/n, and monic algebras Z[X]/(f).

Each ring is a free Z-module (of rank 1 or deg f) or a quotient of one, so
an element is a short coefficient vector and multiplication by a fixed
element is an integer matrix (:func:`rho_matrix`).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import sympy

from .errors import FactorLimitExceeded, InvalidInput, RingMismatch
from .lattice import IntMat, hnf_basis, IntLattice

DEFAULT_FACTOR_BOUND = 10**6

INTEGERS = "Z"
INTEGERS_MOD = "Zmod"
MONIC_ALGEBRA = "monic_algebra"


@dataclass(frozen=True)
class RingDesc:
    kind: str
    n: int | None = None
    modulus: tuple[int, ...] | None = None  # constant term first, leading 1 last

    def __post_init__(self):
        if self.kind == INTEGERS_MOD:
            if self.n is None or self.n < 2:
                raise InvalidInput(f"Z/n needs n >= 2, got {self.n}")
        elif self.kind == MONIC_ALGEBRA:
            f = self.modulus
            if not f or len(f) < 2 or f[-1] != 1:
                raise InvalidInput(f"modulus {f} is not monic of degree >= 1")
        elif self.kind != INTEGERS:
            raise InvalidInput(f"unknown ring kind {self.kind!r}")

    @property
    def rank(self) -> int:
        return len(self.modulus) - 1 if self.kind == MONIC_ALGEBRA else 1

    @property
    def is_monic_algebra(self) -> bool:
        return self.kind == MONIC_ALGEBRA

    def elem(self, coeffs) -> "RingElem":
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        return RingElem(self, _canonical(self, list(coeffs)))

    @property
    def zero(self) -> "RingElem":
        return self.elem(0)

    @property
    def one(self) -> "RingElem":
        return self.elem(1)

    def __str__(self):
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == INTEGERS_MOD:
            return f"Z/{self.n}"
        return f"Z[X]/({format_poly(self.modulus)})"


def Integers() -> RingDesc:
    return RingDesc(INTEGERS)


def IntegersMod(n: int) -> RingDesc:
    return RingDesc(INTEGERS_MOD, n=n)


def MonicAlgebra(modulus: Sequence[int]) -> RingDesc:
    return RingDesc(MONIC_ALGEBRA, modulus=tuple(int(c) for c in modulus))


def format_poly(coeffs: Sequence[int], var: str = "X") -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            terms.append(mono)
        elif mono and c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}{mono}" if not mono else f"{c}*{mono}")
    return " + ".join(reversed(terms)).replace("+ -", "- ") or "0"


def _poly_mod(coeffs: list[int], f: Sequence[int]) -> list[int]:
    d = len(f) - 1
    c = list(coeffs) + [0] * max(0, d - len(coeffs))
    for k in range(len(c) - 1, d - 1, -1):
        lead = c[k]
        if lead:
            for i in range(d + 1):
                c[k - d + i] -= lead * f[i]
    return c[:d]


def _canonical(ring: RingDesc, coeffs: list[int]) -> tuple[int, ...]:
    if ring.kind == INTEGERS:
        if len(coeffs) != 1:
            raise InvalidInput(f"integer expects one coefficient, got {coeffs}")
        return (int(coeffs[0]),)
    if ring.kind == INTEGERS_MOD:
        if len(coeffs) != 1:
            raise InvalidInput(f"residue expects one coefficient, got {coeffs}")
        return (int(coeffs[0]) % ring.n,)
    return tuple(_poly_mod([int(c) for c in coeffs], ring.modulus))


@dataclass(frozen=True)
class RingElem:
    ring: RingDesc
    coeffs: tuple[int, ...]

    def __add__(self, other):
        return ring_arith("add", self, other)

    def __mul__(self, other):
        return ring_arith("mul", self, other)

    def __pow__(self, k: int):
        return ring_arith("pow", self, k)

    def __neg__(self):
        return self.ring.elem([-c for c in self.coeffs])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def lift(self) -> int:
        """The integer value for Z and Z/n elements."""
        if self.ring.is_monic_algebra:
            raise InvalidInput("monic algebra elements have no integer lift")
        return self.coeffs[0]

    def __str__(self):
        if self.ring.is_monic_algebra:
            return format_poly(self.coeffs)
        return str(self.coeffs[0])


def ring_arith(op: str, x: RingElem, y) -> RingElem:
    r = x.ring
    if op == "pow":
        k = int(y)
        if k < 0:
            raise InvalidInput("negative exponent")
        result, base = r.one, x
        while k:
            if k & 1:
                result = ring_arith("mul", result, base)
            k >>= 1
            if k:
                base = ring_arith("mul", base, base)
        return result
    if y.ring != r:
        raise RingMismatch(f"{r} vs {y.ring}")
    if op == "add":
        return r.elem([a + b for a, b in zip(x.coeffs, y.coeffs)])
    if op == "mul":
        if r.is_monic_algebra:
            prod = [0] * (len(x.coeffs) + len(y.coeffs) - 1)
            for i, a in enumerate(x.coeffs):
                if a:
                    for j, b in enumerate(y.coeffs):
                        prod[i + j] += a * b
            return r.elem(prod)
        return r.elem(x.coeffs[0] * y.coeffs[0])
    raise ValueError(f"unknown ring operation {op!r}")


def rho_matrix(r: RingDesc, a: RingElem) -> IntMat:
    """Multiplication by ``a`` on the integer basis 1, X, ..., X^(d-1)."""
    if not r.is_monic_algebra:
        return ((a.coeffs[0],),)
    d = r.rank
    rows = []
    for i in range(d):
        shifted = [0] * i + list(a.coeffs)
        rows.append(tuple(_poly_mod(shifted, r.modulus)))
    return tuple(rows)


def _trial_bound() -> int:
    raw = os.environ.get("ENVRAD_FACTOR_BOUND")
    return int(raw) if raw else DEFAULT_FACTOR_BOUND


def factor_int(n: int, bound: int | None = None) -> dict[int, int]:
    """Prime factorization by trial division up to ``bound``.

    Raises FactorLimitExceeded if a cofactor is left that trial division up
    to the bound cannot certify as prime.
    """
    if n < 1:
        raise InvalidInput(f"cannot factor {n}")
    bound = _trial_bound() if bound is None else bound
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        if p > bound:
            raise FactorLimitExceeded(f"cofactor {n} exceeds trial-division bound {bound}")
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factor_int(n) == {n: 1}


def radical_of_int(n: int) -> int:
    return math.prod(factor_int(n)) if n > 1 else 1


def squarefree_part(f: Sequence[int]) -> tuple[int, ...]:
    """f / gcd(f, f'), normalized to positive leading coefficient."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed([int(c) for c in f])), x, domain="ZZ")
    sqf = poly.sqf_part()
    coeffs = [int(c) for c in reversed(sqf.all_coeffs())]
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


@dataclass(frozen=True)
class IdealDesc:
    ring: RingDesc
    generators: tuple[RingElem, ...]

    def lattice(self) -> IntLattice:
        """The ideal as a sublattice of Z^rank (for Z/n, of the lift to Z)."""
        r = self.ring
        rows = []
        for g in self.generators:
            rows.extend(rho_matrix(r, g))
        if r.kind == INTEGERS_MOD:
            rows.append((r.n,))
        return hnf_basis(rows, r.rank)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def principal_ideal(ring: RingDesc, value: int) -> IdealDesc:
    """Gcd-normalized single generator for Z and Z/n."""
    if ring.kind == INTEGERS_MOD:
        value = math.gcd(value, ring.n)
    return IdealDesc(ring, (ring.elem(abs(value)),))


def ideal_from_lattice(ring: RingDesc, lat: IntLattice) -> IdealDesc:
    if ring.is_monic_algebra:
        return IdealDesc(ring, tuple(ring.elem(row) for row in lat.basis))
    value = lat.basis[0][0] if lat.basis else 0
    return principal_ideal(ring, value)


def nilradical(r: RingDesc) -> IdealDesc:
    if r.kind == INTEGERS:
        return IdealDesc(r, (r.zero,))
    if r.kind == INTEGERS_MOD:
        return principal_ideal(r, radical_of_int(r.n))
    return IdealDesc(r, (r.elem(squarefree_part(r.modulus)),))


def gcd_all(values) -> int:
    return reduce(math.gcd, values, 0)
