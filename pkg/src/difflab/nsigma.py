"""Exponent semiring for difference monomials.

Exponents are polynomials ``c0 + c1*s + ... + ck*s^k`` in the shift symbol
``s`` with natural-number coefficients.  The total order places ``s`` above
every natural number: two exponents compare at the highest position where
their coefficients differ, which is the unique order compatible with
evaluating ``s`` at arbitrarily large integers.
"""

from __future__ import annotations

import functools
from typing import Iterable

from .errors import ExponentOverflow, NotDivisible

#: Coefficients are stored as 64-bit naturals; the values of evaluated
#: exponents are unbounded Python ints instead.
COEFF_MAX = 2**64 - 1


@functools.total_ordering
class SigmaExp:
    """One exponent in the semiring, immutable and hashable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if c < 0:
                raise ValueError("exponent coefficients must be natural numbers")
            if c > COEFF_MAX:
                raise ExponentOverflow(f"coefficient {c} exceeds 64 bits")
        self.coeffs = tuple(cs)

    # -- semiring structure ------------------------------------------------

    def __add__(self, other: "SigmaExp") -> "SigmaExp":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return SigmaExp(out)

    def __mul__(self, other: "SigmaExp") -> "SigmaExp":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return SigmaExp(out)

    # -- order -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, SigmaExp) and self.coeffs == other.coeffs

    def __lt__(self, other: "SigmaExp") -> bool:
        a, b = self.coeffs, other.coeffs
        if len(a) != len(b):
            return len(a) < len(b)
        return a[::-1] < b[::-1]

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- queries -----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Highest power of ``s`` present; -1 for the zero exponent."""
        return len(self.coeffs) - 1

    @property
    def constant_part(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (undefined for zero)."""
        if not self.coeffs:
            raise ValueError("the zero exponent has no valuation")
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError("unnormalized exponent")

    # -- maps --------------------------------------------------------------

    def eval_at(self, q: int) -> int:
        """Value with ``s`` interpreted as the integer ``q >= 2``."""
        if q < 2:
            raise ValueError("evaluation point must be at least 2")
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def divide_by_nat(self, n: int) -> "SigmaExp":
        if n < 1:
            raise ValueError("divisor must be at least 1")
        for c in self.coeffs:
            if c % n:
                raise NotDivisible(f"{n} does not divide {self}")
        return SigmaExp(c // n for c in self.coeffs)

    def substitute_sigma(self, scale: int) -> "SigmaExp":
        """Image under the semiring map sending ``s`` to ``scale * s``."""
        if scale < 1:
            raise ValueError("scale must be at least 1")
        return SigmaExp(c * scale**i for i, c in enumerate(self.coeffs))

    def shift_down(self, m: int) -> "SigmaExp":
        """Divide by ``s^m``; requires valuation at least ``m``."""
        if any(self.coeffs[:m]):
            raise NotDivisible(f"s^{m} does not divide {self}")
        return SigmaExp(self.coeffs[m:])

    def shift_up(self, m: int = 1) -> "SigmaExp":
        """Multiply by ``s^m``."""
        if not self.coeffs:
            return ZERO
        return SigmaExp((0,) * m + self.coeffs)

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                parts.append(f"{head}s" if i == 1 else f"{head}s^{i}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"SigmaExp({self.coeffs!r})"


ZERO = SigmaExp()
ONE = SigmaExp((1,))
SIGMA = SigmaExp((0, 1))


def nat(n: int) -> SigmaExp:
    return SigmaExp((n,))


def sigma_power(k: int, coeff: int = 1) -> SigmaExp:
    """The exponent ``coeff * s^k``."""
    if k == 0:
        return SigmaExp((coeff,))
    return SigmaExp((0,) * k + (coeff,))
