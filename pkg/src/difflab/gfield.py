"""Concrete finite difference fields (F_{p^t}, Frob_{p^m}).

Elements live in a polynomial basis 1, g, ..., g^{t-1} modulo a monic
irreducible polynomial found by a seeded deterministic search.  An element is
stored packed as the integer sum(d_i * p^i) of its coordinate digits, and the
enumeration order is ascending packed value.  Counting results never depend on
the modulus choice; it only affects element labels.

The shift map is Frob_{p^m}.  Every power of the p-power map is realized by a
precomputed t-by-t matrix over F_p, so one application costs O(t^2) both on
single elements and on numpy blocks of them.
"""

from __future__ import annotations

import math
import random
from typing import Iterator

import numpy as np

from .errors import DivisionByZero, DomainMismatch, NotPrime, TooLarge

MAX_T = 24
MAX_ORDER = 2**40

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact far beyond the 32-bit cap used here."""
    if n < 2:
        return False
    for w in _MR_WITNESSES:
        if n % w == 0:
            return n == w
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# dense F_p[x] helpers on little-endian coefficient lists


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, f, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    t = len(f) - 1
    for k in range(len(out) - 1, t - 1, -1):
        c = out[k]
        if c:
            for j in range(t):
                out[k - t + j] = (out[k - t + j] - c * f[j]) % p
        out.pop()
    return _poly_trim(out)


def _poly_powmod(a, e, f, p):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, f, p)
    return result


def _poly_gcd(a, b, p):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, bj in enumerate(b):
                a[shift + j] = (a[shift + j] - c * bj) % p
            _poly_trim(a)
            if not a:
                break
        a, b = b, a
    return a


def _sub_x(a, p):
    """a - x over F_p, trimmed."""
    out = list(a)
    while len(out) < 2:
        out.append(0)
    out[1] = (out[1] - 1) % p
    return _poly_trim(out)


def _is_irreducible(f, p):
    """Monic f of degree t >= 1 over F_p."""
    t = len(f) - 1
    if t == 1:
        return True
    x = [0, 1]
    xq = _poly_powmod(x, p**t, f, p)
    if _sub_x(xq, p):
        return False
    r = t
    primes = set()
    d = 2
    while d * d <= r:
        if r % d == 0:
            primes.add(d)
            while r % d == 0:
                r //= d
        d += 1
    if r > 1:
        primes.add(r)
    for r in primes:
        xe = _poly_powmod(x, p ** (t // r), f, p)
        g = _poly_gcd(_sub_x(xe, p), f, p)
        if len(g) != 1:
            return False
    return True


def _find_modulus(p, t, seed):
    if t == 1:
        return (0, 1)
    rng = random.Random((seed * 1_000_003 + p) * 1_000_003 + t)
    while True:
        cand = [rng.randrange(p) for _ in range(t)] + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)


# ---------------------------------------------------------------------------


class FElem:
    """A field element: a handle around its packed coordinate integer."""

    __slots__ = ("field", "val")

    def __init__(self, field: "DiffField", val: int):
        self.field = field
        self.val = val

    @property
    def coords(self) -> tuple[int, ...]:
        return self.field._digits(self.val)

    def _coerce(self, other):
        if isinstance(other, FElem):
            if not self.field.same_representation(other.field):
                raise DomainMismatch("elements of different fields")
            return other.val
        if isinstance(other, int):
            return self.field.from_int(other).val
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FElem(self.field, self.field.add_packed(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FElem(self.field, self.field.sub_packed(self.val, v))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FElem(self.field, self.field.neg_packed(self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FElem(self.field, self.field.mul_packed(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FElem(self.field, self.field.mul_packed(self.val, self.field.inv_packed(v)))

    def __pow__(self, e: int):
        return FElem(self.field, self.field.pow_packed(self.val, e))

    def inv(self) -> "FElem":
        return FElem(self.field, self.field.inv_packed(self.val))

    def frob(self, k: int = 1) -> "FElem":
        return self.field.frobenius(self, k)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.val == self.field.from_int(other).val
        return (
            isinstance(other, FElem)
            and self.field.same_representation(other.field)
            and self.val == other.val
        )

    def __hash__(self):
        return hash((self.field.p, self.field.t, self.field.modulus, self.val))

    def __bool__(self):
        return self.val != 0

    def __str__(self):
        digits = self.coords
        parts = []
        for i in range(len(digits) - 1, -1, -1):
            d = digits[i]
            if not d:
                continue
            if i == 0:
                parts.append(str(d))
            else:
                head = "" if d == 1 else f"{d}*"
                parts.append(f"{head}g" if i == 1 else f"{head}g^{i}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"<{self} in F_{self.field.p}^{self.field.t}>"


class DiffField:
    """F_{p^t} together with the shift Frob_{p^m} (m reduced mod t)."""

    def __init__(self, p: int, t: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.t = t
        self.m = m % t
        self.q = p**self.m
        self.size = p**t
        self.char = p
        self.modulus = tuple(modulus)
        self._pows = [p**i for i in range(t + 1)]
        self._build_reduction()
        self._build_frobenius()
        self.zero = FElem(self, 0)
        self.one = FElem(self, 1)

    # -- construction helpers ----------------------------------------------

    def _build_reduction(self):
        p, t = self.p, self.t
        rows = []
        if t > 1:
            top = [(-c) % p for c in self.modulus[:t]]
            rows.append(top)
            for _ in range(t - 2):
                prev = rows[-1]
                nxt = [0] + prev[: t - 1]
                carry = prev[t - 1]
                if carry:
                    nxt = [(nxt[j] + carry * top[j]) % p for j in range(t)]
                rows.append(nxt)
        self._red_rows = [tuple(r) for r in rows]
        self._red_np = np.array(rows, dtype=np.uint64) if rows else np.zeros((0, t), dtype=np.uint64)

    def _build_frobenius(self):
        p, t = self.p, self.t
        if t == 1:
            mats = [np.ones((1, 1), dtype=np.uint64)]
        else:
            gp = self.pow_packed(p, p)  # image of g under x -> x^p
            rows = [self._digits(1)]
            acc = 1
            for _ in range(t - 1):
                acc = self.mul_packed(acc, gp)
                rows.append(self._digits(acc))
            base = np.array(rows, dtype=np.uint64)
            mats = [np.eye(t, dtype=np.uint64)]
            for _ in range(t - 1):
                mats.append((mats[-1] @ base) % p)
        self._frob_mats = mats

    def _clone_with_m(self, m: int) -> "DiffField":
        return DiffField(self.p, self.t, m, self.modulus)

    # -- packed scalar arithmetic -------------------------------------------

    def _digits(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.t):
            a, d = divmod(a, p)
            out.append(d)
        return tuple(out)

    def _pack(self, digits) -> int:
        acc = 0
        for d in reversed(digits):
            acc = acc * self.p + d
        return acc

    def add_packed(self, a: int, b: int) -> int:
        p = self.p
        if self.t == 1:
            return (a + b) % p
        da, db = self._digits(a), self._digits(b)
        return self._pack([(x + y) % p for x, y in zip(da, db)])

    def sub_packed(self, a: int, b: int) -> int:
        p = self.p
        if self.t == 1:
            return (a - b) % p
        da, db = self._digits(a), self._digits(b)
        return self._pack([(x - y) % p for x, y in zip(da, db)])

    def neg_packed(self, a: int) -> int:
        return self.sub_packed(0, a)

    def mul_packed(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        p, t = self.p, self.t
        if t == 1:
            return a * b % p
        da, db = self._digits(a), self._digits(b)
        full = [0] * (2 * t - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    full[i + j] += ai * bj
        for k in range(2 * t - 2, t - 1, -1):
            c = full[k] % p
            if c:
                row = self._red_rows[k - t]
                for j in range(t):
                    full[j] += c * row[j]
        return self._pack([v % p for v in full[:t]])

    def pow_packed(self, a: int, e: int) -> int:
        """Square and multiply; arbitrary-precision exponents are reduced by
        the multiplicative group order for nonzero bases."""
        if e < 0:
            return self.pow_packed(self.inv_packed(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        if e >= self.size - 1 and self.size > 2:
            e %= self.size - 1
            if e == 0:
                return 1
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul_packed(result, base)
            e >>= 1
            if e:
                base = self.mul_packed(base, base)
        return result

    def inv_packed(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.pow_packed(a, self.size - 2)

    def frob_p_packed(self, a: int, j: int) -> int:
        """j-fold p-power map via the precomputed matrix."""
        j %= self.t
        if j == 0 or a == 0:
            return a
        vec = np.array(self._digits(a), dtype=np.uint64)
        out = (vec @ self._frob_mats[j]) % self.p
        return self._pack(out.tolist())

    def frobenius_packed(self, a: int, k: int = 1) -> int:
        return self.frob_p_packed(a, (self.m * k) % self.t)

    # -- public element API ---------------------------------------------------

    def elem(self, val: int) -> FElem:
        if not 0 <= val < self.size:
            raise ValueError("packed value out of range")
        return FElem(self, val)

    def from_int(self, n: int) -> FElem:
        return FElem(self, n % self.p)

    def from_coords(self, digits) -> FElem:
        digits = list(digits)
        if len(digits) != self.t or any(not 0 <= d < self.p for d in digits):
            raise ValueError("bad coordinate vector")
        return FElem(self, self._pack(digits))

    @property
    def generator(self) -> FElem:
        """The class of x in the modulus basis (only for t >= 2)."""
        if self.t == 1:
            raise ValueError("prime fields have no polynomial generator")
        return FElem(self, self.p)

    def frobenius(self, x: FElem, k: int = 1) -> FElem:
        """k-fold application of the shift x -> x^(p^m)."""
        if not self.same_representation(x.field):
            raise DomainMismatch("element of a different field")
        return FElem(self, self.frobenius_packed(x.val, k))

    def fixed_field_size(self) -> int:
        """Number of solutions of shift(x) = x."""
        return self.p ** math.gcd(self.t, self.m)

    def elements(self) -> Iterator[FElem]:
        """All p^t elements in canonical (packed ascending) order."""
        for v in range(self.size):
            yield FElem(self, v)

    def shard_bounds(self, k: int) -> list[tuple[int, int]]:
        """Split the canonical order into k contiguous near-equal ranges."""
        if k < 1:
            raise ValueError("need at least one shard")
        base, rem = divmod(self.size, k)
        bounds = []
        start = 0
        for i in range(k):
            width = base + (1 if i < rem else 0)
            bounds.append((start, start + width))
            start += width
        return bounds

    # -- coefficient-domain hooks (shared with the rationals) ----------------

    def sigma(self, c: FElem) -> FElem:
        return self.frobenius(c, 1)

    def sigma_inv(self, c: FElem) -> FElem:
        return FElem(self, self.frob_p_packed(c.val, (-self.m) % self.t))

    def pth_root(self, c: FElem) -> FElem:
        return FElem(self, self.frob_p_packed(c.val, self.t - 1))

    def is_zero(self, c: FElem) -> bool:
        return c.val == 0

    # -- vectorized block primitives (uint64 digit matrices of shape (B, t)) --

    def digits_block(self, vals: np.ndarray) -> np.ndarray:
        vals = np.asarray(vals, dtype=np.uint64)
        out = np.empty((vals.shape[0], self.t), dtype=np.uint64)
        p = np.uint64(self.p)
        rest = vals.copy()
        for i in range(self.t):
            out[:, i] = rest % p
            rest //= p
        return out

    def pack_block(self, digits: np.ndarray) -> np.ndarray:
        weights = np.array(self._pows[: self.t], dtype=np.uint64)
        return digits @ weights

    def add_block(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % np.uint64(self.p)

    def mul_block(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p, t = np.uint64(self.p), self.t
        a2 = np.atleast_2d(a)
        b2 = np.atleast_2d(b)
        rows = max(a2.shape[0], b2.shape[0])
        full = np.zeros((rows, 2 * t - 1), dtype=np.uint64)
        for i in range(t):
            col = a2[:, i : i + 1]
            if col.any():
                full[:, i : i + t] += col * b2
        full %= p
        if t == 1:
            return full
        low = full[:, :t].copy()
        low += full[:, t:] @ self._red_np
        low %= p
        return low

    def pow_block(self, a: np.ndarray, e: int) -> np.ndarray:
        rows = np.atleast_2d(a).shape[0]
        if e == 0:
            out = np.zeros((rows, self.t), dtype=np.uint64)
            out[:, 0] = 1
            return out
        result = None
        base = np.atleast_2d(a)
        while e:
            if e & 1:
                result = base.copy() if result is None else self.mul_block(result, base)
            e >>= 1
            if e:
                base = self.mul_block(base, base)
        return result

    def frob_block(self, a: np.ndarray, j: int) -> np.ndarray:
        j %= self.t
        if j == 0:
            return a
        return (np.atleast_2d(a) @ self._frob_mats[j]) % np.uint64(self.p)

    # -- identity ------------------------------------------------------------

    def same_representation(self, other: "DiffField") -> bool:
        return self.p == other.p and self.t == other.t and self.modulus == other.modulus

    def __eq__(self, other):
        return (
            isinstance(other, DiffField)
            and self.same_representation(other)
            and self.m == other.m
        )

    def __hash__(self):
        return hash((self.p, self.t, self.m, self.modulus))

    def __repr__(self):
        return f"DiffField(p={self.p}, t={self.t}, m={self.m})"


def make_field(p: int, t: int, m: int, seed: int = 0) -> DiffField:
    """Deterministic construction of (F_{p^t}, Frob_{p^m}).

    The modulus is the first irreducible monic degree-t polynomial in the
    seeded scan order, so the same (p, t, seed) always yields the same
    representation.
    """
    if p >= 2**32:
        raise TooLarge(f"characteristic {p} does not fit in 32 bits")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 1 <= t <= MAX_T:
        raise TooLarge(f"extension degree must be in [1, {MAX_T}]")
    if p**t > MAX_ORDER:
        raise TooLarge(f"field order p^t exceeds 2^40")
    if m < 0:
        raise ValueError("the shift exponent must be a natural number")
    return DiffField(p, t, m, _find_modulus(p, t, seed))
