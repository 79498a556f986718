"""Difference polynomials over Q or over a finite difference field.

A monomial maps variable indices to exponents in the shift semiring; a
polynomial is a canonical term map from monomials to nonzero coefficients.
Coefficients are `fractions.Fraction` values over Q (where the shift acts as
the identity) or `FElem` values over a `DiffField` (where it acts as the
field's Frobenius power).  Values are immutable once built.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from . import nsigma
from .errors import BadReduction, DomainMismatch, ZeroPolynomial
from .gfield import DiffField, FElem
from .nsigma import SigmaExp


class Rationals:
    """Coefficient domain Q with the identity shift action."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def sigma(self, c: Fraction) -> Fraction:
        return c

    def sigma_inv(self, c: Fraction) -> Fraction:
        return c

    def is_zero(self, c: Fraction) -> bool:
        return c == 0

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Rationals")

    def __repr__(self):
        return "Q"


RATIONALS = Rationals()


def domains_equal(a, b) -> bool:
    if isinstance(a, Rationals) and isinstance(b, Rationals):
        return True
    if isinstance(a, DiffField) and isinstance(b, DiffField):
        return a == b
    return False


def reduce_fraction(c: Fraction, field: DiffField) -> FElem:
    """Image of a rational in the field; the denominator must be a unit."""
    if c.denominator % field.p == 0:
        raise BadReduction(f"denominator of {c} vanishes modulo {field.p}")
    num = field.from_int(c.numerator % field.p)
    den = field.from_int(c.denominator % field.p)
    return num * den.inv()


class DiffMonomial:
    """A product of variable powers with semiring exponents."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps: Iterable[tuple[int, SigmaExp]] = ()):
        cleaned = sorted((v, e) for v, e in exps if not e.is_zero())
        self.exps = tuple(cleaned)
        self._hash = hash(self.exps)

    def __eq__(self, other):
        return isinstance(other, DiffMonomial) and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def exponent(self, var: int) -> SigmaExp:
        for v, e in self.exps:
            if v == var:
                return e
        return nsigma.ZERO

    def variables(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.exps)

    def is_constant(self) -> bool:
        return not self.exps

    def mul(self, other: "DiffMonomial") -> "DiffMonomial":
        merged = dict(self.exps)
        for v, e in other.exps:
            merged[v] = merged[v] + e if v in merged else e
        return DiffMonomial(merged.items())

    def total(self) -> SigmaExp:
        acc = nsigma.ZERO
        for _, e in self.exps:
            acc = acc + e
        return acc

    def shifted(self) -> "DiffMonomial":
        return DiffMonomial((v, e.shift_up()) for v, e in self.exps)

    def max_sigma_power(self) -> int:
        return max((e.degree for _, e in self.exps), default=0)

    def dense(self, arity: int) -> tuple[SigmaExp, ...]:
        out = [nsigma.ZERO] * arity
        for v, e in self.exps:
            out[v] = e
        return tuple(out)

    def __repr__(self):
        return f"DiffMonomial({self.exps!r})"


ONE_MONOMIAL = DiffMonomial()


class DiffPoly:
    """Canonical sparse difference polynomial of a fixed arity."""

    __slots__ = ("arity", "domain", "terms")

    def __init__(self, arity: int, domain, terms: dict):
        self.arity = arity
        self.domain = domain
        self.terms = {m: c for m, c in terms.items() if not domain.is_zero(c)}
        for m in self.terms:
            for v, _ in m.exps:
                if not 0 <= v < arity:
                    raise ValueError(f"variable index {v} out of range for arity {arity}")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, arity: int, domain) -> "DiffPoly":
        return cls(arity, domain, {})

    @classmethod
    def constant(cls, arity: int, domain, c) -> "DiffPoly":
        if isinstance(c, int):
            c = domain.from_int(c)
        return cls(arity, domain, {ONE_MONOMIAL: c})

    @classmethod
    def variable(cls, arity: int, domain, i: int, exp: SigmaExp = nsigma.ONE) -> "DiffPoly":
        return cls(arity, domain, {DiffMonomial([(i, exp)]): domain.one})

    @classmethod
    def from_terms(cls, arity: int, domain, items) -> "DiffPoly":
        acc: dict = {}
        for mono, coeff in items:
            if isinstance(coeff, int):
                coeff = domain.from_int(coeff)
            if mono in acc:
                acc[mono] = acc[mono] + coeff
            else:
                acc[mono] = coeff
        return cls(arity, domain, acc)

    # -- ring operations -------------------------------------------------------

    def _check_compatible(self, other: "DiffPoly"):
        if self.arity != other.arity or not domains_equal(self.domain, other.domain):
            raise DomainMismatch("polynomials over different arities or domains")

    def __add__(self, other):
        other = self._coerce(other)
        self._check_compatible(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc[m] + c if m in acc else c
        return DiffPoly(self.arity, self.domain, acc)

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def __neg__(self):
        return DiffPoly(self.arity, self.domain, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        self._check_compatible(other)
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1.mul(m2)
                c = c1 * c2
                acc[m] = acc[m] + c if m in acc else c
        return DiffPoly(self.arity, self.domain, acc)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = DiffPoly.constant(self.arity, self.domain, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def _coerce(self, other):
        if isinstance(other, DiffPoly):
            return other
        if isinstance(other, (int, Fraction, FElem)):
            return DiffPoly.constant(self.arity, self.domain, other)
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, DiffPoly)
            and self.arity == other.arity
            and domains_equal(self.domain, other.domain)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m.is_constant() for m in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get(ONE_MONOMIAL, self.domain.zero)

    # -- difference structure ----------------------------------------------

    def sigma_shift(self) -> "DiffPoly":
        """Apply the shift: exponents gain one power of s, coefficients move
        through the domain action."""
        return DiffPoly(
            self.arity,
            self.domain,
            {m.shifted(): self.domain.sigma(c) for m, c in self.terms.items()},
        )

    def partial_derivative(self, i: int) -> "DiffPoly":
        """Formal derivative in x_i; shifted powers x_i^(s^k), k >= 1, count
        as constants."""
        if not 0 <= i < self.arity:
            raise ValueError("variable index out of range")
        acc: dict = {}
        for m, c in self.terms.items():
            e = m.exponent(i)
            c0 = e.constant_part
            if c0 == 0:
                continue
            factor = self.domain.from_int(c0)
            if self.domain.is_zero(factor):
                continue
            new_exp = SigmaExp((c0 - 1,) + e.coeffs[1:])
            rest = [(v, ee) for v, ee in m.exps if v != i]
            if not new_exp.is_zero():
                rest.append((i, new_exp))
            mono = DiffMonomial(rest)
            coeff = c * factor
            acc[mono] = acc[mono] + coeff if mono in acc else coeff
        return DiffPoly(self.arity, self.domain, acc)

    def total_degree(self) -> SigmaExp:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no total degree")
        return max(m.total() for m in self.terms)

    def max_sigma_power(self) -> int:
        return max((m.max_sigma_power() for m in self.terms), default=0)

    # -- evaluation ----------------------------------------------------------

    def coeff_in(self, field: DiffField, c) -> FElem:
        if isinstance(self.domain, Rationals):
            return reduce_fraction(c, field)
        if not self.domain.same_representation(field):
            raise DomainMismatch("coefficients live in a different field")
        return FElem(field, c.val)

    def evaluate(self, point: Sequence[FElem], field: DiffField) -> FElem:
        """Value at a point, reading x^(s^k) as the k-fold Frobenius image
        under the evaluation field's shift."""
        if len(point) != self.arity:
            raise DomainMismatch("point arity does not match the polynomial")
        frob_cache: dict[tuple[int, int], FElem] = {}

        def frob_image(var: int, k: int) -> FElem:
            key = (var, k)
            if key not in frob_cache:
                frob_cache[key] = field.frobenius(point[var], k)
            return frob_cache[key]

        total = field.zero
        for m, c in self.terms.items():
            acc = self.coeff_in(field, c)
            for v, e in m.exps:
                for k, ck in enumerate(e.coeffs):
                    if ck:
                        acc = acc * (frob_image(v, k) ** ck)
            total = total + acc
        return total

    def specialize_to_field(self, field: DiffField) -> "DiffPoly":
        """Move a rational-coefficient polynomial into the field."""
        if isinstance(self.domain, DiffField):
            if not self.domain.same_representation(field):
                raise DomainMismatch("polynomial belongs to a different field")
            if self.domain == field:
                return self
            return DiffPoly(self.arity, field, {m: FElem(field, c.val) for m, c in self.terms.items()})
        return DiffPoly(
            self.arity, field, {m: reduce_fraction(c, field) for m, c in self.terms.items()}
        )

    def substitute(self, assignments: dict[int, FElem], field: DiffField) -> "DiffPoly":
        """Evaluate a subset of variables at field elements; the polynomial
        must already live over the field."""
        if not isinstance(self.domain, DiffField) or not self.domain.same_representation(field):
            raise DomainMismatch("substitute requires a field-coefficient polynomial")
        acc: dict = {}
        for m, c in self.terms.items():
            coeff = FElem(field, c.val)
            kept = []
            for v, e in m.exps:
                if v in assignments:
                    val = assignments[v]
                    for k, ck in enumerate(e.coeffs):
                        if ck:
                            coeff = coeff * (field.frobenius(val, k) ** ck)
                else:
                    kept.append((v, e))
            mono = DiffMonomial(kept)
            acc[mono] = acc[mono] + coeff if mono in acc else coeff
        return DiffPoly(self.arity, field, acc)

    def restrict_arity(self, arity: int) -> "DiffPoly":
        for m in self.terms:
            for v, _ in m.exps:
                if v >= arity:
                    raise ValueError(f"variable {v} still present")
        return DiffPoly(arity, self.domain, dict(self.terms))

    # -- rendering -----------------------------------------------------------

    def sorted_terms(self):
        """Terms graded by total exponent, then by the per-variable exponent
        vector, largest first; fixes rendering and report order."""
        return sorted(
            self.terms.items(),
            key=lambda item: (item[0].total(), item[0].dense(self.arity)),
            reverse=True,
        )

    def render(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i}" for i in range(self.arity)]
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for mono, coeff in self.sorted_terms():
            sign, body = _render_term(mono, coeff, names)
            if not chunks:
                chunks.append(body if sign > 0 else f"-{body}")
            else:
                chunks.append(f"{'+' if sign > 0 else '-'} {body}")
        return " ".join(chunks)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"DiffPoly({self.render()!r})"


def _render_coeff(coeff):
    """Returns (sign, text or None if the coefficient is a bare 1)."""
    if isinstance(coeff, Fraction):
        sign = 1 if coeff > 0 else -1
        mag = abs(coeff)
        if mag == 1:
            return sign, None
        return sign, str(mag)
    # field elements are never negative; render prime-subfield values plainly
    if coeff.val == 1:
        return 1, None
    if coeff.val < coeff.field.p:
        return 1, str(coeff.val)
    return 1, f"({coeff})"


def _render_term(mono: DiffMonomial, coeff, names) -> tuple[int, str]:
    sign, ctext = _render_coeff(coeff)
    factors: list[str] = []
    for v, e in mono.exps:
        for k, ck in enumerate(e.coeffs):
            if not ck:
                continue
            if k == 0:
                base = names[v]
            elif k == 1:
                base = f"s({names[v]})"
            else:
                base = f"s{k}({names[v]})"
            factors.append(base if ck == 1 else f"{base}^{ck}")
    if not factors:
        return sign, ctext if ctext is not None else "1"
    body = "*".join(factors)
    if ctext is not None:
        body = f"{ctext}*{body}"
    return sign, body
