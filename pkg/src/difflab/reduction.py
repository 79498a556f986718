"""Frobenius reduction to algebraic polynomials, and the twisting reduction.

Frobenius reduction interprets the shift as x -> x^q, turning each semiring
exponent into its integer value at q.  The twisting reduction rewrites a
polynomial over a perfect inversive coefficient domain so that some formal
partial derivative becomes nonzero: undo surplus shift depth, then extract
p^l-th roots after rescaling the shift by p^l.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import nsigma
from .diffpoly import DiffMonomial, DiffPoly, RATIONALS, Rationals
from .errors import (
    ConstantPolynomial,
    DomainMismatch,
    NonInversiveCoefficients,
    ZeroPolynomial,
)
from .gfield import DiffField, FElem


class AlgPoly:
    """Plain multivariate polynomial; exponents are unbounded naturals."""

    __slots__ = ("arity", "domain", "terms")

    def __init__(self, arity: int, domain, terms: dict):
        self.arity = arity
        self.domain = domain
        self.terms = {e: c for e, c in terms.items() if not domain.is_zero(c)}

    @classmethod
    def zero(cls, arity: int, domain) -> "AlgPoly":
        return cls(arity, domain, {})

    def __eq__(self, other):
        return (
            isinstance(other, AlgPoly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __add__(self, other: "AlgPoly") -> "AlgPoly":
        if self.arity != other.arity:
            raise DomainMismatch("arity mismatch")
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc[e] + c if e in acc else c
        return AlgPoly(self.arity, self.domain, acc)

    def __neg__(self) -> "AlgPoly":
        return AlgPoly(self.arity, self.domain, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "AlgPoly") -> "AlgPoly":
        return self + (-other)

    def __mul__(self, other: "AlgPoly") -> "AlgPoly":
        if self.arity != other.arity:
            raise DomainMismatch("arity mismatch")
        acc: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc[e] = acc[e] + c if e in acc else c
        return AlgPoly(self.arity, self.domain, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; raises on the zero polynomial."""
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def partial_derivative(self, i: int) -> "AlgPoly":
        acc: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            factor = self.domain.from_int(e[i])
            if self.domain.is_zero(factor):
                continue
            e2 = e[:i] + (e[i] - 1,) + e[i + 1 :]
            coeff = c * factor
            acc[e2] = acc[e2] + coeff if e2 in acc else coeff
        return AlgPoly(self.arity, self.domain, acc)

    def evaluate(self, point: Sequence[FElem], field: DiffField) -> FElem:
        """Straightforward evaluation with big-exponent powers."""
        if len(point) != self.arity:
            raise DomainMismatch("point arity does not match")
        total = field.zero
        for e, c in self.terms.items():
            acc = _coeff_in(self.domain, c, field)
            for i, ei in enumerate(e):
                if ei:
                    acc = acc * (point[i] ** ei)
            total = total + acc
        return total

    def render(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i}" for i in range(self.arity)]
        if not self.terms:
            return "0"
        chunks = []
        for e, c in sorted(self.terms.items(), key=lambda it: (sum(it[0]), it[0]), reverse=True):
            factors = []
            for i, ei in enumerate(e):
                if ei == 1:
                    factors.append(names[i])
                elif ei:
                    factors.append(f"{names[i]}^{ei}")
            ctext = str(c)
            body = "*".join(factors) if factors else ctext
            if factors and ctext not in ("1",):
                body = f"{ctext}*{body}" if not ctext.startswith("-") else f"({ctext})*{body}"
            chunks.append(body)
        return " + ".join(chunks)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"AlgPoly({self.render()!r})"


def _coeff_in(domain, c, field: DiffField) -> FElem:
    if isinstance(domain, Rationals):
        from .diffpoly import reduce_fraction

        return reduce_fraction(c, field)
    if not domain.same_representation(field):
        raise DomainMismatch("coefficients live in a different field")
    return FElem(field, c.val)


def frobenius_reduce(poly: DiffPoly, q: int) -> AlgPoly:
    """Replace the shift with the q-power map: every exponent is evaluated at
    q and terms with equal integer exponent vectors merge (and may cancel)."""
    if q < 2:
        raise ValueError("q must be at least 2")
    char = poly.domain.char
    if char:
        qq = q
        while qq % char == 0:
            qq //= char
        if qq != 1:
            raise ValueError(f"{q} is not a power of the characteristic {char}")
    acc: dict = {}
    for m, c in poly.terms.items():
        vec = [0] * poly.arity
        for v, e in m.exps:
            vec[v] = e.eval_at(q)
        key = tuple(vec)
        acc[key] = acc[key] + c if key in acc else c
    return AlgPoly(poly.arity, poly.domain, acc)


def sigma_unshift_depth(poly: DiffPoly) -> int:
    """Largest m such that every exponent is divisible by s^m."""
    if poly.is_zero():
        raise ZeroPolynomial("depth undefined for the zero polynomial")
    if poly.is_constant():
        raise ConstantPolynomial("depth undefined for constants")
    return min(e.valuation() for m in poly.terms for _, e in m.exps)


@dataclass
class TwistResult:
    reduced: DiffPoly
    ell: int
    m_shift: int
    witness_var: int | None

    @property
    def full(self) -> bool:
        return self.witness_var is not None


def _p_adic_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def twist_reduce(poly: DiffPoly, full: bool = True) -> TwistResult:
    """Twisting reduction of a non-constant polynomial.

    Step one divides all exponents by s^m (m maximal when full, else 0),
    pulling coefficients back through the inverse shift.  Step two rescales
    s by p^l, where p^l is the largest characteristic power dividing every
    nonzero constant exponent part, and extracts p^l-th roots of the
    coefficients.  A full reduction also records a variable whose formal
    partial derivative of the result is nonzero.
    """
    if poly.is_zero():
        raise ZeroPolynomial("cannot twist the zero polynomial")
    if poly.is_constant():
        raise ConstantPolynomial("cannot twist a constant")
    domain = poly.domain
    if not (hasattr(domain, "sigma_inv") and (domain.char == 0 or hasattr(domain, "pth_root"))):
        raise NonInversiveCoefficients("coefficient domain must be perfect and inversive")

    m = sigma_unshift_depth(poly) if full else 0
    terms: dict = {}
    for mono, coeff in poly.terms.items():
        c = coeff
        for _ in range(m):
            c = domain.sigma_inv(c)
        terms[DiffMonomial((v, e.shift_down(m)) for v, e in mono.exps)] = c

    p = domain.char
    if p == 0:
        ell = 0
    else:
        constant_parts = {
            e.constant_part for mono in terms for _, e in mono.exps if e.constant_part
        }
        ell = min((_p_adic_valuation(s, p) for s in constant_parts), default=0)

    if ell:
        scale = p**ell
        out: dict = {}
        for mono, coeff in terms.items():
            c = coeff
            for _ in range(ell):
                c = domain.pth_root(c)
            new_mono = DiffMonomial(
                (v, e.substitute_sigma(scale).divide_by_nat(scale)) for v, e in mono.exps
            )
            out[new_mono] = c
        terms = out

    reduced = DiffPoly(poly.arity, domain, terms)
    witness = None
    if full:
        for i in range(poly.arity):
            if not reduced.partial_derivative(i).is_zero():
                witness = i
                break
        if witness is None:
            raise AssertionError("full reduction produced no nonzero derivative")
    return TwistResult(reduced=reduced, ell=ell, m_shift=m, witness_var=witness)


def twisted_field(field: DiffField, ell: int) -> DiffField:
    """Same underlying field with the shift exponent lowered by ell (mod t)."""
    return field._clone_with_m((field.m - ell) % field.t)
