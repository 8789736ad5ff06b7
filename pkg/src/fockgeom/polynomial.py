"""Exact arithmetic in Q[b_1, ..., b_r, eps].

Every class the geometry produces is a rational scalar times a product of
integer linear forms, so classes are kept factored and only expanded when
an equality or ratio cannot be settled by comparing factor multisets.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple


class LinearForm(NamedTuple):
    """``sum_i b[i] * b_{i+1} + eps * epsilon`` with integer coefficients."""

    b: tuple[int, ...]
    eps: int

    @property
    def rank(self) -> int:
        return len(self.b)

    def is_zero(self) -> bool:
        return self.eps == 0 and not any(self.b)

    def coefficients(self) -> tuple[int, ...]:
        return self.b + (self.eps,)

    def normalized(self) -> tuple[int, LinearForm]:
        """Split off the content and sign so that equal lines compare equal.

        Returns ``(unit, primitive)`` with ``self == unit * primitive`` and the
        first nonzero coefficient of ``primitive`` positive.
        """
        coeffs = self.coefficients()
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        if g == 0:
            raise ZeroDivisionError("zero linear form has no normalization")
        lead = next(c for c in coeffs if c)
        if lead < 0:
            g = -g
        return g, LinearForm(tuple(c // g for c in self.b), self.eps // g)


def eps_form(r: int, m: int = 1) -> LinearForm:
    return LinearForm((0,) * r, m)


def weight_form(r: int, beta: int, alpha: int, m: int) -> LinearForm:
    """``b_beta - b_alpha + m * eps`` (colors are 1-based)."""
    b = [0] * r
    b[beta - 1] += 1
    b[alpha - 1] -= 1
    return LinearForm(tuple(b), m)


@dataclass(frozen=True)
class FactoredClass:
    """``scalar * prod(factors)``; zero is ``scalar == 0`` with no factors."""

    r: int
    scalar: Fraction = Fraction(1)
    factors: tuple[LinearForm, ...] = ()

    @classmethod
    def product(cls, r: int, forms: Iterable[LinearForm], scalar=1) -> FactoredClass:
        scalar = Fraction(scalar)
        if scalar == 0:
            return cls(r, Fraction(0), ())
        out = []
        for f in forms:
            if len(f.b) != r:
                raise ValueError(f"linear form of rank {len(f.b)} in rank-{r} context")
            if f.is_zero():
                return cls(r, Fraction(0), ())
            unit, prim = f.normalized()
            scalar *= unit
            out.append(prim)
        out.sort()
        return cls(r, scalar, tuple(out))

    @classmethod
    def one(cls, r: int) -> FactoredClass:
        return cls(r)

    @classmethod
    def zero(cls, r: int) -> FactoredClass:
        return cls(r, Fraction(0), ())

    def is_zero(self) -> bool:
        return self.scalar == 0

    @property
    def degree(self) -> int | None:
        """Polynomial degree (number of linear factors); ``None`` for zero."""
        return None if self.is_zero() else len(self.factors)

    def __mul__(self, other):
        if isinstance(other, FactoredClass):
            return multiply(self, other)
        return FactoredClass.product(self.r, self.factors, self.scalar * Fraction(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def expand(self) -> ExpandedPoly:
        return expand(self)


def multiply(f: FactoredClass, g: FactoredClass) -> FactoredClass:
    if f.r != g.r:
        raise ValueError(f"cannot multiply classes of rank {f.r} and {g.r}")
    if f.is_zero() or g.is_zero():
        return FactoredClass.zero(f.r)
    return FactoredClass(f.r, f.scalar * g.scalar, tuple(sorted(f.factors + g.factors)))


@dataclass(frozen=True)
class ExpandedPoly:
    """Sparse polynomial: exponent vector ``(e_b1, ..., e_br, e_eps)`` -> coefficient."""

    r: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(k): Fraction(v) for k, v in self.terms.items() if v != 0}
        for k in clean:
            if len(k) != self.r + 1:
                raise ValueError(f"exponent {k} does not match rank {self.r}")
        object.__setattr__(self, "terms", clean)

    @classmethod
    def constant(cls, r: int, c) -> ExpandedPoly:
        return cls(r, {(0,) * (r + 1): Fraction(c)})

    @classmethod
    def from_linear(cls, form: LinearForm) -> ExpandedPoly:
        r = form.rank
        terms = {}
        for i, c in enumerate(form.coefficients()):
            if c:
                e = [0] * (r + 1)
                e[i] = 1
                terms[tuple(e)] = Fraction(c)
        return cls(r, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: ExpandedPoly):
        if self.r != other.r:
            raise ValueError(f"rank mismatch: {self.r} vs {other.r}")

    def __add__(self, other: ExpandedPoly) -> ExpandedPoly:
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return ExpandedPoly(self.r, terms)

    def __neg__(self):
        return ExpandedPoly(self.r, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: ExpandedPoly) -> ExpandedPoly:
        return self + (-other)

    def __mul__(self, other) -> ExpandedPoly:
        if not isinstance(other, ExpandedPoly):
            c = Fraction(other)
            return ExpandedPoly(self.r, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        terms: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                terms[k] = terms.get(k, 0) + v1 * v2
        return ExpandedPoly(self.r, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ExpandedPoly):
            return NotImplemented
        return self.r == other.r and self.terms == other.terms

    def __hash__(self):
        return hash((self.r, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), reverse=True)

    def degree(self) -> int | None:
        if not self.terms:
            return None
        return max(sum(k) for k in self.terms)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "terms": [
                {"exp": list(k), "coef": format_rational(v)} for k, v in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> ExpandedPoly:
        return cls(
            data["r"], {tuple(t["exp"]): Fraction(t["coef"]) for t in data["terms"]}
        )

    def to_text(self) -> str:
        names = [f"b{i}" for i in range(1, self.r + 1)] + ["eps"]
        if not self.terms:
            return "0"
        pieces = []
        for k, v in self.sorted_terms():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, k) if e
            )
            mag = abs(v)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            pieces.append(("-" if v < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_text()


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def expand(f: FactoredClass) -> ExpandedPoly:
    out = ExpandedPoly.constant(f.r, f.scalar)
    if f.is_zero():
        return ExpandedPoly(f.r, {})
    for form in f.factors:
        out = out * ExpandedPoly.from_linear(form)
    return out


def equal(p: ExpandedPoly, q: ExpandedPoly) -> bool:
    return p == q


def exact_ratio(num: FactoredClass, den: FactoredClass) -> Fraction | None:
    """Return ``q`` with ``num == q * den`` exactly, or ``None`` if no scalar works.

    Raises ``ZeroDivisionError`` when ``den`` is zero.
    """
    if num.r != den.r:
        raise ValueError(f"rank mismatch: {num.r} vs {den.r}")
    if den.is_zero():
        raise ZeroDivisionError("ratio by the zero class")
    if num.is_zero():
        return Fraction(0)
    top = Counter(num.factors)
    bottom = Counter(den.factors)
    common = top & bottom
    top -= common
    bottom -= common
    q = num.scalar / den.scalar
    if not top and not bottom:
        return q
    # Residual factors left: settle it by expanding what did not cancel.
    p_top = expand(FactoredClass(num.r, Fraction(1), tuple(top.elements())))
    p_bot = expand(FactoredClass(num.r, Fraction(1), tuple(bottom.elements())))
    lead_k, lead_v = p_bot.sorted_terms()[0]
    scale = p_top.terms.get(lead_k, Fraction(0)) / lead_v
    if scale != 0 and p_top == p_bot * scale:
        return q * scale
    return None
