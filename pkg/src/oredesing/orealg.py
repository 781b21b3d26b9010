"""Ore operators over K(x) for the shift and differential rings.

An operator is a coefficient list over rational functions; multiplication
follows the single commutation rule D*f = sigma(f)*D + delta(f), iterated.
Operators are immutable values, normalized by trimming leading zeros, so the
order query is O(1) and equality is structural.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Tuple

from .polyring import NEG_INFINITY, Poly, gcd, lcm
from . import textform


class RingMismatchError(ValueError):
    pass


class RatFun:
    """A rational function num/den with monic denominator and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _poly(num)
        den = Poly.one() if den is None else _poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Poly.one()
        else:
            g = gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            if den.lc != 1:
                scale = 1 / den.lc
                num = num * scale
                den = den * scale
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *args):
        raise AttributeError("RatFun is immutable")

    @staticmethod
    def zero() -> "RatFun":
        return RatFun(Poly.zero())

    @staticmethod
    def one() -> "RatFun":
        return RatFun(Poly.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == Poly.one()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"{self!r} is not a polynomial")
        return self.num

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFun", self.num, self.den))

    def __repr__(self):
        if self.is_polynomial():
            return f"RatFun({self.num.to_text()!r})"
        return f"RatFun({self.num.to_text()!r}, {self.den.to_text()!r})"

    def __add__(self, other):
        other = _ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        other = _ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _ratfun(other) + (-self)

    def __mul__(self, other):
        other = _ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _ratfun(other)
        if other.is_zero():
            raise ZeroDivisionError("division of rational functions by zero")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _ratfun(other) / self

    def shift(self, a: int) -> "RatFun":
        return RatFun(self.num.shift(a), self.den.shift(a))

    def derivative(self) -> "RatFun":
        return RatFun(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def fractional_part(self) -> "RatFun":
        """Drop the polynomial part: num/den -> (num mod den)/den."""
        return RatFun(self.num % self.den, self.den)

    def polynomial_part(self) -> Poly:
        return self.num // self.den


def _poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.constant(value)
    raise TypeError(f"cannot interpret {value!r} as a polynomial")


def _ratfun(value):
    if isinstance(value, RatFun):
        return value
    if isinstance(value, (Poly, int, Fraction)):
        return RatFun(_poly(value))
    return NotImplemented


class OreRing(Enum):
    """The two operator rings: recurrence (shift) and differential."""

    SHIFT = "shift"
    DIFFERENTIAL = "diff"

    def sigma(self, f: RatFun, n: int = 1) -> RatFun:
        if self is OreRing.SHIFT:
            return f.shift(n)
        return f

    def sigma_poly(self, p: Poly, n: int = 1) -> Poly:
        if self is OreRing.SHIFT:
            return p.shift(n)
        return p

    def delta(self, f: RatFun) -> RatFun:
        if self is OreRing.SHIFT:
            return RatFun.zero()
        return f.derivative()

    @staticmethod
    def from_name(name: str) -> "OreRing":
        for ring in OreRing:
            if ring.value == name:
                return ring
        raise ValueError(f"unknown ring {name!r}; expected 'shift' or 'diff'")


class OreOperator:
    """An element of K(x)[D] for one of the two rings."""

    __slots__ = ("ring", "_coeffs")

    def __init__(self, ring: OreRing, coeffs: Iterable = ()):
        cs = []
        for c in coeffs:
            r = _ratfun(c)
            if r is NotImplemented:
                raise TypeError(f"bad operator coefficient {c!r}")
            cs.append(r)
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_coeffs", tuple(cs))

    def __setattr__(self, *args):
        raise AttributeError("OreOperator is immutable")

    @staticmethod
    def zero(ring: OreRing) -> "OreOperator":
        return OreOperator(ring, ())

    @staticmethod
    def one(ring: OreRing) -> "OreOperator":
        return OreOperator(ring, (RatFun.one(),))

    @staticmethod
    def d_power(ring: OreRing, k: int = 1) -> "OreOperator":
        return OreOperator(ring, (RatFun.zero(),) * k + (RatFun.one(),))

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def order(self):
        """deg_D; the zero operator has order below every integer."""
        return len(self._coeffs) - 1 if self._coeffs else NEG_INFINITY

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, i: int) -> RatFun:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return RatFun.zero()

    @property
    def lc(self) -> RatFun:
        if self.is_zero():
            raise ValueError("leading coefficient of the zero operator")
        return self._coeffs[-1]

    @property
    def trailing(self) -> RatFun:
        return self.coeff(0)

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self._coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, OreOperator):
            return NotImplemented
        return self.ring is other.ring and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(("OreOperator", self.ring, self._coeffs))

    def __repr__(self):
        return f"OreOperator({self.ring.value!r}, {self.to_text()!r})"

    # -- ring operations -----------------------------------------------------

    def _check_ring(self, other: "OreOperator"):
        if self.ring is not other.ring:
            raise RingMismatchError("operators live in different rings")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_ring(other)
        out = [RatFun.zero()] * max(len(self._coeffs), len(other._coeffs))
        for i, c in enumerate(self._coeffs):
            out[i] = out[i] + c
        for i, c in enumerate(other._coeffs):
            out[i] = out[i] + c
        return OreOperator(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return OreOperator(self.ring, [-c for c in self._coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def _coerce(self, value):
        if isinstance(value, OreOperator):
            return value
        r = _ratfun(value)
        if r is NotImplemented:
            return NotImplemented
        return OreOperator(self.ring, (r,))

    def scale(self, c) -> "OreOperator":
        """Left multiplication by a scalar in K(x): coefficient-wise."""
        c = _ratfun(c)
        return OreOperator(self.ring, [c * a for a in self._coeffs])

    def d_shift(self, k: int) -> "OreOperator":
        """Left multiplication by D^k via the commutation rule."""
        out = self
        for _ in range(k):
            out = out._d_once()
        return out

    def _d_once(self) -> "OreOperator":
        ring = self.ring
        cs = self._coeffs
        out = []
        for j in range(len(cs) + 1):
            val = RatFun.zero()
            if j < len(cs):
                val = val + ring.delta(cs[j])
            if j >= 1:
                val = val + ring.sigma(cs[j - 1])
            out.append(val)
        return OreOperator(ring, out)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_ring(other)
        acc = OreOperator.zero(self.ring)
        cur = other
        for i, a in enumerate(self._coeffs):
            if not a.is_zero():
                acc = acc + cur.scale(a)
            if i + 1 < len(self._coeffs):
                cur = cur._d_once()
        return acc

    def __rmul__(self, other):
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        return coerced * self


def op_mul(a: OreOperator, b: OreOperator) -> OreOperator:
    """The noncommutative product a*b."""
    return a * b


def right_divrem(a: OreOperator, b: OreOperator) -> Tuple[OreOperator, OreOperator]:
    """Right division: a = q*b + r with order(r) < order(b), over K(x)."""
    if b.is_zero():
        raise ZeroDivisionError("right division by the zero operator")
    a._check_ring(b)
    ring = a.ring
    quo = OreOperator.zero(ring)
    rem = a
    db = b.order
    while not rem.is_zero() and rem.order >= db:
        k = rem.order - db
        c = rem.lc / ring.sigma(b.lc, k)
        term = OreOperator(ring, [RatFun.zero()] * k + [c])
        quo = quo + term
        rem = rem - term * b
    return quo, rem


def is_left_multiple(m: OreOperator, l: OreOperator) -> bool:
    """True iff m lies in the left ideal generated by l."""
    if l.is_zero():
        raise ValueError("membership test against the zero operator")
    return right_divrem(m, l)[1].is_zero()


def clear_denominators(a: OreOperator) -> Tuple[Poly, OreOperator]:
    """Write a = (1/c) * b with b a collectively primitive polynomial operator.

    c is the least common denominator scaled so that the integer content of b
    is one and the leading coefficient of b's top entry is positive.
    """
    if a.is_zero():
        return Poly.one(), a
    common = Poly.one()
    for c in a._coeffs:
        common = lcm(common, c.den)
    nums = [c.num * common.exact_div(c.den) for c in a._coeffs]
    num_gcd = 0
    den_lcm = 1
    for p in nums:
        c = p.content()
        if c == 0:
            continue
        num_gcd = int_gcd(num_gcd, c.numerator)
        den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
    scale = Fraction(den_lcm, num_gcd) if num_gcd else Fraction(1)
    if nums[-1].lc * scale < 0:
        scale = -scale
    nums = [p * scale for p in nums]
    return common * scale, OreOperator(a.ring, nums)


def deg_x(a: OreOperator) -> int:
    """Maximum coefficient degree of a polynomial operator."""
    if not a.is_polynomial():
        raise ValueError("deg_x of a non-polynomial operator")
    if a.is_zero():
        return NEG_INFINITY
    return max(c.num.degree for c in a._coeffs)


def strip_polynomial_parts(a: OreOperator) -> OreOperator:
    """Replace every coefficient by its proper fractional part."""
    return OreOperator(a.ring, [c.fractional_part() for c in a._coeffs])


# -- text and JSON forms -------------------------------------------------------


def operator_to_text(a: OreOperator) -> str:
    """Canonical text: expanded coefficients ascending in powers of D."""
    if a.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(a._coeffs):
        if c.is_zero():
            continue
        if c.is_polynomial():
            body = c.num.to_text()
        else:
            body = f"({c.num.to_text()})/({c.den.to_text()})"
        if i == 0:
            parts.append(body if _is_plain(body) else f"({body})")
        else:
            dpow = "D" if i == 1 else f"D^{i}"
            if body == "1":
                parts.append(dpow)
            elif body == "-1":
                parts.append(f"-{dpow}")
            elif _is_plain(body):
                parts.append(f"{body}*{dpow}")
            else:
                parts.append(f"({body})*{dpow}")
    return " + ".join(parts)


def _is_plain(body: str) -> bool:
    """Single term without inner additions, safe to use unparenthesized."""
    core = body[1:] if body.startswith("-") else body
    return not any(ch in core for ch in "+-")


def parse_operator(text: str, ring: OreRing) -> OreOperator:
    """Parse operator text; the grammar admits polynomial coefficients only."""
    return OreOperator(ring, textform.parse_coeff_list(text))


def operator_to_json(a: OreOperator) -> list:
    """JSON form: one {num, den} object per coefficient, integer texts."""
    out = []
    for c in a._coeffs:
        num, den = _integer_pair(c)
        out.append({"num": num.to_text(), "den": den.to_text()})
    return out


def operator_from_json(data: list, ring: OreRing) -> OreOperator:
    coeffs = []
    for entry in data:
        num = textform.parse_poly(entry["num"])
        den = textform.parse_poly(entry["den"])
        coeffs.append(RatFun(num, den))
    return OreOperator(ring, coeffs)


def _integer_pair(c: RatFun) -> Tuple[Poly, Poly]:
    """Scale num/den jointly so both have coprime integer coefficients."""
    den_lcm = 1
    for poly in (c.num, c.den):
        for coefficient in poly.coeffs:
            den_lcm = den_lcm * coefficient.denominator // int_gcd(
                den_lcm, coefficient.denominator
            )
    num = c.num * den_lcm
    den = c.den * den_lcm
    g = 0
    for poly in (num, den):
        for coefficient in poly.coeffs:
            g = int_gcd(g, coefficient.numerator)
    if g > 1:
        num = num * Fraction(1, g)
        den = den * Fraction(1, g)
    return num, den
