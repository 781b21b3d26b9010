"""Dense univariate polynomials and rational functions over the rationals.

Everything in this module is exact: coefficients are ``fractions.Fraction``
values and no operation ever rounds. Polynomials and rational functions are
immutable value objects, so they are safe to share between threads and to use
as dictionary keys.

Beyond plain ring arithmetic the module provides the pieces of bookkeeping
that the rest of the package is built on: the shift map ``p(x) -> p(x+a)``,
shift-equivalence of irreducible polynomials, multiplicity comparisons inside
a factored polynomial, and integer root extraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Optional, Union

Scalar = Union[int, Fraction]

#: Degree of the zero polynomial; compares below every integer.
NEG_INFINITY = float("-inf")


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class Poly:
    """A dense univariate polynomial with Fraction coefficients.

    Coefficients are stored in ascending power order with the trailing zeros
    trimmed, so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def one() -> "Poly":
        return Poly([1])

    @staticmethod
    def x() -> "Poly":
        return Poly([0, 1])

    @staticmethod
    def constant(c: Scalar) -> "Poly":
        return Poly([c])

    @staticmethod
    def monomial(c: Scalar, k: int) -> "Poly":
        return Poly([0] * k + [c])

    # -- basic queries ---------------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self):
        return len(self._coeffs) - 1 if self._coeffs else NEG_INFINITY

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(("Poly", self._coeffs))

    def __repr__(self):
        return f"Poly({self.to_text()!r})"

    def __setattr__(self, *args):
        raise AttributeError("Poly is immutable")

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self._coeffs])

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            return Poly([c * a for a in self._coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                if b:
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return Poly(), Poly()
        rem = list(self._coeffs)
        db = len(other._coeffs) - 1
        inv_lc = 1 / other.lc
        quo = [Fraction(0)] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            c *= inv_lc
            quo[i - db] = c
            for j, b in enumerate(other._coeffs):
                rem[i - db + j] -= c * b
        return Poly(quo), Poly(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        """Divide, insisting on a zero remainder."""
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError(f"{self!r} is not divisible by {other!r}")
        return q

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    # -- structural operations ---------------------------------------------------

    def monic(self) -> "Poly":
        if self.is_zero() or self.lc == 1:
            return self
        return self * (1 / self.lc)

    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        if self.is_zero():
            return Fraction(0)
        num = 0
        den = 1
        for c in self._coeffs:
            num = int_gcd(num, c.numerator)
            den = den * c.denominator // int_gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.content())

    def int_coeffs(self) -> list:
        """Coefficients of the primitive part, as plain ints (sign preserved)."""
        prim = self.primitive()
        return [int(c) for c in prim._coeffs]

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self._coeffs)][1:])

    def shift(self, a: int) -> "Poly":
        """Return self(x + a)."""
        if a == 0 or self.is_zero():
            return self
        step = Poly([a, 1])
        result = Poly()
        for c in reversed(self._coeffs):
            result = result * step + c
        return result

    def __call__(self, point: Scalar) -> Fraction:
        acc = Fraction(0)
        point = _frac(point)
        for c in reversed(self._coeffs):
            acc = acc * point + c
        return acc

    def to_text(self) -> str:
        """Canonical expanded form, ascending powers: ``23 - 20*x + 2*x^3``."""
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                xpow = "x" if i == 1 else f"x^{i}"
                body = xpow if mag == 1 else f"{mag}*{xpow}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.constant(value)
    return NotImplemented


# -- gcd family -----------------------------------------------------------------


def _pseudo_rem(a: list, b: list) -> list:
    """Pseudo-remainder of integer coefficient lists: lc(b)^(da-db+1) * a mod b."""
    da, db = len(a) - 1, len(b) - 1
    lead = b[-1]
    rem = list(a)
    for _ in range(da - db + 1):
        top = rem[-1]
        rem = [lead * c for c in rem]
        shift = len(rem) - 1 - db
        for j, bc in enumerate(b):
            rem[shift + j] -= top * bc
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < db:
            break
    return rem


def _int_primitive(cs: list) -> list:
    g = 0
    for c in cs:
        g = int_gcd(g, c)
    if g in (0, 1):
        return list(cs)
    return [c // g for c in cs]


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor, computed with a primitive PRS."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    f = _int_primitive(a.int_coeffs())
    g = _int_primitive(b.int_coeffs())
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = _pseudo_rem(f, g)
        f, g = g, _int_primitive(r)
    return Poly(f).monic()


def xgcd(a: Poly, b: Poly):
    """Extended gcd over Q: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Poly.one(), Poly.zero()
    t0, t1 = Poly.zero(), Poly.one()
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return Poly(), Poly(), Poly()
    scale = 1 / r0.lc
    return r0 * scale, s0 * scale, t0 * scale


def lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly()
    return (a * b).exact_div(gcd(a, b)).monic()


def resultant(a: Poly, b: Poly) -> Fraction:
    """Resultant of a and b, via the Euclidean remainder sequence over Q."""
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    da, db = a.degree, b.degree
    if da == 0:
        return a.lc**db
    if db == 0:
        return b.lc**da
    if da < db:
        sign = -1 if (da * db) % 2 else 1
        return sign * resultant(b, a)
    r = a % b
    if r.is_zero():
        return Fraction(0)
    sign = -1 if (da * db) % 2 else 1
    return sign * b.lc ** (da - r.degree) * resultant(b, r)


# -- shift equivalence ------------------------------------------------------------


def shift_equivalent(p: Poly, q: Poly) -> Optional[int]:
    """The unique integer n with p(x+n) associate to q(x), or None.

    Both arguments are expected to be irreducible (not checked). For monic
    irreducible polynomials of equal degree d the candidate shift can be read
    off the second-highest coefficients, since shifting adds n*d there.
    """
    p = p.monic()
    q = q.monic()
    d = p.degree
    if d != q.degree or d == NEG_INFINITY or d < 1:
        return None
    diff = q[d - 1] - p[d - 1]
    n = diff / d
    if n.denominator != 1:
        return None
    n = int(n)
    return n if p.shift(n) == q else None


@dataclass(frozen=True)
class FactorDecomp:
    """A factored polynomial: unit * product of base^mult.

    Bases are monic and pairwise non-associate. ``uncertain`` lists bases that
    the factoring engine could not certify irreducible; consumers treat those
    as single opaque blocks.
    """

    unit: Fraction
    factors: tuple
    uncertain: frozenset = field(default_factory=frozenset)

    def expand(self) -> Poly:
        out = Poly.constant(self.unit)
        for base, mult in self.factors:
            out = out * base**mult
        return out

    def multiplicity(self, base: Poly) -> int:
        base = base.monic()
        for b, m in self.factors:
            if b == base:
                return m
        return 0

    def certain_factors(self) -> tuple:
        return tuple((b, m) for b, m in self.factors if b not in self.uncertain)


def v_less(p: Poly, u: FactorDecomp) -> int:
    """Largest multiplicity in u among factors strictly below p in its shift class.

    A factor q counts when q = p(x+n) up to a constant for some n < 0, i.e.
    when p reaches q only by shifting backwards. Bases not certified
    irreducible are ignored; shift classes are only defined for irreducibles.
    """
    p = p.monic()
    best = 0
    for base, mult in u.certain_factors():
        n = shift_equivalent(p, base)
        if n is not None and n < 0:
            best = max(best, mult)
    return best


# -- integer roots -----------------------------------------------------------------


def _trial_division(n: int, bound: int = 1_000_000):
    """Factor n by trial division; returns (factors dict, leftover cofactor)."""
    factors = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    f = 5
    while f <= bound and f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                factors[p] = factors.get(p, 0) + 1
                n //= p
        f += 6
    return factors, n


def _divisors_from(factors: dict) -> list:
    divs = [1]
    for p, e in factors.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def _int_eval(cs: list, point: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * point + c
    return acc


def _sturm_chain(cs: list) -> list:
    """Sturm chain of the squarefree part of an integer polynomial."""
    p = Poly(cs)
    p = p.exact_div(gcd(p, p.derivative()))
    chain = [p.int_coeffs()]
    d = p.derivative()
    if not d.is_zero():
        chain.append(d.int_coeffs())
        while True:
            r = -(Poly(chain[-2]) % Poly(chain[-1]))
            if r.is_zero():
                break
            chain.append(r.int_coeffs())
            if len(chain[-1]) == 1:
                break
    return chain


def _sign_changes(chain: list, point: Fraction) -> int:
    signs = []
    num, den = point.numerator, point.denominator
    for cs in chain:
        # homogeneous Horner keeps everything in integers
        acc = 0
        dpow = 1
        for c in reversed(cs):
            acc = acc * num + c * dpow
            dpow *= den
        if acc != 0:
            signs.append(1 if acc > 0 else -1)
    changes = 0
    for a, b in zip(signs, signs[1:]):
        if a != b:
            changes += 1
    return changes


def _sturm_integer_roots(cs: list) -> set:
    """All integer roots of the integer polynomial cs, by Sturm bisection.

    Used when the constant term is too hard to factor; correct for any input
    regardless of coefficient size.
    """
    chain = _sturm_chain(cs)
    lead = abs(cs[-1])
    bound = 1 + max(abs(c) for c in cs) // lead + 1
    roots = set()

    def count(a: Fraction, b: Fraction) -> int:
        return _sign_changes(chain, a) - _sign_changes(chain, b)

    stack = [(Fraction(-bound), Fraction(bound))]
    while stack:
        a, b = stack.pop()
        k = count(a, b)
        if k == 0:
            continue
        if b - a <= 1:
            # at most two integers can sit in (a, b]
            for n in {int(b.__floor__()), int(a.__floor__()) + 1}:
                if a < n <= b and _int_eval(cs, n) == 0:
                    roots.add(n)
            continue
        mid = (a + b) / 2
        stack.append((a, mid))
        stack.append((mid, b))
    return roots


def integer_roots(p: Poly) -> set:
    """All integer roots of p.

    Strategy: strip powers of x, clear denominators, then enumerate divisors
    of the constant term when it factors easily. Otherwise fall back to an
    exhaustive scan for small root bounds and to exact Sturm bisection for
    large ones.
    """
    if p.is_zero():
        raise ValueError("integer_roots of the zero polynomial")
    roots = set()
    cs = p.int_coeffs()
    v = 0
    while cs[v] == 0:
        v += 1
    if v:
        roots.add(0)
        cs = cs[v:]
    if len(cs) == 1:
        return roots
    lead = abs(cs[-1])
    bound = 1 + max(abs(c) for c in cs) // lead
    c0 = abs(cs[0])
    factors, leftover = _trial_division(c0)
    if leftover == 1:
        for d in _divisors_from(factors):
            if d > bound:
                continue
            for cand in (d, -d):
                if _int_eval(cs, cand) == 0:
                    roots.add(cand)
        return roots
    if bound <= 10_000:
        for cand in range(-bound, bound + 1):
            if cand and _int_eval(cs, cand) == 0:
                roots.add(cand)
        return roots
    roots |= _sturm_integer_roots(cs)
    return roots
