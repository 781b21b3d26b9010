"""Desk-scale factorization over the rationals.

The built-in pipeline is squarefree decomposition (Yun), rational root
extraction, closed-form irreducibility for the degree <= 3 leftovers, and a
capped Zassenhaus lift for higher degrees. Anything the pipeline cannot
certify is returned as an opaque block flagged in ``FactorDecomp.uncertain``
rather than raising, and callers may pass hint divisors to bypass the
built-in machinery entirely.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Optional

from .polyring import FactorDecomp, Poly, gcd, integer_roots

# The optional lifting path refuses inputs beyond these sizes.
MAX_LIFT_DEGREE = 24
MAX_LIFT_HEIGHT_BITS = 256

_LIFT_PRIMES = (
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127,
)


def squarefree_decomp(p: Poly) -> list:
    """Yun decomposition: p = unit * prod(part_i ^ mult_i), parts monic.

    Parts are squarefree, pairwise coprime, and returned with strictly
    increasing multiplicities.
    """
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    f = p.monic()
    if f.degree < 1:
        return []
    out = []
    g = gcd(f, f.derivative())
    c = f.exact_div(g)
    d = f.derivative().exact_div(g) - c.derivative()
    i = 1
    while c.degree > 0:
        a = gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c = c.exact_div(a)
        d = d.exact_div(a) - c.derivative()
        i += 1
    return out


def factor(p: Poly, hints: Optional[Iterable[Poly]] = None) -> FactorDecomp:
    """Factor p into monic irreducible pieces, degrading gracefully.

    Bases the engine cannot certify irreducible are still returned (so the
    product invariant always holds) but listed in ``uncertain``.
    """
    if p.is_zero():
        raise ValueError("factorization of the zero polynomial")
    unit = p.lc
    if p.degree < 1:
        return FactorDecomp(unit, ())
    hint_list = []
    for h in hints or []:
        h = h.monic()
        if h.degree >= 1 and h not in hint_list:
            hint_list.append(h)
    factors = []
    uncertain = set()
    for part, mult in squarefree_decomp(p):
        bases, unknown = _factor_squarefree(part, hint_list)
        factors.extend((b, mult) for b in bases)
        uncertain |= unknown
    factors.sort(key=lambda bm: (bm[0].degree, bm[0].coeffs))
    decomp = FactorDecomp(unit, tuple(factors), frozenset(uncertain))
    if decomp.expand() != p:
        raise AssertionError("factorization does not reproduce its input")
    return decomp


def multiplicity(p: Poly, base: Poly) -> int:
    """Exact multiplicity of ``base`` in ``p`` by repeated division."""
    if base.degree < 1:
        raise ValueError("multiplicity of a constant factor")
    count = 0
    while True:
        q, r = divmod(p, base)
        if not r.is_zero():
            return count
        p = q
        count += 1


# -- squarefree pieces ----------------------------------------------------------


def _rational_roots(f: Poly) -> list:
    """All rational roots of f, via integer roots of a monic transform.

    For f with integer coefficients and leading coefficient a, the roots of f
    are y/a for the integer roots y of the monic polynomial a^(n-1) f(y/a).
    """
    cs = f.int_coeffs()
    lead = cs[-1]
    n = len(cs) - 1
    monic_cs = [c * lead ** (n - 1 - i) for i, c in enumerate(cs[:-1])] + [1]
    return sorted(Fraction(y, lead) for y in integer_roots(Poly(monic_cs)))


def _factor_squarefree(f: Poly, hints: list) -> tuple:
    """Split a monic squarefree polynomial; returns (bases, uncertain set)."""
    out = []
    for h in hints:
        if h.degree >= 1 and f.degree >= h.degree and h.divides(f):
            out.append(h)
            f = f.exact_div(h)
    if f.degree >= 1:
        for root in _rational_roots(f):
            lin = Poly([-root, 1])
            out.append(lin)
            f = f.exact_div(lin)
    if f.degree < 1:
        return out, set()
    if f.degree <= 3:
        # no rational root and degree <= 3 means irreducible over Q
        out.append(f)
        return out, set()
    lifted = _zassenhaus(f)
    if lifted is None:
        out.append(f)
        return out, {f}
    out.extend(lifted)
    return out, set()


# -- arithmetic mod an integer ------------------------------------------------------


def _mod_trim(a: list, m: int) -> list:
    a = [c % m for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod_add(a: list, b: list, m: int) -> list:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _mod_trim(out, m)


def _mod_sub(a: list, b: list, m: int) -> list:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _mod_trim(out, m)


def _mod_mul(a: list, b: list, m: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _mod_trim(out, m)


def _mod_divmod_monic(a: list, b: list, m: int) -> tuple:
    """Division by a monic polynomial, coefficients mod m."""
    rem = [c % m for c in a]
    db = len(b) - 1
    quo = [0] * max(len(rem) - db, 0)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] % m
        if c == 0:
            continue
        quo[i - db] = c
        for j, y in enumerate(b):
            rem[i - db + j] = (rem[i - db + j] - c * y) % m
    return _mod_trim(quo, m), _mod_trim(rem[:db], m)


# -- arithmetic mod a small prime (field case) ---------------------------------------


def _gf_divmod(a: list, b: list, p: int) -> tuple:
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, p)
    rem = [c % p for c in a]
    db = len(b) - 1
    quo = [0] * max(len(rem) - db, 0)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] % p
        if c == 0:
            continue
        c = c * inv % p
        quo[i - db] = c
        for j, y in enumerate(b):
            rem[i - db + j] = (rem[i - db + j] - c * y) % p
    return _mod_trim(quo, p), _mod_trim(rem[:db], p)


def _gf_monic(a: list, p: int) -> list:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gf_gcd(a: list, b: list, p: int) -> list:
    a, b = _mod_trim(a, p), _mod_trim(b, p)
    while b:
        a, b = b, _gf_divmod(a, b, p)[1]
    return _gf_monic(a, p)


def _gf_powmod(base: list, exp: int, mod: list, p: int) -> list:
    result = [1]
    base = _gf_divmod(base, mod, p)[1]
    while exp:
        if exp & 1:
            result = _gf_divmod(_mod_mul(result, base, p), mod, p)[1]
        base = _gf_divmod(_mod_mul(base, base, p), mod, p)[1]
        exp >>= 1
    return result


def _gf_xgcd(a: list, b: list, p: int) -> tuple:
    r0, r1 = _mod_trim(a, p), _mod_trim(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _mod_sub(s0, _mod_mul(q, s1, p), p)
        t0, t1 = t1, _mod_sub(t0, _mod_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    g = [c * inv % p for c in r0]
    s = [c * inv % p for c in s0]
    t = [c * inv % p for c in t0]
    return g, s, t


def _gf_factor_squarefree(f: list, p: int, rng: random.Random) -> list:
    """Factor a monic squarefree polynomial over GF(p), p odd."""
    blocks = []  # (product of irreducibles of one degree, that degree)
    work = list(f)
    h = [0, 1]
    d = 0
    while len(work) - 1 > 0:
        d += 1
        if 2 * d > len(work) - 1:
            blocks.append((work, len(work) - 1))
            break
        h = _gf_powmod(h, p, work, p)
        diff = _mod_sub(h, [0, 1], p)
        g = _gf_gcd(diff, work, p)
        if len(g) - 1 > 0:
            blocks.append((g, d))
            work = _gf_divmod(work, g, p)[0]
            h = _gf_divmod(h, work, p)[1]
    factors = []
    for poly, d in blocks:
        factors.extend(_gf_equal_degree(poly, d, p, rng))
    return factors


def _gf_equal_degree(f: list, d: int, p: int, rng: random.Random) -> list:
    """Cantor-Zassenhaus split of a product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    exponent = (p**d - 1) // 2
    while True:
        a = _mod_trim([rng.randrange(p) for _ in range(n)], p)
        if len(a) - 1 < 1:
            continue
        g = _gf_gcd(a, f, p)
        if not 0 < len(g) - 1 < n:
            b = _mod_sub(_gf_powmod(a, exponent, f, p), [1], p)
            g = _gf_gcd(b, f, p)
            if not 0 < len(g) - 1 < n:
                continue
        rest = _gf_divmod(f, g, p)[0]
        return _gf_equal_degree(g, d, p, rng) + _gf_equal_degree(rest, d, p, rng)


# -- Hensel lifting -----------------------------------------------------------------


def _hensel_step(m: int, f: list, g: list, h: list, s: list, t: list) -> tuple:
    """Lift f = g*h and s*g + t*h = 1 from mod m to mod m^2.

    Quadratic Hensel step; f, g, h monic, deg s < deg h, deg t < deg g. The
    seemingly high-degree updates collapse after reduction mod m^2.
    """
    mm = m * m
    e = _mod_sub(f, _mod_mul(g, h, mm), mm)
    q, r = _mod_divmod_monic(_mod_mul(s, e, mm), h, mm)
    g1 = _mod_add(g, _mod_add(_mod_mul(t, e, mm), _mod_mul(q, g, mm), mm), mm)
    h1 = _mod_add(h, r, mm)
    b = _mod_sub(_mod_add(_mod_mul(s, g1, mm), _mod_mul(t, h1, mm), mm), [1], mm)
    c, d = _mod_divmod_monic(_mod_mul(s, b, mm), h1, mm)
    s1 = _mod_sub(s, d, mm)
    t1 = _mod_sub(t, _mod_add(_mod_mul(t, b, mm), _mod_mul(c, g1, mm), mm), mm)
    return g1, h1, s1, t1


def _hensel_lift(f: list, mods: list, p: int, target: int) -> tuple:
    """Lift the monic factorization f = prod(mods) mod p to a modulus >= target.

    Recursively splits the factor list in two, lifts the pair, then recurses
    into each half. Returns (lifted factors, modulus).
    """
    m = p
    while m < target:
        m *= m
    if len(mods) == 1:
        return [_mod_trim(f, m)], m
    half = len(mods) // 2
    left, right = mods[:half], mods[half:]
    g = [1]
    for q in left:
        g = _mod_mul(g, q, p)
    h = [1]
    for q in right:
        h = _mod_mul(h, q, p)
    _, s, t = _gf_xgcd(g, h, p)
    mcur = p
    while mcur < target:
        g, h, s, t = _hensel_step(mcur, _mod_trim(f, mcur * mcur), g, h, s, t)
        mcur *= mcur
    left_factors, _ = _hensel_lift(g, left, p, mcur)
    right_factors, _ = _hensel_lift(h, right, p, mcur)
    return left_factors + right_factors, mcur


# -- the Zassenhaus driver -----------------------------------------------------------


def _symmetric(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _zassenhaus(f: Poly) -> Optional[list]:
    """Complete factorization of a monic squarefree polynomial, or None.

    Works on the monic integer transform of f. None means the size caps were
    hit and the caller should fall back to an uncertain block.
    """
    n = f.degree
    if n > MAX_LIFT_DEGREE:
        return None
    cs = f.int_coeffs()
    lead = cs[-1]
    g = [c * lead ** (n - 1 - i) for i, c in enumerate(cs[:-1])] + [1]
    height = max(abs(c) for c in g)
    if height.bit_length() > MAX_LIFT_HEIGHT_BITS:
        return None
    rng = random.Random(1729)
    deriv = [i * c for i, c in enumerate(g)][1:]
    best = None
    best_p = None
    for p in _LIFT_PRIMES:
        fp = _mod_trim(g, p)
        if len(fp) - 1 != n:
            continue
        if len(_gf_gcd(fp, _mod_trim(deriv, p), p)) - 1 != 0:
            continue
        mods = _gf_factor_squarefree(fp, p, rng)
        if len(mods) == 1:
            return [f]
        if best is None or len(mods) < len(best):
            best, best_p = mods, p
        if len(best) <= 2:
            break
    if best is None:
        return None
    # Mignotte-style bound on the coefficients of any monic factor of g
    bound = (1 << n) * height * (n + 1)
    lifted, modulus = _hensel_lift(g, sorted(best), best_p, 2 * bound + 1)
    factors_int = _recombine(g, lifted, modulus)
    if factors_int is None:
        return None
    out = []
    for fac in factors_int:
        # undo the y = lead*x substitution
        mapped = Poly([Fraction(c) * Fraction(lead) ** i for i, c in enumerate(fac)])
        out.append(mapped.monic())
    out.sort(key=lambda q: (q.degree, q.coeffs))
    return out


def _recombine(g: list, lifted: list, modulus: int) -> Optional[list]:
    """Search subsets of lifted factors whose product divides g over Z."""
    remaining = list(lifted)
    result = []
    current = list(g)
    budget = 1 << 18
    size = 1
    while remaining and size <= len(remaining) // 2:
        found = False
        for combo in itertools.combinations(range(len(remaining)), size):
            budget -= 1
            if budget < 0:
                return None
            prod = [1]
            for idx in combo:
                prod = _mod_mul(prod, remaining[idx], modulus)
            cand = [_symmetric(c, modulus) for c in prod]
            while cand and cand[-1] == 0:
                cand.pop()
            quo, rem = _int_poly_divmod_monic(current, cand)
            if not rem:
                result.append(cand)
                current = quo
                remaining = [m for i, m in enumerate(remaining) if i not in combo]
                found = True
                break
        if not found:
            size += 1
    if len(current) - 1 > 0:
        result.append(current)
    return result


def _int_poly_divmod_monic(a: list, b: list) -> tuple:
    """Plain division over Z by a monic divisor."""
    rem = list(a)
    db = len(b) - 1
    quo = [0] * max(len(rem) - db, 0)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        quo[i - db] = c
        for j, y in enumerate(b):
            rem[i - db + j] -= c * y
    tail = rem[:db]
    while tail and tail[-1] == 0:
        tail.pop()
    return quo, tail
