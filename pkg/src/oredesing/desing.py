"""Removing factors from leading coefficients of Ore operators.

A factor p^k of lc_D(L) is removable at order n when some order-n operator P
over K(x) makes PL polynomial while the leading coefficient drops p^k (up to
the backwards shift that left multiplication by D^n introduces). This module
decides removability and produces machine-checked certificates.

For the shift ring the decision is complete: the candidate order is the
largest non-negative integer shift at which p meets the trailing
coefficient, and the denominator exponent is bounded through the
multiplicity bookkeeping of shift classes. For the differential ring no such
bounds exist here, so the search is capped by the caller and absence only
means "not found within the caps".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from . import factorizer
from .exactla import QMatrix, solve_affine
from .orealg import OreOperator, OreRing, RatFun, deg_x
from .polyring import Poly, gcd, integer_roots, resultant, v_less, xgcd


class CertificateError(AssertionError):
    """A produced certificate failed its own invariants."""


@dataclass(frozen=True)
class RemovalCertificate:
    """Witness that p^k is removable at order n.

    P has order n over K(x) with denominators dividing sigma^n(p)^e and its
    top coefficient pinned to 1/sigma^n(p)^k; PL = P*L is polynomial and its
    back-shifted leading coefficient times p^k reproduces lc_D(L) up to a
    rational unit. ``p`` is normally monic irreducible; combined certificates
    carry a monic product block instead.
    """

    p: Poly
    k: int
    n: int
    e: int
    P: OreOperator
    PL: OreOperator

    @property
    def block(self) -> Poly:
        """The removed block p^k as one polynomial."""
        return self.p**self.k


@dataclass(frozen=True)
class RemovabilityReport:
    factor: Poly
    max_power_removable: int
    order_bound: Optional[int]
    certificates: tuple
    complete: bool = True
    note: str = ""


def check_certificate(l: OreOperator, cert: RemovalCertificate) -> None:
    """Re-derive every certificate invariant; raises CertificateError."""
    ring = l.ring
    if cert.P.ring is not ring or cert.PL.ring is not ring:
        raise CertificateError("certificate ring mismatch")
    if cert.P * l != cert.PL:
        raise CertificateError("PL is not the product P*L")
    if not cert.PL.is_polynomial():
        raise CertificateError("PL has non-polynomial coefficients")
    if cert.P.is_zero() or cert.P.order != cert.n:
        raise CertificateError("P does not have the stated order")
    if cert.p == Poly.one():
        return
    shifted_block = ring.sigma_poly(cert.block, cert.n)
    top = cert.P.lc
    if not top.num.is_constant() or top.den != shifted_block.monic():
        raise CertificateError("leading coefficient of P is not unit/sigma^n(p)^k")
    modulus = ring.sigma_poly(cert.p, cert.n) ** cert.e
    for c in cert.P.coeffs:
        if not c.den.divides(modulus):
            raise CertificateError("a denominator of P escapes sigma^n(p)^e")
    lc_l = l.lc.as_poly()
    lc_pl = cert.PL.lc.as_poly()
    back = ring.sigma_poly(lc_pl, -cert.n) * cert.block
    q, r = divmod(back, lc_l)
    if not r.is_zero() or not q.is_constant() or q.is_zero():
        raise CertificateError("leading coefficient pattern violated")


def trivial_certificate(l: OreOperator) -> RemovalCertificate:
    """The do-nothing certificate (p = 1); the unit for combine_removals."""
    return RemovalCertificate(Poly.one(), 1, 0, 1, OreOperator.one(l.ring), l)


# -- shift-ring bounds ---------------------------------------------------------


def _resultant_in_shift(p: Poly, trailing: Poly) -> Poly:
    """res_x(p(x+m), trailing(x)) as a polynomial in m, by interpolation."""
    degree = p.degree * trailing.degree
    nodes = list(range(degree + 1))
    values = [resultant(p.shift(m), trailing) for m in nodes]
    # Newton divided differences on the integer nodes
    table = [Fraction(v) for v in values]
    for j in range(1, len(nodes)):
        for i in range(len(nodes) - 1, j - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (nodes[i] - nodes[i - j])
    poly = Poly.constant(table[-1])
    for i in range(len(nodes) - 2, -1, -1):
        poly = poly * Poly([-nodes[i], 1]) + table[i]
    return poly


def removal_order_bound(l: OreOperator, p: Poly) -> Optional[int]:
    """Largest m >= 0 at which p(x+m) meets the trailing coefficient.

    Removal in the shift ring can only happen at this order; None certifies
    that no power of p is removable at all.
    """
    if l.ring is not OreRing.SHIFT:
        raise ValueError("removal_order_bound is specific to the shift ring")
    if not l.is_polynomial():
        raise ValueError("expected a polynomial operator")
    if l.is_zero() or l.trailing.is_zero():
        raise ValueError("expected nonzero leading and trailing coefficients")
    p = p.monic()
    if not p.divides(l.lc.as_poly()):
        raise ValueError("factor does not divide the leading coefficient")
    res = _resultant_in_shift(p, l.trailing.as_poly())
    if res.is_zero():
        raise AssertionError("resultant in the shift variable vanished identically")
    candidates = [m for m in integer_roots(res) if m >= 0]
    return max(candidates) if candidates else None


def exponent_bound(
    l: OreOperator, p: Poly, k: int, n: int, hints: Optional[Iterable[Poly]] = None
) -> int:
    """Denominator exponent that suffices for a p^k removal at order n."""
    decomp = factorizer.factor(l.lc.as_poly(), hints)
    return k + n * v_less(p.monic(), decomp)


# -- the generic ansatz --------------------------------------------------------


def try_remove_at(
    l: OreOperator, p: Poly, k: int, n: int, e: int
) -> Optional[RemovalCertificate]:
    """Look for a removing operator with the given shape; both rings.

    The ansatz is P = sum(p_i / sigma^n(p)^e * D^i, i < n) + D^n/sigma^n(p)^k
    with deg p_i < e*deg p. Requiring sigma^n(p)^e to divide every
    coefficient of (sigma^n(p)^e * P) * L is a linear system in the unknown
    coefficients; pinning the top term makes inconsistency a proof that no
    removing operator of this shape exists.
    """
    if k < 1 or e < k or n < 0:
        raise ValueError("need 1 <= k <= e and n >= 0")
    if not l.is_polynomial() or l.is_zero():
        raise ValueError("expected a nonzero polynomial operator")
    ring = l.ring
    p = p.monic()
    if p.degree < 1:
        raise ValueError("factor must be non-constant")
    if not (p**k).divides(l.lc.as_poly()):
        raise ValueError("p^k does not divide the leading coefficient")
    shifted = ring.sigma_poly(p, n)
    modulus = shifted**e
    dq = modulus.degree
    fixed = OreOperator(ring, [Poly.zero()] * n + [shifted ** (e - k)]) * l
    slots = n + l.order + 1

    powers = [l]
    for _ in range(n - 1):
        powers.append(OreOperator.d_power(ring) * powers[-1])

    columns = []  # per unknown (i, j): list over slots of remainder coefficient lists
    for i in range(n):
        op = powers[i]
        reduced = [op.coeff(s).as_poly() % modulus for s in range(slots)]
        cur = reduced
        for _ in range(dq):
            columns.append(cur)
            cur = [(Poly([0, 1]) * poly) % modulus for poly in cur]

    rows = []
    rhs = []
    fixed_reduced = [fixed.coeff(s).as_poly() % modulus for s in range(slots)]
    for s in range(slots):
        for t in range(dq):
            row = [col[s][t] for col in columns]
            if any(row) or fixed_reduced[s][t] != 0:
                rows.append(row)
                rhs.append(-fixed_reduced[s][t])
    if rows:
        solution = solve_affine(QMatrix.from_rows(rows), rhs)
        if solution is None:
            return None
    else:
        solution = ()

    coeffs = []
    for i in range(n):
        cs = solution[i * dq : (i + 1) * dq]
        coeffs.append(RatFun(Poly(cs), modulus))
    coeffs.append(RatFun(Poly.one(), shifted**k))
    P = OreOperator(ring, coeffs)
    PL = P * l
    cert = RemovalCertificate(p, k, n, e, P, PL)
    check_certificate(l, cert)
    return cert


def analyze_factor(
    l: OreOperator,
    p: Poly,
    k_max: int,
    n_cap: Optional[int] = None,
    e_cap: Optional[int] = None,
    hints: Optional[Iterable[Poly]] = None,
) -> RemovabilityReport:
    """How much of p^k_max can be removed from l, with certificates.

    Shift ring: complete; a report of zero removable power is a proof of
    non-removability. Differential ring: searches order and exponent up to
    the caps (defaults 2*order(l) and k + deg_x(l)) and is only a lower
    bound.
    """
    if k_max < 1:
        raise ValueError("k_max must be positive")
    p = p.monic()
    lc_poly = l.lc.as_poly()
    mult = factorizer.multiplicity(lc_poly, p)
    if mult == 0:
        return RemovabilityReport(
            factor=p,
            max_power_removable=0,
            order_bound=None,
            certificates=(),
            complete=True,
            note="factor does not divide the leading coefficient",
        )
    cap = min(k_max, mult)

    if l.ring is OreRing.SHIFT:
        n = removal_order_bound(l, p)
        if n is None:
            return RemovabilityReport(
                factor=p,
                max_power_removable=0,
                order_bound=None,
                certificates=(),
                complete=True,
                note=(
                    "every shift of the factor is coprime to the trailing "
                    "coefficient, which rules out removal"
                ),
            )
        v = v_less(p, factorizer.factor(lc_poly, hints))
        certs = []
        for k in range(1, cap + 1):
            cert = try_remove_at(l, p, k, n, k + n * v)
            if cert is None:
                break
            certs.append(cert)
        return RemovabilityReport(
            factor=p,
            max_power_removable=len(certs),
            order_bound=n,
            certificates=tuple(certs),
            complete=True,
        )

    if n_cap is None:
        n_cap = 2 * l.order
    certs = []
    for k in range(1, cap + 1):
        e_top = e_cap if e_cap is not None else k + deg_x(l)
        found = None
        for n in range(0, n_cap + 1):
            for e in range(k, max(e_top, k) + 1):
                found = try_remove_at(l, p, k, n, e)
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        certs.append(found)
    return RemovabilityReport(
        factor=p,
        max_power_removable=len(certs),
        order_bound=certs[0].n if certs else None,
        certificates=tuple(certs),
        complete=False,
        note="differential-ring search is capped; absence is not a proof",
    )


def combine_removals(
    l: OreOperator, c1: RemovalCertificate, c2: RemovalCertificate
) -> RemovalCertificate:
    """Merge removals of coprime blocks into one certificate.

    Writes 1 as a Bezout combination of the shifted blocks and glues the two
    removing operators at order max(n1, n2). Requires the shifted blocks to
    be coprime.
    """
    if c1.p == Poly.one():
        return c2
    if c2.p == Poly.one():
        return c1
    ring = l.ring
    n = max(c1.n, c2.n)
    a1 = ring.sigma_poly(c1.block, n)
    a2 = ring.sigma_poly(c2.block, n)
    g, s, t = xgcd(a2, a1)
    if g != Poly.one():
        raise ValueError("shifted blocks are not coprime; cannot combine")

    def unit_of(cert: RemovalCertificate) -> Fraction:
        back = ring.sigma_poly(cert.PL.lc.as_poly(), -cert.n) * cert.block
        return back.exact_div(l.lc.as_poly())[0]

    u1 = s * (1 / unit_of(c1))
    u2 = t * (1 / unit_of(c2))
    term1 = (OreOperator.d_power(ring, n - c1.n) * c1.P).scale(RatFun(u1))
    term2 = (OreOperator.d_power(ring, n - c2.n) * c2.P).scale(RatFun(u2))
    P = term1 + term2
    PL = P * l
    cert = RemovalCertificate(
        (c1.block * c2.block).monic(), 1, n, max(c1.e, c2.e), P, PL
    )
    check_certificate(l, cert)
    return cert
