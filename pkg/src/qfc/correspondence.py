"""The two mutually inverse maps between oriented ideal classes and form
classes, the induced composition of forms, and desk-scale structure checks
of the oriented class group over Q.

An oriented ideal maps to the norm form of its basis divided by det M; a
form (a, b, c) maps to ([a, (-b + sqrt(disc))/2]; signs of a).  Composition
of forms is ideal multiplication conjugated through these maps.  Public
entry points accept any discriminant in the orbit {u^2 D : u totally
positive unit} and normalize internally to a canonical fundamental D.
"""

from collections import namedtuple
from fractions import Fraction
from math import isqrt

from .base_field import (
    BaseElement,
    Field,
    _abs_emb_cmp,
    is_fundamental,
    unit_decompose,
)
from .base_field import Q as _Q
from .contfrac import fundamental_unit_xy
from .errors import (
    DiscriminantNotInClass,
    DiscriminantNotTotallyNegative,
    NotFundamental,
    NotPrimitive,
    OrientationMismatch,
    WrongBase,
)
from .extension import Extension, ExtElement, make_extension
from .forms import QuadraticForm, enumerate_classes_q
from .ideals import (
    IdealBasis,
    OrientedIdeal,
    ideal_mul,
    module_equivalent_q,
    reduce_generators,
)


def tp_unit_sqrt(field: Field, ratio: BaseElement):
    """A totally positive unit u with u^2 = ratio, or None.

    Over Q only ratio 1 qualifies; over Q(i) every unit is vacuously
    totally positive, giving ratio in {1, -1}; over a real quadratic field
    the totally positive units are the even powers of the fundamental unit,
    so ratio must be a fourth power of it.
    """
    if field.is_rational:
        return field.one if ratio == field.one else None
    if field.r == 0:
        if ratio == field.one:
            return field.one
        if ratio == -field.one:
            return field.omega  # i^2 = -1
        return None
    if not ratio.is_unit():
        return None
    decomp = unit_decompose(ratio)
    if decomp is None:
        return None
    sign, k = decomp
    if sign != 1 or k % 4 != 0:
        return None
    return field.fundamental_unit ** (k // 2)


def canonical_disc(field: Field, d: BaseElement):
    """Canonical representative of the orbit {u^2 d : u in U_K^+}.

    Returns (d_star, u) with d = u^2 * d_star and u totally positive.
    Over Q the orbit is a point; over Q(i) it is {d, -d}; over a real
    quadratic field it is the eps^4 orbit, minimized like associates.
    """
    if field.is_rational:
        return d, field.one
    if field.r == 0:
        if d.c0 > 0 or (d.c0 == 0 and d.c1 > 0):
            return d, field.one
        return -d, field.omega
    eps4 = field.fundamental_unit ** 4
    y, k = d, 0
    while _abs_emb_cmp(y * eps4, y) < 0:
        y, k = y * eps4, k + 1
    while _abs_emb_cmp(y, y / eps4) > 0:
        y, k = y / eps4, k - 1
    candidates = [(y, k)]
    if _abs_emb_cmp(y * eps4, y) == 0:
        candidates.append((y * eps4, k + 1))
    if _abs_emb_cmp(y, y / eps4) == 0:
        candidates.append((y / eps4, k - 1))
    d_star, k = min(candidates, key=lambda c: (c[0].c0, c[0].c1))
    # d = d_star * eps^{4(-k)} ... track the exponent back to d
    u = field.fundamental_unit ** (-2 * k)
    return d_star, u


def phi(a: OrientedIdeal) -> QuadraticForm:
    """Oriented ideal class -> form class: (1/det M) N(alpha x - beta y).

    Requires the basis orientation to equal the sign vector; use
    OrientedIdeal.align() first if needed.
    """
    if not a.is_aligned():
        raise OrientationMismatch("basis orientation differs from eps; align() first")
    basis = a.basis
    alpha, beta = basis.alpha, basis.beta
    det = basis.det_m()
    mid = alpha.x * beta.x - alpha.y * beta.y * basis.ext.d
    coeff_a = alpha.norm() / det
    coeff_b = -(mid + mid) / det
    coeff_c = beta.norm() / det
    q = QuadraticForm(basis.ext.base, coeff_a, coeff_b, coeff_c)
    assert q.disc() == basis.ext.d and q.is_primitive()
    return q


def psi(q: QuadraticForm, ext: Extension | None = None) -> OrientedIdeal:
    """Form class -> oriented ideal class: ([a, (-b + sqrt(disc))/2]; sgn a).

    When `ext` is given, disc(q) must lie in its discriminant orbit; the
    square root is taken as u*sqrt(D) for the totally positive unit u with
    disc(q) = u^2 D.  Otherwise the extension is built from the canonical
    representative of the orbit of disc(q).
    """
    if not q.is_primitive():
        raise NotPrimitive("psi requires a primitive form")
    dq = q.disc()
    if ext is None:
        d_star, u = canonical_disc(q.field, dq)
        ext = make_extension(q.field, d_star)
    else:
        u = tp_unit_sqrt(q.field, dq / ext.d)
        if u is None:
            raise DiscriminantNotInClass(
                f"disc {dq} is not u^2 * {ext.d} for a totally positive unit u"
            )
    alpha = ext.from_base(q.a)
    beta = ext.element(-q.b / 2, u / 2)
    eps = q.a.signs() if q.field.r > 0 else ()
    return OrientedIdeal(IdealBasis(alpha, beta), eps)


def identity_form(ext: Extension) -> QuadraticForm:
    """Phi of ([1, W]; +...+): x^2 + w xy + z y^2."""
    return QuadraticForm(ext.base, ext.base.one, ext.w, ext.z)


def inverse_form(q: QuadraticForm) -> QuadraticForm:
    """(a, -b, c); represents the inverse class."""
    if not q.is_primitive():
        raise NotPrimitive("inverse requires a primitive form")
    return QuadraticForm(q.field, q.a, -q.b, q.c)


def compose(q1: QuadraticForm, q2: QuadraticForm) -> QuadraticForm:
    """Composition through the ideal side; the result has discriminant equal
    to the canonical representative of the common orbit."""
    if q1.field is not q2.field:
        raise ValueError("forms over different base fields")
    d1, _ = canonical_disc(q1.field, q1.disc())
    d2, _ = canonical_disc(q2.field, q2.disc())
    if d1 != d2:
        raise DiscriminantNotInClass(
            "forms have discriminants in different unit-square orbits"
        )
    ext = make_extension(q1.field, d1)
    return phi(ideal_mul(psi(q1, ext), psi(q2, ext)))


def roundtrip_gamma(a: OrientedIdeal) -> ExtElement:
    """The explicit witness gamma = det M / conj(alpha) with
    gamma * psi(phi(a)) = a as oriented ideals; verified before returning."""
    a = a.align()
    basis = a.basis
    det = basis.det_m()
    gamma = basis.ext.from_base(det) / basis.alpha.conj()
    image = psi(phi(a))
    scaled = image.scale(gamma)
    if not (scaled.basis.same_module(basis) and scaled.eps == a.eps):
        raise AssertionError("round-trip witness failed verification")
    return gamma


def tpd_sign_check(a: OrientedIdeal, i: int):
    """The three equivalent positivity conditions at embedding i, for
    totally negative D: leading Phi-coefficient, det M, Im(beta/alpha)."""
    ext = a.ext
    if ext.base.r == 0 or not ext.totally_negative_d():
        raise DiscriminantNotTotallyNegative(
            "sign conditions require totally negative D and a real embedding"
        )
    if not 0 <= i < ext.base.r:
        raise ValueError("embedding index out of range")
    basis = a.basis
    det = basis.det_m()
    lead = basis.alpha.norm() / det
    im = (basis.beta / basis.alpha).im_part()
    return (lead.sign_at(i) > 0, det.sign_at(i) > 0, im.sign_at(i) > 0)


OclReport = namedtuple("OclReport", ["case", "h", "ocl_order", "unit", "unit_norm"])


def _prime_ideals_q(ext: Extension, ell: int) -> list[IdealBasis]:
    """Degree-one prime ideals of O_L above the rational prime ell (split or
    ramified); inert primes are principal and contribute no new classes."""
    D = int(ext.d.c0)
    out = []
    for b in range(0, 2 * ell):
        if (b * b - D) % (4 * ell) == 0:
            alpha = ext.from_base(ext.base(ell))
            beta = ext.element(Fraction(-b, 2), Fraction(1, 2))
            cand = IdealBasis(alpha, beta)
            if not any(cand.same_module(seen) for seen in out):
                out.append(cand)
    return out


def _ideals_up_to_norm(ext: Extension, bound: int) -> list[IdealBasis]:
    """All integral ideals of norm <= bound built from degree-one primes,
    plus O_L itself; inert-prime multiples are principal and redundant for
    class representatives."""
    unit_ideal = IdealBasis(ext.one, ext.omega)
    primes = []
    for ell in range(2, bound + 1):
        if all(ell % p != 0 for p in range(2, isqrt(ell) + 1)):
            for p in _prime_ideals_q(ext, ell):
                primes.append((ell, p))
    found = [(1, unit_ideal)]
    frontier = [(1, unit_ideal)]
    while frontier:
        nrm, ideal = frontier.pop()
        for ell, p in primes:
            if nrm * ell > bound:
                continue
            prod = reduce_generators(
                [
                    ideal.alpha * p.alpha,
                    ideal.alpha * p.beta,
                    ideal.beta * p.alpha,
                    ideal.beta * p.beta,
                ],
                ext,
            )
            if not any(prod.same_module(seen) for _, seen in found):
                found.append((nrm * ell, prod))
                frontier.append((nrm * ell, prod))
    return [ideal for _, ideal in found]


def _class_number_real_q(ext: Extension) -> int:
    """Class number of Q(sqrt D), D > 0, by classifying the integral ideals
    below the Minkowski bound with the complete principality test."""
    D = int(ext.d.c0)
    bound = isqrt(D // 4) if D >= 4 else 1
    ideals = _ideals_up_to_norm(ext, max(bound, 1))
    classes: list[IdealBasis] = []
    for ideal in ideals:
        if not any(module_equivalent_q(ideal, rep) for rep in classes):
            classes.append(ideal)
    return len(classes)


def ocl_structure_q(d) -> OclReport:
    """Structure of the relative oriented class group for base Q.

    Case 1 (D < 0): OCl = Cl x {+-1}, order 2h.  Case 2 (D > 0, all unit
    norms +1): order 2h.  Case 3 (D > 0 with a norm -1 unit): order h.
    h comes from reduced-form enumeration (D < 0) or ideal classification
    below the Minkowski bound (D > 0); the unit norm from the continued
    fraction of the square root.
    """
    if isinstance(d, BaseElement):
        if not d.field.is_rational:
            raise WrongBase("oriented class group reports are over Q only")
        d_int = int(d.c0)
    else:
        d_int = int(d)
        d = _Q(d_int)
    if not is_fundamental(d):
        raise NotFundamental(f"{d_int} is not a fundamental discriminant")
    if d_int < 0:
        h = len(enumerate_classes_q(d_int))
        return OclReport(case=1, h=h, ocl_order=2 * h, unit=None, unit_norm=None)
    ext = make_extension(_Q, d)
    X, Y, nsign = fundamental_unit_xy(d_int)
    unit = ext.element(Fraction(X, 2), Fraction(Y, 2))
    h = _class_number_real_q(ext)
    if nsign == -1:
        return OclReport(case=3, h=h, ocl_order=h, unit=unit, unit_norm=-1)
    return OclReport(case=2, h=h, ocl_order=2 * h, unit=unit, unit_norm=1)
