"""Shared generators for randomized (seeded) tests.

Everything is exact; "random" inputs are drawn from seeded `random.Random`
instances so failures reproduce.
"""

import random

import pytest

from qfc import (
    IdealBasis,
    OrientedIdeal,
    QuadraticForm,
    is_fundamental,
    k_sqrt,
    psi,
)

BASE_TAGS = ("q", "q_i", "q_sqrt2", "q_sqrt5", "q_sqrt13")


@pytest.fixture
def rng():
    return random.Random(20260808)


def random_int_element(f, rng, span=4, nonzero=False):
    while True:
        c0 = rng.randint(-span, span)
        c1 = 0 if f.is_rational else rng.randint(-span, span)
        x = f(c0, c1)
        if not (nonzero and x.is_zero()):
            return x


def random_fundamental_form(f, rng, span=4, totally_negative=False):
    """A random primitive form over f whose discriminant is fundamental."""
    while True:
        a = random_int_element(f, rng, span, nonzero=True)
        b = random_int_element(f, rng, span)
        c = random_int_element(f, rng, span, nonzero=True)
        q = QuadraticForm(f, a, b, c)
        d = q.disc()
        if d.is_zero() or k_sqrt(d) is not None:
            continue
        if not is_fundamental(d):
            continue
        if totally_negative and f.r > 0 and any(s == 1 for s in d.signs()):
            continue
        if not q.is_primitive():
            continue
        return q


def forms_with_disc(f, d, span=5):
    """All primitive forms of discriminant exactly d with coordinates in a
    small box; deterministic seed material for ideal generators."""
    out = []
    coords = range(-span, span + 1)
    elements = (
        [f(c0) for c0 in coords if c0]
        if f.is_rational
        else [f(c0, c1) for c0 in coords for c1 in coords if c0 or c1]
    )
    small = [x for x in elements if abs(x.norm()) <= span * span]
    for a in small:
        for b in small + [f.zero]:
            num = b * b - d
            c = num / (4 * a)
            if not c.is_integral() or c.is_zero():
                continue
            q = QuadraticForm(f, a, b, c)
            if q.is_primitive():
                out.append(q)
    return out


def random_unimodular(f, rng, steps=3, torsion=True):
    """(p, q, r, s) over O_K with unit determinant, via random shears and an
    optional unit row-scaling."""
    p, q, r, s = f.one, f.zero, f.zero, f.one
    for _ in range(steps):
        k = random_int_element(f, rng, 2)
        if rng.random() < 0.5:
            p, q = p + k * r, q + k * s
        else:
            r, s = r + k * p, s + k * q
    if torsion:
        units = [f.one, -f.one]
        if f.fundamental_unit is not None:
            units += [f.fundamental_unit]
        if f.r == 0:
            units += [f.omega]
        u = rng.choice(units)
        p, q = u * p, u * q
    return p, q, r, s


def random_gamma(ext, rng, span=3):
    """A random nonzero element of L with half-integral coordinates,
    occasionally divided by a small rational integer."""
    f = ext.base
    while True:
        x = random_int_element(f, rng, span)
        y = random_int_element(f, rng, span)
        g = ext.element(x / 2, y / 2)
        if not g.is_zero():
            if rng.random() < 0.3:
                g = g / rng.choice([2, 3])
            return g


def transformed_ideal(a: OrientedIdeal, rng, scale=True) -> OrientedIdeal:
    """A different representative of a class equal or unit-scaled to a's."""
    f = a.ext.base
    p, q, r, s = random_unimodular(f, rng)
    alpha, beta = a.basis.alpha, a.basis.beta
    fp, fq, fr, fs = (a.ext.from_base(v) for v in (p, q, r, s))
    basis = IdealBasis(fp * alpha + fr * beta, fq * alpha + fs * beta)
    out = OrientedIdeal(basis, a.eps)
    if scale:
        out = out.scale(random_gamma(a.ext, rng))
    return out


def random_oriented_ideal(ext, rng, seed_forms):
    """Random oriented ideal over ext, built from a seed form's psi image by
    unimodular basis changes, scalings, and a random orientation flip."""
    q = rng.choice(seed_forms)
    a = transformed_ideal(psi(q, ext), rng)
    if ext.base.r > 0 and rng.random() < 0.5:
        flip = tuple(rng.choice((1, -1)) for _ in range(ext.base.r))
        a = OrientedIdeal(a.basis, tuple(e * s for e, s in zip(a.eps, flip)))
    return a
