"""Exact arithmetic in the supported base number fields.

The registry is fixed: Q, Q(i), Q(sqrt 2), Q(sqrt 5), Q(sqrt 13).  All five
are norm-Euclidean and have narrow class number one; both facts are
load-bearing (the gcd below and the module reduction in `ideals` terminate,
and units of every sign pattern exist).  Extending the registry is a config
change, but candidates must satisfy both properties; Q(sqrt 3) for instance
is excluded because its fundamental unit has norm +1.

Elements are pairs of rationals over the integral basis {1, w}, where w is
sqrt(m) for m = -1, 2 and (1 + sqrt(m))/2 for m = 5, 13.  Signs under the
real embeddings are decided by exact rational case analysis; no floating
point anywhere.
"""

from fractions import Fraction
from itertools import product
from math import floor, isqrt, lcm

from .errors import (
    DivisionByZero,
    NotIntegral,
    SquareInput,
    ZeroArgument,
)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected int or Fraction, got {type(v).__name__}")


def _round_half_up(f: Fraction) -> int:
    # nearest integer, ties toward +inf; the offset from f is at most 1/2,
    # which keeps the Euclidean remainders below norm 1 on every registry field
    return floor(f + Fraction(1, 2))


def _rat_sqrt(f: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if f < 0:
        return None
    pn, qd = f.numerator, f.denominator
    rn, rd = isqrt(pn), isqrt(qd)
    if rn * rn == pn and rd * rd == qd:
        return Fraction(rn, rd)
    return None


class Field:
    """A base number field K from the fixed registry.

    Attributes:
        tag: registry key ("q", "q_i", "q_sqrt2", "q_sqrt5", "q_sqrt13")
        m: the square-free integer with K = Q(sqrt m), or None for Q
        half_omega: True when w = (1 + sqrt m)/2 (m = 1 mod 4)
        r: number of real embeddings (1 for Q, 0 for Q(i), 2 otherwise)
        omega_trace, omega_norm: w satisfies w^2 = trace*w - norm
        fundamental_unit: generator of the units modulo torsion, or None
        unit_norm_sign: norm of the fundamental unit, or None
    """

    __slots__ = (
        "tag",
        "m",
        "half_omega",
        "r",
        "omega_trace",
        "omega_norm",
        "fundamental_unit",
        "unit_norm_sign",
    )

    def __init__(self, tag, m, half_omega, r, unit_coords, unit_norm_sign):
        self.tag = tag
        self.m = m
        self.half_omega = half_omega
        self.r = r
        if m is None:
            self.omega_trace, self.omega_norm = 0, 0
        elif half_omega:
            self.omega_trace, self.omega_norm = 1, (1 - m) // 4
        else:
            self.omega_trace, self.omega_norm = 0, -m
        if unit_coords is None:
            self.fundamental_unit = None
        else:
            self.fundamental_unit = self(*unit_coords)
        self.unit_norm_sign = unit_norm_sign

    @property
    def is_rational(self) -> bool:
        return self.m is None

    def __call__(self, c0, c1=0) -> "BaseElement":
        return BaseElement(self, c0, c1)

    @property
    def zero(self) -> "BaseElement":
        return self(0)

    @property
    def one(self) -> "BaseElement":
        return self(1)

    @property
    def omega(self) -> "BaseElement":
        if self.is_rational:
            raise ValueError("Q has no quadratic generator")
        return self(0, 1)

    def residues(self, n: int):
        """A complete residue system for O_K / n O_K."""
        if self.is_rational:
            return [self(a) for a in range(n)]
        return [self(a, b) for a, b in product(range(n), repeat=2)]

    def unit_with_signs(self, pattern) -> "BaseElement":
        """A unit whose embedding signs match `pattern` (exists: h+ = 1)."""
        pattern = tuple(pattern)
        if len(pattern) != self.r:
            raise ValueError("sign pattern has wrong length")
        candidates = [self.one, -self.one]
        if self.fundamental_unit is not None:
            eps = self.fundamental_unit
            candidates += [eps, -eps]
        for u in candidates:
            if u.signs() == pattern:
                return u
        raise AssertionError("registry invariant violated: missing sign pattern")

    def __repr__(self):
        return f"Field({self.tag})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)


class BaseElement:
    """An element c0 + c1*w of K, coordinates kept as reduced Fractions."""

    __slots__ = ("field", "c0", "c1")

    def __init__(self, field: Field, c0, c1=0):
        c0, c1 = _frac(c0), _frac(c1)
        if field.is_rational and c1 != 0:
            raise ValueError("elements of Q have no w coordinate")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)

    def __setattr__(self, name, value):
        raise AttributeError("BaseElement is immutable")

    def _coerce(self, other):
        if isinstance(other, BaseElement):
            if other.field is not self.field:
                raise ValueError("elements of different base fields")
            return other
        if isinstance(other, (int, Fraction)):
            return BaseElement(self.field, other)
        return None

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BaseElement(self.field, self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BaseElement(self.field, self.c0 - o.c0, self.c1 - o.c1)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return BaseElement(self.field, -self.c0, -self.c1)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        # w^2 = trace*w - norm
        cross = self.c1 * o.c1
        return BaseElement(
            f,
            self.c0 * o.c0 - cross * f.omega_norm,
            self.c0 * o.c1 + self.c1 * o.c0 + cross * f.omega_trace,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("division by zero in K")
        if self.field.is_rational:
            return BaseElement(self.field, self.c0 / o.c0)
        n = o.norm()
        return self * o.conj() * BaseElement(self.field, Fraction(1) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return self.field.one / self ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, BaseElement):
            if other.field is not self.field:
                return False
            return self.c0 == other.c0 and self.c1 == other.c1
        if isinstance(other, (int, Fraction)):
            return self.c1 == 0 and self.c0 == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.tag, self.c0, self.c1))

    def __bool__(self):
        return not self.is_zero()

    # -- field structure ---------------------------------------------------

    def conj(self) -> "BaseElement":
        """The nontrivial automorphism of K/Q (identity on Q)."""
        f = self.field
        return BaseElement(f, self.c0 + self.c1 * f.omega_trace, -self.c1)

    def norm(self) -> Fraction:
        """Norm down to Q."""
        f = self.field
        if f.is_rational:
            return self.c0
        return (
            self.c0 * self.c0
            + f.omega_trace * self.c0 * self.c1
            + f.omega_norm * self.c1 * self.c1
        )

    def trace(self) -> Fraction:
        return 2 * self.c0 + self.field.omega_trace * self.c1

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def is_integral(self) -> bool:
        return self.c0.denominator == 1 and self.c1.denominator == 1

    def is_unit(self) -> bool:
        return self.is_integral() and abs(self.norm()) == 1

    def denominator(self) -> int:
        return lcm(self.c0.denominator, self.c1.denominator)

    def round_coords(self) -> "BaseElement":
        return BaseElement(
            self.field, _round_half_up(self.c0), _round_half_up(self.c1)
        )

    # -- real embeddings ---------------------------------------------------

    def sign_at(self, i: int) -> int:
        """Exact sign of sigma_i(self); embeddings ordered with sqrt(m) > 0 first."""
        f = self.field
        if not 0 <= i < f.r:
            raise ValueError(f"field {f.tag} has {f.r} real embeddings")
        if f.is_rational:
            return _sign_of_fraction(self.c0)
        # write the value as a + b*sqrt(m) under sigma_i
        if f.half_omega:
            a = self.c0 + self.c1 / 2
            b = self.c1 / 2
        else:
            a, b = self.c0, self.c1
        if i == 1:
            b = -b
        return _sign_a_plus_b_sqrt(a, b, f.m)

    def signs(self) -> tuple:
        """Sign vector across real embeddings; empty for Q(i)."""
        if self.is_zero():
            raise ZeroArgument("sign vector of zero")
        return tuple(self.sign_at(i) for i in range(self.field.r))

    def is_totally_positive(self) -> bool:
        """Positive under every real embedding; vacuously true for Q(i)."""
        if self.is_zero():
            return False
        return all(s == 1 for s in self.signs())

    def __repr__(self):
        if self.c1 == 0:
            return str(self.c0)
        if self.c0 == 0:
            return f"{self.c1}w"
        sep = "+" if self.c1 > 0 else "-"
        return f"{self.c0}{sep}{abs(self.c1)}w"


def _sign_of_fraction(f: Fraction) -> int:
    return (f > 0) - (f < 0)


def _sign_a_plus_b_sqrt(a: Fraction, b: Fraction, m: int) -> int:
    """Sign of a + b*sqrt(m) for m > 1 non-square, by squaring case analysis."""
    if b == 0:
        return _sign_of_fraction(a)
    if a == 0:
        return _sign_of_fraction(b)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs; a^2 = b^2 m is impossible since m is not a square
    if a > 0:
        return 1 if a * a > b * b * m else -1
    return 1 if b * b * m > a * a else -1


# -- registry ----------------------------------------------------------------

REGISTRY: dict[str, Field] = {}

for _tag, _m, _half, _r, _unit, _usign in [
    ("q", None, False, 1, None, None),
    ("q_i", -1, False, 0, None, None),
    ("q_sqrt2", 2, False, 2, (1, 1), -1),
    ("q_sqrt5", 5, True, 2, (0, 1), -1),
    ("q_sqrt13", 13, True, 2, (1, 1), -1),
]:
    REGISTRY[_tag] = Field(_tag, _m, _half, _r, _unit, _usign)

Q = REGISTRY["q"]
QI = REGISTRY["q_i"]


def field(tag: str) -> Field:
    try:
        return REGISTRY[tag]
    except KeyError:
        raise KeyError(f"unknown base field {tag!r}; known: {sorted(REGISTRY)}")


def registry_config() -> dict:
    """The registry as plain data (name, m, generator kind, unit coords)."""
    out = {}
    for tag, f in REGISTRY.items():
        unit = f.fundamental_unit
        out[tag] = {
            "m": f.m,
            "omega_kind": "half" if f.half_omega else "sqrt",
            "real_embeddings": f.r,
            "fundamental_unit": None
            if unit is None
            else [str(unit.c0), str(unit.c1)],
            "unit_norm_sign": f.unit_norm_sign,
        }
    return out


# -- associates and units -----------------------------------------------------


def _abs_emb_cmp(u: BaseElement, v: BaseElement) -> int:
    """Compare |sigma_1(u)| with |sigma_2(v)| exactly: -1, 0 or +1.

    Uses |sigma_1(u)|^2 = sigma_1(u^2) and sigma_2(x) = sigma_1(conj x).
    """
    d = u * u - (v * v).conj()
    if d.is_zero():
        return 0
    return d.sign_at(0)


def canonical_associate(x: BaseElement) -> BaseElement:
    """The canonical unit multiple of x; deterministic per associate class.

    Q: the absolute value.  Q(i): rotated into c0 > 0, c1 >= 0.  Real
    quadratic: the associate minimizing |sigma_1| + |sigma_2| (strictly
    convex along powers of the fundamental unit), sign-fixed so that
    sigma_1 > 0, ties broken lexicographically on coordinates.
    """
    f = x.field
    if x.is_zero():
        return x
    if f.is_rational:
        return x if x.c0 > 0 else -x
    if f.r == 0:
        i_unit = f.omega  # w = i
        y = x
        for _ in range(4):
            if y.c0 > 0 and y.c1 >= 0:
                return y
            y = y * i_unit
        raise AssertionError("unreachable")
    eps = f.fundamental_unit
    eps_inv = f.one / eps
    y = x
    # T(y*eps) < T(y)  iff  |sigma_1(y*eps)| < |sigma_2(y)|
    while _abs_emb_cmp(y * eps, y) < 0:
        y = y * eps
    while _abs_emb_cmp(y, y * eps_inv) > 0:
        y = y * eps_inv
    candidates = [y]
    if _abs_emb_cmp(y * eps, y) == 0:
        candidates.append(y * eps)
    if _abs_emb_cmp(y, y * eps_inv) == 0:
        candidates.append(y * eps_inv)
    fixed = [c if c.sign_at(0) > 0 else -c for c in candidates]
    return min(fixed, key=lambda c: (c.c0, c.c1))


def unit_decompose(x: BaseElement):
    """Write a unit of a real quadratic field as sign * eps^k; returns (sign, k).

    Returns None when x is not a unit.  Only meaningful for the real
    quadratic registry fields.
    """
    f = x.field
    if f.fundamental_unit is None:
        raise ValueError("unit_decompose requires a real quadratic field")
    if not x.is_unit():
        return None
    eps = f.fundamental_unit
    eps_inv = f.one / eps
    y, k = x, 0
    while y != f.one and y != -f.one:
        if _abs_emb_cmp(y, y * eps_inv) > 0:
            y, k = y * eps_inv, k + 1
        else:
            y, k = y * eps, k - 1
    return (1 if y == f.one else -1), k


# -- gcd, residues, fundamental elements --------------------------------------


def gcd_k(x: BaseElement, y: BaseElement) -> BaseElement:
    """gcd in O_K by the norm-Euclidean algorithm, canonically normalized.

    Coordinate rounding keeps |N(x/y - q)| < 1 on every registry field
    (worst case 13/16 on Q(sqrt 13)), so the loop terminates.
    """
    if x.field is not y.field:
        raise ValueError("elements of different base fields")
    if not (x.is_integral() and y.is_integral()):
        raise NotIntegral("gcd arguments must lie in O_K")
    if x.is_zero() and y.is_zero():
        raise ZeroArgument("gcd(0, 0)")
    while not y.is_zero():
        q = (x / y).round_coords()
        x, y = y, x - q * y
    return canonical_associate(x)


def is_qr_mod4(d: BaseElement) -> bool:
    """Whether t^2 = d (mod 4) is solvable in O_K, by residue exhaustion."""
    if not d.is_integral():
        raise NotIntegral("quadratic residue test requires an element of O_K")
    for t in d.field.residues(4):
        if ((t * t - d) / 4).is_integral():
            return True
    return False


def k_sqrt(x: BaseElement):
    """Exact square root of x in K, or None."""
    f = x.field
    if x.is_zero():
        return f.zero
    tr, nm = f.omega_trace, f.omega_norm
    roots = []
    if x.c1 == 0:
        r = _rat_sqrt(x.c0)
        if r is not None:
            roots.append(f(r))
    if not f.is_rational:
        # y = s + t*w with t != 0: the w-coordinate of y^2 gives
        # t*(2s + t*tr) = c1, the other gives s^2 - t^2*nm = c0.
        # Eliminating s yields a quadratic in V = t^2.
        disc_w = tr * tr - 4 * nm  # equals m or 4m, nonzero
        A = Fraction(disc_w)
        B = -(2 * x.c1 * tr + 4 * x.c0)
        C = x.c1 * x.c1
        delta = _rat_sqrt(B * B - 4 * A * C)
        if delta is not None:
            for sgn in (1, -1):
                V = (-B + sgn * delta) / (2 * A)
                if V <= 0:
                    continue
                t = _rat_sqrt(V)
                if t is None:
                    continue
                for tt in (t, -t):
                    if tt == 0:
                        continue
                    s = (x.c1 / tt - tt * tr) / 2
                    cand = f(s, tt)
                    if cand * cand == x:
                        roots.append(cand)
    return roots[0] if roots else None


def _factor_int(n: int) -> dict[int, int]:
    """Trial-division factorization; inputs here are desk-scale norms."""
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2 if p % 6 == 5 else 4
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primes_above(f: Field, ell: int) -> list[BaseElement]:
    """Generators of the prime ideals of O_K above the rational prime ell."""
    if f.is_rational:
        return [f(ell)]
    tr, nm = f.omega_trace, f.omega_norm
    roots = [a for a in range(ell) if (a * a - tr * a + nm) % ell == 0]
    if not roots:
        return [f(ell)]  # inert
    return [gcd_k(f(ell), f.omega - f(a)) for a in roots]


def prime_divisors(d: BaseElement) -> list[BaseElement]:
    """One generator per prime of O_K dividing d (up to associates)."""
    if not d.is_integral():
        raise NotIntegral("prime divisors require an element of O_K")
    if d.is_zero():
        raise ZeroArgument("prime divisors of zero")
    out, seen = [], set()
    nrm = int(d.norm())
    for ell in _factor_int(nrm):
        for p in primes_above(d.field, ell):
            if (d / p).is_integral():
                key = canonical_associate(p)
                if key not in seen:
                    seen.add(key)
                    out.append(key)
    return out


def is_fundamental(d: BaseElement) -> bool:
    """The fundamental-element predicate on O_K.

    d must be a quadratic residue mod 4 and square-free except for prime
    squares dividing 2 whose removal breaks the residue property.  Over Q
    this is exactly the classical fundamental-discriminant test.
    """
    if not d.is_integral():
        raise NotIntegral("fundamentality requires an element of O_K")
    if d.is_zero() or k_sqrt(d) is not None:
        raise SquareInput("d must be nonzero and not a square in K")
    if not is_qr_mod4(d):
        return False
    two = d.field(2)
    for p in prime_divisors(d):
        quot = d / (p * p)
        if quot.is_integral():
            if not (two / p).is_integral():
                return False
            if is_qr_mod4(quot):
                return False
    return True
