"""Exact scalar arithmetic over Q and its quadratic / biquadratic extensions.

Everything in this module is exact: rationals are ``fractions.Fraction``,
radicals are kept symbolic as squarefree integers, and no floating point is
used anywhere.  The three layers are

* ``Fraction`` for plain rationals (parsed from ``"p/q"`` text),
* :class:`QuadraticNumber` for elements a + b*sqrt(d) of a single real or
  imaginary quadratic field,
* :class:`CompositeNumber` for elements of a biquadratic field, stored as a
  rational combination of squarefree radicals closed under multiplication.

On top of these sits :func:`solve_line_integer_points`, the integer-point
solver for lattice lines r + nu*s + beta = 0 with quadratic-irrational
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"n"`` exactly; reject zero denominators."""
    text = text.strip()
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc
    return value


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = t*t*d`` with ``t >= 0`` and ``d`` squarefree (sign kept in d).

    ``n = 0`` returns ``(0, 1)``.
    """
    if n == 0:
        return 0, 1
    sign = 1 if n > 0 else -1
    m = abs(n)
    t = 1
    d = 1
    p = 2
    while p * p * p <= m:
        if m % p == 0:
            exp = 0
            while m % p == 0:
                m //= p
                exp += 1
            t *= p ** (exp // 2)
            if exp % 2:
                d *= p
        p += 1 if p == 2 else 2
    # remaining cofactor has no prime factor <= cbrt: it is 1, p, p*q or p*p
    root = isqrt(m)
    if root * root == m:
        t *= root
    else:
        d *= m
    return t, sign * d


def normalize_radical(value: Fraction) -> tuple[Fraction, int]:
    """Express sqrt(value) = t*sqrt(D) with D a squarefree integer.

    Returns ``(t, D)`` with ``value == t*t*D`` exactly; ``(0, 1)`` for zero
    and ``D == 1`` when ``value`` is a rational square.
    """
    if value == 0:
        return Fraction(0), 1
    p, q = value.numerator, value.denominator
    t, d = squarefree_decompose(p * q)
    return Fraction(t, q), d


@dataclass(frozen=True)
class QuadraticNumber:
    """Element a + b*sqrt(d) of the quadratic field Q(sqrt(d)).

    ``d`` is a squarefree integer (possibly negative); ``b == 0`` forces
    ``d == 1`` so that rationals have a unique representation.
    """

    a: Fraction
    b: Fraction
    d: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d == 0:
            raise ValueError("radicand 0 is not a field generator")
        if self.d == 1 and self.b != 0:
            object.__setattr__(self, "a", self.a + self.b)
            object.__setattr__(self, "b", Fraction(0))
        if self.b == 0:
            object.__setattr__(self, "d", 1)
        else:
            t, _ = squarefree_decompose(self.d)
            if t != 1:
                raise ValueError(f"radicand {self.d} is not squarefree")

    @classmethod
    def rational(cls, value: Fraction | int) -> "QuadraticNumber":
        return cls(Fraction(value), Fraction(0), 1)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other: "QuadraticNumber | Fraction | int") -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if not (self.b == 0 or other.b == 0 or self.d == other.d):
                raise ValueError(f"mixed radicands {self.d} and {other.d}")
            return other
        return QuadraticNumber.rational(Fraction(other))

    def _field(self, other: "QuadraticNumber") -> int:
        return self.d if self.b != 0 else other.d

    def __add__(self, other: "QuadraticNumber | Fraction | int") -> "QuadraticNumber":
        o = self._coerce(other)
        return QuadraticNumber(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self) -> "QuadraticNumber":
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other: "QuadraticNumber | Fraction | int") -> "QuadraticNumber":
        return self + (-self._coerce(other))

    def __rsub__(self, other: "QuadraticNumber | Fraction | int") -> "QuadraticNumber":
        return (-self) + other

    def __mul__(self, other: "QuadraticNumber | Fraction | int") -> "QuadraticNumber":
        o = self._coerce(other)
        d = self._field(o)
        return QuadraticNumber(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * Fraction(self.d)

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero quadratic number")
        return QuadraticNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: "QuadraticNumber | Fraction | int") -> "QuadraticNumber":
        return self * self._coerce(other).inverse()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        if self.b == 0:
            return format_rational(self.a)
        return f"{format_rational(self.a)} + {format_rational(self.b)}*sqrt({self.d})"


def quad_sqrt(x: QuadraticNumber, field: int | None = None) -> QuadraticNumber | None:
    """Square root of ``x`` inside Q(sqrt(field)), or None if none exists there.

    ``field`` defaults to ``x.d``; passing it explicitly matters for rational
    inputs, whose normalized form carries ``d = 1``.  Rational inputs detect
    roots of the form t*sqrt(field) as well as rational roots.  The sign of
    the returned root is canonical, not meaningful.
    """
    ambient = x.d if field is None else field
    if x.is_zero():
        return QuadraticNumber.rational(0)
    if x.b == 0:
        t, d = normalize_radical(x.a)
        if d == 1:
            return QuadraticNumber.rational(t)
        if d == ambient:
            return QuadraticNumber(Fraction(0), t, ambient)
        return None
    # (u + v sqrt(d))^2 = x  =>  u^2 + d v^2 = x.a, 2uv = x.b.
    # Then u^2 is a root of 4 z^2 - 4 x.a z + d x.b^2 = 0.
    norm_t, norm_d = normalize_radical(x.norm())
    if norm_d != 1:
        return None
    for n in (norm_t, -norm_t):
        usq = (x.a + n) / 2
        if usq <= 0:
            continue
        u_t, u_d = normalize_radical(usq)
        if u_d != 1:
            continue
        u = u_t
        v = x.b / (2 * u)
        root = QuadraticNumber(u, v, x.d)
        if root * root == x:
            return _canonical_sign(root)
    return None


def _canonical_sign(x: QuadraticNumber) -> QuadraticNumber:
    if x.a < 0 or (x.a == 0 and x.b < 0):
        return -x
    return x


class CompositeNumber:
    """Exact element of a multi-quadratic extension of Q.

    Stored as a finite sum ``sum_d c_d * sqrt(d)`` over squarefree integers
    ``d`` (with ``d = 1`` the rational part).  Products of radicals are
    folded back to squarefree form, so the usual biquadratic basis
    {1, sqrt(D1), sqrt(D2), sqrt(D1*D2)} is closed under multiplication.
    Instances are immutable and hashable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None) -> None:
        clean: dict[int, Fraction] = {}
        for d, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            t, sf = squarefree_decompose(d)
            if t != 1:
                raise ValueError(f"radicand {d} is not squarefree")
            clean[d] = coeff
        object.__setattr__(self, "_terms", tuple(sorted(clean.items())))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("CompositeNumber is immutable")

    @classmethod
    def rational(cls, value: Fraction | int) -> "CompositeNumber":
        return cls({1: Fraction(value)})

    @classmethod
    def sqrt_term(cls, coeff: Fraction | int, d: int) -> "CompositeNumber":
        return cls({d: Fraction(coeff)})

    @classmethod
    def from_quadratic(cls, q: QuadraticNumber) -> "CompositeNumber":
        terms = {1: q.a}
        terms[q.d] = terms.get(q.d, Fraction(0)) + q.b
        return cls(terms)

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    def coefficient(self, d: int) -> Fraction:
        for rad, coeff in self._terms:
            if rad == d:
                return coeff
        return Fraction(0)

    def radicals(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self._terms if d != 1)

    @property
    def is_rational(self) -> bool:
        return not self.radicals()

    @property
    def rational_part(self) -> Fraction:
        return self.coefficient(1)

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.rational_part

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "CompositeNumber | Fraction | int") -> "CompositeNumber":
        o = _coerce_composite(other)
        merged = dict(self._terms)
        for d, coeff in o._terms:
            merged[d] = merged.get(d, Fraction(0)) + coeff
        return CompositeNumber(merged)

    __radd__ = __add__

    def __neg__(self) -> "CompositeNumber":
        return CompositeNumber({d: -c for d, c in self._terms})

    def __sub__(self, other: "CompositeNumber | Fraction | int") -> "CompositeNumber":
        return self + (-_coerce_composite(other))

    def __rsub__(self, other: "CompositeNumber | Fraction | int") -> "CompositeNumber":
        return (-self) + other

    def __mul__(self, other: "CompositeNumber | Fraction | int") -> "CompositeNumber":
        o = _coerce_composite(other)
        out: dict[int, Fraction] = {}
        for d1, c1 in self._terms:
            for d2, c2 in o._terms:
                t, d, sign = _radical_product(d1, d2)
                out[d] = out.get(d, Fraction(0)) + c1 * c2 * t * sign
        return CompositeNumber(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CompositeNumber.rational(other)
        if not isinstance(other, CompositeNumber):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, coeff in self._terms:
            if d == 1:
                parts.append(format_rational(coeff))
            else:
                parts.append(f"{format_rational(coeff)}*sqrt({d})")
        return " + ".join(parts)

    __repr__ = __str__


def _coerce_composite(value: "CompositeNumber | Fraction | int") -> CompositeNumber:
    if isinstance(value, CompositeNumber):
        return value
    return CompositeNumber.rational(Fraction(value))


def _radical_product(d1: int, d2: int) -> tuple[int, int, int]:
    """sqrt(d1)*sqrt(d2) = sign * t * sqrt(d), under sqrt(d) = i*sqrt(|d|) for d < 0.

    Returns ``(t, d, sign)`` with ``d`` squarefree.
    """
    t, d_pos = squarefree_decompose(abs(d1 * d2))
    if d1 < 0 and d2 < 0:
        return t, d_pos, -1
    if (d1 < 0) != (d2 < 0):
        return t, -d_pos, 1
    return t, d_pos, 1


@dataclass(frozen=True)
class LinePoints:
    """Integer points of a lattice line within a window.

    ``infinite_family`` marks the rational case where the full solution set
    is an arithmetic progression and the window merely clips it.
    """

    points: tuple[tuple[int, int], ...]
    infinite_family: bool


def rational_line_lattice(nu: Fraction, beta: Fraction) -> tuple[int, int, int, int] | None:
    """Parametrize the integer points of r + nu*s + beta = 0 (nu, beta in Q).

    Returns ``(r0, s0, a, b)`` such that the solutions are exactly
    ``(r0 - a*t, s0 + b*t)`` for ``t`` in Z, where ``nu = a/b`` in lowest
    terms with ``b > 0``; or None when the line has no integer points.
    """
    a, b = nu.numerator, nu.denominator
    p, q = beta.numerator, beta.denominator
    if b % q != 0:
        return None
    # a*s = -p*b/q (mod b); a is invertible mod b since gcd(a, b) = 1
    rhs = (-p * (b // q)) % b if b > 1 else 0
    if b == 1:
        s0 = 0
    else:
        s0 = (rhs * pow(a, -1, b)) % b
    r_frac = -nu * s0 - beta
    if r_frac.denominator != 1:
        raise AssertionError("congruence solution failed to produce integer r")
    return int(r_frac), s0, a, b


def solve_line_integer_points(
    nu: CompositeNumber,
    beta: CompositeNumber | None,
    window: int,
) -> LinePoints:
    """All integer (r, s) with r + nu*s + beta = 0 and |r|, |s| <= window.

    ``beta is None`` encodes a coefficient of degree four over Q (no
    representation in the composite field, hence no integer points).  When
    nu and beta are both rational the solutions form an arithmetic
    progression: the window clips it and ``infinite_family`` is set.  In
    every other case the radical coordinates force at most one solution and
    the result is window-independent.
    """
    if window <= 0:
        raise ValueError("window must be positive")
    if beta is None:
        return LinePoints((), False)
    if nu.is_zero():
        # nu = 0 would force (c-13)^2 = (c-1)(c-25), i.e. 169 = 25
        raise AssertionError("line slope parameter cannot vanish")

    radicals = sorted(set(nu.radicals()) | set(beta.radicals()))
    if not radicals:
        lattice = rational_line_lattice(nu.as_rational(), beta.as_rational())
        if lattice is None:
            return LinePoints((), False)
        r0, s0, a, b = lattice
        points = []
        lo, hi = _window_interval(r0, s0, a, b, window)
        for t in range(lo, hi + 1):
            points.append((r0 - a * t, s0 + b * t))
        points.sort(key=lambda rs: (rs[0] * rs[1], rs[0]))
        return LinePoints(tuple(points), True)

    # Each radical coordinate of r + nu*s + beta must vanish; any radical
    # present in nu pins s to a single rational value.
    s_value: Fraction | None = None
    for d in radicals:
        nu_d = nu.coefficient(d)
        if nu_d != 0:
            candidate = -beta.coefficient(d) / nu_d
            if s_value is not None and candidate != s_value:
                return LinePoints((), False)
            s_value = candidate
    if s_value is None:
        # nu rational but beta has a genuine radical: no solutions
        return LinePoints((), False)
    for d in radicals:
        if nu.coefficient(d) * s_value + beta.coefficient(d) != 0:
            return LinePoints((), False)
    if s_value.denominator != 1:
        return LinePoints((), False)
    r_value = -(nu.coefficient(1) * s_value + beta.coefficient(1))
    if r_value.denominator != 1:
        return LinePoints((), False)
    r, s = int(r_value), int(s_value)
    check = CompositeNumber.rational(r) + nu * s + beta
    if not check.is_zero():
        raise AssertionError("solver produced a point off the line")
    return LinePoints(((r, s),), False)


def _window_interval(r0: int, s0: int, a: int, b: int, window: int) -> tuple[int, int]:
    """t-range with |r0 - a*t| <= window and |s0 + b*t| <= window.

    Returns an empty range (lo > hi) when the window misses the line.
    """
    lo_s = _ceil_div(-window - s0, b)
    hi_s = _floor_div(window - s0, b)
    if a > 0:
        lo_r = _ceil_div(r0 - window, a)
        hi_r = _floor_div(r0 + window, a)
    elif a < 0:
        lo_r = _ceil_div(-(r0 + window), -a)
        hi_r = _floor_div(-(r0 - window), -a)
    else:  # pragma: no cover - nu = 0 rejected earlier
        lo_r, hi_r = lo_s, hi_s
    return max(lo_s, lo_r), min(hi_s, hi_r)


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


def _floor_div(p: int, q: int) -> int:
    return p // q
