"""Block classification for Virasoro highest-weight data.

Given exact rational (h, c), the lattice line r + nu*s + beta = 0 determines
the block: its kind (singleton, pair, thin chain, thick diamond ladder), its
boundary (a unique maximal or minimal weight), and a window-limited portion
of its weight poset.  Weights are recorded as integer offsets in h relative
to the input weight, graded by ``level`` = distance from the extremal
weight, with thick levels carrying a plain/primed pair.

Kind and boundary are decided algebraically and never depend on the window;
the window only limits how many levels are materialized, and only levels
that are provably complete are ever reported, so enlarging the window
extends the weight list without rewriting it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import (
    CompositeNumber,
    QuadraticNumber,
    format_rational,
    normalize_radical,
    quad_sqrt,
    rational_line_lattice,
    solve_line_integer_points,
    _window_interval,
)


class BlockError(Exception):
    """Domain error with a stable machine-readable code."""

    code = "block-error"


class WindowTooSmall(BlockError):
    code = "window-too-small"


class WindowExhausted(BlockError):
    code = "window-exhausted"


class WeightNotInBlock(BlockError):
    code = "weight-not-in-block"


class Branch(enum.Enum):
    PLAIN = "plain"
    PRIMED = "primed"

    def __lt__(self, other: "Branch") -> bool:
        return self is Branch.PLAIN and other is Branch.PRIMED


class Kind(enum.Enum):
    SINGLETON = "singleton"
    PAIR = "pair"
    THIN = "thin"
    THICK = "thick"


@dataclass(frozen=True, order=True)
class WeightHC:
    h: Fraction
    c: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", Fraction(self.h))
        object.__setattr__(self, "c", Fraction(self.c))


@dataclass(frozen=True, order=True)
class BlockWeight:
    """One weight of a block: h-offset from the base, level, branch."""

    offset: int
    level: int
    branch: Branch = Branch.PLAIN

    def label(self) -> str:
        return f"{self.level}/{self.branch.value}/{self.offset}"


@dataclass(frozen=True)
class LatticeLine:
    """The line r + nu*s + beta = 0 for one choice of radical branches.

    ``beta is None`` marks a beta of degree four over Q (not representable
    in the composite field; the line then carries no integer points).
    """

    nu: CompositeNumber
    beta: CompositeNumber | None
    branch_tags: tuple[int, int]


@dataclass(frozen=True)
class BlockDescriptor:
    base: WeightHC
    kind: Kind
    has_max: bool
    has_min: bool
    finite: bool
    window: int
    weights: tuple[BlockWeight, ...]
    branch_agreement: bool = True
    is_quotient: bool = False

    def max_level(self) -> int:
        return max(w.level for w in self.weights)

    def weights_at_level(self, level: int) -> tuple[BlockWeight, ...]:
        return tuple(w for w in self.weights if w.level == level)

    def weight_at(self, level: int, branch: Branch = Branch.PLAIN) -> BlockWeight:
        for w in self.weights:
            if w.level == level and w.branch == branch:
                return w
        raise WeightNotInBlock(f"no weight at level {level}, branch {branch.value}")

    def contains(self, w: BlockWeight) -> bool:
        return w in self.weights

    def require(self, w: BlockWeight) -> None:
        if not self.contains(w):
            raise WeightNotInBlock(f"{w} not in block")

    def by_offset(self, offset: int) -> BlockWeight:
        for w in self.weights:
            if w.offset == offset:
                return w
        raise WeightNotInBlock(f"no weight with offset {offset}")

    @property
    def boundary(self) -> str:
        if self.has_max and self.has_min:
            return "both"
        return "max" if self.has_max else "min"

    @property
    def pair_offset(self) -> int:
        if self.kind is not Kind.PAIR:
            raise ValueError("pair_offset only defined for pair blocks")
        return next(w.offset for w in self.weights if w.offset != 0)

    def to_json_dict(self) -> dict:
        return {
            "base": {"h": format_rational(self.base.h), "c": format_rational(self.base.c)},
            "kind": self.kind.value,
            "boundary": self.boundary,
            "window": self.window,
            "weights": [
                {"offset": str(w.offset), "level": w.level, "branch": w.branch.value}
                for w in self.weights
            ],
        }


def build_line(w: WeightHC) -> list[LatticeLine]:
    """All branch combinations of the lattice line attached to (h, c).

    The principal branch (+, +) comes first.  Branches collapsing to the
    same line (zero radical, zero beta) are deduplicated.
    """
    h, c = w.h, w.c
    t, d = normalize_radical((c - 1) * (c - 25))
    lines: list[LatticeLine] = []
    seen: set[tuple[CompositeNumber, CompositeNumber | None]] = set()
    for nu_sign in (1, -1):
        nu_quad = QuadraticNumber((c - 13) / 12, nu_sign * t / 12, d)
        radicand = (nu_quad * (-4 * h)) + (nu_quad + 1) * (nu_quad + 1)
        root = quad_sqrt(radicand, field=d)
        beta: CompositeNumber | None
        if root is not None:
            beta = CompositeNumber.from_quadratic(root)
        elif radicand.is_rational:
            t2, d2 = normalize_radical(radicand.a)
            beta = CompositeNumber.sqrt_term(t2, d2)
        else:
            beta = None
        nu = CompositeNumber.from_quadratic(nu_quad)
        for beta_sign in (1, -1):
            signed = None if beta is None else (beta if beta_sign == 1 else -beta)
            key = (nu, signed)
            if key in seen:
                continue
            seen.add(key)
            lines.append(LatticeLine(nu=nu, beta=signed, branch_tags=(nu_sign, beta_sign)))
    return lines


def classify(w: WeightHC, window: int = 16) -> BlockDescriptor:
    """Classify the block of ``w`` and materialize its poset up to the window.

    The required case analysis is exact: no integer point on the line, or a
    single one on an axis, gives a singleton; a single point off the axes a
    two-weight block; infinitely many points a thin chain or a thick ladder
    according to whether the line crosses an axis at an integer point.
    """
    if window < 8:
        raise ValueError("window must be at least 8")
    lines = build_line(w)
    principal = lines[0]
    kind, weights, has_max, has_min = _classify_line(principal, window)
    agreement = True
    reference = tuple(x.offset for x in weights)
    for alt in lines[1:]:
        alt_kind, alt_weights, _, _ = _classify_line(alt, window)
        if alt_kind != kind or tuple(x.offset for x in alt_weights) != reference:
            agreement = False
    return BlockDescriptor(
        base=w,
        kind=kind,
        has_max=has_max,
        has_min=has_min,
        finite=kind in (Kind.SINGLETON, Kind.PAIR),
        window=window,
        weights=weights,
        branch_agreement=agreement,
    )


def precedes(b: BlockDescriptor, x: BlockWeight, y: BlockWeight) -> bool:
    """The subquotient order: x precedes y iff L(x) occurs in the Verma of y.

    Levels count away from the extremal weight, so the comparison runs
    through increasing levels in blocks with a maximal element and
    decreasing levels in infinite blocks with a minimal one.  Distinct
    weights on the same level are incomparable.
    """
    b.require(x)
    b.require(y)
    if x == y:
        return True
    if b.has_max:
        return x.level > y.level
    return x.level < y.level


def depth_below(b: BlockDescriptor, x: BlockWeight, y: BlockWeight) -> int:
    """Nonnegative poset distance of x below y; requires precedes(b, x, y)."""
    return abs(x.level - y.level)


def enumerate_weights(b: BlockDescriptor, max_level: int) -> list[BlockWeight]:
    if max_level < 0:
        raise ValueError("max_level must be nonnegative")
    if not b.finite and max_level > b.max_level():
        raise WindowExhausted(
            f"window {b.window} materialized levels up to {b.max_level()}, "
            f"requested {max_level}"
        )
    return [w for w in sorted(b.weights, key=lambda v: (v.level, v.branch))
            if w.level <= max_level]


# ---------------------------------------------------------------------------
# classification internals


def _classify_line(
    line: LatticeLine, window: int
) -> tuple[Kind, tuple[BlockWeight, ...], bool, bool]:
    if line.beta is None:
        return Kind.SINGLETON, (BlockWeight(0, 0),), True, True
    nu, beta = line.nu, line.beta
    if nu.is_rational and beta.is_rational:
        lattice = rational_line_lattice(nu.as_rational(), beta.as_rational())
        if lattice is None:
            return Kind.SINGLETON, (BlockWeight(0, 0),), True, True
        return _classify_infinite(lattice, window)
    solution = solve_line_integer_points(nu, beta, window)
    if not solution.points:
        return Kind.SINGLETON, (BlockWeight(0, 0),), True, True
    ((r, s),) = solution.points
    if r * s == 0:
        return Kind.SINGLETON, (BlockWeight(0, 0),), True, True
    offsets = sorted({0, r * s})
    weights = tuple(BlockWeight(o, i) for i, o in enumerate(offsets))
    return Kind.PAIR, weights, True, True


def _classify_infinite(
    lattice: tuple[int, int, int, int], window: int
) -> tuple[Kind, tuple[BlockWeight, ...], bool, bool]:
    r0, s0, a, b = lattice
    crosses_axis = (r0 % a == 0) if a != 0 else False
    crosses_axis = crosses_axis or (s0 % b == 0)
    has_max = a < 0  # nu < 0: products bounded below, extremal weight on top
    if a < 0:
        work = lattice
    else:
        work = (-r0, s0, -a, b)  # reflect r -> -r: negates every product
    if crosses_axis:
        level_offsets = _thin_levels(work, window)
        kind = Kind.THIN
    else:
        level_offsets = _thick_levels(work, window)
        kind = Kind.THICK
    if not has_max:
        level_offsets = [[-o for o in level] for level in level_offsets]
    weights = _levels_to_weights(level_offsets, kind, has_max)
    return kind, weights, has_max, not has_max


def _certain_products(
    lattice: tuple[int, int, int, int], window: int
) -> tuple[list[int], int]:
    """Products r*s over window points, restricted to the provably complete
    prefix: every product strictly below the returned horizon is present.

    Requires the window interval to span the parabola vertex; products
    beyond either end then only grow.
    """
    r0, s0, a, b = lattice
    lo, hi = _window_interval(r0, s0, a, b, window)
    if lo > hi:
        raise WindowTooSmall("window contains no lattice points")
    lead = -a * b
    if lead <= 0:
        raise AssertionError("product parabola must open upward here")
    linear = r0 * b - s0 * a
    vertex = Fraction(-linear, 2 * lead)
    if not (lo <= vertex <= hi):
        raise WindowTooSmall("window does not span the product parabola vertex")

    def f(t: int) -> int:
        return (r0 - a * t) * (s0 + b * t)

    horizon = min(f(lo - 1), f(hi + 1))
    products = sorted(p for t in range(lo, hi + 1) if (p := f(t)) < horizon)
    return products, horizon


def _thin_levels(lattice: tuple[int, int, int, int], window: int) -> list[list[int]]:
    products, _ = _certain_products(lattice, window)
    offsets = sorted(set(products) | {0})
    if len(offsets) < 2:
        raise WindowTooSmall("window materialized fewer than two chain weights")
    # one level of slack below the completeness horizon
    return [[o] for o in offsets[:-1]]


def _thick_levels(lattice: tuple[int, int, int, int], window: int) -> list[list[int]]:
    r0, s0, a, b = lattice
    products, horizon = _certain_products(lattice, window)
    positives = [p for p in products if p > 0]
    if not positives:
        raise WindowTooSmall("no positive product inside the window")
    p1 = positives[0]
    anchors = [t for t in _anchor_candidates(lattice, window, p1)]
    if len(anchors) != 1:
        raise AssertionError("thick line anchor point is not unique")
    t1 = anchors[0]
    r1, s1 = r0 - a * t1, s0 + b * t1
    aux = (-r1, s1, a, b)
    aux_products, aux_horizon = _certain_products(aux, window)
    if -p1 not in aux_products:
        raise WindowTooSmall("auxiliary line window misses its base point")
    combined_horizon = min(horizon, p1 + aux_horizon)
    offsets = {0}
    offsets.update(p for p in products if p < combined_horizon)
    offsets.update(p1 + q for q in aux_products if p1 + q < combined_horizon)
    if combined_horizon <= 0:
        raise WindowTooSmall("window cannot certify the extremal weight")
    ordered = sorted(offsets)
    levels = [[ordered[0]]]
    rest = ordered[1:]
    for i in range(0, len(rest) - 1, 2):
        pair = rest[i : i + 2]
        if pair[0] == pair[1]:
            raise AssertionError("thick level pair collapsed to one offset")
        levels.append(pair)
    if len(levels) < 2:
        raise WindowTooSmall("auxiliary line yielded fewer than one full level")
    # one level of slack below the completeness horizon
    return levels[:-1]


def _anchor_candidates(
    lattice: tuple[int, int, int, int], window: int, product: int
) -> list[int]:
    r0, s0, a, b = lattice
    lo, hi = _window_interval(r0, s0, a, b, window)
    return [t for t in range(lo, hi + 1) if (r0 - a * t) * (s0 + b * t) == product]


def _levels_to_weights(
    level_offsets: list[list[int]], kind: Kind, has_max: bool
) -> tuple[BlockWeight, ...]:
    weights: list[BlockWeight] = []
    for level, offsets in enumerate(level_offsets):
        if kind is Kind.THIN or len(offsets) == 1:
            weights.append(BlockWeight(offsets[0], level))
            continue
        # plain = nearer the extremal weight's offset
        inner, outer = sorted(offsets, reverse=not has_max)
        weights.append(BlockWeight(inner, level, Branch.PLAIN))
        weights.append(BlockWeight(outer, level, Branch.PRIMED))
    return tuple(weights)
