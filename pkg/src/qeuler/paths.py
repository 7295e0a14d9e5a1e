"""Weighted lattice-path engines and continued-fraction coefficient extraction.

Closed-family sums are computed by transfer recurrences over (position,
height) with polynomial-valued state; explicit enumeration of the weighted
paths is kept as an independent oracle for small sizes.  Schroeder flat
steps span two length units so that "length 2k" matches the t-degree
accounting of the associated T-fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import check_budget
from .poly import ONE, Poly, binom_safe, one_minus_q, poly_sum, q_integer

PATH_BOUND = 8

_DELTA = {"U": 1, "D": -1, "F": 0}


@dataclass(frozen=True)
class Weight:
    """A monomial step weight: sign * y**ypow * q**qpow."""

    sign: int = 1
    ypow: int = 0
    qpow: int = 0

    def __post_init__(self) -> None:
        if self.sign not in (1, -1) or self.ypow not in (0, 1) or self.qpow < 0:
            raise ValueError(f"invalid step weight {self}")

    def monomial(self) -> Poly:
        return Poly.monomial(self.sign, self.ypow, self.qpow)

    @property
    def is_unit(self) -> bool:
        return self.sign == 1 and self.ypow == 0 and self.qpow == 0

    def dump(self) -> str:
        return f"[{self.sign:+d},{self.ypow},{self.qpow}]"


UNIT_WEIGHT = Weight(1, 0, 0)


@dataclass(frozen=True)
class Step:
    direction: str  # "U", "D", or "F"
    start_height: int
    weight: Weight = UNIT_WEIGHT

    def __post_init__(self) -> None:
        if self.direction not in _DELTA or self.start_height < 0:
            raise ValueError(f"invalid step {self}")

    def dump(self) -> str:
        return self.direction + self.weight.dump()


# Per-family step admissibility: family -> (flat unit length, rule).
# The rule receives (direction, start height, weight) and enforces the
# family's exponent ceiling for that direction and height.
def _laguerre_rule(d: str, h: int, w: Weight) -> bool:
    if w.sign != 1:
        return False
    if d == "U":
        return w.ypow == 1 and w.qpow <= h
    if d == "D":
        return w.ypow == 0 and w.qpow <= h - 1
    return (w.ypow == 1 and w.qpow <= h) or (w.ypow == 0 and w.qpow <= h - 1)


def _large_laguerre_rule(d: str, h: int, w: Weight) -> bool:
    if w.sign != 1 or w.qpow > h:
        return False
    if d == "U":
        return w.ypow == 1
    if d == "D":
        return w.ypow == 0
    return True


def _euler_rule(delta: int) -> Callable[[str, int, Weight], bool]:
    def rule(d: str, h: int, w: Weight) -> bool:
        if w.sign != 1 or w.ypow != 0 or d == "F":
            return False
        return w.qpow <= (h if d == "U" else h - 1 + delta)
    return rule


def _touchard_rule(d: str, h: int, w: Weight) -> bool:
    if w.sign != 1 or w.ypow != 0 or d == "F":
        return False
    return w.qpow == 0 if d == "U" else w.qpow <= h - 1


def _signed_core_rule(down_shift: int) -> Callable[[str, int, Weight], bool]:
    # Up steps carry 1 or -q**(h+1); down steps 1 or -q**(h+down_shift).
    def rule(d: str, h: int, w: Weight) -> bool:
        if w.ypow != 0 or d == "F":
            return False
        if w.sign == 1:
            return w.qpow == 0
        return w.qpow == (h + 1 if d == "U" else h + down_shift)
    return rule


def _schroder_rule(core: Callable[[str, int, Weight], bool]) -> Callable[[str, int, Weight], bool]:
    def rule(d: str, h: int, w: Weight) -> bool:
        if d == "F":
            return w == Weight(-1, 0, 0)
        return core(d, h, w)
    return rule


def _derangement_motzkin_rule(d: str, h: int, w: Weight) -> bool:
    if w.sign != 1:
        return False
    if d == "U":
        return w.ypow == 1 and w.qpow <= h
    if d == "D":
        return w.ypow == 0 and w.qpow <= h - 1
    # flat choices expand (1 + y q) [h]: plain q**i or y q**(i+1), i < h
    if w.ypow == 0:
        return w.qpow <= h - 1
    return 1 <= w.qpow <= h


def _left_factor_rule(d: str, h: int, w: Weight) -> bool:
    return d != "F" and w.is_unit


FAMILY_RULES: dict[str, tuple[int, Callable[[str, int, Weight], bool]]] = {
    "laguerre": (1, _laguerre_rule),
    "large_laguerre": (1, _large_laguerre_rule),
    "euler_dyck_0": (1, _euler_rule(0)),
    "euler_dyck_1": (1, _euler_rule(1)),
    "touchard_dyck": (1, _touchard_rule),
    "derangement_motzkin": (1, _derangement_motzkin_rule),
    "secant_core": (1, _signed_core_rule(0)),
    "tangent_core": (1, _signed_core_rule(1)),
    "schroder_secant": (2, _schroder_rule(_signed_core_rule(0))),
    "schroder_tangent": (2, _schroder_rule(_signed_core_rule(1))),
    "left_factor": (1, _left_factor_rule),
}

_OPEN_FAMILIES = {"left_factor"}


@dataclass(frozen=True)
class WeightedPath:
    steps: tuple[Step, ...]
    family: str

    def validate(self) -> WeightedPath:
        if self.family not in FAMILY_RULES:
            raise ValueError(f"unknown path family {self.family!r}")
        flat_len, rule = FAMILY_RULES[self.family]
        h = 0
        for s in self.steps:
            if s.start_height != h:
                raise ValueError(f"inconsistent heights at {s}")
            if not rule(s.direction, h, s.weight):
                raise ValueError(f"step {s} violates {self.family} weight rule")
            h += _DELTA[s.direction]
            if h < 0:
                raise ValueError("path dips below height 0")
        if h != 0 and self.family not in _OPEN_FAMILIES:
            raise ValueError(f"closed family path ends at height {h}")
        return self

    @property
    def final_height(self) -> int:
        return sum(_DELTA[s.direction] for s in self.steps)

    @property
    def length(self) -> int:
        """Length in units; flat steps count double in Schroeder families."""
        flat_len = FAMILY_RULES[self.family][0]
        return sum(flat_len if s.direction == "F" else 1 for s in self.steps)

    def weight(self) -> Poly:
        w = ONE
        for s in self.steps:
            w = w * s.weight.monomial()
        return w

    def shape(self) -> str:
        return "".join(s.direction for s in self.steps)

    def has_flat(self) -> bool:
        return any(s.direction == "F" for s in self.steps)

    def dump(self) -> str:
        return " ".join(s.dump() for s in self.steps)


def path_from_steps(family: str, items: list[tuple[str, Weight]]) -> WeightedPath:
    """Build a path from (direction, weight) pairs, deriving start heights."""
    steps = []
    h = 0
    for d, w in items:
        steps.append(Step(d, h, w))
        h += _DELTA[d]
    return WeightedPath(tuple(steps), family).validate()


# -- transfer-recurrence sums -------------------------------------------------


def _dyck_transfer(length: int, up_w: Callable[[int], Poly], down_w: Callable[[int], Poly]) -> Poly:
    state: dict[int, Poly] = {0: ONE}
    for pos in range(length):
        remaining = length - pos
        new: dict[int, Poly] = {}
        for h, val in state.items():
            if h + 1 <= remaining - 1:
                w = up_w(h)
                if not w.is_zero:
                    new[h + 1] = new.get(h + 1, Poly.zero()) + val * w
            if h >= 1:
                w = down_w(h)
                if not w.is_zero:
                    new[h - 1] = new.get(h - 1, Poly.zero()) + val * w
        state = new
    return state.get(0, Poly.zero())


def euler_dyck_sum(n: int, delta: int) -> Poly:
    """Sum over weighted Dyck paths of length 2n under the delta rule.

    Up steps from height h contribute q**i for i in 0..h, down steps q**i
    for i in 0..h-1+delta; the total equals the q-Euler number E(2n+delta).
    """
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _dyck_transfer(2 * n, lambda h: q_integer(h + 1), lambda h: q_integer(h + delta))


def touchard_dyck_sum(n: int) -> Poly:
    """Dyck paths of length 2n with unit up steps and down steps q**i, i < h."""
    return _dyck_transfer(2 * n, lambda h: ONE, lambda h: q_integer(h))


def _motzkin_transfer(
    steps: int,
    up_w: Callable[[int], Poly],
    flat_w: Callable[[int], Poly],
    down_w: Callable[[int], Poly],
) -> Poly:
    state: dict[int, Poly] = {0: ONE}
    for pos in range(steps):
        remaining = steps - pos
        new: dict[int, Poly] = {}
        for h, val in state.items():
            for nh, w in ((h + 1, up_w(h)), (h, flat_w(h)), (h - 1, down_w(h) if h else Poly.zero())):
                if 0 <= nh <= remaining - 1 and not w.is_zero:
                    new[nh] = new.get(nh, Poly.zero()) + val * w
        state = new
    return state.get(0, Poly.zero())


def laguerre_sum(n: int) -> Poly:
    """Total weight of all Laguerre histories of size n (n Motzkin steps)."""
    y = Poly.var_y()
    return _motzkin_transfer(
        n,
        lambda h: y * q_integer(h + 1),
        lambda h: y * q_integer(h + 1) + q_integer(h),
        lambda h: q_integer(h),
    )


def large_laguerre_sum(n: int) -> Poly:
    """Total weight of large Laguerre histories of size n (n - 1 steps)."""
    if n < 1:
        raise ValueError("large Laguerre histories have size >= 1")
    y = Poly.var_y()
    return _motzkin_transfer(
        n - 1,
        lambda h: y * q_integer(h + 1),
        lambda h: (y + ONE) * q_integer(h + 1),
        lambda h: q_integer(h + 1),
    )


def derangement_motzkin_sum(n: int) -> Poly:
    """Motzkin paths of length n with up y[h+1], flat (1+yq)[h], down [h]."""
    y = Poly.var_y()
    yq1 = ONE + Poly.monomial(1, 1, 1)
    return _motzkin_transfer(
        n,
        lambda h: y * q_integer(h + 1),
        lambda h: yq1 * q_integer(h),
        lambda h: q_integer(h),
    )


def _restricted_signed_sum(k: int, down_shift: int, bound: int | None) -> Poly:
    """Signed Dyck paths of length 2k, no up-down pair both weighted 1.

    Up steps from height h weigh 1 or -q**(h+1); down steps 1 or
    -q**(h+down_shift).  State tracks whether the previous step was an up
    step with weight 1, which forbids a following unit-weight down step.
    """
    check_budget(k, PATH_BOUND if bound is None else bound, "k")
    state: dict[tuple[int, bool], Poly] = {(0, False): ONE}
    for pos in range(2 * k):
        new: dict[tuple[int, bool], Poly] = {}
        def put(key: tuple[int, bool], val: Poly) -> None:
            new[key] = new.get(key, Poly.zero()) + val
        for (h, unit_up), val in state.items():
            put((h + 1, True), val)
            put((h + 1, False), val * Poly.monomial(-1, 0, h + 1))
            if h >= 1:
                if not unit_up:
                    put((h - 1, False), val)
                put((h - 1, False), val * Poly.monomial(-1, 0, h + down_shift))
        state = new
    return state.get((0, False), Poly.zero())


def secant_core_path_sum(k: int, bound: int | None = None) -> Poly:
    """Restricted signed Dyck sum with down weights 1 or -q**h."""
    return _restricted_signed_sum(k, 0, bound)


def tangent_core_path_sum(k: int, bound: int | None = None) -> Poly:
    """Restricted signed Dyck sum with down weights 1 or -q**(h+1)."""
    return _restricted_signed_sum(k, 1, bound)


def schroder_signed_sum(k: int, variant: str, bound: int | None = None) -> Poly:
    """Signed Schroeder paths of length 2k; flat steps weigh -1 and span 2 units."""
    if variant not in ("secant", "tangent"):
        raise ValueError("variant must be 'secant' or 'tangent'")
    check_budget(k, PATH_BOUND if bound is None else bound, "k")
    down_shift = 0 if variant == "secant" else 1
    units = 2 * k
    layers: list[dict[int, Poly]] = [dict() for _ in range(units + 1)]
    layers[0][0] = ONE
    for u in range(units):
        for h, val in layers[u].items():
            def put(layer: int, nh: int, w: Poly) -> None:
                layers[layer][nh] = layers[layer].get(nh, Poly.zero()) + val * w
            put(u + 1, h + 1, ONE - Poly.var_q(h + 1))
            if h >= 1:
                put(u + 1, h - 1, ONE - Poly.var_q(h + down_shift))
            if u + 2 <= units:
                put(u + 2, h, Poly.const(-1))
    return layers[units].get(0, Poly.zero())


# -- continued fractions -------------------------------------------------------


@dataclass(frozen=True)
class CFSpec:
    """A J- or T-fraction given by its level-weight function.

    level_weight(h) is the coefficient at nesting depth h, h = 0 outermost:
    J-fractions expand 1/(1 - w(0) x / (1 - w(1) x / ...)) and T-fractions
    1/(1 + t - w(0) t / (1 + t - w(1) t / ...)).
    """

    kind: str  # "J" or "T"
    level_weight: Callable[[int], Poly]

    def __post_init__(self) -> None:
        if self.kind not in ("J", "T"):
            raise ValueError("kind must be 'J' or 'T'")


def _series_inverse(d: list[Poly]) -> list[Poly]:
    if d[0] != ONE:
        raise ValueError("series inversion requires unit constant term")
    n = len(d)
    g = [ONE] + [Poly.zero()] * (n - 1)
    for m in range(1, n):
        acc = Poly.zero()
        for r in range(1, m + 1):
            if not d[r].is_zero and not g[m - r].is_zero:
                acc = acc + d[r] * g[m - r]
        g[m] = -acc
    return g


def cf_series(spec: CFSpec, n_max: int, depth: int | None = None) -> list[Poly]:
    """Coefficients of x**0..x**n_max of the truncated continued fraction.

    Truncation depth defaults to n_max + 1 with tail 1, which is exact
    because level h first contributes at order h + 1.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    depth = n_max + 1 if depth is None else depth
    size = n_max + 1
    f = [ONE] + [Poly.zero()] * (n_max)
    for level in reversed(range(depth)):
        w = spec.level_weight(level)
        d = [ONE] + [Poly.zero()] * n_max
        for m in range(1, size):
            d[m] = -(w * f[m - 1])
            if spec.kind == "T" and m == 1:
                d[m] = d[m] + ONE
        f = _series_inverse(d)
    return f


def tangent_cf_spec() -> CFSpec:
    return CFSpec("J", lambda h: q_integer(h + 1) * q_integer(h + 2))


def secant_cf_spec() -> CFSpec:
    return CFSpec("J", lambda h: q_integer(h + 1) * q_integer(h + 1))


def secant_core_cf_spec() -> CFSpec:
    return CFSpec("T", lambda h: (ONE - Poly.var_q(h + 1)) ** 2)


def tangent_core_cf_spec() -> CFSpec:
    return CFSpec("T", lambda h: (ONE - Poly.var_q(h + 1)) * (ONE - Poly.var_q(h + 2)))


# -- ballot numbers -------------------------------------------------------------


def left_factor_count(steps: int, final_height: int) -> int:
    """Dyck-path left factors of the given even length and even final height."""
    if steps < 0 or final_height < 0 or steps % 2 or final_height % 2:
        raise ValueError("left factors are counted for even steps and even height")
    n = steps // 2
    k = final_height // 2
    return binom_safe(steps, n - k) - binom_safe(steps, n - k - 1)


# -- explicit enumeration (independent oracle, exponential) ---------------------


def enumerate_dyck_shapes(length: int, final_height: int = 0) -> Iterator[str]:
    """All U/D strings of the given length staying >= 0, ending at final_height."""
    def rec(prefix: list[str], h: int, rem: int) -> Iterator[str]:
        if abs(h - final_height) > rem:
            return
        if rem == 0:
            yield "".join(prefix)
            return
        prefix.append("U")
        yield from rec(prefix, h + 1, rem - 1)
        prefix.pop()
        if h >= 1:
            prefix.append("D")
            yield from rec(prefix, h - 1, rem - 1)
            prefix.pop()
    yield from rec([], 0, length)


def _weight_options(family: str, direction: str, h: int) -> list[Weight]:
    opts: list[Weight] = []
    flat_len, rule = FAMILY_RULES[family]
    if direction == "F" and flat_len == 2:
        cand = [Weight(-1, 0, 0)]
    else:
        cand = [
            Weight(sign, ypow, qpow)
            for sign in (1, -1)
            for ypow in (0, 1)
            for qpow in range(0, h + 2)
        ]
    return [w for w in cand if rule(direction, h, w)]


def enumerate_family(family: str, length: int, restricted: bool = False) -> Iterator[WeightedPath]:
    """Materialize every weighted path of a closed family, length in units.

    With restricted=True, paths containing an up-down pair of consecutive
    steps both weighted 1 are skipped (the core-family condition).
    """
    flat_len = FAMILY_RULES[family][0]
    directions = "UDF" if family.startswith(("laguerre", "large", "derangement", "schroder")) else "UD"

    def rec(acc: list[tuple[str, Weight]], h: int, rem: int) -> Iterator[list[tuple[str, Weight]]]:
        if rem == 0:
            if h == 0:
                yield list(acc)
            return
        for d in directions:
            ln = flat_len if d == "F" else 1
            nh = h + _DELTA[d]
            if ln > rem or nh < 0 or nh > rem - ln:
                continue
            for w in _weight_options(family, d, h):
                if (
                    restricted
                    and d == "D"
                    and w.is_unit
                    and acc
                    and acc[-1][0] == "U"
                    and acc[-1][1].is_unit
                ):
                    continue
                acc.append((d, w))
                yield from rec(acc, h + _DELTA[d], rem - ln)
                acc.pop()

    for items in rec([], 0, length):
        yield path_from_steps(family, items)


def family_sum_by_enumeration(family: str, length: int, restricted: bool = False) -> Poly:
    return poly_sum(p.weight() for p in enumerate_family(family, length, restricted))


# -- the secant/tangent path decomposition --------------------------------------


def _maximal_unit_factors(path: WeightedPath) -> list[tuple[int, int]]:
    """Maximal contiguous balanced all-unit-weight Dyck factors of the path.

    A factor [a, b) is balanced, never dips below its starting height, and
    every step in it has weight exactly 1.  Maximal factors are pairwise
    disjoint, so a greedy left-to-right scan that always takes the longest
    factor starting at the current position finds exactly all of them.
    """
    steps = path.steps
    n = len(steps)
    factors: list[tuple[int, int]] = []
    pos = 0
    while pos < n:
        h = 0
        best = -1
        j = pos
        while j < n and steps[j].weight.is_unit:
            h += _DELTA[steps[j].direction]
            j += 1
            if h < 0:
                break
            if h == 0:
                best = j
        if best > pos:
            factors.append((pos, best))
            pos = best
        else:
            pos += 1
    return factors


def penaud_decompose(path: WeightedPath) -> tuple[WeightedPath, WeightedPath]:
    """Split a signed Dyck path into (left factor, restricted core).

    Steps inside maximal all-unit Dyck factors keep their direction in the
    left factor; every other step becomes an up step there.  The core is
    the path of surviving (non-factor) steps with their original weights;
    removed factors are balanced, so surviving steps keep their heights and
    remain admissible in the same family.
    """
    if path.family not in ("secant_core", "tangent_core"):
        raise ValueError("decomposition applies to the signed Dyck families")
    in_factor = [False] * len(path.steps)
    for a, b in _maximal_unit_factors(path):
        for i in range(a, b):
            in_factor[i] = True
    h1_items: list[tuple[str, Weight]] = []
    h2_items: list[tuple[str, Weight]] = []
    for flag, s in zip(in_factor, path.steps):
        if flag:
            h1_items.append((s.direction, UNIT_WEIGHT))
        else:
            h1_items.append(("U", UNIT_WEIGHT))
            h2_items.append((s.direction, s.weight))
    h1 = path_from_steps("left_factor", h1_items)
    h2 = path_from_steps(path.family, h2_items)
    return h1, h2
