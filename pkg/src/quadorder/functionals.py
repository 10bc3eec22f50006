"""Exact quadrature functionals on [0, 1].

A functional here is a convex combination of finitely many point
evaluations f(t_i) and the integral mean of f over [0, 1].  It is the
expectation operator of a probability measure made of atoms plus a
uniform component, and that measure's distribution function is a
piecewise-linear, right-continuous step/ramp mixture.

All arithmetic in this module is exact rational arithmetic
(fractions.Fraction).  Floats are rejected at the boundary: decisions
downstream hinge on sharp equalities, and a float that "looks like"
9/10 is not 9/10.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "FunctionalError",
    "MassError",
    "DomainError",
    "NegativeWeightError",
    "UnsupportedTestFunction",
    "Rational",
    "as_fraction",
    "parse_rational",
    "format_rational",
    "Hinge",
    "Square",
    "Linear",
    "Constant",
    "TestFunction",
    "Atom",
    "Functional",
    "PLFunction",
    "make_functional",
    "from_paper_convention",
    "cdf",
    "barycenter",
    "evaluate",
    "mix",
    "functional_to_json",
    "functional_from_json",
    "UNIFORM",
    "MIDPOINT",
    "TRAPEZOID",
    "SIMPSON",
    "PRESETS",
]

Rational = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class FunctionalError(ValueError):
    """A functional construction or evaluation contract was violated."""


class MassError(FunctionalError):
    """Total mass (atom weights plus uniform weight) is not 1."""


class DomainError(FunctionalError):
    """A position or hinge parameter lies outside [0, 1]."""


class NegativeWeightError(FunctionalError):
    """A weight is negative."""


class UnsupportedTestFunction(FunctionalError):
    """evaluate() was handed something outside the built-in test family."""


def as_fraction(value: Rational) -> Fraction:
    """Coerce an int, string, or Fraction to an exact Fraction.

    Floats are deliberately rejected: Fraction(0.9) is not 9/10.
    Strings accept "p/q", "p", and exact decimals like "0.9".
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise FunctionalError(f"not a rational value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise FunctionalError(f"cannot parse rational {value!r}: {exc}") from None
    raise FunctionalError(
        f"not an exact rational: {value!r} (floats are rejected; use 'p/q' strings)"
    )


# JSON codec: rationals travel as "p/q" strings (or bare integers on input).
parse_rational = as_fraction


def format_rational(q: Fraction) -> str:
    return str(q)


# ---------------------------------------------------------------------------
# Built-in test functions.  Hinges h_s(t) = max(t - s, 0) are the extreme
# convex directions: together with +/- linear maps they decide the convex
# order, and each has an exact closed-form uniform mean.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hinge:
    """h_s(t) = max(t - s, 0) with s in [0, 1]; uniform mean (1-s)^2 / 2."""

    s: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.s, Fraction):
            object.__setattr__(self, "s", as_fraction(self.s))
        if not ZERO <= self.s <= ONE:
            raise DomainError(f"hinge parameter {self.s} outside [0, 1]")

    def __call__(self, t: Fraction) -> Fraction:
        return max(t - self.s, ZERO)

    def uniform_mean(self) -> Fraction:
        return (ONE - self.s) ** 2 / 2


@dataclass(frozen=True)
class Square:
    """f(t) = t^2; uniform mean 1/3."""

    def __call__(self, t: Fraction) -> Fraction:
        return t * t

    def uniform_mean(self) -> Fraction:
        return Fraction(1, 3)


@dataclass(frozen=True)
class Linear:
    """f(t) = slope*t + intercept; uniform mean slope/2 + intercept."""

    slope: Fraction = ONE
    intercept: Fraction = ZERO

    def __call__(self, t: Fraction) -> Fraction:
        return self.slope * t + self.intercept

    def uniform_mean(self) -> Fraction:
        return self.slope / 2 + self.intercept


@dataclass(frozen=True)
class Constant:
    """f(t) = value; uniform mean value."""

    value: Fraction = ONE

    def __call__(self, t: Fraction) -> Fraction:
        return self.value

    def uniform_mean(self) -> Fraction:
        return self.value


TestFunction = Union[Hinge, Square, Linear, Constant]
_TEST_FAMILY = (Hinge, Square, Linear, Constant)


# ---------------------------------------------------------------------------
# Functionals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    """A point evaluation: weight * f(position)."""

    position: Fraction
    weight: Fraction


@dataclass(frozen=True)
class Functional:
    """Atoms (strictly increasing positions, positive weights) plus a
    uniform component; total mass is exactly 1.

    Build through make_functional / from_paper_convention, which enforce
    the invariants and normalize (merge coincident atoms, drop zeros).
    """

    atoms: tuple[Atom, ...]
    uniform_weight: Fraction

    def positions(self) -> tuple[Fraction, ...]:
        return tuple(a.position for a in self.atoms)

    def mass(self) -> Fraction:
        return sum((a.weight for a in self.atoms), start=ZERO) + self.uniform_weight


def make_functional(
    atoms: Iterable[tuple[Rational, Rational]],
    uniform_weight: Rational = 0,
) -> Functional:
    """Validate and normalize a functional.

    Coincident atom positions are merged, zero weights dropped, atoms
    sorted.  Raises DomainError / NegativeWeightError / MassError.
    """
    uniform = as_fraction(uniform_weight)
    if uniform < 0:
        raise NegativeWeightError(f"uniform weight {uniform} < 0")
    merged: dict[Fraction, Fraction] = {}
    for position, weight in atoms:
        t = as_fraction(position)
        w = as_fraction(weight)
        if not ZERO <= t <= ONE:
            raise DomainError(f"atom position {t} outside [0, 1]")
        if w < 0:
            raise NegativeWeightError(f"atom weight {w} < 0 at position {t}")
        merged[t] = merged.get(t, ZERO) + w
    total = sum(merged.values(), start=ZERO) + uniform
    if total != 1:
        raise MassError(f"total mass {total} != 1")
    cleaned = tuple(
        Atom(t, w) for t, w in sorted(merged.items()) if w != 0
    )
    return Functional(cleaned, uniform)


def from_paper_convention(
    pairs: Iterable[tuple[Rational, Rational]],
    uniform_weight: Rational = 0,
) -> Functional:
    """Build a functional from (weight, coefficient) pairs.

    A pair (a, alpha) stands for the term a * f(alpha*x + (1-alpha)*y);
    on the canonical interval (x=0, y=1) that is an atom of weight a at
    position 1 - alpha.
    """
    mapped = []
    for weight, alpha in pairs:
        c = as_fraction(alpha)
        if not ZERO <= c <= ONE:
            raise DomainError(f"coefficient {c} outside [0, 1]")
        mapped.append((ONE - c, as_fraction(weight)))
    return make_functional(mapped, uniform_weight)


def barycenter(func: Functional) -> Fraction:
    """First moment: sum w_i t_i + uniform/2."""
    return (
        sum((a.weight * a.position for a in func.atoms), start=ZERO)
        + func.uniform_weight * HALF
    )


def evaluate(func: Functional, f: TestFunction) -> Fraction:
    """Apply the functional to a built-in test function, exactly."""
    if not isinstance(f, _TEST_FAMILY):
        raise UnsupportedTestFunction(
            f"{f!r} is not in the built-in test family (hinge/square/linear/constant)"
        )
    total = sum((a.weight * f(a.position) for a in func.atoms), start=ZERO)
    return total + func.uniform_weight * f.uniform_mean()


def mix(a: Functional, b: Functional, lam: Rational) -> Functional:
    """Convex mixture lam*a + (1-lam)*b, again a valid functional."""
    lam = as_fraction(lam)
    if not ZERO <= lam <= ONE:
        raise DomainError(f"mixture coefficient {lam} outside [0, 1]")
    combined = [(atom.position, lam * atom.weight) for atom in a.atoms]
    combined += [(atom.position, (ONE - lam) * atom.weight) for atom in b.atoms]
    uniform = lam * a.uniform_weight + (ONE - lam) * b.uniform_weight
    return make_functional(combined, uniform)


# ---------------------------------------------------------------------------
# Piecewise-linear functions (distribution functions and their differences)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PLFunction:
    """Piecewise-affine function on [0, 1], right-continuous at breakpoints.

    breakpoints: strictly increasing, starting at 0 and ending at 1.
    values[i]:   the value at breakpoints[i] (i.e. the limit from the right).
    slopes[i]:   the slope on the open segment (breakpoints[i], breakpoints[i+1]).

    The left limit at breakpoints[i+1] may differ from values[i+1]
    (a jump); jumps at interior points are how atom masses show up in
    distribution functions.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    slopes: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        bps = self.breakpoints
        if len(bps) < 2 or bps[0] != 0 or bps[-1] != 1:
            raise FunctionalError("breakpoints must run from 0 to 1")
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            raise FunctionalError("breakpoints must be strictly increasing")
        if len(self.values) != len(bps) or len(self.slopes) != len(bps) - 1:
            raise FunctionalError("values/slopes lengths do not match breakpoints")

    def _segment_index(self, t: Fraction) -> int:
        # Index i with breakpoints[i] <= t < breakpoints[i+1] (t=1 maps to the
        # last segment).
        i = bisect.bisect_right(self.breakpoints, t) - 1
        return min(i, len(self.slopes) - 1)

    def value(self, t: Rational) -> Fraction:
        """Exact value at t (right-continuous at breakpoints)."""
        t = as_fraction(t)
        if not ZERO <= t <= ONE:
            raise DomainError(f"{t} outside [0, 1]")
        i = bisect.bisect_right(self.breakpoints, t) - 1
        if self.breakpoints[i] == t:
            return self.values[i]
        return self.values[i] + self.slopes[i] * (t - self.breakpoints[i])

    def left_limit(self, t: Rational) -> Fraction:
        """Limit from the left at t in (0, 1]."""
        t = as_fraction(t)
        if not ZERO < t <= ONE:
            raise DomainError(f"left limit needs t in (0, 1], got {t}")
        i = bisect.bisect_left(self.breakpoints, t) - 1
        return self.values[i] + self.slopes[i] * (t - self.breakpoints[i])

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values) and all(m == 0 for m in self.slopes)

    def is_nondecreasing(self) -> bool:
        if any(m < 0 for m in self.slopes):
            return False
        if self.values[0] < 0:
            return False
        for i in range(1, len(self.breakpoints)):
            if self.values[i] < self.left_limit(self.breakpoints[i]):
                return False
        return True

    def __sub__(self, other: "PLFunction") -> "PLFunction":
        """Pointwise difference on the merged breakpoint set."""
        points = sorted(set(self.breakpoints) | set(other.breakpoints))
        values = tuple(self.value(p) - other.value(p) for p in points)
        slopes = []
        for left in points[:-1]:
            i = self._segment_index(left)
            j = other._segment_index(left)
            slopes.append(self.slopes[i] - other.slopes[j])
        return PLFunction(tuple(points), values, tuple(slopes))


def cdf(func: Functional) -> PLFunction:
    """Right-continuous distribution function of the functional's measure.

    Jump of atom.weight at each atom position, slope uniform_weight in
    between, value 1 at t = 1.
    """
    points = sorted({ZERO, ONE, *(a.position for a in func.atoms)})
    weight_at = {a.position: a.weight for a in func.atoms}
    values = []
    acc = ZERO
    for p in points:
        acc += weight_at.get(p, ZERO)
        values.append(acc + func.uniform_weight * p)
    slopes = tuple(func.uniform_weight for _ in points[:-1])
    return PLFunction(tuple(points), tuple(values), slopes)


# ---------------------------------------------------------------------------
# JSON form
# ---------------------------------------------------------------------------


def functional_to_json(func: Functional) -> dict:
    return {
        "atoms": [
            {"t": format_rational(a.position), "w": format_rational(a.weight)}
            for a in func.atoms
        ],
        "uniform": format_rational(func.uniform_weight),
    }


def functional_from_json(obj: object) -> Functional:
    """Parse {"atoms": [{"t","w"},...], "uniform"} or the paper-convention
    form {"pairs": [{"alpha","a"},...], "uniform"}."""
    if not isinstance(obj, dict):
        raise FunctionalError(f"functional JSON must be an object, got {type(obj).__name__}")
    uniform = obj.get("uniform", 0)
    if "atoms" in obj and "pairs" in obj:
        raise FunctionalError("functional JSON cannot carry both 'atoms' and 'pairs'")
    if "atoms" in obj:
        atoms = [(entry["t"], entry["w"]) for entry in obj["atoms"]]
        return make_functional(atoms, uniform)
    if "pairs" in obj:
        pairs = [(entry["a"], entry["alpha"]) for entry in obj["pairs"]]
        return from_paper_convention(pairs, uniform)
    raise FunctionalError("functional JSON needs an 'atoms' or 'pairs' key")


# ---------------------------------------------------------------------------
# Classic rules
# ---------------------------------------------------------------------------

UNIFORM = make_functional([], 1)
MIDPOINT = make_functional([(HALF, 1)])
TRAPEZOID = make_functional([(0, HALF), (1, HALF)])
SIMPSON = make_functional([(0, Fraction(1, 6)), (HALF, Fraction(2, 3)), (1, Fraction(1, 6))])

PRESETS: dict[str, Functional] = {
    "uniform": UNIFORM,
    "midpoint": MIDPOINT,
    "trapezoid": TRAPEZOID,
    "simpson": SIMPSON,
}
