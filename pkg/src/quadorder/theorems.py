"""Closed-form case checkers for three parametric families of comparisons.

Each checker answers the same question as the generic decider -- does the
comparison hold for every convex function on [0, 1]? -- but through an
explicit case list over the parameters instead of computing anything.
The three families:

* three interior nodes vs. the integral mean (rule below the mean),
* four nodes including both endpoints vs. the integral mean (rule above),
* a two-node rule vs. a three-node rule with both endpoints (no mean).

The case lists are transcribed verbatim, mixing strict and non-strict
inequalities exactly as stated; `holds` is the disjunction over all
cases (plus the barycenter condition), and the reported case label is
the first satisfied one, for diagnostics only.  Parameters must sit in
the open intervals the case analysis assumes; degenerate values are
rejected here but remain decidable through the generic path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .functionals import (
    Functional,
    HALF,
    ONE,
    UNIFORM,
    as_fraction,
    format_rational,
    make_functional,
)

__all__ = [
    "ParamError",
    "CaseCheck",
    "ThreeNodeLowerParams",
    "FourNodeUpperParams",
    "TwoVsThreeParams",
    "TheoremParams",
    "check_three_node_lower",
    "check_four_node_upper",
    "check_two_vs_three",
    "check_params",
    "functional_pair",
    "params_to_json",
]


class ParamError(ValueError):
    """Parameters violate the family's hypotheses (open intervals, ordering, mass)."""


def _open01(name: str, value: Fraction) -> Fraction:
    if not 0 < value < 1:
        raise ParamError(f"{name} = {value} must lie strictly inside (0, 1)")
    return value


@dataclass(frozen=True)
class CaseCheck:
    """Outcome of a closed-form check.

    holds:   barycenter condition and at least one case satisfied.
    mean_ok: the barycenter condition alone.
    case:    first satisfied case label in statement order, or None.
    """

    holds: bool
    mean_ok: bool
    case: Optional[str]


@dataclass(frozen=True)
class ThreeNodeLowerParams:
    """sum a_i f(alpha_i x + (1-alpha_i) y) <= integral mean, three interior
    nodes with alpha1 > alpha2 > alpha3."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    alpha1: Fraction
    alpha2: Fraction
    alpha3: Fraction

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "a3", "alpha1", "alpha2", "alpha3"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
            _open01(name, getattr(self, name))
        if self.a1 + self.a2 + self.a3 != 1:
            raise ParamError("weights a1 + a2 + a3 must equal 1")
        if not self.alpha1 > self.alpha2 > self.alpha3:
            raise ParamError("need alpha1 > alpha2 > alpha3")


@dataclass(frozen=True)
class FourNodeUpperParams:
    """sum a_i f(alpha_i x + (1-alpha_i) y) >= integral mean, four nodes
    with alpha1 = 1 and alpha4 = 0 pinned to the endpoints."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    alpha2: Fraction
    alpha3: Fraction

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "a3", "a4", "alpha2", "alpha3"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
            _open01(name, getattr(self, name))
        if self.a1 + self.a2 + self.a3 + self.a4 != 1:
            raise ParamError("weights a1 + a2 + a3 + a4 must equal 1")
        if not self.alpha2 > self.alpha3:
            raise ParamError("need 1 > alpha2 > alpha3 > 0")


@dataclass(frozen=True)
class TwoVsThreeParams:
    """a f(alpha1 x + (1-alpha1) y) + (1-a) f(alpha2 x + (1-alpha2) y)
    <= b1 f(x) + b2 f(beta x + (1-beta) y) + b3 f(y)."""

    a: Fraction
    alpha1: Fraction
    alpha2: Fraction
    beta: Fraction
    b1: Fraction
    b2: Fraction
    b3: Fraction

    def __post_init__(self) -> None:
        for name in ("a", "alpha1", "alpha2", "beta", "b1", "b2", "b3"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
            _open01(name, getattr(self, name))
        if self.b1 + self.b2 + self.b3 != 1:
            raise ParamError("weights b1 + b2 + b3 must equal 1")
        if not self.alpha1 > self.alpha2:
            raise ParamError("need alpha1 > alpha2 (distinct left-side nodes)")


TheoremParams = Union[ThreeNodeLowerParams, FourNodeUpperParams, TwoVsThreeParams]


def _first_case(cases: list[tuple[str, bool]]) -> Optional[str]:
    for label, satisfied in cases:
        if satisfied:
            return label
    return None


def check_three_node_lower(p: ThreeNodeLowerParams) -> CaseCheck:
    a1, a2, a3 = p.a1, p.a2, p.a3
    c1, c2, c3 = ONE - p.alpha1, ONE - p.alpha2, ONE - p.alpha3
    mean_ok = a1 * c1 + a2 * c2 + a3 * c3 == HALF
    s12 = a1 + a2
    cases = [
        ("i", a1 <= c1 and s12 >= c3),
        ("ii", a1 >= c2 and s12 >= c3),
        ("iii", a1 <= c1 and s12 <= c2),
        ("iv", a1 <= c1 and c2 < s12 < c3 and 2 * p.alpha3 >= a3),
        ("v", a1 >= c2 and s12 < c3 and 2 * p.alpha3 >= a3),
        ("vi", a1 > c1 and s12 <= c2 and c1 >= a1 / 2),
        ("vii", c1 < a1 < c2 and s12 >= c3 and c1 >= a1 / 2),
        (
            "viii",
            c1 < a1 < c2
            and c2 < s12 < c3
            and c1 >= a1 / 2
            and 2 * a1 * c1 + 2 * a2 * c2 >= s12 * s12,
        ),
    ]
    case = _first_case(cases)
    return CaseCheck(mean_ok and case is not None, mean_ok, case)


def check_four_node_upper(p: FourNodeUpperParams) -> CaseCheck:
    a1, a2, a3, a4 = p.a1, p.a2, p.a3, p.a4
    c2, c3 = ONE - p.alpha2, ONE - p.alpha3
    mean_ok = a2 * c2 + a3 * c3 + a4 == HALF
    s12 = a1 + a2
    s123 = a1 + a2 + a3
    cases = [
        ("i", a1 >= c2 and s12 >= c3),
        ("ii", s12 <= c2 and s123 <= c3),
        ("iii", c2 <= a1 and c3 >= s123),
        ("iv", c2 <= a1 and s12 < c3 < s123 and p.alpha3 <= 2 * a4),
        ("v", c2 >= s12 and s123 > c3 and p.alpha3 <= 2 * a4),
        ("vi", a1 < c2 and s12 >= c3 and 2 * a1 + p.alpha2 >= 1),
        ("vii", a1 < c2 and s12 > c2 and s123 <= c3 and 2 * a1 + p.alpha2 >= 1),
        (
            "viii",
            a1 < c2 < s12
            and s12 < c3 < s123
            and 2 * a1 + p.alpha2 >= 1
            and 2 * a1 * c3 + 2 * a2 * (p.alpha2 - p.alpha3) >= c3 * c3,
        ),
    ]
    case = _first_case(cases)
    return CaseCheck(mean_ok and case is not None, mean_ok, case)


def check_two_vs_three(p: TwoVsThreeParams) -> CaseCheck:
    a, b1, b2, b3 = p.a, p.b1, p.b2, p.b3
    mean_ok = b2 * (ONE - p.beta) + b3 == a * (ONE - p.alpha1) + (ONE - a) * (
        ONE - p.alpha2
    )
    cases = [
        ("i", a <= b1),
        ("ii", a >= b1 + b2),
        ("iii", p.alpha2 >= p.beta),
        (
            "iv",
            b1 < a < b1 + b2
            and p.alpha2 < p.beta
            and (ONE - p.alpha1) * b1 >= (p.alpha1 - p.beta) * (a - b1),
        ),
    ]
    case = _first_case(cases)
    return CaseCheck(mean_ok and case is not None, mean_ok, case)


def check_params(p: TheoremParams) -> CaseCheck:
    if isinstance(p, ThreeNodeLowerParams):
        return check_three_node_lower(p)
    if isinstance(p, FourNodeUpperParams):
        return check_four_node_upper(p)
    if isinstance(p, TwoVsThreeParams):
        return check_two_vs_three(p)
    raise TypeError(f"unknown parameter record {p!r}")


def functional_pair(p: TheoremParams) -> tuple[Functional, Functional]:
    """The pair (A, B) whose convex-order comparison the case checker
    characterizes: holds(p) should coincide with decide(A, B)."""
    if isinstance(p, ThreeNodeLowerParams):
        rule = make_functional(
            [
                (ONE - p.alpha1, p.a1),
                (ONE - p.alpha2, p.a2),
                (ONE - p.alpha3, p.a3),
            ]
        )
        return rule, UNIFORM
    if isinstance(p, FourNodeUpperParams):
        rule = make_functional(
            [
                (Fraction(0), p.a1),
                (ONE - p.alpha2, p.a2),
                (ONE - p.alpha3, p.a3),
                (ONE, p.a4),
            ]
        )
        return UNIFORM, rule
    if isinstance(p, TwoVsThreeParams):
        two = make_functional(
            [(ONE - p.alpha1, p.a), (ONE - p.alpha2, ONE - p.a)]
        )
        three = make_functional(
            [(Fraction(0), p.b1), (ONE - p.beta, p.b2), (ONE, p.b3)]
        )
        return two, three
    raise TypeError(f"unknown parameter record {p!r}")


_KIND_NAMES = {
    ThreeNodeLowerParams: "three-node-lower",
    FourNodeUpperParams: "four-node-upper",
    TwoVsThreeParams: "two-vs-three",
}


def params_to_json(p: TheoremParams) -> dict:
    out: dict = {"family": _KIND_NAMES[type(p)]}
    for name in p.__dataclass_fields__:
        out[name] = format_rational(getattr(p, name))
    return out
