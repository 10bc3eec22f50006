"""Command-line front end.

Subcommands:

* check      decide one pair of functionals (presets, JSON, or files)
* threshold  locate the exact parameter boundary of a holds-region
* scan       tabulate holds/fails over a parameter grid as CSV
* agree      fuzz the closed-form case checkers against the decider and
             the hinge-grid oracle, emitting disagreement diagnostics

All parameter arithmetic is rational end to end; no float ever enters a
decision.  Output bytes are a deterministic function of (argv, input
files, seed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Callable, Optional, Sequence

from .functionals import (
    Functional,
    FunctionalError,
    HALF,
    ONE,
    PRESETS,
    UNIFORM,
    ZERO,
    as_fraction,
    format_rational,
    functional_from_json,
    make_functional,
)
from .oracle import oracle_decide, refine_grid
from .ordering import (
    FAILS,
    Verdict,
    decide,
    verdict_to_json,
    verify_witness,
)
from .theorems import (
    CaseCheck,
    FourNodeUpperParams,
    ParamError,
    TheoremParams,
    ThreeNodeLowerParams,
    TwoVsThreeParams,
    check_params,
    functional_pair,
    params_to_json,
)

__all__ = [
    "CLIError",
    "NonMonotoneRegion",
    "ScanSpec",
    "FAMILIES",
    "THEOREM_IDS",
    "eval_rational_expr",
    "simplest_between",
    "run_threshold",
    "run_scan",
    "run_agreement",
    "main",
]


class CLIError(ValueError):
    """Bad command-line input; maps to exit code 2."""


class NonMonotoneRegion(CLIError):
    """holds/fails is not monotone along the sweep, so no threshold exists."""


# ---------------------------------------------------------------------------
# Rational expression evaluation (template fields, --fix/--sweep values)
# ---------------------------------------------------------------------------


def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit() or ch == ".":
            j = i
            while j < len(text) and (text[j].isdigit() or text[j] == "."):
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise CLIError(f"bad character {ch!r} in expression {text!r}")
    return tokens


def eval_rational_expr(text: str, env: Optional[dict[str, Fraction]] = None) -> Fraction:
    """Evaluate +,-,*,/ over rationals and named parameters, exactly."""
    env = env or {}
    tokens = _tokenize(str(text))
    pos = 0

    def peek() -> Optional[str]:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> str:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_expr() -> Fraction:
        value = parse_term()
        while peek() in ("+", "-"):
            if take() == "+":
                value = value + parse_term()
            else:
                value = value - parse_term()
        return value

    def parse_term() -> Fraction:
        value = parse_factor()
        while peek() in ("*", "/"):
            if take() == "*":
                value = value * parse_factor()
            else:
                divisor = parse_factor()
                if divisor == 0:
                    raise CLIError(f"division by zero in {text!r}")
                value = value / divisor
        return value

    def parse_factor() -> Fraction:
        tok = peek()
        if tok is None:
            raise CLIError(f"unexpected end of expression {text!r}")
        if tok == "-":
            take()
            return -parse_factor()
        if tok == "+":
            take()
            return parse_factor()
        if tok == "(":
            take()
            value = parse_expr()
            if peek() != ")":
                raise CLIError(f"missing ')' in expression {text!r}")
            take()
            return value
        take()
        if tok[0].isdigit() or tok[0] == ".":
            try:
                return Fraction(tok)
            except ValueError:
                raise CLIError(f"bad number {tok!r} in {text!r}") from None
        if tok in env:
            return env[tok]
        raise CLIError(f"unknown name {tok!r} in expression {text!r}")

    value = parse_expr()
    if pos != len(tokens):
        raise CLIError(f"trailing junk in expression {text!r}")
    return value


# ---------------------------------------------------------------------------
# Parametric families for scan/threshold
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Range:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, v: Fraction) -> bool:
        if v < self.lo or v > self.hi:
            return False
        if v == self.lo and not self.lo_closed:
            return False
        if v == self.hi and not self.hi_closed:
            return False
        return True

    def describe(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


@dataclass(frozen=True)
class Family:
    """A named one-or-two parameter slice through the comparison space."""

    name: str
    param_order: tuple[str, ...]
    defaults: dict[str, Fraction]
    ranges: dict[str, Range]
    build: Callable[[dict[str, Fraction]], tuple[Functional, Functional]]
    label: Callable[[dict[str, Fraction]], Optional[TheoremParams]]
    # Direction along which holds eventually gives way to fails, used only
    # to report a range cap when every grid point holds.
    fail_toward: dict[str, str]


def _build_symmetric3(p: dict[str, Fraction]) -> tuple[Functional, Functional]:
    a, alpha = p["a"], p["alpha"]
    rule = make_functional([(ONE - alpha, a), (HALF, 1 - 2 * a), (alpha, a)])
    return rule, UNIFORM


def _label_symmetric3(p: dict[str, Fraction]) -> Optional[TheoremParams]:
    return ThreeNodeLowerParams(
        p["a"], 1 - 2 * p["a"], p["a"], p["alpha"], HALF, ONE - p["alpha"]
    )


def _build_endpoint4(p: dict[str, Fraction]) -> tuple[Functional, Functional]:
    a, alpha = p["a"], p["alpha"]
    b = HALF - a
    rule = make_functional([(ZERO, a), (ONE - alpha, b), (alpha, b), (ONE, a)])
    return UNIFORM, rule


def _label_endpoint4(p: dict[str, Fraction]) -> Optional[TheoremParams]:
    b = HALF - p["a"]
    return FourNodeUpperParams(p["a"], b, b, p["a"], p["alpha"], ONE - p["alpha"])


def _build_two_vs_three(p: dict[str, Fraction]) -> tuple[Functional, Functional]:
    alpha = p["alpha"]
    two = make_functional([(ONE - alpha, HALF), (alpha, HALF)])
    three = make_functional([(ZERO, p["b1"]), (HALF, p["b2"]), (ONE, p["b3"])])
    return two, three


def _label_two_vs_three(p: dict[str, Fraction]) -> Optional[TheoremParams]:
    return TwoVsThreeParams(
        HALF, p["alpha"], ONE - p["alpha"], HALF, p["b1"], p["b2"], p["b3"]
    )


def _build_bp1(p: dict[str, Fraction]) -> tuple[Functional, Functional]:
    x = p["x"]
    quarter = Fraction(1, 4)
    rule = make_functional(
        [(ZERO, quarter), (x, quarter), (ONE - x, quarter), (ONE, quarter)]
    )
    return UNIFORM, rule


def _label_bp1(p: dict[str, Fraction]) -> Optional[TheoremParams]:
    x = p["x"]
    if not ZERO < x < HALF:
        return None  # endpoints merge atoms; only the generic path applies
    quarter = Fraction(1, 4)
    return FourNodeUpperParams(quarter, quarter, quarter, quarter, ONE - x, x)


FAMILIES: dict[str, Family] = {
    "symmetric3": Family(
        name="symmetric3",
        param_order=("a", "alpha"),
        defaults={"a": Fraction(1, 4), "alpha": Fraction(3, 4)},
        ranges={
            "a": Range(ZERO, HALF),
            "alpha": Range(HALF, ONE),
        },
        build=_build_symmetric3,
        label=_label_symmetric3,
        fail_toward={"a": "high", "alpha": "high"},
    ),
    "endpoint4": Family(
        name="endpoint4",
        param_order=("a", "alpha"),
        defaults={"a": Fraction(1, 4), "alpha": Fraction(3, 4)},
        ranges={
            "a": Range(ZERO, HALF),
            "alpha": Range(HALF, ONE),
        },
        build=_build_endpoint4,
        label=_label_endpoint4,
        fail_toward={"a": "low", "alpha": "low"},
    ),
    "twoVsThree": Family(
        name="twoVsThree",
        param_order=("alpha", "b1", "b2", "b3"),
        defaults={
            "alpha": Fraction(3, 5),
            "b1": Fraction(1, 6),
            "b2": Fraction(2, 3),
            "b3": Fraction(1, 6),
        },
        ranges={
            "alpha": Range(HALF, ONE),
            "b1": Range(ZERO, ONE),
            "b2": Range(ZERO, ONE),
            "b3": Range(ZERO, ONE),
        },
        build=_build_two_vs_three,
        label=_label_two_vs_three,
        fail_toward={"alpha": "high"},
    ),
    "bp1": Family(
        name="bp1",
        param_order=("x",),
        defaults={"x": Fraction(1, 4)},
        ranges={"x": Range(ZERO, HALF, lo_closed=True, hi_closed=True)},
        build=_build_bp1,
        label=_label_bp1,
        fail_toward={"x": "high"},
    ),
}


def _validate_family_params(family: Family, params: dict[str, Fraction]) -> None:
    for name, value in params.items():
        rng = family.ranges.get(name)
        if rng is None:
            raise CLIError(f"family {family.name} has no parameter {name!r}")
        if not rng.contains(value):
            raise CLIError(
                f"{name} = {value} outside the valid range {rng.describe()} "
                f"for family {family.name}"
            )
    if family.name == "twoVsThree":
        if params["b1"] + params["b2"] + params["b3"] != 1:
            raise CLIError("twoVsThree weights b1 + b2 + b3 must equal 1")


def _case_label(family: Family, params: dict[str, Fraction]) -> Optional[CaseCheck]:
    try:
        theorem_params = family.label(params)
    except ParamError:
        return None
    if theorem_params is None:
        return None
    return check_params(theorem_params)


@dataclass(frozen=True)
class ScanSpec:
    """A sweep of one parameter over a rational grid, the rest fixed."""

    family: Family
    sweep: str
    start: Fraction
    stop: Fraction
    step: Fraction
    fixed: dict[str, Fraction]

    def grid(self) -> list[Fraction]:
        values = []
        v = self.start
        while v <= self.stop:
            values.append(v)
            v += self.step
        return values

    def params_at(self, value: Fraction) -> dict[str, Fraction]:
        params = dict(self.fixed)
        params[self.sweep] = value
        return params


def _make_scan_spec(
    family: Family, sweep_arg: str, fix_args: Sequence[str]
) -> ScanSpec:
    if "=" not in sweep_arg:
        raise CLIError("--sweep must look like name=start:stop:step")
    name, _, grid_text = sweep_arg.partition("=")
    name = name.strip()
    parts = grid_text.split(":")
    if len(parts) != 3:
        raise CLIError("--sweep must look like name=start:stop:step")
    start, stop, step = (eval_rational_expr(part) for part in parts)
    if step <= 0:
        raise CLIError(f"sweep step must be positive, got {step}")
    if stop < start:
        raise CLIError(f"sweep stop {stop} is below start {start}")
    fixed = dict(family.defaults)
    for fix in fix_args:
        if "=" not in fix:
            raise CLIError("--fix must look like name=value")
        key, _, value_text = fix.partition("=")
        fixed[key.strip()] = eval_rational_expr(value_text)
    fixed.pop(name, None)
    spec = ScanSpec(family, name, start, stop, step, fixed)
    grid = spec.grid()
    if not grid:
        raise CLIError("sweep grid is empty")
    for value in grid:
        if family.ranges:
            _validate_family_params(family, spec.params_at(value))
        else:
            # custom family: building each grid point surfaces mass and
            # domain violations instead of declared ranges
            family.build(spec.params_at(value))
    return spec


# ---------------------------------------------------------------------------
# Custom family: functional templates with parameter expressions
# ---------------------------------------------------------------------------


def _load_json_or_file(text: str) -> object:
    raw = text
    if not text.lstrip().startswith("{"):
        try:
            with open(text, "r", encoding="utf-8") as handle:
                raw = handle.read()
        except OSError as exc:
            raise CLIError(f"cannot read {text!r}: {exc}") from None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CLIError(f"bad JSON in {text!r}: {exc}") from None


def _instantiate_template(obj: object, env: dict[str, Fraction]) -> Functional:
    if not isinstance(obj, dict):
        raise CLIError("functional template must be a JSON object")
    resolved: dict = {"uniform": format_rational(eval_rational_expr(obj.get("uniform", "0"), env))}
    if "atoms" in obj:
        resolved["atoms"] = [
            {
                "t": format_rational(eval_rational_expr(entry["t"], env)),
                "w": format_rational(eval_rational_expr(entry["w"], env)),
            }
            for entry in obj["atoms"]
        ]
    elif "pairs" in obj:
        resolved["pairs"] = [
            {
                "alpha": format_rational(eval_rational_expr(entry["alpha"], env)),
                "a": format_rational(eval_rational_expr(entry["a"], env)),
            }
            for entry in obj["pairs"]
        ]
    else:
        raise CLIError("functional template needs an 'atoms' or 'pairs' key")
    return functional_from_json(resolved)


def _make_custom_family(lhs_text: str, rhs_text: str) -> Family:
    lhs_template = _load_json_or_file(lhs_text)
    rhs_template = _load_json_or_file(rhs_text)

    def build(params: dict[str, Fraction]) -> tuple[Functional, Functional]:
        return (
            _instantiate_template(lhs_template, params),
            _instantiate_template(rhs_template, params),
        )

    return Family(
        name="custom",
        param_order=(),
        defaults={},
        ranges={},
        build=build,
        label=lambda params: None,
        fail_toward={},
    )


def _resolve_family(args: argparse.Namespace) -> Family:
    if args.family == "custom":
        if not (args.lhs and args.rhs):
            raise CLIError("family custom needs --lhs and --rhs templates")
        return _make_custom_family(args.lhs, args.rhs)
    try:
        return FAMILIES[args.family]
    except KeyError:
        raise CLIError(f"unknown family {args.family!r}") from None


# ---------------------------------------------------------------------------
# Threshold search
# ---------------------------------------------------------------------------


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The smallest-denominator rational in the closed interval [lo, hi]
    (ties broken toward zero), found by continued-fraction descent."""
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    if lo == hi:
        return lo
    if lo <= 0 <= hi:
        return ZERO
    if hi < 0:
        return -simplest_between(-hi, -lo)
    n = ceil(lo)
    if n <= hi:
        return Fraction(n)
    f = floor(lo)
    sub = simplest_between(1 / (hi - f), 1 / (lo - f))
    return f + 1 / sub


def _holds_at(family: Family, params: dict[str, Fraction]) -> bool:
    a, b = family.build(params)
    return decide(a, b).holds


def run_threshold(
    spec: ScanSpec, max_denominator: int = 10**6
) -> dict:
    """Exact boundary of the holds-region along the sweep.

    Scans the grid, checks monotonicity, brackets the switch (probing
    between the grid edge and the valid-range bound when every grid
    point holds), then refines the bracket by rational bisection until
    at most one rational with denominator <= max_denominator fits,
    takes that rational, and confirms it against fresh probes on both
    sides.
    """
    family = spec.family
    grid = spec.grid()
    flags = [_holds_at(family, spec.params_at(v)) for v in grid]
    switches = [i for i in range(len(flags) - 1) if flags[i] != flags[i + 1]]
    if len(switches) > 1:
        raise NonMonotoneRegion(
            f"holds/fails switches more than once along {spec.sweep}: "
            f"{['H' if f else 'F' for f in flags]}"
        )

    result = {
        "family": family.name,
        "sweep": spec.sweep,
        "fixed": {k: format_rational(v) for k, v in sorted(spec.fixed.items())},
        "grid": {
            "start": format_rational(spec.start),
            "stop": format_rational(spec.stop),
            "step": format_rational(spec.step),
        },
    }

    def holds(v: Fraction) -> bool:
        return _holds_at(family, spec.params_at(v))

    def refine(lo: Fraction, hi: Fraction, direction: str) -> dict:
        # Invariant: the holds side is lo for holds_below, hi for holds_above.
        # Shrink until [lo, hi] contains at most one rational with denominator
        # <= max_denominator (two distinct p/q, r/s differ by >= 1/(q*s)).
        resolution = Fraction(1, 2 * max_denominator * max_denominator)
        while hi - lo > resolution:
            mid = (lo + hi) / 2
            if holds(mid) == (direction == "holds_below"):
                lo = mid
            else:
                hi = mid
        candidate = simplest_between(lo, hi)
        exact = candidate.denominator <= max_denominator
        if not exact:
            candidate = lo if direction == "holds_below" else hi
        attained = holds(candidate)
        # Confirm the boundary with fresh probes strictly on each side.
        before, after = (lo + candidate) / 2, (candidate + hi) / 2
        if direction == "holds_below":
            ok_before = before == candidate or holds(before)
            ok_after = after == candidate or not holds(after)
            consistent = ok_after if attained else ok_before
        else:
            ok_before = before == candidate or not holds(before)
            ok_after = after == candidate or holds(after)
            consistent = ok_before if attained else ok_after
        if not consistent:
            raise NonMonotoneRegion(
                f"holds-region is not monotone inside the bracket around {candidate}"
            )
        return {
            "direction": direction,
            "threshold": format_rational(candidate),
            "attained": attained,
            "exact": exact,
            "basis": "refined",
        }

    if switches:
        i = switches[0]
        direction = "holds_below" if flags[i] else "holds_above"
        result.update(refine(grid[i], grid[i + 1], direction))
        return result

    if not any(flags):
        raise NonMonotoneRegion(
            f"no grid point holds; nothing to bracket along {spec.sweep}"
        )
    # Every grid point holds.  Probe between the grid edge and the
    # valid-range bound: any boundary representable within the denominator
    # limit lies at least 1/(max_denominator * bound.denominator) inside
    # the bound, so one probe either brackets it or rules it out.
    toward = family.fail_toward.get(spec.sweep)
    if toward is None:
        raise NonMonotoneRegion(
            f"every grid point holds and family {family.name!r} declares no "
            f"fail direction for {spec.sweep!r}; widen the grid"
        )
    rng = family.ranges[spec.sweep]
    bound = rng.hi if toward == "high" else rng.lo
    closed = rng.hi_closed if toward == "high" else rng.lo_closed
    direction = "holds_below" if toward == "high" else "holds_above"
    if closed and holds(bound):
        result.update(
            direction=direction,
            threshold=format_rational(bound),
            attained=True,
            exact=True,
            basis="range-cap",
        )
        return result
    edge = grid[-1] if toward == "high" else grid[0]
    margin = Fraction(1, 2 * max_denominator * bound.denominator)
    probe = bound - margin if toward == "high" else bound + margin
    if not (min(edge, bound) < probe < max(edge, bound)):
        probe = (edge + bound) / 2
    if holds(probe):
        # No failing point with denominator <= max_denominator below the
        # bound: the holds-region runs up to the (open) range bound.
        result.update(
            direction=direction,
            threshold=format_rational(bound),
            attained=False,
            exact=True,
            basis="range-cap",
        )
        return result
    if toward == "high":
        result.update(refine(edge, probe, direction))
    else:
        result.update(refine(probe, edge, direction))
    return result


# ---------------------------------------------------------------------------
# Scan
# ---------------------------------------------------------------------------


def run_scan(spec: ScanSpec) -> tuple[list[str], list[list[str]]]:
    """One row per grid point: parameters, holds, case label, witness s."""
    family = spec.family
    columns = list(family.param_order) or [spec.sweep, *sorted(spec.fixed)]
    header = columns + ["holds", "case", "witness_s"]
    rows = []
    for value in spec.grid():
        params = spec.params_at(value)
        a, b = family.build(params)
        verdict = decide(a, b)
        check = _case_label(family, params) if family.param_order else None
        witness_s = ""
        if verdict.outcome == FAILS and hasattr(verdict.witness, "s"):
            witness_s = format_rational(verdict.witness.s)
        row = [format_rational(params[c]) for c in columns]
        row += [
            "true" if verdict.holds else "false",
            check.case or "" if check else "",
            witness_s,
        ]
        rows.append(row)
    return header, rows


# ---------------------------------------------------------------------------
# Agreement fuzzing: case checkers vs. decider vs. oracle
# ---------------------------------------------------------------------------

THEOREM_IDS = ("three-node-lower", "four-node-upper", "two-vs-three")

_DENOMINATORS = (8, 9, 10, 12, 16, 18, 20, 24, 30, 32, 40, 48, 60)


def _rand_fraction(
    rng: random.Random, lo: Fraction, hi: Fraction
) -> Optional[Fraction]:
    """A random rational strictly inside (lo, hi), or None if the drawn
    denominator has no lattice point there."""
    den = rng.choice(_DENOMINATORS)
    # floor/ceil of lo*den and hi*den in integer arithmetic
    kmin = lo.numerator * den // lo.denominator + 1
    kmax = -((-hi.numerator * den) // hi.denominator) - 1
    if kmin > kmax:
        return None
    return Fraction(rng.randint(kmin, kmax), den)


def _sample_three_node_lower(rng: random.Random) -> ThreeNodeLowerParams:
    # The barycenter condition needs 1-alpha1 < 1/2 < 1-alpha3; with the
    # alphas drawn, solving it with the mass constraint pins a2 and a3 in
    # terms of a1, and a2 > 0 caps a1 below (1/2-alpha3)/(alpha1-alpha3).
    while True:
        alpha1 = _rand_fraction(rng, HALF, ONE)
        alpha3 = _rand_fraction(rng, ZERO, HALF)
        if alpha1 is None or alpha3 is None:
            continue
        alpha2 = _rand_fraction(rng, alpha3, alpha1)
        if alpha2 is None:
            continue
        a1 = _rand_fraction(rng, ZERO, min(ONE, (HALF - alpha3) / (alpha1 - alpha3)))
        if a1 is None:
            continue
        a2 = (HALF - a1 * (1 - alpha1) - (1 - a1) * (1 - alpha3)) / (alpha3 - alpha2)
        a3 = 1 - a1 - a2
        if 0 < a2 < 1 and 0 < a3 < 1:
            return ThreeNodeLowerParams(a1, a2, a3, alpha1, alpha2, alpha3)


def _sample_four_node_upper(rng: random.Random) -> FourNodeUpperParams:
    # a3 = (1/2 - a1 - a2*alpha2)/alpha3 must be positive, which caps a1
    # below 1/2 and a2 below (1/2 - a1)/alpha2.
    while True:
        alpha2 = _rand_fraction(rng, ZERO, ONE)
        if alpha2 is None:
            continue
        alpha3 = _rand_fraction(rng, ZERO, alpha2)
        a1 = _rand_fraction(rng, ZERO, HALF)
        if alpha3 is None or a1 is None:
            continue
        a2 = _rand_fraction(rng, ZERO, min(1 - a1, (HALF - a1) / alpha2))
        if a2 is None:
            continue
        a3 = (HALF - a1 - a2 * alpha2) / alpha3
        a4 = 1 - a1 - a2 - a3
        if 0 < a3 < 1 and 0 < a4 < 1:
            return FourNodeUpperParams(a1, a2, a3, a4, alpha2, alpha3)


def _sample_two_vs_three(rng: random.Random) -> TwoVsThreeParams:
    # With the left side and beta drawn, the shared barycenter M pins
    # b3 = M - b2*(1-beta); b3 > 0 and b1 > 0 together cap b2 below
    # min(M/(1-beta), (1-M)/beta).
    while True:
        alpha1 = _rand_fraction(rng, ZERO, ONE)
        if alpha1 is None:
            continue
        alpha2 = _rand_fraction(rng, ZERO, alpha1)
        beta = _rand_fraction(rng, ZERO, ONE)
        a = _rand_fraction(rng, ZERO, ONE)
        if None in (alpha2, beta, a):
            continue
        mean = a * (1 - alpha1) + (1 - a) * (1 - alpha2)
        b2 = _rand_fraction(rng, ZERO, min(ONE, mean / (1 - beta), (1 - mean) / beta))
        if b2 is None:
            continue
        b3 = mean - b2 * (1 - beta)
        b1 = 1 - b2 - b3
        if 0 < b1 < 1 and 0 < b3 < 1:
            return TwoVsThreeParams(a, alpha1, alpha2, beta, b1, b2, b3)


_SAMPLERS: dict[str, Callable[[random.Random], TheoremParams]] = {
    "three-node-lower": _sample_three_node_lower,
    "four-node-upper": _sample_four_node_upper,
    "two-vs-three": _sample_two_vs_three,
}


@dataclass
class AgreementSummary:
    theorem: str
    samples: int
    seed: int
    holds_count: int
    fails_count: int
    disagreements: list[dict]

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "samples": self.samples,
            "seed": self.seed,
            "holds": self.holds_count,
            "fails": self.fails_count,
            "disagreements": len(self.disagreements),
        }


def _disagreement_record(
    params: TheoremParams,
    check: CaseCheck,
    verdict: Verdict,
    oracle_clean: bool,
    a: Functional,
    b: Functional,
) -> dict:
    """Full diagnostic for a checker/decider/oracle mismatch.

    The decider's witness is re-verified by direct evaluation, so the
    record itself proves which side is right: a verified witness means
    the comparison truly fails no matter what the case list says; a
    Holds verdict confirmed by a clean oracle pass over the structural
    grid means it truly holds.
    """
    diagnostic = decide(a, b, diagnose=True)
    witness_ok = verify_witness(a, b, diagnostic)
    return {
        "params": params_to_json(params),
        "checker": {"holds": check.holds, "mean_ok": check.mean_ok, "case": check.case},
        "decider": verdict_to_json(diagnostic, diagnose=True),
        "oracle_clean": oracle_clean,
        "witness_verified": witness_ok,
        "adjudication": "fails" if diagnostic.outcome == FAILS and witness_ok else "holds",
    }


def run_agreement(theorem: str, samples: int, seed: int) -> AgreementSummary:
    """Draw parameter tuples satisfying the family hypotheses plus the
    barycenter condition, and compare checker vs. decider vs. oracle."""
    if theorem not in _SAMPLERS:
        raise CLIError(f"unknown theorem id {theorem!r}; pick from {THEOREM_IDS}")
    if samples <= 0:
        raise CLIError("samples must be positive")
    rng = random.Random(seed)
    sampler = _SAMPLERS[theorem]
    holds_count = fails_count = 0
    disagreements = []
    for _ in range(samples):
        params = sampler(rng)
        check = check_params(params)
        a, b = functional_pair(params)
        verdict = decide(a, b)
        report = oracle_decide(a, b, refine_grid(a, b))
        oracle_clean = report.max_violation == 0
        if verdict.holds:
            holds_count += 1
        else:
            fails_count += 1
        if not (check.mean_ok and check.holds == verdict.holds == oracle_clean):
            disagreements.append(
                _disagreement_record(params, check, verdict, oracle_clean, a, b)
            )
    return AgreementSummary(theorem, samples, seed, holds_count, fails_count, disagreements)


# ---------------------------------------------------------------------------
# Input handling for check
# ---------------------------------------------------------------------------


def _rescale_positions(obj: dict, interval: tuple[Fraction, Fraction]) -> dict:
    """Map atom positions from [x, y] to the canonical [0, 1].

    Paper-convention pairs carry coefficients, not positions, and are
    interval-free already.
    """
    x, y = interval
    if "atoms" not in obj:
        return obj
    width = y - x
    rescaled = dict(obj)
    rescaled["atoms"] = [
        {
            "t": format_rational((as_fraction(entry["t"]) - x) / width),
            "w": entry["w"],
        }
        for entry in obj["atoms"]
    ]
    return rescaled


def _load_functional(
    text: str,
    paper_convention: bool,
    interval: Optional[tuple[Fraction, Fraction]],
) -> Functional:
    if text in PRESETS:
        return PRESETS[text]
    obj = _load_json_or_file(text)
    if not isinstance(obj, dict):
        raise CLIError(f"functional JSON must be an object, got {obj!r}")
    if paper_convention and "pairs" not in obj:
        raise CLIError("--paper-convention expects {'pairs': [...]} input")
    if interval is not None:
        obj = _rescale_positions(obj, interval)
    try:
        return functional_from_json(obj)
    except KeyError as exc:
        raise CLIError(f"functional JSON missing key {exc}") from None


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_check(args: argparse.Namespace) -> int:
    lhs_text = args.lhs_flag or args.lhs
    rhs_text = args.rhs_flag or args.rhs
    if not lhs_text or not rhs_text:
        raise CLIError("check needs two functionals (positional or --lhs/--rhs)")
    interval = None
    if args.interval:
        x, y = (eval_rational_expr(v) for v in args.interval)
        if x >= y:
            raise CLIError(f"--interval needs x < y, got {x} {y}")
        interval = (x, y)
    lhs = _load_functional(lhs_text, args.paper_convention, interval)
    rhs = _load_functional(rhs_text, args.paper_convention, interval)
    verdict = decide(lhs, rhs, diagnose=args.diagnose)
    _emit(json.dumps(verdict_to_json(verdict, diagnose=args.diagnose)) + "\n", args.out)
    return 0 if verdict.holds else 1


def _cmd_threshold(args: argparse.Namespace) -> int:
    family = _resolve_family(args)
    if family.name == "custom":
        raise CLIError("threshold needs a named family with declared ranges")
    spec = _make_scan_spec(family, args.sweep, args.fix)
    result = run_threshold(spec, max_denominator=args.max_denominator)
    _emit(json.dumps(result) + "\n", args.out)
    return 0


def _cmd_scan(args: argparse.Namespace) -> int:
    family = _resolve_family(args)
    spec = _make_scan_spec(family, args.sweep, args.fix)
    header, rows = run_scan(spec)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _emit(buffer.getvalue(), args.out)
    return 0


def _cmd_agree(args: argparse.Namespace) -> int:
    summary = run_agreement(args.theorem, args.samples, args.seed)
    lines = [json.dumps(record) for record in summary.disagreements]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            for line in lines:
                handle.write(line + "\n")
        sys.stdout.write(json.dumps(summary.to_json()) + "\n")
    else:
        sys.stdout.write(json.dumps(summary.to_json()) + "\n")
        for line in lines:
            sys.stdout.write(line + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadorder",
        description=(
            "Decide convex-order inequalities between quadrature functionals "
            "on [0, 1], exactly."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser(
        "check", help="decide one pair (exit 0 holds/equal, 1 fails, 2 bad input)"
    )
    check.add_argument("lhs", nargs="?", help="preset, JSON, or file for the left side")
    check.add_argument("rhs", nargs="?", help="preset, JSON, or file for the right side")
    check.add_argument("--lhs", dest="lhs_flag", help="left side (overrides positional)")
    check.add_argument("--rhs", dest="rhs_flag", help="right side (overrides positional)")
    check.add_argument(
        "--paper-convention",
        action="store_true",
        help="require {'pairs': [{'a','alpha'},...]} input (positions 1 - alpha)",
    )
    check.add_argument(
        "--interval",
        nargs=2,
        metavar=("X", "Y"),
        help="atom positions live on [X, Y]; rescale them to [0, 1]",
    )
    check.add_argument("--diagnose", action="store_true", help="attach crossings and both paths")
    check.add_argument("--out", help="write the verdict JSON here instead of stdout")

    threshold = sub.add_parser("threshold", help="exact holds-region boundary along a sweep")
    scan = sub.add_parser("scan", help="CSV of holds/fails over a parameter grid")
    for p in (threshold, scan):
        p.add_argument("--family", required=True, help=f"one of {', '.join(FAMILIES)}, or custom")
        p.add_argument("--sweep", required=True, help="name=start:stop:step (rationals)")
        p.add_argument("--fix", action="append", default=[], help="name=value (repeatable)")
        p.add_argument("--lhs", help="custom family: left functional template")
        p.add_argument("--rhs", help="custom family: right functional template")
        p.add_argument("--out", help="write output here instead of stdout")
    threshold.add_argument(
        "--max-denominator",
        type=int,
        default=10**6,
        help="refine the boundary down to rationals with denominator at most this",
    )

    agree = sub.add_parser(
        "agree", help="fuzz a case checker against the decider and the oracle"
    )
    agree.add_argument("theorem", choices=THEOREM_IDS)
    agree.add_argument("--samples", type=int, default=1000)
    agree.add_argument("--seed", type=int, default=0)
    agree.add_argument("--out", help="write disagreement JSONL here")

    return parser


_HANDLERS = {
    "check": _cmd_check,
    "threshold": _cmd_threshold,
    "scan": _cmd_scan,
    "agree": _cmd_agree,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (CLIError, FunctionalError, ParamError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
