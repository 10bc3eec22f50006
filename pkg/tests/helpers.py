"""Seeded generators for random functionals and structured pairs.

Everything here draws exact rationals with small denominators and solves
the mass/barycenter constraints exactly, so generated pairs are valid by
construction (never by tolerance).
"""

from __future__ import annotations

import random
from fractions import Fraction

from quadorder import Functional, barycenter, make_functional

DENOMINATORS = (8, 9, 10, 12, 15, 16, 20, 24, 30, 32, 40, 60)


def rand_fraction(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction | None:
    """Random rational strictly inside (lo, hi), None if the drawn
    denominator has no lattice point there."""
    den = rng.choice(DENOMINATORS)
    kmin = lo.numerator * den // lo.denominator + 1
    kmax = -((-hi.numerator * den) // hi.denominator) - 1
    if kmin > kmax:
        return None
    return Fraction(rng.randint(kmin, kmax), den)


def rand_functional(
    rng: random.Random,
    min_atoms: int = 2,
    max_atoms: int = 6,
    allow_uniform: bool = True,
) -> Functional:
    """Random functional with min..max atoms and an optional uniform part."""
    while True:
        k = rng.randint(min_atoms, max_atoms)
        den = rng.choice(DENOMINATORS)
        positions = sorted({Fraction(rng.randint(0, den), den) for _ in range(k)})
        if len(positions) < min_atoms:
            continue
        uniform = Fraction(0)
        if allow_uniform and rng.random() < 0.4:
            uniform = Fraction(rng.randint(1, 4), 8)
        raw = [rng.randint(1, 8) for _ in positions]
        total = sum(raw)
        atom_mass = 1 - uniform
        atoms = [(p, Fraction(r, total) * atom_mass) for p, r in zip(positions, raw)]
        return make_functional(atoms, uniform)


def equal_mean_pair(rng: random.Random) -> tuple[Functional, Functional]:
    """Two functionals with exactly equal barycenters (2..6 atoms each,
    optional uniform part): the second one's two outermost weights are
    solved from the mass and barycenter equations."""
    first = rand_functional(rng)
    target = barycenter(first)
    while True:
        k = rng.randint(2, 6)
        den = rng.choice(DENOMINATORS)
        positions = sorted({Fraction(rng.randint(0, den), den) for _ in range(k)})
        if len(positions) < 2:
            continue
        uniform = Fraction(0)
        if rng.random() < 0.3:
            uniform = Fraction(rng.randint(1, 4), 8)
        inner = positions[1:-1]
        inner_weights = []
        if inner:
            raw = [rng.randint(1, 6) for _ in inner]
            # keep some mass in reserve for the two solved weights
            scale = Fraction(rng.randint(1, 3), 8) * (1 - uniform) / sum(raw)
            inner_weights = [r * scale for r in raw]
        p_lo, p_hi = positions[0], positions[-1]
        remaining = 1 - uniform - sum(inner_weights)
        moment = (
            target
            - uniform * Fraction(1, 2)
            - sum(w * p for w, p in zip(inner_weights, inner))
        )
        w_hi = (moment - remaining * p_lo) / (p_hi - p_lo)
        w_lo = remaining - w_hi
        if w_lo < 0 or w_hi < 0:
            continue
        atoms = list(zip(inner, inner_weights)) + [(p_lo, w_lo), (p_hi, w_hi)]
        second = make_functional(atoms, uniform)
        return first, second


def single_crossing_pair(rng: random.Random) -> tuple[Functional, Functional]:
    """(point mass at the barycenter of B, B): the distribution functions
    cross exactly once, at the barycenter, with equal means."""
    while True:
        spread = rand_functional(rng)
        if len(spread.atoms) < 2 and spread.uniform_weight == 0:
            continue
        center = barycenter(spread)
        point = make_functional([(center, 1)])
        if point != spread:
            return point, spread


def even_crossing_pair(rng: random.Random) -> tuple[Functional, Functional]:
    """A constructed pair with equal barycenters whose difference changes
    sign exactly twice (heights h0, h1, h2 over the three stretches, with
    h1 solved so the signed areas cancel)."""
    while True:
        den = rng.choice(DENOMINATORS)
        x1 = Fraction(rng.randint(1, den - 2), den)
        x2 = Fraction(rng.randint(1, den - 1), den)
        if x1 >= x2:
            continue
        h0 = Fraction(rng.randint(1, 6), 12)
        h2 = Fraction(rng.randint(1, 6), 12)
        h1 = (h0 * x1 + h2 * (1 - x2)) / (x2 - x1)
        total = h0 + h1 + h2
        first = make_functional([(x1, (h0 + h1) / total), (1, h2 / total)])
        second = make_functional([(0, h0 / total), (x2, (h1 + h2) / total)])
        return first, second
