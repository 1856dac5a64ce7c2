"""Random directed differential biquivers for property tests.

The seed comes from ``BOCSKIT_SEED`` when set, so failures reproduce.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

from .algebra import Arrow, Quiver, word_source, word_target
from .bocs import DiffBiquiver, validate

DEFAULT_SEED = 20171017


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    raw = os.environ.get("BOCSKIT_SEED")
    if raw is None or not raw.strip():
        return default
    return int(raw)


def make_rng(seed: int | None = None) -> random.Random:
    return random.Random(seed_from_env() if seed is None else seed)


def random_quiver(rng: random.Random, n: int, solid_weights=(3, 5, 1), dashed_weights=(2, 5, 1)) -> Quiver:
    """Arrows only go from smaller to larger vertices; weights are for 0, 1, 2 arrows per pair."""
    arrows = []
    for i in range(1, n + 1):
        for l in range(i + 1, n + 1):
            for k in range(rng.choices((0, 1, 2), weights=solid_weights)[0]):
                arrows.append(Arrow(f"a{i}{l}" + ("" if k == 0 else "x"), i, l, 0))
            for k in range(rng.choices((0, 1, 2), weights=dashed_weights)[0]):
                arrows.append(Arrow(f"v{i}{l}" + ("" if k == 0 else "x"), i, l, 1))
    return Quiver(n, arrows)


def _random_combination(rng: random.Random, words, density: float) -> dict:
    out = {}
    for w in words:
        if rng.random() < density:
            out[w] = Fraction(rng.choice((1, -1)))
    return out


def repair(dbq: DiffBiquiver) -> DiffBiquiver:
    """Zero the differential of every generator whose d² fails until the data is valid."""
    while True:
        report = validate(dbq)
        if report.ok:
            return dbq
        bad = {v.generator for v in report.violations}
        d0 = {k: v for k, v in dbq.d0.items() if k not in bad}
        d1 = {k: v for k, v in dbq.d1.items() if k not in bad}
        dbq = dbq.replace(d0=d0, d1=d1)


def random_biquiver(
    rng: random.Random,
    n: int | None = None,
    regular: bool = False,
    density: float = 0.5,
    attempts: int = 8,
) -> DiffBiquiver:
    """A valid free directed biquiver with coefficients in {0, ±1}.

    Generators are filled in by increasing span (dashed first), redrawing
    each differential until its own square vanishes.  With ``regular`` no
    solid differential has a bare dashed generator.
    """
    n = rng.choices((2, 3, 4), weights=(1, 3, 4))[0] if n is None else n
    dbq = DiffBiquiver(random_quiver(rng, n))
    T = dbq.tensor
    order = sorted(dbq.quiver.arrows, key=lambda a: (a.target - a.source, not a.is_dashed))
    for a in order:
        degree = 2 if a.is_dashed else 1
        words = [w for w in T.basis(degree) if (word_source(w), word_target(w)) == (a.source, a.target)]
        if regular and not a.is_dashed:
            words = [w for w in words if not (w[0].is_trivial and w[2].is_trivial)]
        for _ in range(attempts):
            value = _random_combination(rng, words, density)
            if not value:
                break
            table = dict(dbq.d1 if a.is_dashed else dbq.d0)
            table[a.name] = value
            trial = dbq.replace(d1=table) if a.is_dashed else dbq.replace(d0=table)
            if not trial.tensor.d(trial.differential(a.name)):
                dbq = trial
                break
    return repair(dbq)
