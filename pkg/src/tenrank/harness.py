"""Monte Carlo checks of the detection rule on synthesized known-rank tensors.

Each trial draws an order, dimensions and a rank from its own generator
(spawned from one seed), so results do not depend on worker count or
scheduling and are always returned in trial order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .detector import max_detectable_rank, rank_lower_bound
from .splitter import balanced_split
from .tio import synth_tensor

# rank drawn uniformly in [1, r_max] / [1, 2 r_max], or fixed at r_max + 3
REGIMES = ("detect", "sound", "fullrank")


@dataclass(frozen=True)
class Trial:
    index: int
    dims: tuple[int, ...]
    constructed_rank: int
    r_max: int
    lower_bound: int
    detected: bool
    detected_rank: int | None

    @property
    def hit(self) -> bool:
        return self.detected and self.detected_rank == self.constructed_rank

    @property
    def sound(self) -> bool:
        return self.lower_bound <= self.constructed_rank


def _draw_rank(rng, r_max, regime):
    if regime == "detect":
        return int(rng.integers(1, r_max + 1))
    if regime == "sound":
        return int(rng.integers(1, 2 * r_max + 1))
    return r_max + 3


def run_trial(index, seed_seq, regime="detect", orders=(3, 4, 5), dim_range=(2, 6),
              distribution="gaussian", tol=None) -> Trial:
    rng = np.random.default_rng(seed_seq)
    order = int(rng.choice(orders))
    dims = tuple(int(d) for d in rng.integers(dim_range[0], dim_range[1] + 1, size=order))
    r_max, _ = max_detectable_rank(dims)
    rank = _draw_rank(rng, max(r_max, 1), regime)
    t, _ = synth_tensor(dims, rank, rng, distribution)
    rep = rank_lower_bound(t, tol)
    return Trial(index, dims, rank, rep.r_max, rep.lower_bound, rep.detected, rep.detected_rank)


def run_trials(n_trials, seed, regime="detect", orders=(3, 4, 5), dim_range=(2, 6),
               distribution="gaussian", tol=None, workers=1) -> list[Trial]:
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}; choose from {REGIMES}")
    children = np.random.SeedSequence(seed).spawn(n_trials)

    def one(i):
        return run_trial(i, children[i], regime, orders, dim_range, distribution, tol)

    if workers <= 1:
        return [one(i) for i in range(n_trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, range(n_trials)))


def summarize(trials) -> dict:
    n = len(trials)
    full_rank = sum(1 for t in trials if not t.detected and t.lower_bound == min_side(t))
    return {
        "trials": n,
        "hits": sum(t.hit for t in trials),
        "sound": sum(t.sound for t in trials),
        "detected": sum(t.detected for t in trials),
        "full_rank_fallback": full_rank,
    }


def min_side(trial: Trial) -> int:
    return trial.r_max + 1


def trial_dict(trial: Trial) -> dict:
    d = asdict(trial)
    d["dims"] = list(trial.dims)
    return d


def strategy_gap(n_instances, seed, max_order=10, dim_range=(2, 20)):
    """Fraction of random dims lists on which ``sum_dp`` loses to ``exact``.

    Returns ``(fraction, worse_cases)`` where ``worse_cases`` lists
    ``(dims, exact_min_product, sum_dp_min_product)``.
    """
    rng = np.random.default_rng(seed)
    worse = []
    for _ in range(n_instances):
        order = int(rng.integers(2, max_order + 1))
        dims = [int(d) for d in rng.integers(dim_range[0], dim_range[1] + 1, size=order)]
        best = balanced_split(dims, "exact").min_product
        dp = balanced_split(dims, "sum_dp").min_product
        if dp < best:
            worse.append((dims, best, dp))
    return len(worse) / n_instances, worse
