"""Certified two-sided bounds for the joint spectral radius.

The sandwich being exploited: for every depth n,

    max_{|w|<=n} rho(P_w)^(1/|w|)  <=  rho(M)  <=  min_{k<=n} max_{|w|=k} ||P_w||^(1/k)

with the left side converging from below and the right side from above.
refine() tightens both sides with a branch-and-bound that cuts a branch
at a product P of length k as soon as ||P|| <= (lower + width)^k: any
longer word factors into cut pieces and frontier pieces, so the surviving
frontier (plus the threshold itself) still bounds rho(M) from above.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import config
from ._kernels import refine_pass, sweep_tree
from .matrices import op_norm
from .sets import MatrixSet, Word, _sweep, _word_at, tree_size

# product-stack memory allowed per branch-and-bound pass
_STACK_BYTES = 64 * 2**20


class LowerBound(NamedTuple):
    value: float
    witness: Word


class ContinuityRow(NamedTuple):
    eps: float
    max_dev: float
    complete: bool


@dataclass(frozen=True)
class BoundsReport:
    """Certified interval [lower, upper] for rho(M).

    lower_witness is a word whose product's spectral radius root attains
    lower; converged means upper - lower came within the requested width.
    """

    lower: float
    upper: float
    lower_witness: Word
    depth_used: int
    nodes_explored: int
    converged: bool

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("invalid report: lower > upper")

    @property
    def interval(self) -> tuple[float, float]:
        return (self.lower, self.upper)

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "lower_witness": list(self.lower_witness),
            "depth_used": self.depth_used,
            "nodes_explored": self.nodes_explored,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class BergerWangReport:
    """Spectral-radius lower data vs norm upper data for one set."""

    r_lower: float
    rho_upper: float
    gap: float
    passed: bool
    depth_reached: int
    words_evaluated: int

    def to_dict(self) -> dict:
        return {
            "r_lower": self.r_lower,
            "rho_upper": self.rho_upper,
            "gap": self.gap,
            "pass": self.passed,
            "depth_reached": self.depth_reached,
            "words_evaluated": self.words_evaluated,
        }


def _root(x: float, k: int) -> float:
    if x <= 0.0:
        return 0.0
    return x ** (1.0 / k)


def lower_bound_r(M: MatrixSet, n: int, *, budget: int = config.MAX_WORDS) -> LowerBound:
    """Best spectral-radius root over all words of length <= n.

    Ties (within 1e-12 relative) resolve to the shortest word, then the
    lexicographically smallest.
    """
    _, best_rho, _, rho_words, _ = _sweep(M, n, True, budget)
    best = -1.0
    wit: Word = (0,)
    for k in range(1, n + 1):
        v = _root(float(best_rho[k]), k)
        if v > best * (1.0 + 1e-12):
            best = v
            wit = _word_at(rho_words, k, M.size)
    return LowerBound(max(best, 0.0), wit)


def upper_bound(M: MatrixSet, n: int, *, budget: int = config.MAX_WORDS) -> float:
    """Best norm root min_{k<=n} (max_{|w|=k} ||P_w||)^(1/k)."""
    best_norm, _, _, _, _ = _sweep(M, n, False, budget)
    return min(_root(float(best_norm[k]), k) for k in range(1, n + 1))


def sandwich_profiles(M: MatrixSet, n: int, *,
                      budget: int = config.MAX_WORDS) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative (lower, upper) sandwich values for every depth 1..n.

    Returns arrays (r, beta) of length n where r[k-1] = lower_bound_r(M, k)
    value and beta[k-1] = upper_bound(M, k), from a single sweep.
    """
    best_norm, best_rho, _, _, _ = _sweep(M, n, True, budget)
    r = np.empty(n)
    beta = np.empty(n)
    lo, hi = 0.0, math.inf
    for k in range(1, n + 1):
        lo = max(lo, _root(float(best_rho[k]), k))
        hi = min(hi, _root(float(best_norm[k]), k))
        r[k - 1] = lo
        beta[k - 1] = hi
    return r, beta


def _pass_depth_limit(dim: int, size: int, max_depth: int) -> int:
    if size == 1:
        # singleton trees are paths; the kernel uses a rolling product
        return max_depth
    per_level = 16 * dim * dim
    return max(2, min(max_depth, _STACK_BYTES // per_level))


def refine(M: MatrixSet, width: float, budget: int = 10**6, *,
           max_depth: int = 4096) -> BoundsReport:
    """Branch-and-bound interval for rho(M), aiming at the given width.

    Runs depth-capped passes (depths 1..8, then doubling), each a full
    lexicographic DFS with Gripenberg pruning against the current lower
    bound.  The budget counts every evaluated word, including
    re-evaluations across passes, so reports are deterministic.  On budget
    exhaustion the best certified interval so far is returned with
    converged=False (at least one depth-1 sweep always runs).

    Lower-bound candidates are shaved by a relative 1e-12 margin before
    entering the bound (and the pruning threshold), so eigenvalue-solver
    noise cannot push the certificate above the true spectral radius of
    the witness product; on convergence upper - lower <= width holds
    exactly.  Widths below about 1e-12 times rho sit under that margin
    and typically exhaust the budget instead of converging (except at
    rho = 0, where certification is exact).
    """
    if not (width > 0.0):
        raise ValueError("width must be positive")
    budget = max(int(budget), M.size)
    fro = config.use_frobenius()
    depth_limit = _pass_depth_limit(M.dim, M.size, max_depth)

    lower = 0.0
    wit: Word = (0,)
    upper = math.inf
    nodes_total = 0
    deepest = 0
    converged = False
    depth_cap = 0
    target = 1
    while True:
        new_cap = min(target, depth_limit)
        if new_cap <= depth_cap:
            break  # cannot deepen any further
        depth_cap = new_cap
        (plower, wlen, wword, fmax, saw_frontier, completed, nodes,
         deep) = refine_pass(M.gens, depth_cap, width, lower,
                             budget - nodes_total, fro)
        nodes_total += int(nodes)
        deepest = max(deepest, int(deep))
        if plower > lower:
            lower = float(plower)
            if wlen > 0:
                wit = tuple(int(x) for x in wword[:wlen])
        if completed:
            cand = lower + width
            if saw_frontier:
                cand = max(cand, float(fmax))
            upper = min(upper, cand)
        converged = (upper - lower) <= width * (1.0 + 1e-9)
        if converged or not completed or nodes_total >= budget:
            break
        target = target + 1 if target < 8 else target * 2

    if not math.isfinite(upper):
        upper = max(lower + width, max(op_norm(g) for g in M.generators))
    upper = max(upper, lower)
    return BoundsReport(lower=lower, upper=upper, lower_witness=wit,
                        depth_used=deepest, nodes_explored=nodes_total,
                        converged=converged)


def verify_berger_wang(M: MatrixSet, tol: float, budget: int = 10**6) -> BergerWangReport:
    """Drive the sandwich until the two sides agree within tol.

    Sweeps at doubling depths; every evaluated word (including
    re-evaluations at the shallower depths of later sweeps) counts against
    the budget.  pass=False with the diagnostics retained when the budget
    runs out first.
    """
    if not (tol > 0.0):
        raise ValueError("tol must be positive")
    fro = config.use_frobenius()
    r_best = 0.0
    b_best = math.inf
    depth_reached = 0
    nodes_used = 0
    n = 1
    while True:
        cost = tree_size(M.size, n)
        if nodes_used + cost > budget:
            break
        best_norm, best_rho, _, _, nodes = sweep_tree(M.gens, n, True, fro)
        nodes_used += int(nodes)
        for k in range(1, n + 1):
            r_best = max(r_best, _root(float(best_rho[k]), k))
            b_best = min(b_best, _root(float(best_norm[k]), k))
        depth_reached = n
        if b_best - r_best <= tol:
            break
        n *= 2
    gap = (b_best - r_best) if depth_reached > 0 else math.inf
    return BergerWangReport(r_lower=r_best,
                            rho_upper=b_best if depth_reached > 0 else math.inf,
                            gap=gap, passed=gap <= tol,
                            depth_reached=depth_reached,
                            words_evaluated=nodes_used)


def interval_distance(i1: Sequence[float], i2: Sequence[float]) -> float:
    """Distance between closed intervals (0 when they intersect)."""
    return max(0.0, i2[0] - i1[1], i1[0] - i2[1])


def perturbation_directions(M: MatrixSet, trials: int, seed: int) -> list[np.ndarray]:
    """Per-trial unit-spectral-norm complex Gaussian directions.

    One (size, dim, dim) array per trial, drawn once from the seed; the
    continuity probe reuses the same directions for every eps so that
    deviations scale with eps.
    """
    rng = np.random.default_rng(seed)
    d = M.dim
    out = []
    for _ in range(trials):
        dirs = np.empty((M.size, d, d), np.complex128)
        for g in range(M.size):
            while True:
                z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
                nrm = op_norm(z)
                if nrm > 1e-8:
                    break
            dirs[g] = z / nrm
        out.append(dirs)
    return out


def continuity_probe(M: MatrixSet, eps_schedule: Sequence[float], trials: int,
                     seed: int, *, budget: int = 50_000,
                     base_width: float | None = None) -> list[ContinuityRow]:
    """Interval deviation of rho under random perturbations of each size.

    For each eps, each generator of each trial copy is shifted by eps
    times a fixed unit-norm direction, both sets are boxed by refine, and
    max_dev records the largest interval-to-interval distance over the
    trials.  A row is marked incomplete when any refine in it (or the base
    run) hit the budget before converging; its deviations are still valid
    bounds.
    """
    eps_list = [float(e) for e in eps_schedule]
    if not eps_list:
        raise ValueError("eps_schedule must be nonempty")
    for i, e in enumerate(eps_list):
        if e < 0.0 or not math.isfinite(e):
            raise ValueError("eps values must be finite and >= 0")
        if i > 0 and e > eps_list[i - 1]:
            raise ValueError("eps_schedule must be nonincreasing")
    if trials < 1:
        raise ValueError("trials must be >= 1")

    dirs = perturbation_directions(M, trials, seed)
    positive = [e for e in eps_list if e > 0]
    wbase = base_width if base_width is not None else (
        max(min(positive) / 4.0, 1e-9) if positive else 1e-6)
    base = refine(M, wbase, budget)
    rows = []
    for e in eps_list:
        w = max(e / 4.0, 1e-9)
        mx = 0.0
        complete = base.converged
        for t in range(trials):
            gens = np.ascontiguousarray(M.gens + e * dirs[t])
            rep = refine(MatrixSet(gens), w, budget)
            complete = complete and rep.converged
            mx = max(mx, interval_distance(base.interval, rep.interval))
        rows.append(ContinuityRow(e, mx, complete))
    return rows
