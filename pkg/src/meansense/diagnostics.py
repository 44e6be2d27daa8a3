"""Truncated-orbit statistics: densities, orbit-average distances, diameters.

Conventions used throughout:

* positions inside points are 1-based, orbit steps are 0-based;
* step i compares the views after i shifts, so the pair disagreeing first
  at position p (1-based) has step-i distance 1/(p - i) while p > i;
* every limsup of the theory becomes "max over the requested finite range",
  labeled as a proxy in the report, never as a limit;
* per-step metric comparisons stop at a fixed depth D; a comparison with no
  disagreement within D contributes 0 to the value and 1/(D+1) to the
  truncation correction, which upper-bounds the unseen remainder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import HorizonError, ParameterError
from .language import LanguageApprox, cylinder_members
from .reports import FAIL, INCONCLUSIVE, PASS, AverageReport, Report, fmt17
from .words import PointView, diff_intervals, point_metric

DEFAULT_DEPTH = 64


@dataclass(frozen=True)
class IndexSet:
    """A finite set of non-negative integers below a horizon."""

    members: np.ndarray  # sorted int64, deduplicated
    horizon: int

    @staticmethod
    def from_iterable(it, horizon: int) -> "IndexSet":
        arr = np.unique(np.asarray(list(it), dtype=np.int64))
        if len(arr) and (arr[0] < 0 or arr[-1] >= horizon):
            raise ParameterError("index set member outside [0, horizon)")
        return IndexSet(arr, horizon)

    def __len__(self):
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        j = int(np.searchsorted(self.members, i))
        return j < len(self.members) and int(self.members[j]) == i

    def contains_range(self, lo: int, hi: int) -> bool:
        """True when every integer in [lo, hi] belongs to the set."""
        if hi < lo:
            return True
        a = int(np.searchsorted(self.members, lo))
        b = int(np.searchsorted(self.members, hi, side="right"))
        return b - a == hi - lo + 1


def indicator_set_E(y: PointView, symbol: int = 1) -> IndexSet:
    """0-based positions i < horizon with y_{i+1} equal to ``symbol``."""
    pos = 1
    chunks = []
    for s, c in y.prefix.runs:
        if s == symbol:
            chunks.append(np.arange(pos - 1, pos - 1 + c, dtype=np.int64))
        pos += c
    if chunks:
        members = np.concatenate(chunks)
    else:
        members = np.empty(0, dtype=np.int64)
    return IndexSet(members, y.horizon)


def upper_density(F: IndexSet, prefix_lengths: Sequence[int]) -> Report:
    """Prefix frequencies #(F ∩ [0, n))/n at each requested n.

    The headline is the maximum over the tail half of the requested lengths,
    a desk proxy for the limsup and labeled as such.
    """
    lens = sorted(set(int(n) for n in prefix_lengths))
    if not lens or lens[0] < 1 or lens[-1] > F.horizon:
        raise ParameterError("prefix lengths must lie in [1, horizon]")
    rows = []
    for n in lens:
        cnt = int(np.searchsorted(F.members, n))
        rows.append({"n": n, "count": cnt, "ratio": fmt17(cnt / n)})
    tail = rows[len(rows) // 2:]
    headline = max(float(r["ratio"]) for r in tail)
    rep = Report("upper-density", params={"headline": fmt17(headline)})
    rep.witnesses = [{"prefixes": rows}]
    rep.caveats = ["headline is max over the tail half of requested prefixes, "
                   "a proxy for the limsup"]
    rep.verdict = PASS
    return rep


def banach_window_max(F: IndexSet, window: int) -> tuple:
    """Exact sup over windows [M, M+window) ⊆ [0, horizon) of the member count.

    Returns (count, window_start).  An optimal window can be anchored so it
    begins at a member (or clamped at the right edge), so only |F| + 1
    candidates need checking.
    """
    if not 1 <= window <= F.horizon:
        raise ParameterError("window outside [1, horizon]")
    pos = F.members
    if len(pos) == 0:
        return 0, 0
    best, best_m = 0, 0
    last_start = F.horizon - window
    for p in pos:
        m = min(int(p), last_start)
        lo = int(np.searchsorted(pos, m))
        hi = int(np.searchsorted(pos, m + window))
        if hi - lo > best:
            best, best_m = hi - lo, m
    return best, best_m


def upper_banach_density(F: IndexSet, window_lengths: Sequence[int]) -> Report:
    """Exact supremal windowed frequency of F at each requested window length.

    The headline is the value at the largest requested length.
    """
    lens = sorted(set(int(L) for L in window_lengths))
    rows = []
    for L in lens:
        cnt, m = banach_window_max(F, L)
        rows.append({"L": L, "count": cnt, "start": m, "ratio": fmt17(cnt / L)})
    rep = Report("upper-banach-density",
                 params={"headline": rows[-1]["ratio"] if rows else "0"})
    rep.witnesses = [{"windows": rows}]
    rep.caveats = ["exact sup at each finite window length; a proxy for the "
                   "limsup over growing windows"]
    rep.verdict = PASS
    return rep


# ---------------------------------------------------------------------------
# pairwise orbit distances


def _pair_limit(x: PointView, y: PointView, n: int, depth: int) -> int:
    limit = min(x.horizon, y.horizon)
    if n + depth > limit:
        raise HorizonError(
            f"{n} steps at comparison depth {depth} need horizon {n + depth}, "
            f"have {limit}"
        )
    return limit


def step_distance_array(x: PointView, y: PointView, n: int,
                        depth: int = DEFAULT_DEPTH):
    """Per-step distances d(sigma^i x, sigma^i y) for i in [0, n).

    Returns (values, truncated) where truncated marks steps with no
    disagreement within the comparison depth; those report 0 and the true
    value lies in [0, 1/(depth+1)].
    """
    _pair_limit(x, y, n, depth)
    los, his = diff_intervals(x.prefix, y.prefix, upto=n + depth)
    steps = np.arange(n, dtype=np.int64)
    if len(los) == 0:
        return np.zeros(n), np.ones(n, dtype=bool)
    idx = np.searchsorted(his, steps + 1)
    nd = np.where(idx < len(los),
                  np.maximum(los[np.minimum(idx, len(los) - 1)], steps + 1),
                  np.iinfo(np.int64).max)
    gap = nd - steps
    truncated = gap > depth
    values = np.where(truncated, 0.0, 1.0 / np.where(truncated, 1, gap))
    return values, truncated


_HARMONIC_CACHE = {}


def _harmonic_table(depth: int) -> np.ndarray:
    tab = _HARMONIC_CACHE.get(depth)
    if tab is None:
        tab = np.concatenate([[0.0], np.cumsum(1.0 / np.arange(1, depth + 1))])
        _HARMONIC_CACHE[depth] = tab
    return tab


def distance_sum(x: PointView, y: PointView, n: int,
                 depth: int = DEFAULT_DEPTH) -> tuple:
    """(sum of step distances over [0, n), truncated step count), closed form.

    Walks the disagreement intervals instead of the steps, so n may be
    astronomically large as long as the views carry the runs.
    """
    _pair_limit(x, y, n, depth)
    los, his = diff_intervals(x.prefix, y.prefix, upto=n + depth)
    table = _harmonic_table(depth)
    total = 0.0
    truncated = 0
    prev_hi = 0  # sentinel: position 0
    for lo, hi in zip(los.tolist(), his.tolist()):
        # approach segment: steps prev_hi .. min(lo, n) - 1, next diff at lo
        a, b = prev_hi, min(lo, n) - 1
        if b >= a:
            g_hi = lo - a          # largest gap in the segment
            g_lo = lo - b          # smallest gap (>= 1)
            total += table[min(depth, g_hi)] - table[min(depth, g_lo - 1)]
            truncated += max(0, g_hi - max(depth, g_lo - 1))
        # inside segment: steps lo .. min(hi, n) - 1 all have distance 1
        a, b = lo, min(hi, n) - 1
        if b >= a:
            total += float(b - a + 1)
        prev_hi = hi
        if prev_hi >= n:
            break
    if prev_hi < n:
        truncated += n - prev_hi
    return total, truncated


def cesaro_avg_distance(x: PointView, y: PointView, n: int,
                        depth: int = DEFAULT_DEPTH) -> AverageReport:
    """Cesaro average (1/n) sum d(sigma^i x, sigma^i y) over i in [0, n)."""
    if n < 1:
        raise ParameterError("need at least one step")
    total, truncated = distance_sum(x, y, n, depth)
    return AverageReport(
        value=total / n,
        window=(0, n),
        truncation_correction=truncated / (depth + 1) / n,
        samples=n,
        method="closed-form",
        caveats=[f"per-step comparisons capped at depth {depth}"],
    )


def banach_avg_distance(x: PointView, y: PointView, L: int,
                        depth: int = DEFAULT_DEPTH,
                        steps: Optional[int] = None) -> AverageReport:
    """Exact sup over windows of length L of the windowed average distance.

    The sup ranges over every window [M, M+L) inside the usable horizon
    (all steps whose depth-capped comparison is fully determined).  The
    correction reports how far the corrected sup (counting every truncated
    comparison at its worst) sits above the plain sup.
    """
    limit = min(x.horizon, y.horizon)
    if steps is None:
        steps = limit - depth
    if steps < L:
        raise HorizonError(f"window {L} does not fit in {steps} usable steps")
    d, trunc = step_distance_array(x, y, steps, depth)
    cs = np.concatenate([[0.0], np.cumsum(d)])
    ct = np.concatenate([[0], np.cumsum(trunc)])
    sums = cs[L:] - cs[:-L]
    tcounts = ct[L:] - ct[:-L]
    value = float(sums.max()) / L
    corrected = float((sums + tcounts / (depth + 1)).max()) / L
    m = int(np.argmax(sums))
    return AverageReport(
        value=value,
        window=(m, m + L),
        truncation_correction=corrected - value,
        samples=int(len(sums)),
        method="window-sweep",
        caveats=[f"sup over {len(sums)} windows of length {L} within "
                 f"{steps} usable steps"],
    )


# ---------------------------------------------------------------------------
# diameters of finite member sets along the shift orbit


def diam_of_members(members: Sequence[PointView]) -> tuple:
    """(max pairwise distance, truncated) over a finite member list."""
    best = 0.0
    trunc = False
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            v, t = point_metric(members[i], members[j])
            best = max(best, v)
            trunc = trunc or t
    return best, trunc


def _union_diff_positions(members: Sequence[PointView], upto: int):
    """Positions p <= upto where the members do not all agree.

    Any pairwise disagreement at p forces a disagreement with the base
    member at p, so the union over pairs equals the union over
    (base, other) pairs; the base is chosen with the fewest runs.
    """
    base = min(members, key=lambda m: len(m.prefix.runs))
    los_all, his_all = [], []
    for m in members:
        if m is base:
            continue
        los, his = diff_intervals(base.prefix, m.prefix, upto=upto)
        los_all.append(los)
        his_all.append(his)
    if not los_all:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    los = np.concatenate(los_all)
    his = np.concatenate(his_all)
    order = np.argsort(los, kind="stable")
    los, his = los[order], his[order]
    # merge overlapping intervals
    mlo, mhi = [], []
    for lo, hi in zip(los.tolist(), his.tolist()):
        if mhi and lo <= mhi[-1] + 1:
            mhi[-1] = max(mhi[-1], hi)
        else:
            mlo.append(lo)
            mhi.append(hi)
    return np.array(mlo, dtype=np.int64), np.array(mhi, dtype=np.int64)


def diam_sequence(members: Sequence[PointView], steps: int):
    """diam(sigma^i U) for the sampled member set U, i in [0, steps).

    Exact for the sampled members (hence a lower bound on the true set
    diameter).  Returns (values, truncated): a truncated step means the
    members all agree to the shared horizon and only the bias bound
    1/(horizon - i + 1) is known.
    """
    if not members:
        raise ParameterError("need at least one member")
    H = min(m.horizon for m in members)
    if steps > H:
        raise HorizonError(f"{steps} steps exceed shared horizon {H}")
    if len(members) == 1:
        return np.zeros(steps), np.zeros(steps, dtype=bool)
    los, his = _union_diff_positions(members, upto=H)
    stepv = np.arange(steps, dtype=np.int64)
    if len(los) == 0:
        return np.zeros(steps), np.ones(steps, dtype=bool)
    idx = np.searchsorted(his, stepv + 1)
    nd = np.where(idx < len(los),
                  np.maximum(los[np.minimum(idx, len(los) - 1)], stepv + 1),
                  np.iinfo(np.int64).max)
    truncated = nd > H
    values = np.where(truncated, 0.0, 1.0 / np.maximum(nd - stepv, 1))
    return values, truncated


def orbit_diam_sequence(members: Sequence[PointView], steps: int,
                        step_fn: Callable[[PointView], PointView]):
    """Naive diameter sequence under an arbitrary one-step map.

    Deduplicates members between steps (the induced map may collapse
    points).  Meant for small member lists such as the patched-system sets.
    """
    values = []
    truncated = []
    cur = list(members)
    for _ in range(steps):
        seen = {}
        for m in cur:
            seen.setdefault(m.key(), m)
        cur = list(seen.values())
        v, t = diam_of_members(cur)
        values.append(v)
        truncated.append(t)
        cur = [step_fn(m) for m in cur]
    return np.array(values), np.array(truncated, dtype=bool)


def sensitivity_times(members: Sequence[PointView], delta: float,
                      steps: int) -> IndexSet:
    """Steps i < steps with diam(sigma^i U) > delta over the sampled members.

    Built on exact lower bounds, so membership certifies the separation;
    absence only means no sampled pair separates.
    """
    values, _ = diam_sequence(members, steps)
    hits = np.nonzero(values > delta)[0].astype(np.int64)
    return IndexSet(hits, steps)


def diam_mean_avg(members: Sequence[PointView], steps: int) -> AverageReport:
    """Cesaro average of the sampled-member diameter sequence."""
    values, truncated = diam_sequence(members, steps)
    H = min(m.horizon for m in members)
    idx = np.nonzero(truncated)[0]
    corr = float(np.sum(1.0 / (H - idx + 1))) / steps if len(idx) else 0.0
    caveats = ["diameters are lower bounds from sampled members"]
    if len(members) < 2:
        caveats.append("degenerate: fewer than two members")
    return AverageReport(
        value=float(values.sum()) / steps,
        window=(0, steps),
        truncation_correction=corr,
        samples=steps,
        method="diam-cesaro",
        caveats=caveats,
    )


# ---------------------------------------------------------------------------
# mean condition <-> density condition conversion


def mean_to_density_check(a: Sequence[float], delta: float, M: float,
                          sqrt_delta: Optional[float] = None) -> Report:
    """Check both conversion inequalities on a finite bounded sequence.

    (i)  if every prefix average is <= delta then the prefix-max density of
         {i : a_i >= sqrt(delta)} is <= sqrt(delta);
    (ii) if the prefix-max density of {i : a_i >= delta} is <= delta then
         every prefix average is <= (M+1) delta.

    Evaluated in exact rational arithmetic; pass ``sqrt_delta`` when delta
    is a perfect square of a rational to keep side (i) exact too.
    """
    if delta <= 0:
        raise ParameterError("delta must be positive")
    seq = [Fraction(v) for v in a]
    Mf = Fraction(M)
    if any(v < 0 or v > Mf for v in seq):
        raise ParameterError("sequence values must lie in [0, M]")
    df = Fraction(delta)
    rt = Fraction(sqrt_delta) if sqrt_delta is not None else Fraction(
        math.sqrt(delta))
    rep = Report("mean-to-density", params={
        "delta": fmt17(delta), "M": fmt17(M), "length": len(seq),
        "sqrt_delta": fmt17(float(rt)),
    })
    if not seq:
        rep.verdict = PASS
        rep.caveats.append("empty sequence: vacuous")
        return rep

    def max_prefix_avg(vals):
        best = Fraction(0)
        run = Fraction(0)
        for n, v in enumerate(vals, start=1):
            run += v
            best = max(best, run / n)
        return best

    def max_prefix_density(thresh):
        best = Fraction(0)
        cnt = 0
        for n, v in enumerate(seq, start=1):
            if v >= thresh:
                cnt += 1
            best = max(best, Fraction(cnt, n))
        return best

    avg = max_prefix_avg(seq)
    side1_premise = avg <= df
    side1_density = max_prefix_density(rt)
    side1_ok = (not side1_premise) or side1_density <= rt
    side2_density = max_prefix_density(df)
    side2_premise = side2_density <= df
    side2_ok = (not side2_premise) or avg <= (Mf + 1) * df
    rep.witnesses = [
        {"side": "mean->density", "premise_holds": side1_premise,
         "max_prefix_avg": fmt17(float(avg)),
         "density_at_sqrt_delta": fmt17(float(side1_density)),
         "holds": side1_ok,
         "margin": fmt17(float(rt - side1_density)) if side1_premise else None},
        {"side": "density->mean", "premise_holds": side2_premise,
         "density_at_delta": fmt17(float(side2_density)),
         "bound": fmt17(float((Mf + 1) * df)),
         "holds": side2_ok,
         "margin": fmt17(float((Mf + 1) * df - avg)) if side2_premise else None},
    ]
    rep.verdict = PASS if (side1_ok and side2_ok) else FAIL
    if sqrt_delta is None:
        rep.caveats.append("sqrt(delta) taken as the nearest float")
    return rep


# ---------------------------------------------------------------------------
# empirical point classification


def classify_point(la: LanguageApprox, p: PointView, epsilon: float,
                   n_or_L: int, mode: str = "cesaro",
                   sample_budget: int = 24,
                   depths: Optional[Sequence[int]] = None,
                   depth: int = DEFAULT_DEPTH) -> Report:
    """Empirical mean-equicontinuity classification of one point.

    Searches cylinder depths (deepest first) for one where every sampled
    co-member stays epsilon-close in the requested average; stops at the
    first depth that works.  The verdict is about the sampled members only.
    """
    if mode not in ("cesaro", "banach"):
        raise ParameterError("mode must be 'cesaro' or 'banach'")
    member_h = n_or_L * (2 if mode == "banach" else 1) + depth + 1
    if depths is None:
        top = min(p.horizon, member_h)
        depths = []
        d = 1
        while d * 2 <= top:
            d *= 2
        while d >= 8:
            depths.append(d)
            d //= 2
    depths = sorted(set(depths), reverse=True)
    rep = Report("classify-point", params={
        "mode": mode, "epsilon": fmt17(epsilon), "steps": n_or_L,
        "sample_budget": sample_budget,
    })
    per_depth = []
    for dep in depths:
        if dep > p.horizon:
            continue
        u = p.prefix.subword(1, dep)
        qs = [q for q in cylinder_members(la, u, max_members=sample_budget,
                                          member_horizon=member_h)
              if q.provenance != p.provenance]
        if not qs:
            per_depth.append({"depth": dep, "sampled": 0})
            continue
        worst = None
        for q in qs:
            if mode == "cesaro":
                r = cesaro_avg_distance(p, q, n_or_L, depth)
            else:
                r = banach_avg_distance(p, q, n_or_L, depth)
            if worst is None or r.upper > worst[0]:
                worst = (r.upper, q.provenance.offset)
        entry = {"depth": dep, "sampled": len(qs),
                 "worst_avg_upper": fmt17(worst[0]),
                 "worst_offset": worst[1]}
        per_depth.append(entry)
        if worst[0] < epsilon:
            rep.verdict = PASS
            rep.params["witnessing_depth"] = dep
            break
    else:
        rep.verdict = FAIL if any(e.get("sampled") for e in per_depth) \
            else INCONCLUSIVE
    rep.witnesses = [{"depth_search": per_depth}]
    rep.caveats = ["empirical: sampled co-members only, averages over a "
                   "finite range"]
    return rep
