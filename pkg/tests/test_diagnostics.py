import math
import random

import numpy as np
import pytest

from meansense import (
    HorizonError,
    IndexSet,
    LanguageApprox,
    ParameterError,
    PointView,
    Provenance,
    Word,
    banach_avg_distance,
    banach_window_max,
    cesaro_avg_distance,
    classify_point,
    diam_mean_avg,
    diam_of_members,
    diam_sequence,
    distance_sum,
    indicator_set_E,
    mean_to_density_check,
    point_metric,
    sensitivity_times,
    step_distance_array,
    upper_banach_density,
    upper_density,
)

from conftest import naive_step_distances


def view(symbols, note=""):
    if isinstance(symbols, str):
        w = Word.from_string(symbols)
    else:
        w = Word.from_symbols(list(symbols))
    return PointView(w, Provenance("explicit-limit"), note)


def random_view(rng, n):
    sym = []
    while len(sym) < n:
        sym.extend([rng.randint(0, 1)] * rng.randint(1, 6))
    return view(sym[:n])


# -- index sets and densities -------------------------------------------


def test_indicator_set_examples(s3):
    assert len(indicator_set_E(view("0" * 40))) == 0
    assert indicator_set_E(view("1" + "0" * 39)).members.tolist() == [0]
    x27 = s3.transitive_prefix(27)
    assert indicator_set_E(x27).members.tolist() == [0, 1, 2, 24, 25, 26]


def test_upper_density_trivial_cases():
    full = IndexSet.from_iterable(range(100), 100)
    rep = upper_density(full, [10, 50, 100])
    assert float(rep.params["headline"]) == 1.0
    evens = IndexSet.from_iterable(range(0, 100, 2), 100)
    rep = upper_density(evens, [4, 40, 100])
    assert abs(float(rep.params["headline"]) - 0.5) < 0.02


def test_upper_density_of_x_meets_level_one_budget(s3):
    # prefix frequency of the 1-positions of x against the coarse per-level
    # budget (r+1) (|A_1|+|B_1|) / (r t_1) at n = |A_3|
    x = s3.transitive_prefix(s3.schedule.level(3).len_a)
    E = indicator_set_E(x)
    n = s3.schedule.level(3).len_a
    t1 = s3.schedule.level(1).t
    r = n // t1
    count = int(np.searchsorted(E.members, n))
    assert count * (r * t1) <= (r + 1) * 6 * n


def test_banach_window_max_examples():
    evens = IndexSet.from_iterable(range(0, 100, 2), 100)
    cnt, _ = banach_window_max(evens, 10)
    assert cnt == 5
    burst = IndexSet.from_iterable(range(40, 50), 200)
    cnt, start = banach_window_max(burst, 10)
    assert (cnt, start) == (10, 40)
    rep = upper_banach_density(burst, [10])
    assert float(rep.witnesses[0]["windows"][0]["ratio"]) == 1.0


def test_banach_dominates_prefix_count():
    rng = random.Random(5)
    for _ in range(100):
        horizon = rng.randint(10, 300)
        members = sorted(rng.sample(range(horizon), rng.randint(1, horizon // 2)))
        F = IndexSet.from_iterable(members, horizon)
        for L in (1, 7, horizon // 2, horizon):
            if L < 1 or L > horizon:
                continue
            cnt, _ = banach_window_max(F, L)
            prefix_cnt = int(np.searchsorted(F.members, L))
            assert cnt >= prefix_cnt


def test_banach_window_max_matches_naive():
    rng = random.Random(11)
    for _ in range(300):
        horizon = rng.randint(5, 250)
        members = sorted(rng.sample(range(horizon),
                                    rng.randint(0, horizon - 1)))
        F = IndexSet.from_iterable(members, horizon)
        mask = np.zeros(horizon, dtype=np.int64)
        mask[members] = 1
        cs = np.concatenate([[0], np.cumsum(mask)])
        L = rng.randint(1, horizon)
        want = int((cs[L:] - cs[:-L]).max())
        got, _ = banach_window_max(F, L)
        assert got == want


# -- pairwise distances --------------------------------------------------


def test_step_distances_match_naive_oracle():
    rng = random.Random(101)
    for trial in range(1000):
        n = rng.randint(80, 10_000 if trial % 100 == 0 else 600)
        depth = rng.choice([4, 16, 64])
        steps = rng.randint(1, n - depth)
        x, y = random_view(rng, n), random_view(rng, n)
        got_v, got_t = step_distance_array(x, y, steps, depth)
        want_v, want_t = naive_step_distances(
            x.prefix.expand().astype(np.int64),
            y.prefix.expand().astype(np.int64), steps, depth)
        assert (got_t == want_t).all()
        assert np.array_equal(got_v, want_v)


def test_distance_sum_matches_array_path():
    rng = random.Random(103)
    for _ in range(300):
        n = rng.randint(80, 500)
        depth = rng.choice([4, 64])
        steps = rng.randint(1, n - depth)
        x, y = random_view(rng, n), random_view(rng, n)
        total, truncated = distance_sum(x, y, steps, depth)
        v, t = step_distance_array(x, y, steps, depth)
        assert truncated == int(t.sum())
        assert math.isclose(total, float(v.sum()), rel_tol=1e-12, abs_tol=1e-12)


def test_distance_sum_scales_to_huge_ranges():
    # a pair of two-run views compared over 10^12 steps, closed form
    big = 10 ** 12
    x = PointView(Word(2, [(1, 1), (0, big + 100)]), Provenance("explicit-limit"))
    y = PointView(Word(2, [(0, big + 101)]), Provenance("explicit-limit"))
    total, truncated = distance_sum(x, y, big, 64)
    assert total == 1.0  # the single disagreement at position 1
    assert truncated == big - 1


def test_cesaro_examples():
    x = view("1" * 8 + "0" * 72)
    y = view("0" * 80)
    rep = cesaro_avg_distance(x, y, 8, depth=16)
    assert rep.value == 1.0  # every early step differs at the first symbol
    same = cesaro_avg_distance(x, x, 10, depth=16)
    assert same.value == 0.0
    assert math.isclose(same.truncation_correction, 1 / 17)


def test_banach_avg_dominates_initial_window():
    rng = random.Random(107)
    for _ in range(100):
        n = rng.randint(150, 400)
        x, y = random_view(rng, n), random_view(rng, n)
        L = rng.randint(10, 80)
        b = banach_avg_distance(x, y, L, depth=16)
        v, _ = step_distance_array(x, y, L, 16)
        assert b.value >= float(v.sum()) / L - 1e-12


def test_banach_avg_requires_window_room():
    x, y = view("0" * 50), view("0" * 50)
    with pytest.raises(HorizonError):
        banach_avg_distance(x, y, 64, depth=16)


# -- diameters -----------------------------------------------------------


def naive_diam_sequence(members, steps):
    # a found difference at nd <= H dominates every agreeing pair's bias
    # bound 1/(H-i+1), so a step is truncated only when NO pair separates
    values = []
    truncated = []
    H = min(m.horizon for m in members)
    arrs = [m.prefix.expand().astype(np.int64)[:H] for m in members]
    for i in range(steps):
        best = 0.0
        for a in range(len(arrs)):
            for b in range(a + 1, len(arrs)):
                diff = np.nonzero(arrs[a][i:] != arrs[b][i:])[0]
                if len(diff):
                    best = max(best, 1.0 / (int(diff[0]) + 1))
        values.append(best)
        truncated.append(len(arrs) > 1 and best == 0.0)
    return np.array(values), np.array(truncated)


def test_diam_sequence_matches_naive_pairwise():
    rng = random.Random(211)
    for _ in range(120):
        count = rng.randint(1, 6)
        n = rng.randint(30, 200)
        members = [random_view(rng, n) for _ in range(count)]
        steps = rng.randint(1, n)
        got_v, got_t = diam_sequence(members, steps)
        want_v, want_t = naive_diam_sequence(members, steps)
        assert np.array_equal(got_v, want_v)
        if count > 1:
            assert (got_t == want_t).all()


def test_diam_singleton_is_zero():
    v, t = diam_sequence([view("0101")], 4)
    assert (v == 0).all()
    assert not t.any()


def test_diam_monotone_under_member_inclusion():
    rng = random.Random(223)
    for _ in range(60):
        n = 120
        members = [random_view(rng, n) for _ in range(4)]
        small, _ = diam_sequence(members[:2], 50)
        large, _ = diam_sequence(members, 50)
        assert (large >= small - 1e-15).all()


def test_sensitivity_times_threshold_monotone():
    rng = random.Random(227)
    members = [random_view(rng, 200) for _ in range(4)]
    weak = sensitivity_times(members, 0.25, 100)
    strong = sensitivity_times(members, 0.5, 100)
    assert set(strong.members.tolist()) <= set(weak.members.tolist())


def test_sensitivity_witness_family(s3):
    horizon = 600
    fam = s3.witness_family(0, 27, count=horizon - 28, horizon=horizon)
    members = fam + [s3.shift_view(0, horizon)]
    sens = sensitivity_times(members, 0.5, horizon - 1)
    assert sens.contains_range(28, horizon - 2)


def test_diam_mean_avg_cases():
    assert diam_mean_avg([view("0" * 30)], 10).value == 0.0
    two = [view("0" * 30), view("0" * 30)]
    assert diam_mean_avg(two, 10).value == 0.0


def test_sensitivity_singleton_is_empty():
    assert len(sensitivity_times([view("0101" * 8)], 0.1, 16)) == 0


def test_diam_mean_of_witness_family_near_half_or_more(s3):
    # past the shared block the family separates fully, so the running
    # average dominates (n - m - s) / n at threshold 1/2 scale
    n, m, s = 400, 0, 27
    fam = s3.witness_family(m, s, count=n - s, horizon=n + 4)
    members = fam + [s3.shift_view(m, n + 4)]
    rep = diam_mean_avg(members, n)
    assert rep.value >= (n - m - s) / (2 * n)


# -- conversion inequalities ---------------------------------------------


def test_mean_to_density_zero_sequence():
    rep = mean_to_density_check([0.0] * 50, 0.25, 1, sqrt_delta=0.5)
    assert rep.passed
    sides = {w["side"]: w for w in rep.witnesses}
    assert sides["mean->density"]["premise_holds"]
    assert sides["density->mean"]["premise_holds"]


def test_mean_to_density_boundary_case():
    M = 3
    delta = M / (M + 1)
    rep = mean_to_density_check([float(M)] * 40, delta, M)
    assert rep.passed


def test_mean_to_density_rejects_bad_input():
    with pytest.raises(ParameterError):
        mean_to_density_check([2.0], 0.5, 1)
    with pytest.raises(ParameterError):
        mean_to_density_check([0.5], 0.0, 1)


def test_mean_to_density_randomized():
    rng = random.Random(1009)
    for _ in range(300):
        length = rng.randint(1, 60)
        M = rng.choice([1, 2])
        a = [rng.randint(0, M * 64) / 64 for _ in range(length)]
        r = rng.randint(1, 64) / 64
        rep = mean_to_density_check(a, r * r, M, sqrt_delta=r)
        assert rep.passed


# -- classification ------------------------------------------------------


def test_classify_periodic_point_is_mean_equicontinuous(s4):
    lv1, lv2 = s4.schedule.level(1), s4.schedule.level(2)
    period = lv1.len_a + lv2.len_a
    horizon = 4096
    p = s4.periodic_point(1, 0, horizon)
    la = LanguageApprox(s4.transitive_prefix(s4.schedule.level(4).len_a).prefix)
    la.register_special(s4.periodic_point(1, 0, horizon))
    rep = classify_point(la, p, epsilon=0.35, n_or_L=512, mode="cesaro",
                         sample_budget=8)
    assert rep.verdict in ("PASS", "INCONCLUSIVE")


def test_classify_transitive_point_banach(s3, s3_language):
    p = s3.shift_view(0, 3 * 4443 + 64 + 32)
    rep = classify_point(s3_language, p, epsilon=0.3, n_or_L=4443,
                         mode="banach", sample_budget=6)
    assert rep.passed
    assert "witnessing_depth" in rep.params
