"""Builders for the two recursive subshift families and their companions.

Family S3 (binary, cofinitely sensitive yet Banach-mean equicontinuous):

    A_1 = 111, B_1 = 000,
    A_{n+1} = A_n 0^{k_n} B_n 0^{k_n} A_n,
    B_{n+1} = (A_n 0^{i-1} 1 0^{|A_{n+1}|-i} for i = 1..|A_{n+1}|) ++ A_n 0^{|A_{n+1}|},
    with k_n >= n (2|A_n| + |B_n|).

Family S4 (binary, Devaney chaotic and almost mean equicontinuous), seeded
by a minimal generator y:

    A_1 = 101, B_1 = C_1 = y_1,
    A_{n+1} = A_n 0^{k_n} B_n 0^{k_n} A_n,
    B_{n+1} = C_{n+1} ++ (A_i 0^{|A_{i+1}|})^{n+1-i} for i = 1..n,
    with (1) k_m |B_n| > t_n |B_m| for all n < m, where t_n = |A_n|+2k_n+|B_n|,
    and (2) k_n >= n (2|A_n| + |B_n|).

In both families x = lim A_n 0^infinity generates the subshift as its orbit
closure.  Schedules fix the k_n; the default is the smallest choice
satisfying the constraints, and any user-supplied schedule is re-verified
before words are built.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .errors import (
    DepthError,
    LengthOverflowError,
    ParameterError,
    ResourceCapError,
    WitnessUnavailableError,
)
from .words import (
    MAX_LENGTH,
    PointView,
    Provenance,
    RunBuilder,
    Word,
    concat,
    power,
)

#: run-count guard for materializing a word (S3 B_4 would need ~5.6e8 runs)
BUILD_RUN_CAP = 2_000_000


# ---------------------------------------------------------------------------
# minimal generators


@dataclass(frozen=True)
class GeneratorDescriptor:
    """Seed sequence for the S4 family.

    kind: constant-zero | sturmian | thue-morse.  For sturmian the slope is
    the continued-fraction convergent of [0; a_1, a_2, ...] truncated at
    ``cf_depth`` terms (golden slope by default), kept rational so the
    coding is exact integer arithmetic.
    """

    kind: str
    cf_terms: Tuple[int, ...] = ()
    cf_depth: int = 40

    def __post_init__(self):
        if self.kind not in ("constant-zero", "sturmian", "thue-morse"):
            raise ParameterError(f"unknown generator kind {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "sturmian":
            terms = self.cf_terms or "golden"
            return f"sturmian(cf={terms}, depth={self.cf_depth})"
        return self.kind

    def to_json(self) -> dict:
        return {"kind": self.kind, "cf_terms": list(self.cf_terms),
                "cf_depth": self.cf_depth}

    @staticmethod
    def from_json(d: dict) -> "GeneratorDescriptor":
        return GeneratorDescriptor(d["kind"], tuple(d.get("cf_terms", ())),
                                   d.get("cf_depth", 40))


def _sturmian_slope(desc: GeneratorDescriptor) -> tuple:
    """Rational p/q approximating the slope from below-machine noise.

    Continued fraction [0; a_1, a_2, ...]; all-ones terms give the golden
    slope (sqrt(5)-1)/2 via Fibonacci convergents.
    """
    terms = desc.cf_terms if desc.cf_terms else tuple([1] * desc.cf_depth)
    num, den = 0, 1  # value of the empty tail
    for a in reversed(terms):
        if a < 1:
            raise ParameterError("continued-fraction terms must be >= 1")
        # x -> 1 / (a + x)
        num, den = den, a * den + num
    if not 0 < num < den:
        raise ParameterError("sturmian slope must lie strictly in (0, 1)")
    return num, den


def minimal_generator(desc: GeneratorDescriptor, horizon: int) -> Word:
    """Prefix y_1 ... y_horizon of the seed point, deterministically."""
    if horizon < 1:
        raise ParameterError("horizon must be >= 1")
    if desc.kind == "constant-zero":
        return Word(2, [(0, horizon)])
    if desc.kind == "thue-morse":
        syms = [bin(j).count("1") & 1 for j in range(horizon)]
        return Word.from_symbols(syms, 2)
    p, q = _sturmian_slope(desc)
    # y_j = floor((j+1) a) - floor(j a), exact in integers
    syms = [((j + 1) * p) // q - (j * p) // q for j in range(1, horizon + 1)]
    return Word.from_symbols(syms, 2)


# ---------------------------------------------------------------------------
# schedules


@dataclass(frozen=True)
class Level:
    n: int
    k: int
    len_a: int
    len_b: int
    t: int


@dataclass(frozen=True)
class Schedule:
    """Per-level parameters of one construction, lengths included."""

    construction: str  # "S3" | "S4"
    levels: Tuple[Level, ...]
    base: Optional[GeneratorDescriptor] = None

    @property
    def depth(self) -> int:
        return len(self.levels)

    def level(self, n: int) -> Level:
        if not 1 <= n <= self.depth:
            raise ParameterError(f"level {n} outside schedule depth {self.depth}")
        return self.levels[n - 1]

    def to_json(self) -> dict:
        d = {
            "construction": self.construction,
            "base": self.base.to_json() if self.base else None,
            "levels": [
                {"n": l.n, "k_n": l.k, "len_A": l.len_a, "len_B": l.len_b,
                 "t_n": l.t}
                for l in self.levels
            ],
        }
        return d

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")) + "\n"

    @staticmethod
    def from_json(d: dict) -> "Schedule":
        levels = tuple(
            Level(l["n"], l["k_n"], l["len_A"], l["len_B"], l["t_n"])
            for l in d["levels"]
        )
        base = GeneratorDescriptor.from_json(d["base"]) if d.get("base") else None
        sched = Schedule(d["construction"], levels, base)
        verify_schedule(sched)
        return sched


def _checked(value: int, level: int, what: str) -> int:
    if value > MAX_LENGTH:
        raise LengthOverflowError(
            f"{what} at level {level} is {value}, beyond the 64-bit limit",
            level=level,
        )
    return value


def _next_lengths_s3(len_a: int, len_b: int, k: int, level: int) -> tuple:
    la = _checked(2 * len_a + 2 * k + len_b, level + 1, "|A|")
    lb = _checked((la + 1) * (len_a + la), level + 1, "|B|")
    return la, lb


def build_schedule_s3(depth: int) -> Schedule:
    """Smallest S3 schedule: k_n = n (2|A_n| + |B_n|) exactly."""
    if depth < 1:
        raise ParameterError("depth must be >= 1")
    levels = []
    len_a, len_b = 3, 3
    for n in range(1, depth + 1):
        k = _checked(n * (2 * len_a + len_b), n, "k")
        t = _checked(len_a + 2 * k + len_b, n, "t")
        levels.append(Level(n, k, len_a, len_b, t))
        if n < depth:
            len_a, len_b = _next_lengths_s3(len_a, len_b, k, n)
    return Schedule("S3", tuple(levels))


def build_schedule_s4(depth: int, base: GeneratorDescriptor,
                      k_min: Optional[Dict[int, int]] = None) -> Schedule:
    """Greedy smallest S4 schedule for the given base generator.

    At each level m the two constraints pin k_m from below; |B_m| depends
    only on k_1..k_{m-1}, so the greedy order is well defined.  ``k_min``
    optionally raises individual levels (still re-verified): larger k_m
    values sharpen the level-m density ratio (|A_m|+|B_m|)/t_m, which the
    mean-equicontinuity reports need.
    """
    if depth < 1:
        raise ParameterError("depth must be >= 1")
    k_min = k_min or {}
    levels = []
    lens_a = [3]
    len_b = 1
    ks, ts, lens_b = [], [], []
    for n in range(1, depth + 1):
        len_a = lens_a[-1]
        cand = n * (2 * len_a + len_b)
        for t_prev, b_prev in zip(ts, lens_b):
            cand = max(cand, (t_prev * len_b) // b_prev + 1)
        cand = max(cand, k_min.get(n, 0))
        k = _checked(cand, n, "k")
        t = _checked(len_a + 2 * k + len_b, n, "t")
        levels.append(Level(n, k, len_a, len_b, t))
        ks.append(k)
        ts.append(t)
        lens_b.append(len_b)
        if n < depth:
            la_next = _checked(2 * len_a + 2 * k + len_b, n + 1, "|A|")
            lens_a.append(la_next)
            lb_next = (n + 1) + sum(
                (n + 1 - i) * (lens_a[i - 1] + lens_a[i]) for i in range(1, n + 1)
            )
            len_b = _checked(lb_next, n + 1, "|B|")
    sched = Schedule("S4", tuple(levels), base)
    verify_schedule(sched)
    return sched


def verify_schedule(sched: Schedule):
    """Re-check every schedule constraint from scratch; raise on violation."""
    levels = sched.levels
    for lv in levels:
        if lv.t != lv.len_a + 2 * lv.k + lv.len_b:
            raise ParameterError(f"level {lv.n}: t inconsistent with lengths")
        if lv.k < lv.n * (2 * lv.len_a + lv.len_b):
            raise ParameterError(
                f"level {lv.n}: k = {lv.k} below floor "
                f"{lv.n * (2 * lv.len_a + lv.len_b)}"
            )
    # length recursions
    for prev, cur in zip(levels, levels[1:]):
        if cur.len_a != 2 * prev.len_a + 2 * prev.k + prev.len_b:
            raise ParameterError(f"level {cur.n}: |A| breaks the recursion")
        if sched.construction == "S3":
            expect = (cur.len_a + 1) * (prev.len_a + cur.len_a)
            if cur.len_b != expect:
                raise ParameterError(f"level {cur.n}: |B| breaks the recursion")
    if sched.construction == "S4":
        lens_a = [lv.len_a for lv in levels]
        for idx, lv in enumerate(levels[1:], start=1):
            n = idx + 1
            expect = n + sum(
                (n - i) * (lens_a[i - 1] + lens_a[i]) for i in range(1, n)
            )
            if lv.len_b != expect:
                raise ParameterError(f"level {n}: |B| breaks the recursion")
        # strict cross-level ratio condition, integer arithmetic only
        for hi in levels:
            for lo in levels:
                if lo.n >= hi.n:
                    continue
                if hi.k * lo.len_b <= lo.t * hi.len_b:
                    raise ParameterError(
                        f"levels ({lo.n}, {hi.n}): ratio condition fails: "
                        f"k_{hi.n} |B_{lo.n}| = {hi.k * lo.len_b} "
                        f"<= t_{lo.n} |B_{hi.n}| = {lo.t * hi.len_b}"
                    )


# ---------------------------------------------------------------------------
# word builders


class _ConstructionBase:
    """Caches level words and exposes the shared transitive-point views."""

    def __init__(self, schedule: Schedule):
        verify_schedule(schedule)
        self.schedule = schedule
        self._a: Dict[int, Word] = {}
        self._b: Dict[int, Word] = {}

    # subclasses fill _a[1], _b[1] and _build_b(n)

    def a_word(self, n: int) -> Word:
        """A_n, built recursively with run-count guards."""
        lv = self.schedule.level(n)
        if n not in self._a:
            prev_a = self.a_word(n - 1)
            prev_b = self.b_word(n - 1)
            k = self.schedule.level(n - 1).k
            b = RunBuilder()
            b.extend(prev_a)
            b.append(0, k)
            b.extend(prev_b)
            b.append(0, k)
            b.extend(prev_a)
            w = b.build(2)
            if w.length != lv.len_a:
                raise AssertionError(
                    f"A_{n}: built length {w.length} != schedule {lv.len_a}"
                )
            self._a[n] = w
        return self._a[n]

    def b_word(self, n: int) -> Word:
        lv = self.schedule.level(n)
        if n not in self._b:
            w = self._build_b(n)
            if w.length != lv.len_b:
                raise AssertionError(
                    f"B_{n}: built length {w.length} != schedule {lv.len_b}"
                )
            self._b[n] = w
        return self._b[n]

    def level_words(self, n: int) -> tuple:
        """(A_n, B_n) for a built level."""
        return self.a_word(n), self.b_word(n)

    def transitive_prefix(self, horizon: int) -> PointView:
        """Prefix of x = lim A_n 0^infinity.

        Every A_{n+1} starts with A_n, so the prefix is exact for any
        horizon <= |A_depth|; beyond the deepest A the point continues with
        0^{k_depth}, which extends the exactly-known range by k_depth.
        """
        if horizon < 1:
            raise ParameterError("horizon must be >= 1")
        top = self.schedule.level(self.schedule.depth)
        if horizon > top.len_a + top.k:
            raise DepthError(
                f"horizon {horizon} beyond |A_{top.n}| + k_{top.n} = "
                f"{top.len_a + top.k}; build a deeper schedule"
            )
        n = 1
        while self.schedule.level(n).len_a < min(horizon, top.len_a):
            n += 1
        a = self.a_word(n)
        if horizon <= a.length:
            w = a.subword(1, horizon)
        else:
            b = RunBuilder()
            b.extend(a)
            b.append(0, horizon - a.length)
            w = b.build(2)
        return PointView(
            w,
            Provenance("shift-of-transitive-point", offset=0),
            truncation_note=(
                f"x continues A_{top.n} 0^{{k_{top.n}}} B_{top.n} ... beyond "
                f"the horizon"
            ),
        )

    def shift_view(self, offset: int, horizon: int) -> PointView:
        """View of sigma^offset(x) over ``horizon`` symbols."""
        base = self.transitive_prefix(offset + horizon)
        return PointView(
            base.prefix.subword(offset + 1, horizon),
            Provenance("shift-of-transitive-point", offset=offset),
            base.truncation_note,
        )


class S3Construction(_ConstructionBase):
    def __init__(self, schedule: Schedule):
        if schedule.construction != "S3":
            raise ParameterError("S3Construction needs an S3 schedule")
        super().__init__(schedule)
        self._a[1] = Word(2, [(1, 3)])
        self._b[1] = Word(2, [(0, 3)])

    def _build_b(self, n: int) -> Word:
        # B_n strings |A_n|+1 blocks of A_{n-1} decorated with a roaming 1;
        # emitted run by run, never via expanded concatenation.
        len_a = self.schedule.level(n).len_a
        prev_a = self.a_word(n - 1)
        est_runs = (len_a + 1) * (len(prev_a.runs) + 3)
        if est_runs > BUILD_RUN_CAP:
            raise ResourceCapError(
                f"B_{n} needs about {est_runs} runs, beyond the build cap",
                required=est_runs,
            )
        b = RunBuilder()
        for i in range(1, len_a + 1):
            b.extend(prev_a)
            b.append(0, i - 1)
            b.append(1, 1)
            b.append(0, len_a - i)
        b.extend(prev_a)
        b.append(0, len_a)
        return b.build(2)

    # -- witness machinery ---------------------------------------------

    def suffix_alignments(self, m: int, s_min: int = 1, cap: int = 8) -> list:
        """Ways to read x_{[m+1, m+s]} as a suffix of a built A_i.

        Returns (i, s) pairs with s >= s_min, smallest s first.  x_{[m+1, m+s]}
        is a suffix of A_i exactly when some A_i occurrence in x ends at
        position m+s with its start at or before m+1; scanning occurrence
        ends beyond m surfaces the choices instead of guessing one.
        """
        from .words import find_occurrences

        out = []
        depth = self.schedule.depth
        host = self.a_word(depth)
        for i in range(1, depth + 1):
            ai = self.a_word(i)
            if s_min > ai.length:
                continue
            start = max(1, m + s_min - ai.length + 1)
            for pos in find_occurrences(host, ai, cap=16, start=start):
                end = pos + ai.length - 1
                s = end - m
                if s_min <= s <= ai.length:
                    out.append((i, s))
                if len(out) >= cap * 4:
                    break
        out = sorted(set(out), key=lambda p: (p[1], p[0]))
        return out[:cap]

    def witness_family(self, m: int, s: int, count: int, horizon: int) -> list:
        """The points w 0^j 1 0^... for j < count, w = x_{[m+1, m+s]}.

        Precondition: w is a suffix of some built A_i, which makes each of
        these points a limit of shifts of x (the decorated blocks of every
        deeper B realize w 0^j 1).  Raises WitnessUnavailableError otherwise.
        """
        if s < 1 or count < 1:
            raise ParameterError("s and count must be >= 1")
        w = self.shift_view(m, s).prefix
        align = None
        for i in range(1, self.schedule.depth + 1):
            ai = self.a_word(i)
            if s <= ai.length and ai.ends_with(w):
                align = i
                break
        if align is None:
            raise WitnessUnavailableError(
                f"x[{m + 1}..{m + s}] is not a suffix of any built A_i; "
                f"try suffix_alignments({m})"
            )
        if horizon < s + count + 1:
            raise ParameterError("horizon too small for the requested family")
        out = []
        note = (
            f"member of the cylinder of x[{m + 1}..{m + s}] because A_{align} "
            f"ends with it and each deeper decorated block realizes the "
            f"0^j 1 tail"
        )
        for j in range(count):
            b = RunBuilder()
            b.extend(w)
            b.append(0, j)
            b.append(1, 1)
            b.append(0, horizon - s - j - 1)
            out.append(
                PointView(b.build(2), Provenance("explicit-limit", detail=f"j={j}"),
                          note)
            )
        return out


class S4Construction(_ConstructionBase):
    def __init__(self, schedule: Schedule):
        if schedule.construction != "S4":
            raise ParameterError("S4Construction needs an S4 schedule")
        if schedule.base is None:
            raise ParameterError("S4 schedule must carry a base generator")
        super().__init__(schedule)
        self.base = schedule.base
        y1 = minimal_generator(self.base, 1)
        self._a[1] = Word(2, [(1, 1), (0, 1), (1, 1)])
        self._b[1] = y1

    def _build_b(self, n: int) -> Word:
        c_n = minimal_generator(self.base, n)
        b = RunBuilder()
        b.extend(c_n)
        for i in range(1, n):
            ai = self.a_word(i)
            gap = self.schedule.level(i + 1).len_a
            for _ in range(n - i):
                b.extend(ai)
                b.append(0, gap)
        return b.build(2)

    def periodic_point(self, n: int, t: int, horizon: int) -> PointView:
        """Prefix of sigma^t (A_n 0^{|A_{n+1}|})^infinity."""
        if n + 1 > self.schedule.depth:
            raise ParameterError(f"periodic level {n} needs schedule depth {n + 1}")
        period = self.schedule.level(n).len_a + self.schedule.level(n + 1).len_a
        if not 0 <= t < period:
            raise ParameterError(f"offset {t} outside [0, {period})")
        b = RunBuilder()
        b.extend(self.a_word(n))
        b.append(0, self.schedule.level(n + 1).len_a)
        cell = b.build(2)
        reps = (t + horizon + period - 1) // period + 1
        full = power(cell, reps)
        return PointView(
            full.subword(t + 1, horizon),
            Provenance("periodic", offset=t, period=period),
            truncation_note=f"period {period} repeats forever",
        )


# ---------------------------------------------------------------------------
# patched system: shift on a base subshift, everything else resets to y


def patched_point(symbols, horizon: int, note: str = "") -> PointView:
    """A point of the 4-letter patched system, given explicitly."""
    w = Word.from_symbols(symbols, 4) if not isinstance(symbols, Word) else symbols
    if w.length < horizon:
        raise ParameterError("fewer symbols than the requested horizon")
    return PointView(w.subword(1, horizon), Provenance("patched-system"), note)


def patched_step(p: PointView, y_prefix: Word) -> PointView:
    """One application of the patched map.

    Points over {0,1} shift; points over {2,3} map to the fixed target y
    (given as a prefix).  The first symbol decides the branch since the
    phase space only contains pure-{0,1} and pure-{2,3} points.
    """
    if p.alphabet_size != 4:
        raise ParameterError("patched system uses alphabet size 4")
    if p.horizon == 0:
        from .errors import HorizonError

        raise HorizonError("patched_step on an exhausted view")
    lead = p.symbol_at(1)
    if lead in (2, 3):
        if y_prefix.alphabet_size != 4:
            y_prefix = Word(4, y_prefix.runs)
        return PointView(
            y_prefix,
            Provenance("patched-system", detail="reset-to-y"),
            "reset branch: the whole {2,3} cylinder maps to y",
        )
    return PointView(
        p.prefix.subword(2, p.horizon - 1),
        p.provenance.shifted(1),
        p.truncation_note,
    )
