"""Exact finite-word algebra over run-length-encoded binary (or small) alphabets.

Words are immutable and always stored in canonical RLE form: adjacent runs
carry distinct symbols and every run length is positive.  All public
positions are 1-based; lengths are plain Python ints checked against a
64-bit ceiling so that oversized constructions fail loudly instead of
silently producing wrong sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    AlphabetMismatchError,
    HorizonError,
    IndexRangeError,
    LengthOverflowError,
    ParameterError,
)

MAX_LENGTH = 2**63 - 1

#: expansion guard: Word.expand refuses beyond this many symbols
EXPAND_LIMIT = 50_000_000


def _check_length(n: int, context: str = "word"):
    if n > MAX_LENGTH:
        raise LengthOverflowError(f"{context}: length {n} exceeds 64-bit limit")
    return n


class RunBuilder:
    """Accumulates (symbol, count) runs, merging adjacent equal symbols."""

    __slots__ = ("_syms", "_lens", "total")

    def __init__(self):
        self._syms = []
        self._lens = []
        self.total = 0

    def append(self, symbol: int, count: int):
        if count < 0:
            raise ParameterError("negative run length")
        if count == 0:
            return
        if self._syms and self._syms[-1] == symbol:
            self._lens[-1] += count
        else:
            self._syms.append(symbol)
            self._lens.append(count)
        self.total = _check_length(self.total + count, "builder")

    def extend(self, word: "Word"):
        for s, c in word.runs:
            self.append(s, c)

    def extend_runs(self, runs: Iterable[tuple]):
        for s, c in runs:
            self.append(s, c)

    def build(self, alphabet_size: int) -> "Word":
        return Word(alphabet_size, tuple(zip(self._syms, self._lens)), _trusted=True)


class Word:
    """An immutable run-length-encoded word."""

    __slots__ = ("alphabet_size", "runs", "length", "_hash")

    def __init__(self, alphabet_size: int, runs: Sequence[tuple] = (), _trusted=False):
        if alphabet_size not in (2, 4):
            raise ParameterError(f"unsupported alphabet size {alphabet_size}")
        if _trusted:
            canon = tuple(runs)
        else:
            b = RunBuilder()
            for s, c in runs:
                if not 0 <= s < alphabet_size:
                    raise ParameterError(f"symbol {s} outside alphabet {alphabet_size}")
                b.append(s, c)
            canon = tuple(zip(b._syms, b._lens))
        object.__setattr__(self, "alphabet_size", alphabet_size)
        object.__setattr__(self, "runs", canon)
        object.__setattr__(self, "length", _check_length(sum(c for _, c in canon)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def empty(alphabet_size: int = 2) -> "Word":
        return Word(alphabet_size, ())

    @staticmethod
    def from_symbols(symbols: Iterable[int], alphabet_size: int = 2) -> "Word":
        b = RunBuilder()
        for s in symbols:
            if not 0 <= s < alphabet_size:
                raise ParameterError(f"symbol {s} outside alphabet {alphabet_size}")
            b.append(s, 1)
        return b.build(alphabet_size)

    @staticmethod
    def from_string(text: str, alphabet_size: int = 2) -> "Word":
        return Word.from_symbols((int(ch) for ch in text), alphabet_size)

    # -- RLE text format ----------------------------------------------
    # one line per word: ``alphabet=<k>; sym:count sym:count ...``

    def to_text(self) -> str:
        pairs = " ".join(f"{s}:{c}" for s, c in self.runs)
        return f"alphabet={self.alphabet_size};" + (f" {pairs}" if pairs else "")

    @staticmethod
    def from_text(line: str) -> "Word":
        line = line.strip()
        if not line.startswith("alphabet="):
            raise ParameterError(f"malformed RLE line: {line[:40]!r}")
        head, _, rest = line.partition(";")
        alphabet = int(head[len("alphabet="):])
        runs = []
        for tok in rest.split():
            s, _, c = tok.partition(":")
            runs.append((int(s), int(c)))
        w = Word(alphabet, runs)
        if w.runs != tuple(runs):
            raise ParameterError("RLE text not in canonical form")
        return w

    # -- basics --------------------------------------------------------

    def __len__(self):
        return self.length

    def __eq__(self, other):
        return (
            isinstance(other, Word)
            and self.alphabet_size == other.alphabet_size
            and self.runs == other.runs
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.alphabet_size, self.runs))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        if self.length <= 40:
            return f"Word({self.as_string()!r})"
        return f"Word(<{self.length} symbols, {len(self.runs)} runs>)"

    def as_string(self) -> str:
        if self.length > EXPAND_LIMIT:
            raise ParameterError(f"refusing to stringify {self.length} symbols")
        return "".join(str(s) * c for s, c in self.runs)

    def expand(self) -> np.ndarray:
        """Symbols as a uint8 array; guarded against huge words."""
        if self.length > EXPAND_LIMIT:
            raise ParameterError(f"refusing to expand {self.length} symbols")
        out = np.empty(self.length, dtype=np.uint8)
        pos = 0
        for s, c in self.runs:
            out[pos:pos + c] = s
            pos += c
        return out

    def symbol_at(self, pos: int) -> int:
        """Symbol at 1-based position ``pos``."""
        if not 1 <= pos <= self.length:
            raise IndexRangeError(f"position {pos} outside [1, {self.length}]")
        acc = 0
        for s, c in self.runs:
            acc += c
            if pos <= acc:
                return s
        raise AssertionError("unreachable")

    def count(self, symbol: int = 1) -> int:
        return sum(c for s, c in self.runs if s == symbol)

    def subword(self, start: int, length: int) -> "Word":
        """Extract ``length`` symbols starting at 1-based ``start`` by run slicing."""
        if length == 0:
            return Word.empty(self.alphabet_size)
        if length < 0 or start < 1 or start + length - 1 > self.length:
            raise IndexRangeError(
                f"slice [{start}, {start + length - 1}] outside [1, {self.length}]"
            )
        b = RunBuilder()
        acc = 0
        end = start + length - 1
        for s, c in self.runs:
            lo, hi = acc + 1, acc + c
            acc = hi
            if hi < start:
                continue
            take_lo = max(lo, start)
            take_hi = min(hi, end)
            if take_lo <= take_hi:
                b.append(s, take_hi - take_lo + 1)
            if hi >= end:
                break
        return b.build(self.alphabet_size)

    def starts_with(self, prefix: "Word") -> bool:
        if prefix.alphabet_size != self.alphabet_size:
            raise AlphabetMismatchError("alphabet mismatch in starts_with")
        if prefix.length > self.length:
            return False
        return self.subword(1, prefix.length) == prefix

    def ends_with(self, suffix: "Word") -> bool:
        if suffix.length > self.length:
            return False
        return self.subword(self.length - suffix.length + 1, suffix.length) == suffix


def concat(parts: Sequence[Word], alphabet_size: Optional[int] = None) -> Word:
    """Concatenate words; the empty list yields the empty word."""
    sizes = {w.alphabet_size for w in parts}
    if len(sizes) > 1:
        raise AlphabetMismatchError(f"mixed alphabet sizes {sorted(sizes)}")
    if alphabet_size is None:
        alphabet_size = sizes.pop() if sizes else 2
    elif sizes and sizes.pop() != alphabet_size:
        raise AlphabetMismatchError("explicit alphabet size disagrees with parts")
    b = RunBuilder()
    for w in parts:
        b.extend(w)
    return b.build(alphabet_size)


def power(w: Word, m: int) -> Word:
    """m-fold concatenation; power(w, 0) is the empty word."""
    if m < 0:
        raise ParameterError("negative power")
    _check_length(w.length * m, "power")
    b = RunBuilder()
    for _ in range(m):
        b.extend(w)
    return b.build(w.alphabet_size)


# ---------------------------------------------------------------------------
# occurrence counting


class OccurrenceIndex:
    """Prefix-count index answering symbol counts over ranges in O(log R)."""

    def __init__(self, word: Word, symbol: int = 1):
        self.word = word
        self.symbol = symbol
        syms = np.array([s for s, _ in word.runs], dtype=np.int64)
        lens = np.array([c for _, c in word.runs], dtype=np.int64)
        ends = np.cumsum(lens)
        self._run_ends = ends  # position of last symbol of each run
        self._run_syms = syms
        self._run_lens = lens
        hit = np.where(syms == symbol, lens, 0)
        self._prefix = np.concatenate([[0], np.cumsum(hit)])

    def _count_prefix(self, pos: int) -> int:
        """Occurrences of the designated symbol in [1, pos]."""
        if pos <= 0:
            return 0
        i = int(np.searchsorted(self._run_ends, pos, side="left"))
        c = int(self._prefix[i])
        if i < len(self._run_syms) and self._run_syms[i] == self.symbol:
            run_start = int(self._run_ends[i] - self._run_lens[i] + 1)
            c += pos - run_start + 1
        return c

    def count_range(self, i: int, j: int) -> int:
        """Count of the designated symbol at positions p with i <= p <= j."""
        if not 1 <= i <= j <= self.word.length:
            raise IndexRangeError(
                f"range [{i}, {j}] outside [1, {self.word.length}]"
            )
        return self._count_prefix(j) - self._count_prefix(i - 1)

    def total(self) -> int:
        return int(self._prefix[-1])

    def positions(self, lo: int = 1, hi: Optional[int] = None) -> np.ndarray:
        """1-based positions of the designated symbol inside [lo, hi]."""
        if hi is None:
            hi = self.word.length
        if hi < lo:
            return np.empty(0, dtype=np.int64)
        chunks = []
        for s, end, ln in zip(self._run_syms, self._run_ends, self._run_lens):
            if s != self.symbol:
                continue
            start = int(end) - int(ln) + 1
            a, b = max(start, lo), min(int(end), hi)
            if a <= b:
                chunks.append(np.arange(a, b + 1, dtype=np.int64))
        if not chunks:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(chunks)


def max_window_count(index: OccurrenceIndex, window: int) -> tuple:
    """Exact maximum designated-symbol count over all windows of ``window`` symbols.

    Runs a run-boundary sweep: an optimal window can always be chosen to
    start at the first symbol of a designated-symbol run (slide the
    rightmost optimum left inside the run) or to be flush against a word
    boundary.  Never expands the word.

    Returns (max_count, attaining 1-based start position).
    """
    w = index.word
    if not 1 <= window <= w.length:
        raise ParameterError(f"window {window} outside [1, {w.length}]")
    last_start = w.length - window + 1
    cands = {1, last_start}
    for s, end, ln in zip(index._run_syms, index._run_ends, index._run_lens):
        if s != index.symbol:
            continue
        start = int(end) - int(ln) + 1
        cands.add(start)
        cands.add(int(end) - window + 1)
    best = -1
    best_pos = 1
    for p in sorted(cands):
        if p < 1 or p > last_start:
            continue
        c = index.count_range(p, p + window - 1)
        if c > best:
            best, best_pos = c, p
    return best, best_pos


# ---------------------------------------------------------------------------
# comparisons


def first_difference(a: Word, b: Word, upto: Optional[int] = None) -> Optional[int]:
    """Smallest 1-based position where ``a`` and ``b`` disagree.

    Compares at most ``min(len(a), len(b), upto)`` symbols and returns None
    when they agree throughout that range.
    """
    if a.alphabet_size != b.alphabet_size:
        raise AlphabetMismatchError("alphabet mismatch in first_difference")
    limit = min(a.length, b.length)
    if upto is not None:
        limit = min(limit, upto)
    ia = ib = 0
    pos = 0
    off_a = off_b = 0
    while pos < limit:
        sa, ca = a.runs[ia]
        sb, cb = b.runs[ib]
        avail = min(ca - off_a, cb - off_b, limit - pos)
        if sa != sb:
            return pos + 1
        pos += avail
        off_a += avail
        off_b += avail
        if off_a == ca:
            ia += 1
            off_a = 0
        if off_b == cb:
            ib += 1
            off_b = 0
    return None


def diff_intervals(a: Word, b: Word, upto: Optional[int] = None):
    """Disagreement set of two words as merged 1-based inclusive intervals.

    Returns (lo_array, hi_array) covering exactly the positions p <= limit
    with a_p != b_p, where limit = min(len(a), len(b), upto).
    """
    if a.alphabet_size != b.alphabet_size:
        raise AlphabetMismatchError("alphabet mismatch in diff_intervals")
    limit = min(a.length, b.length)
    if upto is not None:
        limit = min(limit, upto)
    los, his = [], []
    ia = ib = 0
    pos = 0
    off_a = off_b = 0
    while pos < limit:
        sa, ca = a.runs[ia]
        sb, cb = b.runs[ib]
        avail = min(ca - off_a, cb - off_b, limit - pos)
        if sa != sb:
            lo, hi = pos + 1, pos + avail
            if los and his[-1] == lo - 1:
                his[-1] = hi
            else:
                los.append(lo)
                his.append(hi)
        pos += avail
        off_a += avail
        off_b += avail
        if off_a == ca:
            ia += 1
            off_a = 0
        if off_b == cb:
            ib += 1
            off_b = 0
    return np.array(los, dtype=np.int64), np.array(his, dtype=np.int64)


def find_occurrences(text: Word, pattern: Word, cap: int = 10_000,
                     start: int = 1) -> list:
    """1-based start positions where ``pattern`` occurs in ``text``.

    RLE-aware: interior pattern runs must match text runs exactly, boundary
    runs may sit inside longer text runs.  At most ``cap`` positions are
    returned, scanning left to right from ``start``.
    """
    if pattern.alphabet_size != text.alphabet_size:
        raise AlphabetMismatchError("alphabet mismatch in find_occurrences")
    if pattern.length == 0:
        raise ParameterError("empty pattern")
    if pattern.length > text.length:
        return []
    out = []
    pruns = pattern.runs
    truns = text.runs
    tstarts = []
    acc = 1
    for s, c in truns:
        tstarts.append(acc)
        acc += c
    if len(pruns) == 1:
        psym, plen = pruns[0]
        for (s, c), tpos in zip(truns, tstarts):
            if s != psym or c < plen:
                continue
            for p in range(tpos, tpos + c - plen + 1):
                if p < start:
                    continue
                out.append(p)
                if len(out) >= cap:
                    return out
        return out
    p0_sym, p0_len = pruns[0]
    pL_sym, pL_len = pruns[-1]
    interior = pruns[1:-1]
    for i, ((s, c), tpos) in enumerate(zip(truns, tstarts)):
        # pattern's first run ends where text run i ends
        if s != p0_sym or c < p0_len:
            continue
        cand = tpos + c - p0_len
        if cand < start:
            continue
        j = i + 1
        ok = True
        for isym, ilen in interior:
            if j >= len(truns) or truns[j] != (isym, ilen):
                ok = False
                break
            j += 1
        if not ok:
            continue
        if j >= len(truns):
            continue
        ls, lc = truns[j]
        if ls != pL_sym or lc < pL_len:
            continue
        out.append(cand)
        if len(out) >= cap:
            return out
    return out


def de_bruijn_word(order: int, alphabet_size: int = 2) -> Word:
    """A linear word containing every length-``order`` word over the alphabet.

    Classic Lyndon-word concatenation, with the first order-1 symbols
    appended so that the cyclic sequence reads off linearly.
    """
    if order < 1:
        raise ParameterError("order must be >= 1")
    k, n = alphabet_size, order
    seq = []
    a = [0] * k * n

    def db(t, p):
        if t > n:
            if n % p == 0:
                seq.extend(a[1:p + 1])
        else:
            a[t] = a[t - p]
            db(t + 1, p)
            for j in range(a[t - p] + 1, k):
                a[t] = j
                db(t + 1, t)

    db(1, 1)
    seq = seq + seq[:n - 1]
    return Word.from_symbols(seq, alphabet_size)


# ---------------------------------------------------------------------------
# truncated points


@dataclass(frozen=True)
class Provenance:
    """Where a truncated point came from.

    kind is one of: shift-of-transitive-point, periodic, explicit-limit,
    patched-system.  ``offset`` is the shift applied so far; ``period`` is
    set for periodic points.
    """

    kind: str
    offset: int = 0
    period: Optional[int] = None
    detail: str = ""

    def shifted(self, k: int) -> "Provenance":
        return Provenance(self.kind, self.offset + k, self.period, self.detail)


@dataclass(frozen=True)
class PointView:
    """A point known exactly up to a finite horizon.

    ``prefix`` holds the first ``horizon`` symbols; anything beyond is
    unknown and every consumer must account for that through truncation
    flags or explicit correction terms.
    """

    prefix: Word
    provenance: Provenance
    truncation_note: str = ""

    @property
    def horizon(self) -> int:
        return self.prefix.length

    @property
    def alphabet_size(self) -> int:
        return self.prefix.alphabet_size

    def symbol_at(self, pos: int) -> int:
        return self.prefix.symbol_at(pos)

    def shift(self, k: int) -> "PointView":
        """View of the point after k applications of the shift map."""
        if k < 0:
            raise ParameterError("negative shift")
        if k == 0:
            return self
        if k >= self.horizon:
            raise HorizonError(f"shift by {k} exhausts horizon {self.horizon}")
        return PointView(
            self.prefix.subword(k + 1, self.horizon - k),
            self.provenance.shifted(k),
            self.truncation_note,
        )

    def starts_with(self, u: Word) -> bool:
        return self.prefix.starts_with(u)

    def key(self):
        return (self.prefix.alphabet_size, self.prefix.runs)


def point_metric(x: PointView, y: PointView) -> tuple:
    """Shift-space distance between two truncated points.

    Returns (value, truncated).  Exact value 1/j when the prefixes first
    differ at position j within the shared horizon H = min(h_x, h_y);
    otherwise (0.0, True) and the true distance lies in [0, 1/(H+1)].
    """
    if x.alphabet_size != y.alphabet_size:
        raise AlphabetMismatchError("alphabet mismatch in point_metric")
    j = first_difference(x.prefix, y.prefix)
    if j is None:
        return 0.0, True
    return 1.0 / j, False
