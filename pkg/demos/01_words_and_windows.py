"""Run-length words, occurrence counting, and exact window maxima.

Everything here stays in RLE: the last example sweeps a 140-million-symbol
word without ever expanding it.
"""

import time

from meansense import OccurrenceIndex, Word, concat, max_window_count, power
from meansense.constructions import S3Construction, build_schedule_s3

w = concat([Word.from_string("111"), power(Word.from_string("0"), 21),
            Word.from_string("111")])
print("word:", w.to_text(), "| length", w.length, "| ones", w.count(1))

idx = OccurrenceIndex(w)
print("ones in [1, 27]:", idx.count_range(1, 27))
print("ones in [4, 24]:", idx.count_range(4, 24))

cnt, pos = max_window_count(idx, 24)
print(f"densest 24-window holds {cnt} ones, first attained at position {pos}")

print()
print("same sweep over the deepest built prefix of the first family:")
c = S3Construction(build_schedule_s3(4))
x = c.transitive_prefix(c.schedule.level(4).len_a).prefix
t0 = time.time()
for L in (24, 4443):
    cnt, pos = max_window_count(OccurrenceIndex(x), L)
    print(f"  |x| = {x.length}: max ones per {L}-window = {cnt} (at {pos})")
print(f"  ... in {time.time() - t0:.3f}s, {len(x.runs)} runs, no expansion")
