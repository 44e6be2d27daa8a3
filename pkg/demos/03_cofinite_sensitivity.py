"""Cofinite sensitivity of family S3, witnessed at horizon 100k+.

Inside any cylinder the family of points "shared block, then j zeros, then
a lone 1" forces the shifted set to have diameter 1 at every late step: the
set of separation times misses only an initial segment.
"""

from meansense import sensitivity_times
from meansense.constructions import S3Construction, build_schedule_s3

c = S3Construction(build_schedule_s3(4))
horizon = 120_000
m, s = 0, 27  # the cylinder of the level-2 block
family = c.witness_family(m, s, horizon - s - 1, horizon)
members = family + [c.shift_view(m, horizon)]
print(f"cylinder block length {s}, witness family of {len(family)} points")

times = sensitivity_times(members, 0.5, horizon - 1)
print(f"steps with diameter > 1/2: {len(times)} of {horizon - 1}")
print("first separating step:", int(times.members[0]))
print("tail covered completely:",
      times.contains_range(m + s + 1, horizon - 2))
print()
print("so the separation-time set of this cylinder misses only the first",
      m + s, "steps — and the same construction works inside every cylinder.")
