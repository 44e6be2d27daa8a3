"""Build both recursive subshift families and inspect their schedules.

Family S3 interleaves solid 1-blocks with decorated spacer blocks; family
S4 grows around a minimal seed sequence and keeps dense periodic points.
The schedules fix the smallest gap parameters the recursions allow.
"""

from meansense import (
    GeneratorDescriptor,
    S3Construction,
    S4Construction,
    build_schedule_s3,
    build_schedule_s4,
    minimal_generator,
)

s3 = S3Construction(build_schedule_s3(4))
print("family S3 (minimal schedule):")
for lv in s3.schedule.levels:
    print(f"  level {lv.n}: k={lv.k:<20} |A|={lv.len_a:<12} |B|={lv.len_b:<20} t={lv.t}")
print("  A_1 =", s3.a_word(1).to_text())
print("  A_2 =", s3.a_word(2).to_text())
print("  B_2 holds", s3.b_word(2).count(1), "ones across",
      len(s3.b_word(2).runs), "runs")

print()
print("family S4 over three seed choices:")
for kind in ("constant-zero", "sturmian", "thue-morse"):
    base = GeneratorDescriptor(kind)
    s4 = S4Construction(build_schedule_s4(3, base))
    y8 = minimal_generator(base, 8).as_string()
    print(f"  seed {kind:13s} y[1..8]={y8}  B_2 = {s4.b_word(2).to_text()}")

s4 = S4Construction(build_schedule_s4(4, GeneratorDescriptor("constant-zero")))
pp = s4.periodic_point(1, 0, 48)
print()
print("a periodic point of S4 (level-1 cell, 48 symbols):",
      pp.prefix.as_string())
print("period:", pp.provenance.period)
