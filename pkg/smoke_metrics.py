import time

from tilemet import corpus
from tilemet.metrics import distance

t0 = time.time()


def clock(label):
    global t0
    now = time.time()
    print(f"  [{now - t0:6.1f}s] {label}")
    t0 = now


white = corpus.white_tiling()
black = corpus.black_tiling()
mixed = corpus.mixed_tiling()
yellow = corpus.yellow_tiling()
med = corpus.med_tiling()
red = corpus.red_tiling()

print("== geometric shortcut ==")
r = distance("wd", white, black)
print("wd(white, black):", r.value, r.notes)
assert r.value.lo == 0.0 and r.value.hi == 0.0
r = distance("wd", yellow, red)
print("wd(yellow, red):", r.value, r.notes)
assert r.value.hi == 0.0
clock("wd shortcuts")

print("== strong obstructions ==")
r = distance("sb", white, black, raw=True)
print("sb(white, black):", r)
assert r.raw.infinite and r.value.lo == r.value.hi == 1.0
r = distance("sa", yellow, red, raw=True)
print("sa(yellow, red):", r)
assert r.raw.infinite and r.value.lo == r.value.hi == 1.0
clock("obstructions")

print("== r1 golden: yellow vs med ==")
r = distance("sa", yellow, med, raw=True)
print("sa(yellow, med):", r, r.notes)
assert r.value.lo == r.value.hi == 1.0, r.value
assert abs(float(r.raw.lo) - 2.0) < 2e-3 and float(r.raw.hi) == 2.0, r.raw
clock("sa yellow/med")

print("== r2 golden: white vs mixed ==")
r = distance("sb", white, mixed, raw=True)
print("sb(white, mixed):", r, r.notes)
assert r.value.hi == 1.0 and r.value.lo > 1 - 1e-5, r.value
assert float(r.raw.hi) == 1.0 and float(r.raw.lo) > 1 - 2e-3, r.raw
clock("sb white/mixed")

print("== r2 golden: mixed vs black ==")
r = distance("sb", mixed, black, raw=True)
print("sb(mixed, black):", r, r.notes)
assert r.value.hi == 1.0 and r.value.lo > 1 - 1e-5, r.value
assert float(r.raw.hi) == 1.0 and float(r.raw.lo) > 1 - 2e-3, r.raw
clock("sb mixed/black")

print("== seeded defect pair ==")
a, b = corpus.random_defect_pair(7)
r = distance("sa", a, b)
print("sa(seeded 7):", r.value, r.witness, r.notes)
r2 = distance("sb", a, b)
print("sb(seeded 7):", r2.value, r2.witness, r2.notes)
assert r2.value.lo <= r.value.hi + 1e-9
clock("seeded pair sa+sb")

print("== wd on offset family ==")
t4 = corpus.offset_member(4)
tinf = corpus.offset_member(None)
r = distance("wd", t4, tinf)
print("wd(T_4, T_inf):", r.value, r.notes)
assert r.value.hi <= 0.25 + 1e-6, r.value
assert r.value.lo >= 0.25 - 1e-5, r.value
clock("wd offset n=4")

print("== sb on offset family ==")
r = distance("sb", t4, tinf)
print("sb(T_4, T_inf):", r.value, r.witness, r.notes)
assert r.value.lo >= 0.2, r.value
clock("sb offset n=4")

print("== wc small check: yellow vs med ==")
r = distance("wc", yellow, med)
print("wc(yellow, med):", r.value, r.notes)
clock("wc yellow/med")

print("ALL METRIC SMOKE TESTS PASSED")
