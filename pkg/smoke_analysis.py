import time
from fractions import Fraction

from tilemet.analysis import (
    DistanceCache,
    cauchy_limit,
    check_axioms,
    check_flc,
    check_inequalities,
    flc_constants,
    koenig_limit,
    shift_continuity_check,
    weak_ratio_survey,
)
from tilemet.corpus import (
    cauchy_member,
    lattice_tiling,
    named_tiling,
    offset_member,
    random_defect_pair,
    white_tiling,
    yellow_tiling,
)
from tilemet.descriptions import canonical_key
from tilemet.vec import Ball, ORIGIN, Vec

t0 = time.time()


def stamp(msg):
    print(f"[{time.time() - t0:7.1f}s] {msg}", flush=True)


# --- check_flc on a single periodic tiling
rep = check_flc(white_tiling(), Fraction(8))
stamp(f"flc white: {rep}")
assert rep.flc is True, rep
assert len(rep.census) == 4, [p.signature for p in rep.census]

# --- census growth across offset members
members = [offset_member(n) for n in (2, 4, 8)]
rep2 = check_flc(members, Fraction(8))
stamp(f"flc offset family: {rep2}")
assert rep2.flc is False, rep2

# --- defect tiling certified census
rep3 = check_flc(yellow_tiling(), Fraction(24))
stamp(f"flc yellow: {rep3}")
assert rep3.flc is True, rep3

# --- constants over the simple corpus
descs = [named_tiling(n) for n in ("white", "black", "lattice", "yellow")]
t = time.time()
consts = flc_constants(descs, Fraction(24))
stamp(f"constants over white/black/lattice/yellow ({time.time()-t:.1f}s): {consts}")
assert abs(consts.c0.lo - 1 / 3) < 1e-12, consts.c0
assert consts.c1.infinite, consts.c1
assert consts.c.lo <= consts.c0.hi and consts.c.lo <= consts.c2.hi

# --- koenig on an eventually alternating family
fam = [lattice_tiling() if i % 2 == 0 else yellow_tiling() for i in range(24)]
t = time.time()
kr = koenig_limit(fam, 6)
stamp(f"koenig ({time.time()-t:.1f}s): {kr}")
assert kr.ray_nested
assert len(kr.ray) == 7
assert all(len(level) == 2 for level in kr.tree.levels[1:]), [
    len(level) for level in kr.tree.levels
]

# --- cauchy on the contracting family
fam2 = [cauchy_member(n) for n in range(1, 14)]
t = time.time()
cr = cauchy_limit(fam2, depth=11)
stamp(f"cauchy ({time.time()-t:.1f}s): {cr}")
assert len(cr.stages) == 12, len(cr.stages)
assert len(cr.chain_checked) == 11
for k, st in enumerate(cr.stages):
    assert st.s == Fraction(3, 2 ** (k + 2)), (k, st.s)
    assert st.x == Vec(-Fraction(1, 2 ** (k + 2)), 0), (k, st.x)
shifted = lattice_tiling().translate(Vec(Fraction(1, 2**13), 0))
want = shifted.k_patch(Ball(ORIGIN, cr.window_radius))
assert cr.window == want, "window mismatch"
assert canonical_key(cr.limit_frame) == canonical_key(shifted)
assert float(Fraction(1, 2**13)) <= cr.tail_bound
mat = sum("materialized" in c for c in cr.chain_checked)
stamp(f"cauchy chain: {mat} materialized, {len(cr.chain_checked)-mat} certificate")
assert mat >= 3

# --- quick axioms on a small pair set
cache = DistanceCache()
Tw, Tm = named_tiling("white"), named_tiling("mixed")
Ty, Td = named_tiling("yellow"), named_tiling("med")
Tr = named_tiling("red")
pairs = [("yellow/med", Ty, Td), ("med/red", Td, Tr), ("yellow/red", Ty, Tr)]
triples = [("yellow/med/red", Ty, Td, Tr)]
t = time.time()
ax = check_axioms("sa", pairs, triples, cache=cache)
stamp(f"axioms sa ({time.time()-t:.1f}s): {ax}")
assert not ax.failures, [str(r) for r in ax.failures]
assert ax.expected_failures, "raw triangle violation should be detected"
for r in ax.expected_failures:
    stamp(f"  expected: {r}")

t = time.time()
ineq = check_inequalities(pairs, cache=cache)
stamp(f"inequalities ({time.time()-t:.1f}s): {ineq}")
assert not ineq.failures, [str(r) for r in ineq.failures]

survey = weak_ratio_survey(pairs, cache=cache)
stamp(f"survey: {survey}")

# --- shift continuity, few samples
cases = [("lattice", lattice_tiling()), ("defect", random_defect_pair(3)[0])]
t = time.time()
sc = shift_continuity_check(cases, samples=10, seed=0)
stamp(f"shift continuity 10 samples ({time.time()-t:.1f}s): {sc}")
assert not sc.failures, sc.failures[:2]

stamp("ALL ANALYSIS SMOKE TESTS PASSED")
