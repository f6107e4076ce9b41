import time

from tilemet.corpus import offset_member
from tilemet.metrics import d_wd

tinf = offset_member(None)
for n in (4, 64, 32):
    t0 = time.time()
    rep = d_wd(offset_member(n), tinf)
    print(f"wd(T{n},Tinf) {rep.value} {time.time() - t0:.1f}s", flush=True)
