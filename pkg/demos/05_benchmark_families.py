"""The two generated benchmark families and their decompositions.

* ps(n): 2n-2 quadrics in 2(n-2)+2 variables; two blocks share the two
  z-variables and reuse one coefficient array, forcing a positive-
  dimensional "pseudo-singular" locus next to the expected points.
* sos-type systems: a sum of squared quadrics and its partial
  derivatives; the shared-vanishing locus of the quadrics is a
  singular locus of the hypersurface, again sitting next to honest
  critical points.

Both decompose into exactly two cells: one positive-dimensional, one
zero-dimensional.

Run:  python demos/05_benchmark_families.py
"""

import random
import time

from equidim import DecompConfig, equidim, gen_ps, gen_sos

for name, system in [
    ("ps(4)", gen_ps(4, random.Random(0))),
    ("sos in 4 vars, 2 squares", gen_sos(2, 4, random.Random(0))),
    ("sos in 4 vars, 3 squares", gen_sos(3, 4, random.Random(0))),
]:
    ring = system.ring()
    polys = system.polynomials(ring)
    t = time.time()
    out = equidim(polys, ring, DecompConfig(seed=1))
    dt = time.time() - t
    anns = ", ".join(f"(dim {d}, deg {k})" for d, k in out.annotations)
    print(f"{name}: {len(polys)} equations in {ring.nvars} variables")
    print(f"    -> {len(out)} cells: {anns}   [{dt:.2f}s]")

print("\nsystem file format (ps(3) shown):")
print(gen_ps(3, random.Random(5)).to_text())
