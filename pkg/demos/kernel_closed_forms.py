"""
Variational kernel: closed forms, tail bounds, and Monte Carlo cross-checks
===========================================================================

The test function behind the sieve weights is a product of scaled copies of
the profile 1/(base + slope*t).  Its mass, energy, and center have closed
forms; projection ratios and tail bounds follow.  Monte Carlo integrals over
the capped simplex confirm the formulas at each parameter point.
"""

import math

from sievelab import variational
from sievelab.variational import KernelParams

p = KernelParams(k=3, base=2.0, slope=10.0, cutoff=0.4)
f = variational.closed_forms(p)
print("k=3 defaults:  mass %.6f  energy %.6f  center %.6f"
      % (f.mass, f.energy, f.center))
print("relative tail bounds: %.4g / %.4g" % (f.tail1_rel, f.tail2_rel))

# Projection ratios (one and two coordinates integrated out) collapse to
# mass^2/(k*energy); the first keeps a (1 - tail) correction.
mr = variational.moment_ratios(p)
print("proj/square %.6f   biproj/proj %.6f"
      % (mr.proj_over_square, mr.biproj_over_proj))

# The large-k schedule picks base, slope, cutoff from k alone.  Its ratios,
# normalized by psi(k) log k / k, drift toward 1 from below.
print("\nschedule quotients (ratio / (psi(k) log k / k)):")
for k in (10**4, 10**6, 10**8):
    sp = variational.schedule_params(k)
    scale = (1.0 / math.log(math.log(k))) * math.log(k) / k
    q = variational.moment_ratios(sp).proj_over_square / scale
    print(f"  k=1e{int(math.log10(k))}: {q:.4f}")

# Monte Carlo over the capped simplex: estimates carry standard errors, and
# the exact quadrature ratio sits inside the error bars.
pb = KernelParams(k=2, base=2.0, slope=30.0, cutoff=1.2)
mc = variational.simplex_mc_integrals(pb, 10**5, seed=5)
exact = variational.projection_ratio_exact(pb)
est = mc.proj_square.value / mc.square.value
print("\nbinding-cap point k=2: MC proj/square %.5f vs exact %.5f" % (est, exact))
print("tail1 estimate %.3e <= bound %.3e"
      % (mc.tail1.value, variational.tail_bounds_absolute(pb)[0]))

# The frequency-domain identity ties the quadratic form to an integral
# against |hat f|^2; three built-in test functions verify it.
rep = variational.fourier_kernel_check()
for e in rep.entries:
    print(f"fourier {e.name}: |lhs - rhs| = {e.abs_diff:.2e}")
