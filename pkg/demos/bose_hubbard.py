"""One site against the rest in a Bose-Hubbard superfluid.

In the U = 0 ground state all N atoms share the uniform orbital, so the
occupation of a single site is binomial. The Schmidt coefficients across the
single-site cut are square roots of that binomial, and the negativity follows.
A Mott insulator, by contrast, is a product over sites.
"""

import warnings

from entorder.bh import (
    LowConfidenceWarning,
    MottSpec,
    SuperfluidSpec,
    bh_odlro_correlator,
    bh_order_parameter_r,
    mott_state_vector,
    single_site_negativity,
    site_bipartition,
    superfluid_negativity_clt,
    superfluid_negativity_exact,
    superfluid_negativity_poisson_limit,
    superfluid_schmidt,
    superfluid_state_vector,
)
from entorder.measures import negativity
from entorder.tensor import projector, schmidt_decompose

s = SuperfluidSpec(3, 3)
psi, basis = superfluid_state_vector(s)
mat = site_bipartition(psi, basis, 0)
print(f"N={s.N}, M={s.M}: {len(basis)} occupation states")
print("Schmidt, closed form :", superfluid_schmidt(s).round(9))
print("Schmidt, SVD         :", schmidt_decompose(mat.ravel(), mat.shape).round(9))
print(f"negativity closed {superfluid_negativity_exact(s):.12f}, "
      f"partial transpose {negativity(projector(mat.ravel()), mat.shape):.12f}")

print(f"\n<a_0^dag a_1> = {bh_odlro_correlator(s, 0, 1, method='explicit', exact=True)}"
      f"  (N/M), r = {bh_order_parameter_r(s):.6f}")

mott = MottSpec.filling(3)
print(f"Mott state, single-site negativity: {single_site_negativity(mott_state_vector(mott), mott.dims, 0)}")

# large N at two sites: the Gaussian estimate and its published variant
print("\n      N   exact        corrected    published")
for N in (10, 100, 1000, 10**4, 10**5):
    sp = SuperfluidSpec(N, 2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LowConfidenceWarning)
        corrected = superfluid_negativity_clt(sp, "corrected")
        published = superfluid_negativity_clt(sp, "paper")
    print(f"{N:7d}   {superfluid_negativity_exact(sp):10.4f}   {corrected:10.4f}   {published:10.4f}")

# unit filling with many sites: the binomial becomes Poisson(1)
print(f"\nPoisson(1) limit {superfluid_negativity_poisson_limit(1.0):.7f}")
for n in (4, 16, 64, 256, 1024):
    print(f"  N = M = {n:4d}: {superfluid_negativity_exact(SuperfluidSpec(n, n)):.7f}")
