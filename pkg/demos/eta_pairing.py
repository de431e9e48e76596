"""eta-pairing states: two-site entanglement and the pair order parameter.

Applying the eta creation operator k times to the vacuum of n sites gives a
symmetric Dicke state. Any two sites see a mixture of |00>, |11> and the
triplet-like |psi+>, and the weight on |psi+> is the ODLRO order parameter.
"""

from entorder.eta import (
    DickeSpec,
    alpha_from_r,
    alpha_order_parameter,
    de_from_alpha_paper,
    dicke_state_vector,
    eta_two_site_rdm,
    gme_dicke_closed_form,
    odlro_pair_correlator,
)
from entorder.measures import fully_entangled_fraction, geometric_measure, teleportation_fidelity
from entorder.tensor import reduced_state

s = DickeSpec(6, 3)
rdm = eta_two_site_rdm(s)
psi = dicke_state_vector(s)
print("closed form two-site RDM")
print(rdm.matrix().real.round(6))
print("brute-force reduction of the 64-dim state, sites (1, 4)")
print(reduced_state(psi, (2,) * 6, [1, 4]).real.round(6))

exact = eta_two_site_rdm(s, exact=True)
print(f"\nweights as rationals: {[str(w) for w in exact]}")
print(f"alpha = {alpha_order_parameter(s, exact=True)} = 2 x {odlro_pair_correlator(s, exact=True)}")

F = fully_entangled_fraction(rdm.matrix())
print(f"fully entangled fraction {F:.6f}, teleportation fidelity {teleportation_fidelity(F):.6f}")

# global entanglement: closed form against an optimizer that knows nothing about Dicke states
print("\n n  k   LR_G closed   LR_G optimizer")
for n, k in [(2, 1), (3, 1), (4, 2), (6, 3), (8, 4)]:
    d = DickeSpec(n, k)
    print(f"{n:2d} {k:2d}   {gme_dicke_closed_form(d):.9f}   {geometric_measure(dicke_state_vector(d), (2,) * n):.9f}")

# thermodynamic filling law and the published density relation
print("\n  r    alpha(r)   alpha(n=1000)   published d_E(alpha)")
for r in (0.1, 0.25, 0.5):
    a = alpha_from_r(r)
    finite = alpha_order_parameter(DickeSpec(1000, round(1000 * r)))
    print(f"{r:4.2f}   {a:.6f}   {finite:.6f}        {de_from_alpha_paper(a):.6f}")
