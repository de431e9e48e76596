"""Does global entanglement of an eta-pairing state grow with system size?

The geometric measure of a half-filled Dicke state can be evaluated in log
space for any n. If entanglement were extensive, LR_G / n would settle at a
positive density. Instead LR_G tracks (1/2) log2(2 pi n r (1 - r)) and the
density goes to zero.
"""

from entorder.eta import dicke_asymptotics_report

for r in (0.5, 0.1):
    print(f"r = {r}")
    print("          n        LR_G     LR_G/n    log asymptote    gap    claimed density")
    for row in dicke_asymptotics_report(r, [10**e for e in range(1, 8)]):
        print(f"{row['n']:11d}  {row['lrg']:10.6f}  {row['lrg_per_site']:.2e}  {row['log_asymptote']:12.6f}"
              f"  {row['lrg_minus_log_asymptote']:+.1e}  {row['de_claimed']:.6f}")
    print()
