#!/usr/bin/env python3
# How fast does the walking cursor apply program primitives?
#
# The position Q of the cursor excitation, divided by time, converges in law
# to a speed V supported on (0, 1) (in units of the hopping coupling).  This
# script prints the closed-form laws for the main initial-state families and
# shows the finite-chain empirics converging onto them.

import numpy as np

import qwclock as qc

print("=== localized start (cursor at site 1) ===")
law = qc.law_localized()
print(f"density f(v) = 4 v^2 / (pi sqrt(1 - v^2)) on (0, 1)")
print(f"mean speed      {law.mean:.10f}  (= 8/(3 pi))")
print(f"second moment   {law.second_moment:.10f}")
print(f"variance        {law.variance:.10f}")
print(f"normalization   {law.normalization():.12f}")

print()
print("=== after reading the clock at site x0: slowdown ===")
for x0 in (1, 2, 5, 20, 50):
    shifted = qc.law_shifted(x0)
    print(f"x0 = {x0:3d}: mean {shifted.mean:.6f}  ratio to localized "
          f"{shifted.mean / law.mean:.6f}")
print("the ratio tends to 3/4: reading the clock costs a quarter of the speed")

print()
print("=== launch pads: spreading the start raises the speed ===")
for k in range(1, 6):
    pad = qc.law_pad_ck(9, k)
    print(f"pad mode k = {k}: mean {pad.mean:.6f}  variance {pad.variance:.6f}")
print("the flat alternating pad state c_n approaches speed 1 - 1/(2 pi n):")
for n in (2, 5, 10):
    flat = qc.law_pad_cn(n)
    print(f"n = {n:2d}: exact mean {flat.mean:.8f}   1 - 1/(2 pi n) = "
          f"{1 - 1 / (2 * np.pi * n):.8f}   E[V^2] = {flat.second_moment}")

print()
print("=== empirics on a finite chain ===")
spec = qc.ChainSpec(129)
psi0 = qc.basis_state(spec, 1)
ts = np.arange(5.0, 55.0, 0.5)
means = [qc.position_statistics(qc.propagate(psi0, t)).mean for t in ts]
slope = np.polyfit(ts, means, 1)[0]
print(f"s = 129: fitted d<Q>/dt = {slope:.6f} vs asymptotic mean {law.mean:.6f}")

law_cdf = law.cdf
for s, t in ((200, 80.0), (400, 160.0), (800, 320.0)):
    emp = qc.empirical_speed(qc.ChainSpec(s), qc.basis_state(qc.ChainSpec(s), 1), t)
    print(f"s = {s:4d}, t = {t:5.0f}: sup |empirical CDF - limit CDF| = "
          f"{emp.kolmogorov_distance(law_cdf):.4f}")
print("the sup distance shrinks slowly: the ballistic edge dominates it")
