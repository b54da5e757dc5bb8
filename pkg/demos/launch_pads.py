#!/usr/bin/env python3
# Trading space for clock quality.
#
# Starting the cursor spread over a pad {1..eps} instead of localized at
# site 1 raises the mean speed and, more importantly, slows the growth of
# the position spread, which is what feeds register entropy.  The flat
# alternating state c_n and its three-mode refinement gamma_n are compared
# in the same scenario.

import numpy as np

import qwclock as qc

n = 5
eps = 2 * n - 1
spec = qc.ChainSpec(50)

flat = qc.launchpad_state(spec, eps, n)
gamma = qc.gamma_state(spec, n)
print(f"pad {{1..{eps}}}, n = {n}")
print("flat state amplitudes :", np.round(flat.amplitudes.real[:eps], 4))
print("gamma state amplitudes:", np.round(gamma.amplitudes.real[:eps], 4))
print(f"|<c_n|gamma_n>|^2 = {abs(np.vdot(flat.amplitudes, gamma.amplitudes))**2:.6f}"
      "  (exactly 2/3: gamma_n = (c_n + c_(n-1)/2 + c_(n+1)/2)/sqrt(3/2))")

stats = qc.position_statistics(flat)
print(f"flat pad: <Q> = {stats.mean:.1f}, var(Q) = {stats.variance:.4f} "
      f"(= (n^2 - 1)/3)")

print()
print("asymptotic speed of the three starts:")
for name, law in (
    ("site 1    ", qc.law_localized()),
    ("flat pad  ", qc.law_pad_cn(n)),
    ("gamma pad ", qc.law_general(gamma)),
):
    print(f"  {name} mean {law.mean:.6f}  variance {law.variance:.6f}")

print()
print("position spread growth var(Q(t)) ~ var(V) t^2:")
ts = np.arange(9.0, 41.0, 0.5)
for name, psi0 in (("site 1", qc.basis_state(spec, 1)),
                   ("flat pad", flat),
                   ("gamma pad", gamma)):
    var = [qc.position_statistics(qc.propagate(psi0, t)).variance for t in ts]
    design = np.vstack([np.ones_like(ts), ts**2]).T
    coef = np.linalg.lstsq(design, np.array(var), rcond=None)[0][1]
    print(f"  {name:9s}: fitted t^2 coefficient {coef:.6f}")
print(f"  flat-pad prediction (4 - pi)/(4 pi n) = {qc.pad_cn_variance_large_n(n):.6f}")

print()
print("uncertainty product var(Q_n) var(V_n) ~ n (4 - pi)/(12 pi):")
for m in (5, 8, 12):
    product = (m**2 - 1) / 3.0 * qc.pad_cn_variance_large_n(m)
    print(f"  n = {m:2d}: {product:.5f}  vs  {m * (4 - np.pi) / (12 * np.pi):.5f}")

print()
print("same search, three ways to spend the extra chain (mu = 10, s = 50):")
params = qc.grover_params(10)
count = int(np.floor(np.pi / 4 * 2 ** (params.mu / 2)))
r1 = qc.grover_initial_state(params)
times = np.arange(0.0, 150.0, 0.1)
for name, start, psi0 in (
    ("telomere (all rotations up front)", 1, qc.basis_state(spec, 1)),
    ("flat pad then rotations          ", eps, flat),
    ("gamma pad then rotations         ", eps, gamma),
):
    program = qc.rotation_window_program(spec.s, params.alpha, start, count)
    traj = qc.register_trajectory(program, r1, psi0, times)
    i = qc.local_maxima(traj.p_success)[0]
    late = slice(int(0.7 * len(times)), None)
    print(f"  {name}: first max P = {traj.p_success[i]:.4f} at t = {times[i]:5.1f}; "
          f"late-time <P> = {traj.p_success[late].mean():.4f}")
