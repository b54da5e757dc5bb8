#!/usr/bin/env python3
# The clocked qubit seen on the Bloch disc.
#
# A rotation by alpha is applied to the register each time the cursor hops
# one link.  Because the cursor wave packet spreads, the register state is a
# mixture of rotation angles: its Bloch point spirals inward, entropy grows,
# and the best possible readout degrades.  All of it is exact and cheap: the
# machine state is two free walks in a comoving frame.

import numpy as np

import qwclock as qc

mu = 7
params = qc.grover_params(mu)
s = 2**mu + 1
spec = qc.ChainSpec(s)
program = qc.toy_program(s, params.alpha)
r1 = qc.grover_initial_state(params)
psi0 = qc.basis_state(spec, 1)

print(f"search parameters: mu = {mu}, chi = {params.chi:.6f}, "
      f"theta = {params.theta:.6f}, alpha = {params.alpha:.6f}, s = {s}")
print("one rotation step equals estimation * oracle:",
      np.abs(qc.estimation_reflection(params.theta) @ qc.oracle_reflection()
             - qc.rotation_about_2(params.alpha)).max() < 1e-12)

times = np.arange(0.0, float(s), 0.1)
traj = qc.register_trajectory(program, r1, psi0, times)

print()
print("  t      r       gamma     S(nats)  P(target)  bound lam1")
for t in (0.0, 5.0, 10.5, 20.0, 40.0, 80.0, 120.0):
    i = int(round(t / 0.1))
    print(f"{times[i]:6.1f}  {traj.r[i]:.4f}  {traj.gamma[i]:8.4f}  "
          f"{traj.entropy[i]:.4f}   {traj.p_success[i]:.4f}     {traj.lam1[i]:.4f}")

peaks = qc.local_maxima(traj.p_success)
print()
print("success-probability maxima (decreasing while the packet spreads):")
for i in peaks[:6]:
    print(f"  t = {times[i]:6.1f}   P = {traj.p_success[i]:.4f}")

print()
print("closed-form spiral via Bessel/Struve (valid for 1 << t < s):")
for t in (15.0, 40.0, 60.0):
    i = int(round(t / 0.1))
    approx = qc.bessel_struve_approx(params, 1.0, t)
    print(f"  t = {t:5.1f}: exact r = {traj.r[i]:.5f}  approx |.| = "
          f"{abs(approx):.5f}  (rel {abs(abs(approx) - traj.r[i]) / traj.r[i]:.3%})")

print()
print("master-equation form of the dynamics (drift + decoherence):")
h = 1e-3
for t in (10.0, 50.0):
    local = qc.register_trajectory(program, r1, psi0, np.array([t - h, t, t + h]))
    fit = qc.lindblad_coefficients(local, t)
    print(f"  t = {t:5.1f}: dgamma/dt = {fit.dgamma_dt:+.5f}  "
          f"d ln r/dt = {fit.dlnr_dt:+.6f}  residual = {fit.residual:.2e}")
print("the residual is finite-difference error only: the equation is exact")
