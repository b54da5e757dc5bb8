#!/usr/bin/env python3
# What measuring the machine does to the computation.
#
# Reading the clock (the cursor position) collapses the cursor to one site;
# the computation stays correct but proceeds at 3/4 of the speed in the long
# run.  Reading the register projects an entangled state: outcome +1 at the
# right moment leaves a pure register and barely perturbs the walk, while
# outcome -1 rebuilds a very different speed distribution.

import numpy as np

import qwclock as qc

params = qc.grover_params(7)
s = 200
spec = qc.ChainSpec(s)
program = qc.toy_program(s, params.alpha)
r1 = qc.grover_initial_state(params)
machine0 = qc.MachineState.from_product(program, r1, qc.basis_state(spec, 1))

print("=== reading the clock ===")
machine = machine0.evolve(12.0)
x0 = 10
weight = machine.cursor_distribution()[x0 - 1]
collapsed = qc.measure_clock(machine, x0)
print(f"P(Q = {x0}) at t = 12: {weight:.4f}")
seq = qc.register_state_sequence(program, r1)
fidelity = abs(np.vdot(seq[x0 - 1], collapsed.spinors[x0 - 1]))
print(f"post-collapse register equals the x0-step program state: "
      f"fidelity {fidelity:.12f}")
ts = np.arange(30.0, 120.0, 3.0)
means = [collapsed.evolve(t).position_statistics().mean for t in ts]
slope = np.polyfit(ts, means, 1)[0]
print(f"post-collapse speed {slope:.4f} vs shifted law {qc.law_shifted(x0).mean:.4f} "
      f"vs undisturbed {qc.law_localized().mean:.4f}")

print()
print("=== reading the register (sigma_3) at the first success maximum ===")
times = np.arange(0.0, float(s), 0.1)
traj = qc.register_trajectory(program, r1, qc.basis_state(spec, 1), times)
tau = times[qc.local_maxima(traj.p_success)[0]]
machine_tau = machine0.evolve(float(tau))
print(f"tau = {tau:.1f}")
for outcome in (+1, -1):
    post, probability = qc.measure_register_sigma3(machine_tau, outcome)
    rho = post.register_density_matrix()
    r = np.linalg.norm(qc.bloch_vector(rho))
    print(f"outcome {outcome:+d}: probability {probability:.4f}, "
          f"post-measurement r = {r:.6f} (back on the unit circle)")

v = np.linspace(0.01, 0.99, 99)
base = qc.asymptotic_speed_cdf(machine_tau)(v)
for outcome in (+1, -1):
    post, _ = qc.measure_register_sigma3(machine_tau, outcome)
    dist = np.abs(qc.asymptotic_speed_cdf(post)(v) - base).max()
    print(f"outcome {outcome:+d}: sup distance of the speed CDF from the "
          f"undisturbed one: {dist:.4f}")
print("outcome +1 barely disturbs the walk; outcome -1 reshapes it")
