#!/usr/bin/env python3
# Nothing here is trusted without a brute-force check.
#
# On small instances the full composite Hamiltonian is built as a dense
# Hermitian matrix and evolved by exact eigendecomposition.  Every analytic
# path of the library (spectral walk, comoving machine evolution, sector
# determinant propagation, single-active-link dressing) is compared entry
# by entry against that ground truth.

import numpy as np

import qwclock as qc
from qwclock import oracle

params = qc.grover_params(4)
spec = qc.ChainSpec(8)
program = qc.toy_program(8, params.alpha)
r1 = qc.grover_initial_state(params)

print("dense one-excitation block (d = 2, s = 8): dimension",
      oracle.build(spec, program, sector=1).dimension)

ham = oracle.build(spec, program, sector=1)
machine0 = qc.MachineState.from_product(program, r1, qc.basis_state(spec, 1))
vec0 = machine0.spinors.reshape(-1)
dev_state = dev_rho = dev_entropy = 0.0
for t in np.linspace(0.4, 20.0, 20):
    analytic = machine0.evolve(t)
    dense = oracle.evolve(ham, vec0, t)
    dev_state = max(dev_state, np.abs(analytic.spinors.reshape(-1) - dense).max())
    rho_dense = oracle.partial_trace(dense, 2, "register")
    dev_rho = max(dev_rho,
                  np.abs(analytic.register_density_matrix() - rho_dense).max())
    s_r = oracle.von_neumann_entropy(rho_dense)
    s_c = oracle.von_neumann_entropy(oracle.partial_trace(dense, 2, "cursor"))
    dev_entropy = max(dev_entropy, abs(s_r - s_c))
print(f"machine evolution vs dense:        {dev_state:.3e}")
print(f"register density vs partial trace: {dev_rho:.3e}")
print(f"register/cursor entropy symmetry:  {dev_entropy:.3e}")

bare = np.ones((7, 1, 1), dtype=complex)
ham_free = oracle.build(spec, bare, sector=2)
free0 = qc.SectorState.from_product(spec, (1, 2))
dev = max(
    np.abs(qc.propagate_free_sector(free0, t).to_vector()
           - oracle.evolve(ham_free, free0.to_vector(), t)).max()
    for t in (1.0, 6.0, 18.0)
)
print(f"free two-excitation sector:        {dev:.3e}")

g = qc.rotation_about_2(params.alpha)
ham_link = oracle.build(spec, qc.single_link_program(8, 4, g), sector=2)
link0 = qc.SectorState.from_product(spec, (1, 2), r1)
dev = max(
    np.abs(qc.propagate_single_link(link0, 4, g, t).to_vector()
           - oracle.evolve(ham_link, link0.to_vector(), t)).max()
    for t in (1.0, 6.0, 18.0)
)
print(f"single active link, two hands:     {dev:.3e}")

full = oracle.build(qc.ChainSpec(6), qc.toy_program(6, params.alpha), sector=None)
n3 = oracle.number_operator(6, 2)
print(f"[H, N3] on the full spin space:    "
      f"{np.abs(full.matrix @ n3 - n3 @ full.matrix).max():.3e}")
print("(the CLI subcommand `qwclock oracle-check` runs the same suite)")
