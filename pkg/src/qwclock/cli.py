"""Scenario runner emitting deterministic CSV.

Each subcommand maps onto one library computation with explicit
parameters.  Output is comma-separated with a header row, 15 significant
digits, LF line endings; identical flags produce byte-identical output.
Exit codes: 0 success, 2 parameter error, 3 resource-cap error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import chain, multi, oracle, register, speed
from .oracle import ResourceLimitError

_CHECK_TOL = 1e-10


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    out = float(value)
    if not np.isfinite(out):
        raise ValueError(f"refusing to emit non-finite value {out!r}")
    if out == 0.0:
        out = 0.0  # normalize -0.0
    return format(out, ".15g")


def _emit(header, rows, out_path) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _time_grid(t_min: float, t_max: float, step: float) -> np.ndarray:
    if step <= 0:
        raise ValueError(f"time step must be positive, got step={step}")
    if t_max <= t_min:
        raise ValueError(f"need t-max > t-min, got {t_max} <= {t_min}")
    count = int(np.floor((t_max - t_min) / step + 1e-9)) + 1
    return t_min + step * np.arange(count)


def _load_scenario(path: str) -> dict:
    values: dict[str, str] = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"scenario line {line!r} is not key=value")
            key, val = line.split("=", 1)
            values[key.strip()] = val.strip()
    return values


class _Opt:
    """One long-form option with a type and a (possibly derived) default."""

    def __init__(self, name, typ, default, help, required=False):
        self.name = name
        self.typ = typ
        self.default = default
        self.help = help
        self.required = required

    @property
    def attr(self) -> str:
        return self.name.replace("-", "_")


def _resolve(options, args, scenario) -> dict:
    values: dict[str, object] = {}
    for opt in options:
        given = getattr(args, opt.attr)
        if given is not None:
            values[opt.name] = given
        elif opt.name in scenario:
            values[opt.name] = opt.typ(scenario[opt.name])
        else:
            default = opt.default(values) if callable(opt.default) else opt.default
            if default is None and opt.required:
                raise ValueError(f"missing required option --{opt.name}")
            values[opt.name] = default
    unknown = set(scenario) - {opt.name for opt in options}
    if unknown:
        raise ValueError(f"unknown scenario keys: {sorted(unknown)}")
    return values


def _grid_options(t_max_default, step_default=0.1):
    return [
        _Opt("t-min", float, 0.0, "start of the time grid"),
        _Opt("t-max", float, t_max_default, "end of the time grid"),
        _Opt("step", float, step_default, "time grid step"),
    ]


def _toy_setup(mu: int, s: int, coupling: float):
    params = register.grover_params(mu)
    spec = chain.ChainSpec(s, coupling)
    program = register.toy_program(s, params.alpha)
    r1 = register.grover_initial_state(params)
    psi0 = chain.basis_state(spec, 1)
    return params, spec, program, r1, psi0


def _default_sites(values) -> int:
    return 2 ** values["mu"] + 1


# ---------------------------------------------------------------------------
# subcommand runners

def _run_bloch(v):
    _, spec, program, r1, psi0 = _toy_setup(v["mu"], v["s"], v["coupling"])
    times = _time_grid(v["t-min"], v["t-max"], v["step"])
    traj = register.register_trajectory(program, r1, psi0, times)
    rows = zip(times, traj.s1, traj.s3, traj.r, traj.gamma)
    return ["t", "s1", "s3", "r", "gamma"], rows


def _run_entropy(v):
    _, spec, program, r1, psi0 = _toy_setup(v["mu"], v["s"], v["coupling"])
    times = _time_grid(v["t-min"], v["t-max"], v["step"])
    traj = register.register_trajectory(program, r1, psi0, times)
    return ["t", "S"], zip(times, traj.entropy)


def _run_probability(v):
    _, spec, program, r1, psi0 = _toy_setup(v["mu"], v["s"], v["coupling"])
    times = _time_grid(v["t-min"], v["t-max"], v["step"])
    traj = register.register_trajectory(program, r1, psi0, times)
    rows = zip(times, traj.p_success, 1.0 - traj.p_success, traj.lam1, traj.lam2)
    return ["t", "p_target", "p_other", "lam1", "lam2"], rows


def _cursor_start(v, spec):
    if v["n"] is not None:
        return chain.launchpad_state(spec, 2 * v["n"] - 1, v["n"])
    return chain.basis_state(spec, 1)


def _run_mean_q(v):
    spec = chain.ChainSpec(v["s"], v["coupling"])
    psi0 = _cursor_start(v, spec)
    times = _time_grid(v["t-min"], v["t-max"], v["step"])
    rows = [
        (t, chain.position_statistics(chain.propagate(psi0, t)).mean) for t in times
    ]
    return ["t", "mean_q"], rows


def _run_var_q(v):
    spec = chain.ChainSpec(v["s"], v["coupling"])
    psi0 = _cursor_start(v, spec)
    times = _time_grid(v["t-min"], v["t-max"], v["step"])
    rows = [
        (t, chain.position_statistics(chain.propagate(psi0, t)).variance)
        for t in times
    ]
    return ["t", "var_q"], rows


def _speed_law_from(v) -> speed.SpeedLaw:
    family = v["family"]
    if family == "localized":
        return speed.law_localized()
    if family == "shifted":
        return speed.law_shifted(v["x0"])
    if family == "pad-ck":
        return speed.law_pad_ck(v["epsilon"], v["k"])
    if family == "pad-cn":
        return speed.law_pad_cn(v["n"])
    if family == "gamma":
        spec = chain.ChainSpec(max(2, 2 * v["n"] - 1))
        return speed.law_general(chain.gamma_state(spec, v["n"]))
    raise ValueError(f"unknown speed family {family!r}")


def _run_speed_density(v):
    law = _speed_law_from(v)
    grid = v["grid"]
    if grid < 1:
        raise ValueError(f"grid must be at least 1, got {grid}")
    vv = np.arange(1, grid + 1) / (grid + 1.0)
    return ["v", "f", "F"], zip(vv, law.density(vv), law.cdf(vv))


def _run_launchpad(v):
    params = register.grover_params(v["mu"])
    spec = chain.ChainSpec(v["s"], v["coupling"])
    count = v["num-active"]
    if count is None:
        count = int(np.floor(np.pi / 4.0 * 2 ** (v["mu"] / 2.0)))
    variant = v["variant"]
    if variant == "telomere":
        program = register.rotation_window_program(spec.s, params.alpha, 1, count)
        psi0 = chain.basis_state(spec, 1)
    elif variant in ("flat", "gamma"):
        epsilon = 2 * v["n"] - 1
        program = register.rotation_window_program(
            spec.s, params.alpha, epsilon, count
        )
        psi0 = (
            chain.launchpad_state(spec, epsilon, v["n"])
            if variant == "flat"
            else chain.gamma_state(spec, v["n"])
        )
    else:
        raise ValueError(f"unknown variant {variant!r}")
    r1 = register.grover_initial_state(params)
    times = _time_grid(v["t-min"], v["t-max"], v["step"])
    traj = register.register_trajectory(program, r1, psi0, times)
    rows = zip(times, traj.p_success, traj.entropy, traj.s1, traj.s3, traj.r)
    return ["t", "p_target", "entropy", "s1", "s3", "r"], rows


def _run_alternating(v):
    params = register.grover_params(v["mu"])
    spec = chain.ChainSpec(v["s"], v["coupling"])
    program = register.alternating_program(spec.s, params.theta)
    r1 = register.grover_initial_state(params)
    psi0 = chain.basis_state(spec, 1)
    times = _time_grid(v["t-min"], v["t-max"], v["step"])
    traj = register.register_trajectory(program, r1, psi0, times)
    rows = zip(times, traj.p_success, traj.entropy, traj.s1, traj.s3, traj.r)
    return ["t", "p_target", "entropy", "s1", "s3", "r"], rows


def _run_multi(v):
    params = register.grover_params(v["mu"])
    spec = chain.ChainSpec(v["s"], v["coupling"])
    g = register.rotation_about_2(params.alpha)
    r1 = register.grover_initial_state(params)
    state0 = multi.SectorState.from_product(spec, tuple(range(1, v["g"] + 1)), r1)
    times = _time_grid(v["t-min"], v["t-max"], v["step"])
    rows = []
    for t in times:
        state = multi.propagate_single_link(state0, v["x0"], g, t)
        rho = state.register_density_matrix()
        s1, s2, s3 = register.bloch_vector(rho)
        r = float(np.sqrt(s1**2 + s2**2 + s3**2))
        rows.append(
            (t, rho[0, 0].real, register.entropy_from_r(r), s1, s3, r)
        )
    return ["t", "p_target", "entropy", "s1", "s3", "r"], rows


def _run_measure(v):
    _, spec, program, r1, psi0 = _toy_setup(v["mu"], v["s"], v["coupling"])
    tau = v["tau"]
    if tau is None or tau <= 0:
        raise ValueError("measurement time --tau must be positive")
    machine = register.MachineState.from_product(program, r1, psi0).evolve(tau)
    outcome = {"plus": +1, "minus": -1}[v["outcome"]]
    collapsed, probability = register.measure_register_sigma3(machine, outcome)
    t_max = v["t-max"] if v["t-max"] is not None else 4.0 * tau
    offsets = _time_grid(v["step"], t_max - tau, v["step"])
    traj = register.machine_trajectory(collapsed, offsets)
    rows = [
        (tau + dt, s1, s3, r, gm, probability)
        for dt, s1, s3, r, gm in zip(offsets, traj.s1, traj.s3, traj.r, traj.gamma)
    ]
    return ["t", "s1", "s3", "r", "gamma", "p_outcome"], rows


def _run_oracle_check(v):
    checks = []
    params, spec, program, r1, psi0 = _toy_setup(v["mu"], v["s"], v["coupling"])
    ham = oracle.build(spec, program, sector=1)
    machine0 = register.MachineState.from_product(program, r1, psi0)
    vec0 = machine0.spinors.reshape(-1)
    times = np.linspace(0.5, 2.5 * spec.s, 12)
    dev_state = 0.0
    dev_rho = 0.0
    dev_entropy = 0.0
    for t in times:
        analytic = machine0.evolve(t)
        dense = oracle.evolve(ham, vec0, t)
        dev_state = max(dev_state, np.abs(analytic.spinors.reshape(-1) - dense).max())
        rho_dense = oracle.partial_trace(dense, 2, "register")
        dev_rho = max(
            dev_rho, np.abs(analytic.register_density_matrix() - rho_dense).max()
        )
        dev_entropy = max(
            dev_entropy,
            abs(
                oracle.von_neumann_entropy(rho_dense)
                - oracle.von_neumann_entropy(oracle.partial_trace(dense, 2, "cursor"))
            ),
        )
    checks.append(("machine_evolution", dev_state))
    checks.append(("register_density", dev_rho))
    checks.append(("entropy_symmetry", dev_entropy))

    bare = np.ones((spec.s - 1, 1, 1), dtype=complex)
    ham_free = oracle.build(spec, bare, sector=2)
    free0 = multi.SectorState.from_product(spec, (1, 2))
    dev_free = 0.0
    for t in (1.0, 0.75 * spec.s):
        a = multi.propagate_free_sector(free0, t)
        b = oracle.evolve(ham_free, free0.to_vector(), t)
        dev_free = max(dev_free, np.abs(a.to_vector() - b).max())
    checks.append(("free_sector", dev_free))

    x0 = spec.s // 2
    g = register.rotation_about_2(params.alpha)
    ham_link = oracle.build(
        spec, register.single_link_program(spec.s, x0, g), sector=2
    )
    link0 = multi.SectorState.from_product(spec, (1, 2), r1)
    dev_link = 0.0
    for t in (1.0, 0.75 * spec.s):
        a = multi.propagate_single_link(link0, x0, g, t)
        b = oracle.evolve(ham_link, link0.to_vector(), t)
        dev_link = max(dev_link, np.abs(a.to_vector() - b).max())
    checks.append(("single_link_sector", dev_link))

    failed = any(dev >= _CHECK_TOL for _, dev in checks)
    return ["check", "max_deviation"], checks, failed


# ---------------------------------------------------------------------------
# command table

def _commands():
    coupling = _Opt("coupling", float, 1.0, "hopping coupling (units 1/time)")
    return {
        "bloch": (
            "Bloch-plane curve (s1, s3) of the clocked register",
            [
                _Opt("mu", int, 7, "marked-word bit length"),
                _Opt("s", int, _default_sites, "number of cursor sites"),
                coupling,
                *_grid_options(lambda v: float(v["s"])),
            ],
            _run_bloch,
        ),
        "entropy": (
            "register entropy S(t) for the rotation program",
            [
                _Opt("mu", int, 7, "marked-word bit length"),
                _Opt("s", int, _default_sites, "number of cursor sites"),
                coupling,
                *_grid_options(lambda v: 2.0 * v["s"]),
            ],
            _run_entropy,
        ),
        "probability": (
            "target probability with its readout bounds lam1, lam2",
            [
                _Opt("mu", int, 7, "marked-word bit length"),
                _Opt("s", int, _default_sites, "number of cursor sites"),
                coupling,
                *_grid_options(lambda v: 1.2 * v["s"]),
            ],
            _run_probability,
        ),
        "mean-q": (
            "mean cursor position over time",
            [
                _Opt("s", int, 129, "number of cursor sites"),
                _Opt("n", int, None, "start from the flat pad state c_n (default: site 1)"),
                coupling,
                *_grid_options(lambda v: float(v["s"])),
            ],
            _run_mean_q,
        ),
        "var-q": (
            "cursor position variance over time",
            [
                _Opt("s", int, 50, "number of cursor sites"),
                _Opt("n", int, None, "start from the flat pad state c_n (default: site 1)"),
                coupling,
                *_grid_options(lambda v: float(v["s"])),
            ],
            _run_var_q,
        ),
        "speed-density": (
            "density and CDF of an asymptotic speed law",
            [
                _Opt(
                    "family",
                    str,
                    "localized",
                    "localized | shifted | pad-ck | pad-cn | gamma",
                ),
                _Opt("x0", int, 1, "observed site (family shifted)"),
                _Opt("epsilon", int, 9, "pad size (family pad-ck)"),
                _Opt("k", int, 1, "pad mode (family pad-ck)"),
                _Opt("n", int, 5, "pad half-width (families pad-cn, gamma)"),
                _Opt("grid", int, 1000, "number of interior v points"),
            ],
            _run_speed_density,
        ),
        "launchpad": (
            "pad scenarios: telomere, flat pad c_n, or three-mode pad",
            [
                _Opt("variant", str, "flat", "telomere | flat | gamma"),
                _Opt("mu", int, 10, "marked-word bit length"),
                _Opt("s", int, 50, "number of cursor sites"),
                _Opt("n", int, 5, "pad half-width (pad size 2n-1)"),
                _Opt("num-active", int, None, "active links (default floor(pi/4 2^(mu/2)))"),
                coupling,
                *_grid_options(lambda v: 3.0 * v["s"]),
            ],
            _run_launchpad,
        ),
        "alternating": (
            "alternating oracle/estimation program",
            [
                _Opt("mu", int, 7, "marked-word bit length"),
                _Opt("s", int, _default_sites, "number of cursor sites"),
                coupling,
                *_grid_options(lambda v: 3.0 * v["s"]),
            ],
            _run_alternating,
        ),
        "multi": (
            "several excitations crossing a single active link",
            [
                _Opt("mu", int, 4, "marked-word bit length"),
                _Opt("g", int, 3, "number of clocking excitations"),
                _Opt("x0", int, 6, "active link"),
                _Opt("s", int, 20, "number of cursor sites"),
                coupling,
                *_grid_options(lambda v: 4.0 * v["s"]),
            ],
            _run_multi,
        ),
        "measure": (
            "register measured at time tau; post-measurement trajectory",
            [
                _Opt("mu", int, 7, "marked-word bit length"),
                _Opt("s", int, _default_sites, "number of cursor sites"),
                _Opt("tau", float, None, "measurement time", required=True),
                _Opt("outcome", str, "plus", "plus | minus"),
                coupling,
                *_grid_options(None),
            ],
            _run_measure,
        ),
        "oracle-check": (
            "cross-module equivalence suite against the dense oracle",
            [
                _Opt("mu", int, 4, "marked-word bit length"),
                _Opt("s", int, 8, "number of cursor sites"),
                coupling,
            ],
            _run_oracle_check,
        ),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwclock",
        description="Scenario runner for the quantum-walk clock library (CSV output).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (help_text, options, runner) in _commands().items():
        p = sub.add_parser(name, help=help_text)
        for opt in options:
            p.add_argument(f"--{opt.name}", type=opt.typ, default=None, help=opt.help)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--scenario", default=None, help="key=value file of defaults")
        p.set_defaults(options=options, runner=runner)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = _load_scenario(args.scenario) if args.scenario else {}
        values = _resolve(args.options, args, scenario)
        result = args.runner(values)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if len(result) == 3:
        header, rows, failed = result
        _emit(header, rows, args.out)
        return 1 if failed else 0
    header, rows = result
    _emit(header, rows, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
