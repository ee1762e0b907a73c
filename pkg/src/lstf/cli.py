"""Command-line entry point and file emission.

Subcommands: spectrum | semiclassical | dynamics | benchmark | heuristic.
Common flags: --config PATH, --out DIR, --seed N, --workers N; per-command
flags override config-file values.

Config files are TOML with sections mirroring the library modules::

    seed = 7
    workers = 1

    [problem]
    kind = "two_qubit"        # or "instance" (path=...) or "builtin" (name=...)
    f = 0.8
    energy_scale = 1.0
    j_sign = 1
    h_x2 = 1.0

    [plan]
    variant = "aqa"           # or "lstf" with target_k, s_x, c_x, c_1

    [spectrum]
    grid_resolution = 1001

    [semiclassical]
    resolution = 512          # s defaults to the located s_plus

    [dynamics]
    mode = "schrodinger"      # or "von_neumann" or "ame"
    t_an = [100.0]
    sweep = "t_an"            # or "frustration" or "energy_scale"

    [bath]
    eta_g2 = 1e-4
    omega_c = 25.132741228718345   # angular rad/ns
    temperature_mk = 16.0
    coupling = "x"

    [benchmark]
    samples_per_group = 100

Problem instance files are TOML documents with keys n_qubits, edges
(list of [i, j] pairs), h_z, j_zz, h_x, energy_scale.
"""

import argparse
import json
import os
import sys

import numpy as np
import tomli

from .benchmark import classify, run_campaign, run_heuristic
from .closed_dynamics import (
    AnnealRun,
    IntegrationError,
    evolve_schrodinger,
    evolve_von_neumann,
)
from .instances import reference_instance
from .open_dynamics import (
    BathSpec,
    CouplingSpec,
    energy_scale_sweep,
    evolve_ame,
    frustration_sweep,
)
from .problems import IsingProblem, build_two_qubit
from .schedules import SchedulePlan, coupler_coeff, driver_coeff, problem_coeff
from .semiclassical import (
    find_local_minima,
    line_profile,
    minima_line,
    minima_trace,
    potential_grid,
)
from .spectrum import max_slope_location, trace_spectrum

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_INTEGRATOR = 4


class ConfigError(ValueError):
    pass


def _fmt(x):
    return format(float(x), ".17g")


def load_problem(path):
    """Read an IsingProblem from its TOML document."""
    with open(path, "rb") as fh:
        doc = tomli.load(fh)
    try:
        return IsingProblem(
            n_qubits=int(doc["n_qubits"]),
            edges=tuple(tuple(e) for e in doc["edges"]),
            h_z=tuple(doc["h_z"]),
            j_zz=tuple(doc["j_zz"]),
            h_x=tuple(doc["h_x"]),
            energy_scale=float(doc.get("energy_scale", 1.0)),
        )
    except KeyError as exc:
        raise ConfigError(f"instance file {path} missing key {exc}") from exc


def dump_problem(problem, path):
    """Write an IsingProblem as a TOML document."""
    lines = [
        f"n_qubits = {problem.n_qubits}",
        f"energy_scale = {_fmt(problem.energy_scale)}",
        "edges = [" + ", ".join(f"[{i}, {j}]" for i, j in problem.edges) + "]",
        "h_z = [" + ", ".join(_fmt(x) for x in problem.h_z) + "]",
        "j_zz = [" + ", ".join(_fmt(x) for x in problem.j_zz) + "]",
        "h_x = [" + ", ".join(_fmt(x) for x in problem.h_x) + "]",
    ]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _flatten(cfg, prefix=""):
    out = {}
    for key in sorted(cfg):
        val = cfg[key]
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            out.update(_flatten(val, prefix=f"{name}."))
        else:
            out[name] = val
    return out


def _write_csv(path, header, rows, echo):
    with open(path, "w", newline="\n") as fh:
        for key, val in sorted(echo.items()):
            fh.write(f"# {key} = {val}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(
                cell if isinstance(cell, str) else _fmt(cell) for cell in row
            ) + "\n")


def _problem_from_config(cfg):
    section = cfg.get("problem", {})
    kind = section.get("kind", "two_qubit")
    if kind == "two_qubit":
        return build_two_qubit(
            f=float(section.get("f", 0.8)),
            energy_scale=float(section.get("energy_scale", 1.0)),
            j_sign=int(section.get("j_sign", 1)),
            h_x2=section.get("h_x2"),
        )
    if kind == "instance":
        if "path" not in section:
            raise ConfigError("problem.kind = 'instance' needs problem.path")
        return load_problem(section["path"])
    if kind == "builtin":
        name = section.get("name", "reference7")
        if name != "reference7":
            raise ConfigError(f"unknown builtin problem {name!r}")
        return reference_instance(float(section.get("energy_scale", 1.0)))
    raise ConfigError(f"unknown problem kind {kind!r}")


def _plan_from_config(cfg):
    section = cfg.get("plan", {})
    variant = section.get("variant", "aqa")
    if variant == "aqa":
        return SchedulePlan(variant="aqa")
    if variant == "lstf":
        if "target_k" not in section:
            raise ConfigError("lstf plan needs plan.target_k")
        return SchedulePlan(
            variant="lstf",
            target_k=int(section["target_k"]),
            s_x=float(section.get("s_x", 0.2)),
            c_x=float(section.get("c_x", 0.0)),
            c_1=float(section.get("c_1", 0.0)),
        )
    raise ConfigError(f"unknown plan variant {variant!r}")


def _bath_from_config(cfg):
    section = cfg.get("bath", {})
    bath = BathSpec(
        eta_g2=float(section.get("eta_g2", 1e-4)),
        omega_c=float(section.get("omega_c", 8.0 * np.pi)),
        temperature_mk=float(section.get("temperature_mk", 16.0)),
    )
    coupling = CouplingSpec(axis=section.get("coupling", "x"))
    return bath, coupling


def cmd_spectrum(cfg, out_dir, echo):
    problem = _problem_from_config(cfg)
    plan = _plan_from_config(cfg)
    section = cfg.get("spectrum", {})
    trace = trace_spectrum(
        problem, plan,
        grid_resolution=int(section.get("grid_resolution", 1001)),
        watch_qubit=section.get("watch_qubit"),
    )
    n = problem.n_qubits
    dim = problem.dim
    header = (
        ["s"]
        + [f"E_{k}" for k in range(dim)]
        + [f"dE_{k}" for k in range(1, min(4, dim))]
        + [f"mz_{i + 1}" for i in range(n)]
        + [f"mx_{i + 1}" for i in range(n)]
    )
    rows = []
    for k, s in enumerate(trace.s_grid):
        rows.append(
            [s]
            + list(trace.energies[k])
            + list(trace.gaps[k, : min(3, dim - 1)])
            + list(trace.m_z[k])
            + list(trace.m_x[k])
        )
    _write_csv(os.path.join(out_dir, "spectrum.csv"), header, rows, echo)

    # schedule curves on the same grid, for plotting layers that must
    # not re-evaluate the piecewise forms themselves
    target = plan.target_k if plan.target_k is not None else 0
    other = 1 if target == 0 else 0
    sched_rows = [
        [
            s,
            driver_coeff(plan, other, s),
            driver_coeff(plan, target, s),
            problem_coeff(plan, other, s),
            problem_coeff(plan, target, s),
            coupler_coeff(plan, (other, target), s),
        ]
        for s in trace.s_grid
    ]
    _write_csv(
        os.path.join(out_dir, "schedules.csv"),
        ["s", "a_i", "a_k", "b_i", "b_k", "b_ij"],
        sched_rows,
        echo,
    )

    verdict = "SG" if trace.gap_at_s_star <= 1.0 / (2 * np.pi) else "LG"
    summary = [
        ("plan", plan.variant),
        ("s_star", _fmt(trace.s_star)),
        ("gap_at_s_star", _fmt(trace.gap_at_s_star)),
        ("s_plus", " ".join(_fmt(s) for s in trace.s_plus_list)),
        ("watch_qubit", str(trace.watch_qubit)),
        ("gap_class", verdict),
    ]
    if plan.variant == "lstf":
        summary.insert(1, ("s_x", _fmt(plan.s_x)))
    slope_s = max_slope_location(trace, trace.watch_qubit)
    if slope_s is not None:
        summary.append(("max_slope_s", _fmt(slope_s)))
    _write_csv(os.path.join(out_dir, "spectrum_summary.csv"),
               ["key", "value"], summary, echo)
    print(f"s_star={trace.s_star:.6f} gap={trace.gap_at_s_star:.6f} "
          f"s_plus={[round(s, 6) for s in trace.s_plus_list]} class={verdict}")
    return EXIT_OK


def cmd_semiclassical(cfg, out_dir, echo):
    problem = _problem_from_config(cfg)
    plan = _plan_from_config(cfg)
    section = cfg.get("semiclassical", {})
    resolution = int(section.get("resolution", 512))

    if "s" in section:
        s_surface = float(section["s"])
    else:
        trace = trace_spectrum(problem, plan, grid_resolution=501)
        if not trace.s_plus_list:
            raise ConfigError("no magnetization crossing found; set semiclassical.s")
        s_surface = trace.s_plus_list[-1]

    grid = potential_grid(problem, plan, s_surface, resolution=resolution)
    rows = []
    for i, t1 in enumerate(grid.theta1):
        for j, t2 in enumerate(grid.theta2):
            rows.append([t1, t2, grid.V[i, j], grid.D[i, j]])
    _write_csv(os.path.join(out_dir, "potential_surface.csv"),
               ["theta1", "theta2", "V", "D"], rows, echo)

    minima = find_local_minima(grid)
    trace_sec = section.get("trace_s", [0.25, 0.95, 71])
    s_list = np.linspace(float(trace_sec[0]), float(trace_sec[1]), int(trace_sec[2]))
    branch_rows = minima_trace(problem, plan, s_list, resolution=256)
    _write_csv(os.path.join(out_dir, "minima_trace.csv"),
               ["s", "e_min1", "e_min2"], branch_rows, echo)

    summary = [("s", _fmt(s_surface)), ("n_minima", str(len(minima)))]
    for idx, (t1, t2, v) in enumerate(minima, start=1):
        summary.append((f"min{idx}_theta1", _fmt(t1)))
        summary.append((f"min{idx}_theta2", _fmt(t2)))
        summary.append((f"min{idx}_V", _fmt(v)))
    if len(minima) == 2:
        line = minima_line(minima)
        profile = line_profile(problem, plan, s_surface, line)
        prof_rows = list(zip(profile.theta2, profile.theta1, profile.V, profile.D))
        _write_csv(os.path.join(out_dir, "line_profile.csv"),
                   ["theta2", "theta1", "V", "D"], prof_rows, echo)
        summary += [
            ("barrier_height", _fmt(profile.barrier_height)),
            ("d_min_theta2", _fmt(profile.d_min_theta2)),
            ("d_min", _fmt(profile.d_min)),
        ]
    _write_csv(os.path.join(out_dir, "semiclassical_summary.csv"),
               ["key", "value"], summary, echo)
    print(f"s={s_surface:.6f} minima={len(minima)}")
    return EXIT_OK


def _closed_row(problem, plan, t_an, mode, rtol):
    run = AnnealRun(problem, plan, t_an, rtol=rtol, atol=rtol)
    evolve = evolve_von_neumann if mode == "von_neumann" else evolve_schrodinger
    res = evolve(run)
    return [t_an, res.success_probability, res.tts, res.tts_raw, res.energy_residual]


def cmd_dynamics(cfg, out_dir, echo):
    section = cfg.get("dynamics", {})
    sweep = section.get("sweep", "t_an")
    mode = section.get("mode", "schrodinger")
    t_list = section.get("t_an", [100.0])
    if np.ndim(t_list) == 0:
        t_list = [t_list]
    t_list = [float(t) for t in t_list]
    rtol = float(section.get("rtol", 1e-10 if mode != "ame" else 1e-8))
    bath, coupling = _bath_from_config(cfg)
    if mode == "ame":
        echo = dict(echo, lamb_shift="omitted")

    if sweep == "frustration":
        f_list = [float(f) for f in section.get("f_list", [0.5, 0.65, 0.8])]
        rows = frustration_sweep(f_list, bath, t_list, rtol=rtol, atol=rtol)
        header = ["f", "s_plus"]
        header += [f"interval_{t:g}" for t in t_list]
        header += [f"p_{t:g}" for t in t_list]
        out = [[r.f, r.s_plus, *r.intervals, *r.probabilities] for r in rows]
        _write_csv(os.path.join(out_dir, "frustration_sweep.csv"), header, out, echo)
        return EXIT_OK
    if sweep == "energy_scale":
        r_list = [float(r) for r in section.get("r_list", [1.0, 5.0])]
        rows = energy_scale_sweep(r_list, bath, t_list, rtol=rtol, atol=rtol)
        header = ["R"]
        header += [f"p_open_{t:g}" for t in t_list]
        header += [f"p_closed_{t:g}" for t in t_list]
        out = [[r.energy_scale, *r.probabilities_open, *r.probabilities_closed]
               for r in rows]
        _write_csv(os.path.join(out_dir, "energy_scale_sweep.csv"), header, out, echo)
        return EXIT_OK
    if sweep != "t_an":
        raise ConfigError(f"unknown dynamics.sweep {sweep!r}")

    problem = _problem_from_config(cfg)
    plan = _plan_from_config(cfg)
    rows = []
    want_pops = bool(section.get("populations", False))
    for t_an in t_list:
        if mode in ("schrodinger", "von_neumann"):
            rows.append(_closed_row(problem, plan, t_an, mode, rtol))
        elif mode == "ame":
            run = AnnealRun(problem, plan, t_an, rtol=rtol, atol=rtol)
            s_rep = np.linspace(0.0, 1.0, int(section.get("population_points", 101)))
            res = evolve_ame(run, bath, coupling,
                             s_report=s_rep if want_pops else None)
            rows.append([t_an, res.success_probability, res.tts, res.tts_raw,
                         res.energy_residual])
            if want_pops:
                pop_header = ["s"] + [f"pop_{k}" for k in range(res.populations.shape[1])]
                pop_rows = [[s, *p] for s, p in zip(res.s_report, res.populations)]
                _write_csv(
                    os.path.join(out_dir, f"populations_t{t_an:g}.csv"),
                    pop_header, pop_rows, echo,
                )
        else:
            raise ConfigError(f"unknown dynamics.mode {mode!r}")
    header = ["t_an", "success_probability", "tts", "tts_raw", "energy_residual"]
    _write_csv(os.path.join(out_dir, "dynamics.csv"), header, rows, echo)
    print(f"{len(rows)} dynamics points -> {out_dir}/dynamics.csv")
    return EXIT_OK


def cmd_benchmark(cfg, out_dir, echo, seed, workers):
    section = cfg.get("benchmark", {})
    groups = section.get("edge_groups", [[6, 8], [10, 12], [14, 16]])
    result = run_campaign(
        edge_groups=tuple(tuple(g) for g in groups),
        samples_per_group=int(section.get("samples_per_group", 100)),
        seed=seed,
        t_an=float(section.get("t_an", 100.0)),
        s_x=float(section.get("s_x", 0.2)),
        workers=workers,
        rtol=float(section.get("rtol", 1e-8)),
        grid_resolution=int(section.get("grid_resolution", 1001)),
    )
    with open(os.path.join(out_dir, "records.jsonl"), "w", newline="\n") as fh:
        for rec in result.records:
            fh.write(json.dumps(rec.to_json_dict(), sort_keys=True) + "\n")
    header = ["edge_group", "n_samples", "dqa_win_rate", "sg_fraction",
              "sg_dqa_win_rate"]
    rows = [
        ["-".join(str(c) for c in s.edge_counts), s.n_samples, s.dqa_win_rate,
         s.sg_fraction, s.sg_dqa_win_rate]
        for s in result.summaries
    ]
    echo = dict(echo, **{f"campaign.{k}": v for k, v in result.metadata.items()})
    _write_csv(os.path.join(out_dir, "summary.csv"), header,
               [[r[0], str(r[1])] + r[2:] for r in rows], echo)
    for s in result.summaries:
        print(f"edges {s.edge_counts}: DQA wins {s.dqa_win_rate:.1f}% "
              f"SG {s.sg_fraction:.1f}% SG wins {s.sg_dqa_win_rate:.1f}%")
    return EXIT_OK


def cmd_heuristic(cfg, out_dir, echo):
    problem = _problem_from_config(cfg)
    section = cfg.get("heuristic", {})
    report = run_heuristic(
        problem,
        t_an=float(section.get("t_an", 100.0)),
        s_x=float(section.get("s_x", 0.2)),
        rtol=float(section.get("rtol", 1e-8)),
        atol=float(section.get("rtol", 1e-8)),
    )
    label = classify(problem)
    header = ["protocol", "target", "success", "energy_residual", "tts", "tts_raw"]
    rows = [["aqa", "", report.aqa.success_probability,
             report.aqa.energy_residual, report.aqa.tts, report.aqa.tts_raw]]
    for k, res in report.lstf:
        rows.append(["lstf", str(k), res.success_probability,
                     res.energy_residual, res.tts, res.tts_raw])
    _write_csv(os.path.join(out_dir, "heuristic.csv"), header, rows, echo)
    summary = [
        ("classification", label),
        ("best_protocol", "aqa" if report.best_k is None else "lstf"),
        ("best_target", "" if report.best_k is None else str(report.best_k)),
        ("best_success", _fmt(report.best.success_probability)),
        ("best_energy_residual", _fmt(report.best.energy_residual)),
        ("speedup", _fmt(report.speedup)),
    ]
    _write_csv(os.path.join(out_dir, "heuristic_summary.csv"),
               ["key", "value"], summary, echo)
    best = "aqa" if report.best_k is None else f"lstf k={report.best_k}"
    print(f"class={label} best={best} success={report.best.success_probability:.6f} "
          f"speedup={report.speedup:.1f}x")
    return EXIT_OK


def _parser():
    parser = argparse.ArgumentParser(prog="lstf", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("spectrum", "semiclassical", "dynamics", "benchmark", "heuristic"):
        p = sub.add_parser(name)
        p.add_argument("--config", default=None)
        p.add_argument("--out", default="out")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                       help="override a config value, e.g. --set problem.f=0.5")
    return parser


def _apply_overrides(cfg, pairs):
    for pair in pairs:
        if "=" not in pair or "." not in pair.split("=", 1)[0]:
            raise ConfigError(f"--set expects SECTION.KEY=VALUE, got {pair!r}")
        path, raw = pair.split("=", 1)
        section, key = path.split(".", 1)
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        cfg.setdefault(section, {})[key] = value
    return cfg


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        cfg = {}
        if args.config:
            with open(args.config, "rb") as fh:
                cfg = tomli.load(fh)
        cfg = _apply_overrides(cfg, args.set)
        seed = args.seed if args.seed is not None else int(cfg.get("seed", 7))
        workers = args.workers if args.workers is not None else int(
            cfg.get("workers", os.cpu_count() or 1))
        out_dir = args.out
        os.makedirs(out_dir, exist_ok=True)
        echo = {f"config.{k}": v for k, v in _flatten(cfg).items()}
        echo["seed"] = seed
        echo["command"] = args.command
        if args.command == "spectrum":
            return cmd_spectrum(cfg, out_dir, echo)
        if args.command == "semiclassical":
            return cmd_semiclassical(cfg, out_dir, echo)
        if args.command == "dynamics":
            return cmd_dynamics(cfg, out_dir, echo)
        if args.command == "benchmark":
            return cmd_benchmark(cfg, out_dir, echo, seed, workers)
        if args.command == "heuristic":
            return cmd_heuristic(cfg, out_dir, echo)
        raise ConfigError(f"unknown command {args.command}")
    except (ConfigError, tomli.TOMLDecodeError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrationError as exc:
        print(f"integrator failure: {exc}", file=sys.stderr)
        return EXIT_INTEGRATOR
    except ValueError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
