"""Emit the figure input data sets through the CLI.

Each figure gets its own directory under --out containing only files the
CLI writes (spectrum/schedules/semiclassical CSVs, dynamics sweeps,
benchmark records, instance files).  The renderer consumes these
directories; nothing here computes plot-side quantities.

Usage: python3 make_figure_data.py [--out DIR] [--figures fig1,fig7,...]
       [--quick]

--quick shrinks grids and sweep lists so the full set finishes in a few
minutes; use it for fixture generation, not for publication curves.
"""

import argparse
import csv
import os
import sys

from lstf import cli
from lstf.cli import dump_problem
from lstf.instances import reference_instance


def run(out_dir, command, *argv):
    os.makedirs(out_dir, exist_ok=True)
    rc = cli.main([command, "--out", out_dir, *argv])
    if rc != 0:
        raise SystemExit(f"cli exited {rc} for {out_dir}")


def read_summary(path):
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    return dict(rows[1:])


def sets(**kv):
    out = []
    for key, value in kv.items():
        out += ["--set", f"{key.replace('__', '.')}={value}"]
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="fig_data")
    ap.add_argument("--figures", default="all")
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    wanted = None if args.figures == "all" else set(args.figures.split(","))
    quick = args.quick

    grid = 301 if quick else 1501
    res = 128 if quick else 512
    t_closed = "[1.0, 2.0, 5.0, 10.0, 20.0, 50.0]" if quick else \
        "[0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0]"
    t_open = "[5.0, 10.0, 40.0]" if quick else \
        "[2.0, 5.0, 10.0, 20.0, 40.0, 70.0, 100.0, 200.0, 400.0]"
    t_frus = "[10.0, 40.0]" if quick else \
        "[5.0, 10.0, 20.0, 40.0, 60.0, 100.0, 200.0]"
    samples = 2 if quick else 20
    ame_rtol = "1e-6" if quick else "1e-8"

    def want(fig):
        return wanted is None or fig in wanted

    def fig_dir(fig, sub=None):
        parts = [args.out, fig] + ([sub] if sub else [])
        return os.path.join(*parts)

    if want("fig1"):
        for h_x2 in (0.001, 0.01, 0.1):
            run(fig_dir("fig1", f"hx2_{h_x2:g}"), "spectrum",
                *sets(problem__h_x2=h_x2, spectrum__grid_resolution=grid,
                      spectrum__watch_qubit=1))

    if want("fig2"):
        run(fig_dir("fig2"), "semiclassical",
            *sets(problem__h_x2=0.01, semiclassical__resolution=res,
                  semiclassical__trace_s="[0.3, 0.9, 31]" if quick else
                  "[0.3, 0.9, 61]"))

    if want("fig3"):
        run(fig_dir("fig3"), "spectrum",
            *sets(plan__variant="lstf", plan__target_k=1, plan__c_x=0.3,
                  plan__c_1=0.1, spectrum__grid_resolution=grid))

    if want("fig4"):
        extra = dict(benchmark__t_an=20.0) if quick else {}
        run(fig_dir("fig4"), "benchmark", "--seed", "7", "--workers", "1",
            *sets(benchmark__samples_per_group=samples,
                  benchmark__grid_resolution=301 if quick else 1001,
                  benchmark__rtol="1e-6" if quick else "1e-8", **extra))

    for fig, target in (("fig5", 0), ("fig6", 0), ("fig14", 6)):
        if want(fig):
            run(fig_dir(fig, "aqa"), "spectrum",
                *sets(problem__kind="builtin",
                      spectrum__grid_resolution=grid))
            run(fig_dir(fig, "lstf"), "spectrum",
                *sets(problem__kind="builtin", plan__variant="lstf",
                      plan__target_k=target, spectrum__grid_resolution=grid))

    if want("fig7"):
        run(fig_dir("fig7", "spectrum_aqa"), "spectrum",
            *sets(spectrum__grid_resolution=grid))
        run(fig_dir("fig7", "spectrum_lstf"), "spectrum",
            *sets(plan__variant="lstf", plan__target_k=1,
                  spectrum__grid_resolution=grid))
        for sub, plan in (("sweep_aqa", {}),
                          ("sweep_lstf", dict(plan__variant="lstf",
                                              plan__target_k=1))):
            run(fig_dir("fig7", sub), "dynamics",
                *sets(dynamics__t_an=t_closed, **plan))

    for fig, plan in (("fig8", {}),
                      ("fig9", dict(plan__variant="lstf", plan__target_k=1))):
        if want(fig):
            run(fig_dir(fig, "closed"), "dynamics",
                *sets(dynamics__t_an=t_open, **plan))
            for axis in ("x", "z"):
                run(fig_dir(fig, f"ame_{axis}"), "dynamics",
                    *sets(dynamics__t_an=t_open, dynamics__mode="ame",
                          dynamics__rtol=ame_rtol, bath__coupling=axis,
                          **plan))
            run(fig_dir(fig, "populations"), "dynamics",
                *sets(dynamics__t_an="[10.0]", dynamics__mode="ame",
                      dynamics__rtol=ame_rtol, dynamics__populations="true",
                      dynamics__population_points=41 if quick else 101,
                      bath__coupling="x", **plan))
            run(fig_dir(fig, "spectrum"), "spectrum",
                *sets(spectrum__grid_resolution=grid, **plan))

    if want("fig10"):
        run(fig_dir("fig10", "curves"), "dynamics",
            *sets(dynamics__sweep="frustration", dynamics__t_an=t_frus,
                  dynamics__rtol=ame_rtol,
                  dynamics__f_list="[0.5, 0.65, 0.8]"))
        run(fig_dir("fig10", "interval"), "dynamics",
            *sets(dynamics__sweep="frustration", dynamics__t_an="[5.0]",
                  dynamics__rtol="1e-6",
                  dynamics__f_list="[0.3, 0.4, 0.5, 0.6, 0.65, 0.7, 0.8, 0.9]"))

    if want("fig11"):
        run(fig_dir("fig11"), "semiclassical",
            *sets(problem__h_x2=0.01, semiclassical__resolution=res,
                  semiclassical__trace_s="[0.3, 0.9, 7]"))

    if want("fig12"):
        h_list = (0.001, 0.003, 0.01, 0.03, 0.1, 0.2, 0.3, 0.5)
        rows = []
        for h_x2 in h_list:
            sub = fig_dir("fig12", f"hx2_{h_x2:g}")
            run(sub, "spectrum",
                *sets(problem__h_x2=h_x2, spectrum__grid_resolution=grid,
                      spectrum__watch_qubit=1))
            summary = read_summary(os.path.join(sub, "spectrum_summary.csv"))
            crossings = summary.get("s_plus", "").split()
            rows.append([h_x2, summary["s_star"],
                         crossings[-1] if crossings else "",
                         summary.get("max_slope_s", "")])
        with open(os.path.join(fig_dir("fig12"), "sweep.csv"), "w",
                  newline="\n") as fh:
            writer = csv.writer(fh)
            writer.writerow(["h_x2", "s_star", "s_plus", "max_slope_s"])
            writer.writerows(rows)

    if want("fig13"):
        os.makedirs(fig_dir("fig13"), exist_ok=True)
        dump_problem(reference_instance(),
                     os.path.join(fig_dir("fig13"), "instance.toml"))

    if want("fig15"):
        run(fig_dir("fig15"), "spectrum",
            *sets(plan__variant="lstf", plan__target_k=1,
                  spectrum__grid_resolution=grid))

    if want("fig16"):
        run(fig_dir("fig16"), "dynamics",
            *sets(dynamics__sweep="energy_scale", dynamics__t_an=t_open,
                  dynamics__rtol=ame_rtol, dynamics__r_list="[1.0, 5.0]"))

    print(f"figure data under {args.out}/")


if __name__ == "__main__":
    main()
