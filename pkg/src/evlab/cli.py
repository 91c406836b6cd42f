"""Command-line front end.

One subcommand per analysis module (stationary, ttime, spectrum, ftir,
propagate, tolman). Every run writes plot-ready CSV and/or a JSON summary
plus a manifest; outputs are deterministic (17 significant digits, '\\n'
line endings) and never overwrite silently.

Exit codes: 0 success, 1 numeric/invariant failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import importlib.resources
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, ftir, propagate, spectral, stationary, tolman, ttime
from .numcore import Grid1D, UnitSystem, WavePacket

SI_PHOTON_UNITS = UnitSystem(hbar=1.054571817e-34, c=299792458.0, default_mass=1.0)

# Microwave tunneling-time benchmark quoted for comparison, never asserted:
# input period 115 ps, measured delay 130 ps.
EXPERIMENT_PERIOD_PS = 115.0
EXPERIMENT_MEASURED_TAU_PS = 130.0


class CliError(Exception):
    """Usage-level error (exit code 2)."""


def _units(name: str) -> UnitSystem:
    if name == "natural":
        return UnitSystem()
    if name == "si-photon":
        return SI_PHOTON_UNITS
    raise CliError(f"unknown units preset: {name}")


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def _parse_sweep(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise CliError(f"sweep must be lo:hi:count, got {text!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 1:
        raise CliError("sweep count must be at least 1")
    return np.linspace(lo, hi, n)


class OutputWriter:
    """Deterministic CSV/JSON emission with a run manifest."""

    def __init__(self, args):
        out = os.environ.get("EVLAB_OUTPUT_DIR") or args.output_dir
        self.directory = Path(out)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.format = args.format
        self.force = args.force
        self.command = args.command
        self.inputs = {}
        self.outputs = {}
        self.warnings = []

    def _target(self, name: str) -> Path:
        path = self.directory / name
        if path.exists() and not self.force:
            raise CliError(f"refusing to overwrite existing file {path} (use --force)")
        return path

    def write_csv(self, name: str, header: list, rows: list):
        if self.format == "json":
            # Tables still land in the summary so a json-only run loses nothing.
            self.outputs[name.removesuffix(".csv")] = {
                "columns": header,
                "rows": [[_fmt(v) for v in row] for row in rows],
            }
            return None
        path = self._target(name)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(v) for v in row])
        self.outputs[name.removesuffix(".csv")] = {"file": name, "columns": header}
        return path

    def add_result(self, key: str, value):
        self.outputs[key] = value

    def finish(self) -> Path:
        summary = {
            "command": self.command,
            "version": __version__,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "warnings": self.warnings,
        }
        schema = json.loads(
            importlib.resources.files("evlab.schemas")
            .joinpath("summary.schema.json")
            .read_text()
        )
        import jsonschema

        jsonschema.validate(summary, schema)
        # The summary doubles as the run manifest, so it is always written.
        path = self._target(f"{self.command}_summary.json")
        path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
        return path


def _pmap(fn, values, jobs):
    if jobs == 1:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, values))


def cmd_stationary(args, out: OutputWriter):
    units = _units(args.units)
    spec = stationary.BarrierSpec(args.u0, args.d, args.m)
    energies = _parse_sweep(args.sweep_e) if args.sweep_e else [args.e]
    if energies[0] is None:
        raise CliError("give --e or --sweep-e")
    out.inputs.update({"u0": args.u0, "d": args.d, "m": args.m})

    def solve(E):
        sol = stationary.barrier_solution(float(E), spec, units)
        return [
            E, sol.k, sol.kappa,
            sol.F1.real, sol.F1.imag, sol.F2.real, sol.F2.imag,
            sol.r.real, sol.r.imag, sol.t.real, sol.t.imag,
            sol.transmission, sol.reflection,
            stationary.probability_flux(sol, spec.width_d / 2.0, units),
        ]

    rows = _pmap(solve, energies, args.jobs)
    header = ["E", "k", "kappa", "re_F1", "im_F1", "re_F2", "im_F2",
              "re_r", "im_r", "re_t", "im_t", "T", "R", "flux_interior"]
    out.write_csv("stationary.csv", header, rows)
    if args.m0 is not None:
        k = stationary.relativistic_wavenumber(float(energies[0]), args.u0, args.m0, units)
        out.add_result("relativistic_wavenumber", {"re": k.real, "im": k.imag})


def cmd_ttime(args, out: OutputWriter):
    units = _units(args.units)
    spec = stationary.BarrierSpec(args.u0, args.d, args.m)
    fractions = _parse_sweep(args.sweep_e) if args.sweep_e else [args.e]
    if fractions[0] is None:
        raise CliError("give --e or --sweep-e (as fractions of U0)")
    out.inputs.update({"u0": args.u0, "d": args.d, "m": args.m})

    def solve(f):
        E = float(f) * args.u0
        rep = ttime.report(E, spec, units)
        tau = rep.esposito_tau if rep.esposito_tau is not None else math.nan
        fac = rep.factor_A if rep.factor_A is not None else math.nan
        return [f, tau, fac, rep.phase_time, rep.dwell_time, rep.period_T]

    rows = _pmap(solve, fractions, args.jobs)
    header = ["e_over_u0", "esposito_tau", "factor_a", "phase_time",
              "dwell_time", "period_T"]
    out.write_csv("ttime.csv", header, rows)
    es = ttime.esposito_special_energy(args.u0)
    out.add_result("special_energy", {"E_s": es, "E_s_over_u0": es / args.u0})


def cmd_spectrum(args, out: OutputWriter):
    units = _units(args.units)
    out.inputs["a"] = args.a
    moments = spectral.box_moments(args.a)
    report = dict(moments)
    report["parseval"] = spectral.box_parseval(args.a)
    report["k2_spectral"] = spectral.box_k2_spectral(args.a)
    report.update(spectral.released_energy_spread(args.a, units))
    out.add_result("box_state", report)
    if args.tail_akprime is not None:
        k_prime = args.tail_akprime / args.a
        tail = spectral.tail_probability(k_prime, args.a)
        out.add_result("tail_probability", {
            "a_k_prime": args.tail_akprime,
            "exact": tail["exact"],
            "asymptotic_printed": tail["asymptotic"],
            "oracle_coefficient": spectral.ORACLE_TAIL_COEFFICIENT,
            "printed_coefficient": spectral.PRINTED_TAIL_COEFFICIENT,
        })
        out.warnings.append(spectral.TAIL_COEFFICIENT_WARNING)
    if args.lorentz is not None:
        w0, g0 = args.lorentz
        line = spectral.LineShape(w0, g0)
        out.add_result("lorentzian", {
            "peak": spectral.lorentzian_density(w0, line),
            "fwhm": g0,
            "norm": spectral.lorentzian_norm(line),
        })
    if args.gauss is not None:
        w0, sigma = args.gauss
        out.add_result("gaussian_band", spectral.gaussian_band_report(w0, sigma, units))


def cmd_ftir(args, out: OutputWriter):
    units = _units(args.units)
    theta = math.radians(args.theta_deg)
    out.inputs.update({"n": args.n, "theta_deg": args.theta_deg})
    if args.report_alpha:
        decay = ftir.gap_decay(args.n, theta, args.omega, units)
        out.add_result("alpha", decay["alpha"])
        out.add_result("kappa_x", decay["kappa_x"])
        out.add_result("k_parallel", decay["k_parallel"])
        out.add_result("goos_hanchen_D", ftir.goos_hanchen_estimate(decay["kappa_x"]))
        print(f"alpha = {decay['alpha']:.7f}")
    if args.gap_d is not None:
        spec = ftir.GapSpec(args.n, theta, args.gap_d)
        gt = ftir.gap_transfer(args.omega, spec, units)
        out.add_result("transfer", {
            "omega": args.omega, "T": gt.transmission, "R": abs(gt.r) ** 2,
            "re_t": gt.t.real, "im_t": gt.t.imag,
            "kappa_x_d": gt.kappa_x * args.gap_d,
        })
        out.add_result("group_delay", ftir.gap_group_delay(spec, args.omega, units))
    if args.experiment_report:
        nu0 = 1.0 / (EXPERIMENT_PERIOD_PS * 1e-12)
        omega0 = 2.0 * math.pi * nu0
        si = SI_PHOTON_UNITS
        decay = ftir.gap_decay(args.n, theta, omega0, si)
        # Gap sized to the quoted opacity in decay lengths.
        d = args.kappa_d / decay["kappa_x"]
        spec = ftir.GapSpec(args.n, theta, d)
        tau_g = ftir.gap_group_delay(spec, omega0, si)
        out.add_result("experiment_report", {
            "nu0_hz": nu0,
            "input_period_ps": EXPERIMENT_PERIOD_PS,
            "measured_tau_ps": EXPERIMENT_MEASURED_TAU_PS,
            "gap_d_m": d,
            "kappa_x_d": args.kappa_d,
            "tau_g_ps": tau_g * 1e12,
            "tau_g_times_nu0": tau_g * nu0,
            "note": "measured value quoted for comparison only, not asserted",
        })


def cmd_propagate(args, out: OutputWriter):
    units = _units(args.units)
    grid = Grid1D(args.x_min, args.dx, args.grid_n)
    x = grid.points()
    out.inputs.update({"mode": args.mode, "grid_n": args.grid_n, "dx": args.dx,
                       "steps": args.steps})
    if args.mode == "wave":
        kc = np.zeros(grid.count)
        if args.barrier_kc > 0:
            kc[(x >= args.barrier_start) & (x <= args.barrier_start + args.barrier_width)] = args.barrier_kc
        profile = propagate.MediumProfile(grid, kc)
        envelope = np.exp(-((x - args.pulse_center) ** 2) / (2.0 * args.pulse_width**2))
        psi0 = envelope * np.cos(args.pulse_k0 * (x - args.pulse_center))
        shift = units.c * args.courant * grid.dx / units.c  # one step back
        prev = np.exp(-((x + shift - args.pulse_center) ** 2) / (2.0 * args.pulse_width**2)) \
            * np.cos(args.pulse_k0 * (x + shift - args.pulse_center))
        record = propagate.evolve_wave(
            WavePacket(grid, psi0), profile, args.courant, args.steps,
            initial_prev=prev, units=units, record_every=args.record_every,
        )
    else:
        U = np.zeros(grid.count)
        if args.barrier_kc > 0:
            U[(x >= args.barrier_start) & (x <= args.barrier_start + args.barrier_width)] = args.barrier_kc
        psi0 = np.exp(-((x - args.pulse_center) ** 2) / (4.0 * args.pulse_width**2)
                      + 1j * args.pulse_k0 * x)
        psi0 /= np.sqrt(np.sum(np.abs(psi0) ** 2) * grid.dx)
        record = propagate.evolve_schrodinger(
            WavePacket(grid, psi0), U, units.default_mass, args.dt, args.steps,
            units=units, record_every=args.record_every,
        )
    rows = [
        [t, f, p]
        for t, f, p in zip(record.times, record.front_positions, record.peak_positions)
    ]
    out.write_csv("trajectory.csv", ["t", "front_x", "peak_x"], rows)
    if args.snapshots:
        paths = propagate.dump_snapshots_csv(record, out.directory / "snapshots",
                                             stride=args.snapshot_stride)
        out.add_result("snapshots", [str(p.name) for p in paths])


def cmd_tolman(args, out: OutputWriter):
    units = _units(args.units)
    out.inputs.update({"v_signal": args.v_signal, "v_frame": args.v_frame})
    if args.dx_over_dt is not None:
        a = tolman.Event(0.0, 0.0)
        b = tolman.Event(1.0, args.dx_over_dt * 1.0)
        out.add_result("interval", tolman.classify_interval(a, b, units))
        out.add_result("ordering", tolman.ordering_in_frame(
            a, b, tolman.Boost(args.v_frame), units))
    if args.sweep_d:
        rows = []
        for row in tolman.tradeoff_sweep(
            args.kappa, args.v_signal, args.v_frame,
            _parse_sweep(args.sweep_d), args.threshold, units,
        ):
            rows.append([row["d"], row["advance"], row["amplitude"], row["detectable"]])
        out.write_csv("tradeoff.csv", ["d", "advance", "amplitude", "detectable"], rows)
        feasible = [r[0] for r in rows if r[1] > 0 and r[3]]
        out.add_result("feasibility_window", {
            "empty": len(feasible) == 0,
            "d_min": min(feasible) if feasible else None,
            "d_max": max(feasible) if feasible else None,
        })


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--units", default="natural", choices=["natural", "si-photon"])
        p.add_argument("--output-dir", default=".")
        p.add_argument("--format", default="both", choices=["csv", "json", "both"])
        p.add_argument("--force", action="store_true",
                       help="allow overwriting existing output files")
        p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("stationary", help="barrier/threshold solutions and flux")
    common(p)
    p.add_argument("--u0", type=float, required=True)
    p.add_argument("--d", type=float, default=1.0)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--e", type=float, default=None)
    p.add_argument("--sweep-e", default=None, help="absolute energies lo:hi:count")
    p.add_argument("--m0", type=float, default=None,
                   help="also report the relativistic wavenumber for rest mass m0")
    p.set_defaults(func=cmd_stationary)

    p = sub.add_parser("ttime", help="tunneling-time definitions")
    common(p)
    p.add_argument("--u0", type=float, required=True)
    p.add_argument("--d", type=float, default=1.0)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--e", type=float, default=None, help="single E/U0 fraction")
    p.add_argument("--sweep-e", default=None, help="E/U0 fractions lo:hi:count")
    p.set_defaults(func=cmd_ttime)

    p = sub.add_parser("spectrum", help="box-state spectral analysis")
    common(p)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--tail-akprime", type=float, default=None,
                   help="report tail probability at this a*k' value")
    p.add_argument("--lorentz", type=float, nargs=2, metavar=("OMEGA0", "GAMMA0"),
                   default=None)
    p.add_argument("--gauss", type=float, nargs=2, metavar=("OMEGA0", "SIGMA"),
                   default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("ftir", help="frustrated-total-internal-reflection gap")
    common(p)
    p.add_argument("--n", type=float, default=1.5)
    p.add_argument("--theta-deg", type=float, default=45.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--gap-d", type=float, default=None)
    p.add_argument("--report-alpha", action="store_true")
    p.add_argument("--experiment-report", action="store_true",
                   help="microwave benchmark comparison (115 ps period)")
    p.add_argument("--kappa-d", type=float, default=5.0,
                   help="gap opacity in decay lengths for the experiment report")
    p.set_defaults(func=cmd_ftir)

    p = sub.add_parser("propagate", help="time-domain runs")
    common(p)
    p.add_argument("--mode", choices=["wave", "schrodinger"], default="wave")
    p.add_argument("--grid-n", type=int, default=2048)
    p.add_argument("--dx", type=float, default=0.05)
    p.add_argument("--x-min", type=float, default=-51.2)
    p.add_argument("--courant", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=0.001, help="schrodinger step")
    p.add_argument("--steps", type=int, default=500)
    p.add_argument("--record-every", type=int, default=10)
    p.add_argument("--pulse-center", type=float, default=-20.0)
    p.add_argument("--pulse-width", type=float, default=2.0)
    p.add_argument("--pulse-k0", type=float, default=5.0)
    p.add_argument("--barrier-start", type=float, default=0.0)
    p.add_argument("--barrier-width", type=float, default=1.0)
    p.add_argument("--barrier-kc", type=float, default=0.0)
    p.add_argument("--snapshots", action="store_true")
    p.add_argument("--snapshot-stride", type=int, default=1)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("tolman", help="event ordering and the causal loop")
    common(p)
    p.add_argument("--v-signal", type=float, default=2.0)
    p.add_argument("--v-frame", type=float, default=0.6)
    p.add_argument("--dx-over-dt", type=float, default=None,
                   help="event-pair separation speed for ordering analysis")
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--threshold", type=float, default=0.01)
    p.add_argument("--sweep-d", default=None, help="barrier widths lo:hi:count")
    p.set_defaults(func=cmd_tolman)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = OutputWriter(args)
        args.func(args, out)
        path = out.finish()
        print(f"summary: {path}")
        return 0
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 1


def main():
    raise SystemExit(run())


if __name__ == "__main__":
    main()
