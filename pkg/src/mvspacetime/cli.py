"""Command-line front end.

Units at this boundary are astronomer friendly (solar masses, light years,
km/s); everything is converted to SI before calling the library.

Exit status: 0 success, 1 validation error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import configparser
import math
import sys
from pathlib import Path

from . import checks, csvio, gravity, rotation
from .algebra import as_vector
from .errors import NumericalError, ValidationError
from .gravity import MetricModel, PhysicalConstants
from .spacetime import (SPEED_OF_LIGHT, CausalSeparation, LorentzOperator,
                        causal_null_time, interval_squared, lorentz_transform,
                        make_event, rapidity_from_velocity)

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2
SUN_RADIUS_LY = 26_000.0
SUN_SPEED_KM_S = 240.0
CONFIG_KEYS = {"h0": "H0", "g": "G", "m_sun": "M_sun"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ValidationError(message)


def _vector_arg(text):
    try:
        return as_vector([float(x) for x in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")


def read_config(path):
    """Constants from a ``key = value`` file (keys: H0 in km/s/Mpc, G, M_sun)."""
    parser = configparser.ConfigParser()
    text = Path(path).read_text(encoding="utf-8")
    parser.read_string("[constants]\n" + text)
    values = {}
    for key, raw in parser["constants"].items():
        if key not in CONFIG_KEYS:
            raise ValidationError(f"unknown config key {key!r} in {path}")
        try:
            values[CONFIG_KEYS[key]] = float(raw)
        except ValueError:
            raise ValidationError(f"config value for {key!r} is not a number: {raw!r}")
    return values


def build_constants(args) -> PhysicalConstants:
    values = read_config(args.config) if args.config else {}
    if args.h0 is not None:
        values["H0"] = args.h0
    h0 = values.pop("H0", None)
    if h0 is not None and not h0 >= 0.0:
        raise ValidationError("H0 must be non-negative")
    constants = (PhysicalConstants.from_h0(h0, **values) if h0 is not None
                 else PhysicalConstants(**values))
    a0 = getattr(args, "a0", None)
    if a0 is not None and getattr(args, "command", "") != "geodesic":
        constants = constants.with_a0(a0)
    return constants


def _positive(name, value):
    if not value > 0.0:
        raise ValidationError(f"--{name} must be positive, got {value!r}")


def _emit(args, header, rows, footer, out):
    text = csvio.format_csv(header, rows, footer)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)


def _gnuplot_script(csv_path, title, xlabel, ylabel, series, extra=()):
    name = Path(csv_path).name
    lines = [
        "# gnuplot script; run with: gnuplot -persist " + Path(csv_path).with_suffix(".gp").name,
        "set datafile separator ','",
        f"set title '{title}'",
        f"set xlabel '{xlabel}'",
        f"set ylabel '{ylabel}'",
        "set grid",
        "set key top right",
        *extra,
    ]
    plots = [f"'{name}' skip 1 using {x}:{y} with lines lw 2 lc rgb '{colour}' title '{label}'"
             for x, y, colour, label in series]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


def _write_plot_script(args, script):
    path = Path(args.output).with_suffix(".gp")
    path.write_text(script, encoding="utf-8")
    return path


def cmd_check(args, out):
    if args.samples < 1:
        raise ValidationError("--samples must be at least 1")
    table = checks.faulty_table() if args.inject_fault else None
    results = checks.run_all(args.seed, args.samples, table)
    for r in results:
        out.write(r.line() + "\n")
    failed = [r for r in results if not r.passed]
    out.write(f"{len(results) - len(failed)}/{len(results)} checks passed (seed {args.seed})\n")
    for r in failed:
        sys.stderr.write(f"violated identity: {r.name} (magnitude {r.max_violation:.3e})\n")
    return EXIT_NUMERICAL if failed else EXIT_OK


def _galaxy(args, constants):
    _positive("mass", args.mass)
    return rotation.GalaxyModel(args.mass * constants.M_sun, constants=constants)


def cmd_rotation_curve(args, out):
    constants = build_constants(args)
    model = _galaxy(args, constants)
    ly = constants.light_year
    curve = rotation.rotation_curve(model, args.rmin * ly, args.rmax * ly, args.samples,
                                    args.spacing)
    footer = {"mass_kg": model.mass, "a0_m_s2": model.a0, "flatness_ratio": curve.flatness_ratio()}
    if model.a0 > 0.0:
        footer["crossover_radius_ly"] = rotation.crossover_radius(model) / ly
        r_min = rotation.rotation_curve_minimum(curve, model)
        if r_min is not None:
            footer["v_modified_minimum_ly"] = r_min / ly
    _emit(args, rotation.RotationCurve.HEADER, curve.rows(), footer, out)
    if args.format == "plot-script":
        script = _gnuplot_script(
            args.output, "Rotation curve", "Radius (light years)", "Orbital speed (km/s)",
            [(2, 5, "blue", "Newtonian"), (2, 6, "red", "With expansion")],
            [f"set label 1 'Sun ({SUN_RADIUS_LY:.0f} ly, {SUN_SPEED_KM_S:.0f} km/s)' "
             f"at {SUN_RADIUS_LY:.0f},{SUN_SPEED_KM_S:.0f} point pointtype 7 pointsize 1.5 offset 1,1"])
        path = _write_plot_script(args, script)
        sys.stderr.write(f"wrote {args.output} and {path}\n")
    return EXIT_OK


def cmd_effective_potential(args, out):
    constants = build_constants(args)
    _positive("mass", args.mass)
    _positive("star-mass", args.star_mass)
    ly = constants.light_year
    mass, star = args.mass * constants.M_sun, args.star_mass * constants.M_sun
    if args.angular_momentum is not None:
        _positive("angular-momentum", args.angular_momentum)
        model = rotation.GalaxyModel(mass, star, args.angular_momentum, constants)
    else:
        _positive("vref", args.vref)
        _positive("rref", args.rref)
        model = rotation.GalaxyModel.from_reference_orbit(
            mass, star, args.vref * 1e3, args.rref * ly, constants)
    newtonian = model.with_a0(0.0)
    curve = rotation.rotation_curve(model, args.rmin * ly, args.rmax * ly, args.samples,
                                    args.spacing)
    r = curve.radii
    rows = zip(r, r / ly, rotation.effective_potential(r, newtonian),
               rotation.effective_potential(r, model))
    r_newton = rotation.circular_orbit_radius(newtonian)
    r_modified = rotation.circular_orbit_radius(model)
    footer = {
        "angular_momentum_kg_m2_s": model.angular_momentum,
        "a0_m_s2": model.a0,
        "newtonian_minimum_m": r_newton,
        "newtonian_minimum_ly": r_newton / ly,
        "modified_minimum_m": r_modified,
        "modified_minimum_ly": r_modified / ly,
    }
    _emit(args, ("r_m", "r_ly", "V_newton_J", "V_modified_J"), list(rows), footer, out)
    if args.format == "plot-script":
        script = _gnuplot_script(
            args.output, "Effective potential", "Radius (light years)", "V_e (J)",
            [(2, 3, "blue", "Newtonian"), (2, 4, "red", "With expansion")],
            [f"set arrow from {r_newton / ly},graph 0 to {r_newton / ly},graph 1 nohead dt 2 lc rgb 'blue'",
             f"set arrow from {r_modified / ly},graph 0 to {r_modified / ly},graph 1 nohead dt 2 lc rgb 'red'"])
        path = _write_plot_script(args, script)
        sys.stderr.write(f"wrote {args.output} and {path}\n")
    return EXIT_OK


def cmd_geodesic(args, out):
    constants = build_constants(args)
    if args.mass < 0.0:
        raise ValidationError("--mass must be non-negative")
    _positive("radius", args.radius)
    if args.steps < 1:
        raise ValidationError(f"--steps must be at least 1, got {args.steps}")
    model = MetricModel(constants, args.mass * constants.M_sun)
    radius = args.radius * constants.light_year

    if args.mode == "reduced":
        if args.a0 is not None:
            model = MetricModel(constants.with_a0(args.a0), model.mass)
        v_circ = gravity.circular_speed(model, radius)
        speed = args.speed * 1e3 if args.speed is not None else v_circ
        step = args.step_size if args.step_size is not None else _default_step(radius, v_circ)
        traj = gravity.integrate_reduced((radius, 0.0, 0.0), (0.0, speed, 0.0),
                                         model, args.steps, step)
        footer = {"step_size_s": step, "radius_drift": traj.radius_drift()}
        if traj.energy(model)[0] != 0.0:
            footer["energy_drift"] = traj.energy_drift(model)
    else:
        a0 = constants.a0 if args.a0 is None else args.a0
        state = gravity.circular_state(model, radius, None if args.speed is None else args.speed * 1e3,
                                       expansion_acceleration=a0)
        v_circ = gravity.metric_circular_speed(model, radius, state.velocity[4])
        step = constants.c * (args.step_size if args.step_size is not None
                              else _default_step(radius, v_circ))
        traj = gravity.integrate_geodesic(state, model, args.steps, step)
        footer = {"step_size_m": step, "radius_drift": traj.radius_drift(),
                  "norm_drift": traj.norm_drift(model)}
    if model.mass > 0.0:
        footer["kepler_period_s"] = 2.0 * math.pi * math.sqrt(radius ** 3 / (constants.G * model.mass))
    _emit(args, traj.header(), traj.rows(), footer, out)
    for key, value in footer.items():
        sys.stderr.write(f"{key}: {value:.6e}\n")
    if not traj.ok:
        sys.stderr.write(traj.error + "\n")
        return EXIT_NUMERICAL
    return EXIT_OK


def _default_step(radius, circular_speed):
    """One thousandth of the circular-orbit period at ``radius``."""
    if not circular_speed > 0.0:
        raise ValidationError("no circular orbit without mass or expansion: give --step-size")
    return 2.0 * math.pi * radius / circular_speed / 1000.0


def cmd_boost(args, out):
    c = SPEED_OF_LIGHT
    if not abs(args.beta) < 1.0:
        raise ValidationError(f"|beta| = {abs(args.beta)!r} is not below 1")
    event = make_event(args.space, args.ct.scaled(1.0 / c), c)
    op = LorentzOperator(args.axis, rapidity_from_velocity(args.beta * c, c),
                         args.rotation_axis, math.radians(args.angle))
    moved = lorentz_transform(event, op)
    before, after = interval_squared(event), interval_squared(moved)
    out.write(f"rapidity: {op.rapidity:.17g}\n")
    out.write(f"X : {event}\n")
    out.write(f"X': {moved}\n")
    out.write(f"interval^2 before: {before:.17g}\n")
    out.write(f"interval^2 after:  {after:.17g}\n")
    if abs(after - before) > 1e-9 * max(1.0, abs(before)):
        sys.stderr.write("interval not preserved\n")
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_remote_view(args, out):
    instantaneous = args.time_component is None
    t = 0.0 if instantaneous else args.time_component
    s = causal_null_time(args.distance, instantaneous, t)
    sep = CausalSeparation(args.distance, s, t)
    out.write(f"distance d: {args.distance:.17g} m\n")
    out.write(f"time component s: {s:.17g} m\n")
    out.write(f"time component t: {t:.17g} m\n")
    out.write(f"separation: {sep.to_event()}\n")
    out.write(f"(Delta S)^2: {interval_squared(sep.to_event()):.17g}\n")
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="output file (default: standard output)")
    common.add_argument("--format", choices=("csv", "plot-script"), default="csv")
    common.add_argument("--h0", type=float, help="Hubble constant in km/s/Mpc")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--config", help="key = value file setting H0, G, M_sun")

    parser = _Parser(prog="mvspacetime", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="run the algebra and Lorentz identity suites")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)

    def galaxy_args(p, rmin, rmax):
        p.add_argument("--mass", type=float, default=1e11, help="galaxy mass in solar masses")
        p.add_argument("--rmin", type=float, default=rmin, help="light years")
        p.add_argument("--rmax", type=float, default=rmax, help="light years")
        p.add_argument("--samples", type=int, default=200)
        p.add_argument("--spacing", choices=("linear", "log"), default="linear")
        p.add_argument("--a0", type=float, help="override the expansion acceleration (m/s^2)")

    p = sub.add_parser("rotation-curve", parents=[common], help="Newtonian and modified rotation curves")
    galaxy_args(p, 5_000.0, 100_000.0)
    p.set_defaults(func=cmd_rotation_curve)

    p = sub.add_parser("effective-potential", parents=[common], help="effective potential and its minima")
    galaxy_args(p, 5_000.0, 100_000.0)
    p.add_argument("--star-mass", type=float, default=1.0, help="solar masses")
    p.add_argument("--angular-momentum", type=float, help="kg m^2/s (overrides --vref/--rref)")
    p.add_argument("--vref", type=float, default=SUN_SPEED_KM_S, help="reference speed, km/s")
    p.add_argument("--rref", type=float, default=SUN_RADIUS_LY, help="reference radius, light years")
    p.set_defaults(func=cmd_effective_potential)

    p = sub.add_parser("geodesic", parents=[common], help="integrate an orbit")
    p.add_argument("--mode", choices=("metric", "reduced"), default="metric",
                   help="5D geodesic of the metric, or the reduced 3D equations of motion")
    p.add_argument("--mass", type=float, default=1e11, help="solar masses (0 for flat space)")
    p.add_argument("--radius", type=float, default=SUN_RADIUS_LY, help="initial radius, light years")
    p.add_argument("--speed", type=float, help="initial tangential speed, km/s (default: circular)")
    p.add_argument("--a0", type=float, help="expansion acceleration, m/s^2")
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--step-size", type=float, help="coordinate-time step, s (default: period/1000)")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("boost", parents=[common], help="Lorentz-transform a spacetime event")
    p.add_argument("--space", type=_vector_arg, default=as_vector((0.0, 1.0, 0.0)), help="x1,x2,x3 in m")
    p.add_argument("--ct", type=_vector_arg, default=as_vector((0.0, 0.0, 1.0)), help="c t vector in m")
    p.add_argument("--beta", type=float, default=0.0, help="boost speed as a fraction of c")
    p.add_argument("--axis", type=_vector_arg, default=as_vector((1.0, 0.0, 0.0)))
    p.add_argument("--rotation-axis", type=_vector_arg, default=as_vector((0.0, 0.0, 1.0)))
    p.add_argument("--angle", type=float, default=0.0, help="rotation angle, degrees")
    p.set_defaults(func=cmd_boost)

    p = sub.add_parser("remote-view", parents=[common], help="null separation at distance d")
    p.add_argument("--distance", type=float, required=True, help="meters")
    p.add_argument("--time-component", type=float,
                   help="second time component t in meters (omit for instantaneous viewing)")
    p.set_defaults(func=cmd_remote_view)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.format == "plot-script" and not args.output:
            raise ValidationError("--format plot-script needs --output for the data file")
        return args.func(args, out)
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except NumericalError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
