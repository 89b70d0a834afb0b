"""Command-line front end.

Subcommands: images, countmap, density, galaxy, delays, motherbody,
phasescan, convert.  Image sets and reports are JSON, grids and curves are
CSV; complex numbers are serialized as [re, im] pairs and every float is
rounded to 15 significant digits so identical invocations produce
byte-identical output.  Exit codes: 0 ok, 2 configuration error,
3 solver/numeric failure.  ``--plot`` additionally renders a PNG next to
the delimited output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import delays as delays_mod
from . import gaussian as gaussian_mod
from . import motherbody as mother_mod
from . import profiles as profiles_mod
from . import quartic as quartic_mod
from . import solver as solver_mod
from .errors import ConfigError, DomainError, LensError, NumericError
from .imageset import ImageSet, sort_images
from .spectral import density_samples, generic_model

__all__ = ["main"]


# --- deterministic formatting -------------------------------------------------


def _fnum(x: float) -> float:
    """Round to 15 significant digits and normalize the sign of zero."""
    return float(f"{float(x) + 0.0:.15g}")


def _fstr(x) -> str:
    return f"{float(x) + 0.0:.15g}"


def _cpair(z: complex) -> list[float]:
    return [_fnum(z.real), _fnum(z.imag)]


def _write_json(payload, stream) -> None:
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def _write_csv(header, rows, stream) -> None:
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(_fstr(v) if isinstance(v, float) else str(v) for v in row))
        stream.write("\n")


# --- argument parsing ----------------------------------------------------------


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"cannot parse complex value {text!r}; expected re,im")


def _parse_grid(text: str) -> np.ndarray:
    try:
        lo, hi, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise ConfigError(f"cannot parse grid {text!r}; expected lo:hi:step")
    if step <= 0.0 or hi < lo:
        raise ConfigError("grid requires lo <= hi and step > 0")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def _parse_config_file(path: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"bad config line: {line!r}")
                key, value = line.split("=", 1)
                entries[key.strip()] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    return entries


def _add_model_flags(sub) -> None:
    sub.add_argument("--model", required=True, choices=["gaussian", "quartic", "generic"])
    sub.add_argument("--a", type=float, help="gaussian cut half-length")
    sub.add_argument("--m", type=float, help="total mass")
    sub.add_argument("--p", type=float, help="gaussian strength 2m/a^2 (instead of --m)")
    sub.add_argument("--t", type=float, help="quartic coupling")
    sub.add_argument("--config", help="key=value file for the generic model")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmlens",
        description="Lens-equation solving for eigenvalue-density mass distributions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_images = sub.add_parser("images", help="solve for all images of one source")
    _add_model_flags(p_images)
    p_images.add_argument("--source", default="0,0", help="source position re,im")

    p_count = sub.add_parser("countmap", help="image counts over a source grid")
    _add_model_flags(p_count)
    p_count.add_argument("--grid", required=True, help="lo:hi:step, both axes")

    p_density = sub.add_parser("density", help="eigenvalue density samples")
    _add_model_flags(p_density)
    p_density.add_argument("--samples", type=int, default=200)

    p_galaxy = sub.add_parser("galaxy", help="edge-on galaxy boundary curves")
    _add_model_flags(p_galaxy)
    p_galaxy.add_argument("--area", type=float, help="total area of the components")
    p_galaxy.add_argument("--areas", help="comma-separated area per component")
    p_galaxy.add_argument("--samples", type=int, default=200)

    p_delays = sub.add_parser("delays", help="arrival-time report for the images")
    _add_model_flags(p_delays)
    p_delays.add_argument("--source", default="0,0")
    p_delays.add_argument("--pairs", action="store_true", help="include pairwise differences")

    p_mother = sub.add_parser("motherbody", help="verify the elliptic mother-body match")
    p_mother.add_argument("--model", required=True, choices=["gaussian", "quartic"])
    p_mother.add_argument("--alpha", type=float, required=True)
    p_mother.add_argument("--beta", type=float)
    p_mother.add_argument("--t", type=float)
    p_mother.add_argument("--m", type=float, default=1.0)
    p_mother.add_argument("--points", type=int, default=20)
    p_mother.add_argument("--quadrature", action="store_true", help="also run the 2-D quadrature route")
    p_mother.add_argument("--nodes", type=int, default=256)

    p_phase = sub.add_parser("phasescan", help="central-source catalogs across t")
    p_phase.add_argument("--m", type=float, required=True)
    p_phase.add_argument("--t-from", dest="t_from", type=float, required=True)
    p_phase.add_argument("--t-to", dest="t_to", type=float, required=True)
    p_phase.add_argument("--steps", type=int, required=True)

    p_conv = sub.add_parser("convert", help="physical-to-dimensionless scaling factors")
    p_conv.add_argument("--ds", type=float, required=True, help="observer-source distance")
    p_conv.add_argument("--dd", type=float, required=True, help="observer-lens distance")
    p_conv.add_argument("--dds", type=float, required=True, help="lens-source distance")
    p_conv.add_argument("--xi0", type=float, default=1.0, help="lens-plane length scale")

    for p in (p_images, p_count, p_density, p_galaxy, p_delays, p_mother, p_phase, p_conv):
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=["json", "csv"], help="override the default format")
        p.add_argument("--seed-grid", dest="seed_grid", type=int, help="numeric-solver seed resolution")
        p.add_argument("--tol", type=float, help="numeric-solver residual tolerance")
        p.add_argument("--plot", action="store_true", help="render a PNG next to --out")
    return parser


# --- model construction ---------------------------------------------------------


def _solver_config(args) -> solver_mod.SolverConfig | None:
    overrides = {}
    if args.seed_grid is not None:
        overrides["seed_resolution"] = args.seed_grid
    if args.tol is not None:
        overrides["residual_tol"] = args.tol
    return solver_mod.SolverConfig(**overrides) if overrides else None


def _gaussian_params(args) -> gaussian_mod.GaussianParams:
    if args.a is None:
        raise ConfigError("gaussian model requires --a")
    if (args.m is None) == (args.p is None):
        raise ConfigError("gaussian model requires exactly one of --m / --p")
    if args.p is not None:
        return gaussian_mod.GaussianParams.from_strength(args.a, args.p)
    return gaussian_mod.GaussianParams(args.a, args.m)


def _quartic_args(args) -> tuple[float, float]:
    if args.t is None or args.m is None:
        raise ConfigError("quartic model requires --t and --m")
    return args.t, args.m


def _generic_from_config(args):
    if not args.config:
        raise ConfigError("generic model requires --config FILE")
    entries = _parse_config_file(args.config)
    try:
        v_coeffs = [float(v) for v in entries["v_coeffs"].split(",")]
        p_coeffs = [float(v) for v in entries["p_coeffs"].split(",")]
        cuts = [
            tuple(float(v) for v in pair.split(":"))
            for pair in entries["cuts"].split(",")
        ]
        mass = float(entries["mass"])
    except KeyError as exc:
        raise ConfigError(f"config file is missing {exc}")
    name = entries.get("name", "generic")
    return generic_model(v_coeffs, p_coeffs, cuts, mass, name=name, normalization_tol=1e-6)


def _build_model(args):
    if args.model == "gaussian":
        return _gaussian_params(args).model()
    if args.model == "quartic":
        t, m = _quartic_args(args)
        return quartic_mod.quartic_model(t, m)
    return _generic_from_config(args)


def _solve_images(args, w: complex) -> ImageSet:
    cfg = _solver_config(args)
    if args.model == "gaussian":
        return gaussian_mod.images_gaussian(_gaussian_params(args), w)
    if args.model == "quartic":
        t, m = _quartic_args(args)
        if w == 0:
            return quartic_mod.images_origin(m, t).as_image_set()
        return quartic_mod.images_quartic(m, t, w, cfg)
    model = _generic_from_config(args)
    dim = solver_mod.dim_images(model, w)
    bright = solver_mod.bright_images_numeric(model, w, cfg)
    return ImageSet(
        source=complex(w),
        images=sort_images([*dim.images, *bright.images]),
        model=model.description,
    )


def _image_row(im) -> dict:
    row = {"z": _cpair(im.z), "kind": im.kind, "residual": _fnum(im.residual)}
    if im.label:
        row["label"] = im.label
    if im.boundary:
        row["boundary"] = True
    return row


def _model_label(args) -> str:
    if args.model == "gaussian":
        params = _gaussian_params(args)
        return f"gaussian(a={params.a:g}, m={params.m:g})"
    if args.model == "quartic":
        t, m = _quartic_args(args)
        return f"quartic(t={t:g}, m={m:g})"
    return "generic"


# --- commands -------------------------------------------------------------------


def _cmd_images(args):
    w = _parse_complex(args.source)
    image_set = _solve_images(args, w)
    payload = {
        "model": _model_label(args),
        "source": _cpair(w),
        "images": [_image_row(im) for im in image_set.images],
        "counts": image_set.counts(),
    }
    plot_payload = dict(payload)
    plot_payload["_cuts"] = _build_model(args).cuts.intervals
    return "json", payload, plot_payload


def _cmd_countmap(args):
    values = _parse_grid(args.grid)
    predicted = args.model == "gaussian" and _gaussian_params(args).p == 0.5
    header = ["u_re", "u_im", "dim_count", "bright_count"]
    if predicted:
        header.append("predicted_bright")
    gaussian_params = _gaussian_params(args) if args.model == "gaussian" else None
    rows = []
    for u_im in values:
        for u_re in values:
            u = complex(u_re, u_im)
            if gaussian_params is not None:
                # the gaussian grid is in normalized source units u = w/a
                image_set = gaussian_mod.images_gaussian(gaussian_params, u * gaussian_params.a)
            else:
                image_set = _solve_images(args, u)
            counts = image_set.counts()
            row = [float(u_re), float(u_im), counts["dim"], counts["bright"]]
            if predicted:
                row.append(gaussian_mod.count_regions_half(u))
            rows.append(row)
    return "csv", (header, rows), rows


def _cmd_density(args):
    model = _build_model(args)
    header = ["x", "rho"]
    rows = []
    for cut in density_samples(model, args.samples):
        for sample in cut:
            rows.append([sample.x, sample.rho])
    return "csv", (header, rows), rows


def _cmd_galaxy(args):
    model = _build_model(args)
    areas = None
    if args.areas:
        areas = [float(v) for v in args.areas.split(",")]
    if areas is None and args.area is None:
        raise ConfigError("galaxy requires --area or --areas")
    profile = profiles_mod.galaxy_profile(
        model, total_area=args.area, areas=areas, samples=args.samples
    )
    header = ["component", "X", "Y"]
    rows = []
    for idx, comp in enumerate(profile.components, start=1):
        for x, y in zip(comp.x, comp.y):
            rows.append([idx, x, y])
    return "csv", (header, rows), rows


def _cmd_delays(args):
    w = _parse_complex(args.source)
    model = _build_model(args)
    image_set = _solve_images(args, w)
    images = [im for im in image_set.images if im.kind != "continuum" and not im.boundary]
    report = delays_mod.delay_report(model, w, images)
    entries = []
    for im, tau in report.entries:
        row = _image_row(im)
        row["tau"] = _fnum(tau)
        entries.append(row)
    payload = {"model": _model_label(args), "source": _cpair(w), "entries": entries}
    if args.pairs:
        payload["pairs"] = [
            {
                "zi": _cpair(report.entries[i][0].z),
                "zj": _cpair(report.entries[j][0].z),
                "delta_tau": _fnum(dtau),
            }
            for i, j, dtau in report.pairs
        ]
    plot_payload = {
        "source": _cpair(w),
        "images": entries,
        "_cuts": model.cuts.intervals,
    }
    return "json", payload, plot_payload


def _mother_points(ellipse: mother_mod.Ellipse, n: int) -> list[complex]:
    """Deterministic exterior ring at 1.5x the boundary."""
    out = []
    for k in range(n):
        theta = 2.0 * math.pi * (k + 0.3) / n
        out.append(1.5 * ellipse.boundary_point(theta))
    return out


def _cmd_motherbody(args):
    tol = args.tol
    if args.model == "gaussian":
        if args.beta is None:
            raise ConfigError("gaussian mother body requires --alpha and --beta")
        ellipse = mother_mod.Ellipse(args.alpha, args.beta)
        points = _mother_points(ellipse, args.points)
        closed = mother_mod.verify_gaussian_mother_body(ellipse, points)
        payload = {
            "model": "gaussian",
            "alpha": _fnum(args.alpha),
            "beta": _fnum(args.beta),
            "points": args.points,
            "max_closed_form_error": _fnum(closed),
            "closed_form_tolerance": _fnum(tol if tol is not None else 1e-10),
        }
        payload["pass"] = closed < payload["closed_form_tolerance"]
        if args.quadrature:
            quad = mother_mod.gaussian_mother_quadrature_error(
                ellipse, points[: max(2, args.points // 4)], args.nodes, args.nodes
            )
            payload["max_quadrature_error"] = _fnum(quad)
            payload["quadrature_tolerance"] = 1e-4
            payload["pass"] = bool(payload["pass"] and quad < 1e-4)
        return "json", payload, None
    if args.t is None:
        raise ConfigError("quartic mother body requires --t")
    a, _ = quartic_mod.one_cut_edges(args.t)
    if args.beta is None:
        beta = math.sqrt(args.alpha**2 - a * a) if args.alpha > a else None
        if beta is None:
            raise ConfigError("--alpha must exceed the one-cut half-length")
    else:
        beta = args.beta
    ellipse = mother_mod.Ellipse(args.alpha, beta)
    coeffs = mother_mod.quartic_body_coeffs(ellipse, args.t)
    _, c = quartic_mod.one_cut_edges(args.t)
    residuals = coeffs.residuals(a, c)
    points = _mother_points(ellipse, args.points)
    quad = mother_mod.verify_quartic_mother_body(
        ellipse, args.t, args.m, points, args.nodes, args.nodes
    )
    tolerance = tol if tol is not None else 1e-5
    payload = {
        "model": "quartic",
        "t": _fnum(args.t),
        "m": _fnum(args.m),
        "alpha": _fnum(args.alpha),
        "beta": _fnum(beta),
        "coefficients": {
            "A1": _fnum(coeffs.A1),
            "A2": _fnum(coeffs.A2),
            "c1": _fnum(coeffs.c1),
            "c2": _fnum(coeffs.c2),
            "c3": _fnum(coeffs.c3),
        },
        "coefficient_residuals": [_fnum(r) for r in residuals],
        "points": args.points,
        "max_quadrature_error": _fnum(quad),
        "quadrature_tolerance": _fnum(tolerance),
        "pass": bool(quad < tolerance and max(abs(r) for r in residuals) < 1e-14),
    }
    return "json", payload, None


def _cmd_phasescan(args):
    if args.steps < 2:
        raise ConfigError("phasescan requires at least 2 steps")
    ts = np.linspace(args.t_from, args.t_to, args.steps)
    scan = quartic_mod.phase_transition_scan(args.m, ts)
    header = ["t", "phase", "label", "z_re", "z_im", "kind", "residual"]
    rows = []
    for cat in scan.rows:
        for im in sort_images(cat.images):
            rows.append(
                [cat.t, cat.phase, im.label, im.z.real, im.z.imag, im.kind, im.residual]
            )
    json_payload = {
        "m": _fnum(args.m),
        "rows": [
            {
                "t": _fnum(cat.t),
                "phase": cat.phase,
                "images": [_image_row(im) for im in sort_images(cat.images)],
            }
            for cat in scan.rows
        ],
        "diagnostics": {
            k: (_fnum(v) if isinstance(v, float) else v)
            for k, v in scan.diagnostics.items()
        },
    }
    return "csv", (header, rows), rows, json_payload


def _cmd_convert(args):
    cfg = profiles_mod.PhysicalConfig(args.ds, args.dd, args.dds, args.xi0)
    record = profiles_mod.physical_to_dimensionless(cfg)
    payload = {
        "eta0": _fnum(record.eta0),
        "kappa_coefficient": _fnum(record.kappa_coefficient),
        "kappa_note": "multiply by G * Sigma(xi0 * x)",
        "degenerate": record.degenerate,
    }
    return "json", payload, None


_COMMANDS = {
    "images": _cmd_images,
    "countmap": _cmd_countmap,
    "density": _cmd_density,
    "galaxy": _cmd_galaxy,
    "delays": _cmd_delays,
    "motherbody": _cmd_motherbody,
    "phasescan": _cmd_phasescan,
    "convert": _cmd_convert,
}


def _emit(args, default_format: str, payload, json_alternative=None) -> None:
    fmt = args.format or default_format
    if fmt == "json" and default_format == "csv":
        if json_alternative is None:
            raise ConfigError(f"{args.command} has no JSON representation")
        payload = json_alternative
    if fmt == "csv" and default_format == "json":
        raise ConfigError(f"{args.command} output is a nested report; use json")

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            if fmt == "json":
                _write_json(payload, fh)
            else:
                _write_csv(payload[0], payload[1], fh)
    else:
        if fmt == "json":
            _write_json(payload, sys.stdout)
        else:
            _write_csv(payload[0], payload[1], sys.stdout)


def _run(args) -> int:
    result = _COMMANDS[args.command](args)
    default_format, payload, plot_payload = result[0], result[1], result[2]
    json_alternative = result[3] if len(result) > 3 else None
    _emit(args, default_format, payload, json_alternative)
    if args.plot:
        if not args.out:
            raise ConfigError("--plot requires --out to name the figure")
        if plot_payload is None:
            raise ConfigError(f"no figure is defined for the {args.command} command")
        from . import plots

        plots.render(args.command, plot_payload, args.out + ".png")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericError, LensError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
