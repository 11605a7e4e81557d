"""Command-line entry point: simulate, estimate, convert, verify, export grids.

All commands read a process from either a JSON spec file or a named
preset, run deterministically from the seed, and write CSV (plus a JSON
sidecar for simulations).  Outputs embed the tool version and the spec
fingerprint, and reruns with identical inputs are byte-identical.

Exit codes: 0 success, 2 configuration/parse error, 3 singular
polynomial or block, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .curves import CurveDomainError, CurveSyntaxError
from .dyadic import grid_values
from .poly import SingularPolynomialError, to_autoregressive, to_moving_average
from .presets import preset_names, preset_spec
from .processes import (
    ProcessSpec,
    SingularBlockError,
    convert_spec_frozen,
    decay_experiment,
    simulate,
    spawn_seed,
    spec_from_dict,
)
from .spectra import segmented_local_spectrum, smooth_periodogram, tv_dyadic_density, tv_fourier_density

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SINGULAR = 3
EXIT_VERIFY = 4

SLOPE_RANGE = (-1.4, -0.6)


class ConfigError(ValueError):
    pass


def _fmt(x) -> str:
    """Shortest round-trip decimal for floats; plain decimal for ints."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _provenance(spec: ProcessSpec | None, **extra) -> str:
    fields = {"tool": "walsh-spectra", "version": __version__}
    if spec is not None:
        fields["fingerprint"] = spec.fingerprint()
    fields.update(extra)
    return "# " + " ".join(f"{k}={v}" for k, v in fields.items())


def _write_csv(path: str, comment: str, header: list[str], rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(comment + "\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _load_spec(args) -> ProcessSpec:
    preset = getattr(args, "preset", None)
    spec_path = getattr(args, "spec", None)
    if preset is not None and spec_path is not None:
        raise ConfigError("give either --spec or --preset, not both")
    if preset is not None:
        spec = preset_spec(preset, seed=0)
    elif spec_path is not None:
        try:
            with open(spec_path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read spec file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"spec file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("spec file must hold a JSON object")
        try:
            spec = spec_from_dict(data)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"bad spec: {exc}") from exc
    else:
        raise ConfigError("a spec is required: --spec FILE or --preset NAME")
    seed = getattr(args, "seed", None)
    if seed is not None:
        spec = spec.with_seed(seed)
    return spec


def _u_grid(count: int) -> np.ndarray:
    if count < 1:
        raise ConfigError("--u-points must be >= 1")
    if count == 1:
        return np.array([0.0])
    return np.arange(count) / (count - 1)


def _parse_T_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad T list {text!r}") from exc
    if not values:
        raise ConfigError("empty T list")
    return values


# --------------------------------------------------------------------------
# commands


def _cmd_simulate(args) -> int:
    spec = _load_spec(args)
    path = simulate(spec, args.T)
    u = np.arange(path.length) / path.length
    comment = _provenance(spec, seed=spec.innovations.seed, T=path.length, command="simulate")
    _write_csv(
        args.out,
        comment,
        ["t", "u", "x_value"],
        ((t, u[t], path.values[t]) for t in range(path.length)),
    )
    sidecar = {
        "T": path.length,
        "command": "simulate",
        "fingerprint": spec.fingerprint(),
        "seed": spec.innovations.seed,
        "spec": spec.to_dict(),
        "version": __version__,
    }
    with open(args.out + ".json", "w", newline="\n") as fh:
        json.dump(sidecar, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return EXIT_OK


def _spectrum_rows(grid):
    for i, u in enumerate(grid.u_values):
        for j, x in enumerate(grid.x_values):
            yield (u, x, grid.values[i, j])


def _cmd_spectrum(args) -> int:
    spec = _load_spec(args)
    u = _u_grid(args.u_points)
    grid = tv_dyadic_density(spec, u, args.m)
    comment = _provenance(spec, command="spectrum", m=args.m, u_points=args.u_points)
    _write_csv(args.out, comment, ["u", "x", "g"], _spectrum_rows(grid))
    if args.fourier_out:
        lam = np.linspace(0.0, np.pi, args.lambda_points)
        fgrid = tv_fourier_density(spec, u, lam)
        _write_csv(
            args.fourier_out,
            _provenance(spec, command="spectrum", lambda_points=args.lambda_points),
            ["u", "lambda", "f"],
            _spectrum_rows(fgrid),
        )
    return EXIT_OK


def _cmd_convert(args) -> int:
    spec = _load_spec(args)
    if args.target == "dma":
        convert = to_moving_average
    else:
        convert = to_autoregressive
    u = _u_grid(args.u_points)
    rows = []
    for ui in u:
        ar, ma = convert_spec_frozen(spec, float(ui))
        try:
            out = convert(ar, ma)
        except SingularPolynomialError as exc:
            raise SingularPolynomialError(exc.grid_index, exc.value, where=float(ui)) from None
        for j, value in enumerate(out.coefficients):
            rows.append((float(ui), j, value))
    comment = _provenance(spec, command="convert", target=args.target)
    _write_csv(args.out, comment, ["u", "j", "K_j"], rows)
    return EXIT_OK


def _cmd_verify(args) -> int:
    spec = _load_spec(args)
    report = decay_experiment(
        spec,
        args.mode,
        T_values=_parse_T_list(args.T),
        u0=args.u0,
        radius=args.radius,
        replicates=args.replicates,
        slack=args.slack,
    )
    lo, hi = SLOPE_RANGE
    passed = report.exact or (report.slope is not None and lo <= report.slope <= hi)
    payload = report.to_dict()
    payload["slope_range"] = [lo, hi]
    payload["passed"] = passed
    payload["fingerprint"] = spec.fingerprint()
    payload["version"] = __version__
    with open(args.out, "w", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    if report.exact:
        print("verify: errors are exactly zero (constant curves)")
        return EXIT_OK
    if report.slope is None:
        print("verify: no slope fit (some horizons had zero error)")
        return EXIT_VERIFY
    print(f"verify: slope {report.slope:.4f}, target [{lo}, {hi}], {'pass' if passed else 'FAIL'}")
    return EXIT_OK if passed else EXIT_VERIFY


def _cmd_periodogram(args) -> int:
    spec = _load_spec(args)
    T = args.T
    N = args.segments
    if N is None:
        raise ConfigError("--segments (segment length N) is required")
    reps = args.replicates
    if reps < 1:
        raise ConfigError("--replicates must be >= 1")
    per_segment = None
    u0s: list[float] = []
    for rep in range(reps):
        seed = spec.innovations.seed if reps == 1 else spawn_seed(spec.innovations.seed, rep)
        path = simulate(spec.with_seed(seed), T)
        periodograms = segmented_local_spectrum(path, N, step=args.step)
        if args.smooth:
            periodograms = [smooth_periodogram(p, args.smooth) for p in periodograms]
        if per_segment is None:
            per_segment = [np.zeros_like(p.values) for p in periodograms]
            u0s = [p.u0 for p in periodograms]
        for acc, p in zip(per_segment, periodograms):
            acc += p.values
    x = grid_values(N.bit_length() - 1)
    rows = []
    for u0, acc in zip(u0s, per_segment):
        mean_values = acc / reps
        for j, xj in enumerate(x):
            rows.append((u0, xj, mean_values[j]))
    comment = _provenance(
        spec, command="periodogram", T=T, N=N, replicates=reps, smooth=args.smooth
    )
    _write_csv(args.out, comment, ["segment_u0", "x", "I"], rows)
    return EXIT_OK


def _cmd_figures(args) -> int:
    import os

    names = preset_names() if args.preset is None else (args.preset,)
    os.makedirs(args.out, exist_ok=True)
    u = _u_grid(args.u_points)
    lam = np.linspace(0.0, np.pi, args.lambda_points)
    for name in names:
        spec = preset_spec(name)
        grid = tv_dyadic_density(spec, u, args.m)
        _write_csv(
            os.path.join(args.out, f"{name}_dyadic.csv"),
            _provenance(spec, command="figures", preset=name, m=args.m),
            ["u", "x", "g"],
            _spectrum_rows(grid),
        )
        fgrid = tv_fourier_density(spec, u, lam)
        _write_csv(
            os.path.join(args.out, f"{name}_fourier.csv"),
            _provenance(spec, command="figures", preset=name),
            ["u", "lambda", "f"],
            _spectrum_rows(fgrid),
        )
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing


def _add_spec_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", help="JSON process spec file")
    p.add_argument("--preset", choices=preset_names(), help="built-in spec")
    p.add_argument("--seed", type=int, default=None, help="override the spec seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walsh-spectra",
        description="Simulation and Walsh-spectral analysis of dyadic time series",
    )
    parser.add_argument("--version", action="version", version=f"walsh-spectra {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate a sample path to CSV")
    _add_spec_arguments(p)
    p.add_argument("--T", type=int, required=True, help="path length (power of two)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("spectrum", help="time-varying dyadic spectral density grid")
    _add_spec_arguments(p)
    p.add_argument("--u-points", type=int, default=65)
    p.add_argument("--m", type=int, default=6, help="dyadic grid exponent (2**m bins)")
    p.add_argument("--out", required=True)
    p.add_argument("--fourier-out", help="also write the Fourier comparison grid here")
    p.add_argument("--lambda-points", type=int, default=65)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("convert", help="frozen AR<->MA coefficient conversion on a u grid")
    _add_spec_arguments(p)
    p.add_argument("--target", choices=("dma", "dar"), required=True)
    p.add_argument("--u-points", type=int, default=65)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("verify", help="decay-rate experiment for the local approximations")
    _add_spec_arguments(p)
    p.add_argument("--mode", choices=("frozen", "conversion"), required=True)
    p.add_argument("--T", default="128,256,512,1024,2048,4096,8192", help="comma-separated horizons")
    p.add_argument("--replicates", type=int, default=20)
    p.add_argument("--radius", type=int, default=16)
    p.add_argument("--u0", type=float, default=0.5)
    p.add_argument("--slack", type=float, default=0.0, help="inject a bounded O(1/T) coefficient perturbation")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("periodogram", help="segmented Walsh periodogram estimates")
    _add_spec_arguments(p)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--segments", type=int, help="segment length N (power of two)")
    p.add_argument("--step", type=int, default=None, help="segment step (default N, aligned)")
    p.add_argument("--smooth", type=int, default=0, help="smoothing half-width in bins")
    p.add_argument("--replicates", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_periodogram)

    p = sub.add_parser("figures", help="export plot-ready dyadic and Fourier density grids")
    p.add_argument("--preset", choices=preset_names(), default=None, help="default: all presets")
    p.add_argument("--u-points", type=int, default=65)
    p.add_argument("--m", type=int, default=6)
    p.add_argument("--lambda-points", type=int, default=65)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_figures)

    return parser


def _error(category: str, message: str) -> None:
    print(json.dumps({"error": category, "message": message}), file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, matching the config-error code
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, CurveSyntaxError, CurveDomainError) as exc:
        _error("config", str(exc))
        return EXIT_CONFIG
    except SingularPolynomialError as exc:
        _error("singular-polynomial", str(exc))
        return EXIT_SINGULAR
    except SingularBlockError as exc:
        _error("singular-block", str(exc))
        return EXIT_SINGULAR
    except (ValueError, OSError) as exc:
        _error("config", str(exc))
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
