"""Command-line front end: extract, viz, synth, validate.

A thin shell over the library; every behavior here is reachable through
library calls.  ``extract`` accepts a directory of images and processes
them in parallel, one worker per image; the CST_THREADS environment
variable caps the worker count.  All output is deterministic given the
flags.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import io as cio
from .channels import DEFAULT_PRESET, PRESETS, assemble, resolve_labels
from .checks import run_checks
from .core import CstParams, validate_params
from .errors import CstError, MissingOrder
from .pipeline import cst_extract
from .synth import WaveSpec, crossed_waves, planar_wave, white_noise
from .viz import render_hsv

MAX_CLI_ORDER = 3

_IMAGE_SUFFIXES = (".png", ".pgm")


class InvalidOrderRange(CstError):
    """CLI restricts symmetry orders to 1..3."""


def _parse_orders(text: str) -> tuple[int, ...]:
    try:
        orders = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise InvalidOrderRange(f"orders must be comma-separated integers, got {text!r}")
    for n in orders:
        if not 1 <= n <= MAX_CLI_ORDER:
            raise InvalidOrderRange(
                f"order {n} outside supported range 1..{MAX_CLI_ORDER}"
            )
    return orders


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise ValueError(f"--size expects WxH, got {text!r}")


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sigma1", type=float, default=0.6, help="derivation scale (px)")
    p.add_argument("--sigma2", type=float, default=4.0, help="pooling scale (px)")
    p.add_argument("--gamma", type=float, default=0.1, help="magnitude emphasis exponent")
    p.add_argument("--orders", type=str, default="1",
                   help="comma-separated symmetry orders, e.g. 1,2,3")
    p.add_argument("--boundary", choices=("reflect", "replicate", "zero"),
                   default="reflect")


def _params_from_args(args) -> CstParams:
    params = CstParams(
        sigma1=args.sigma1,
        sigma2=args.sigma2,
        gamma=args.gamma,
        orders=_parse_orders(args.orders),
        boundary=args.boundary,
    )
    validate_params(params)
    return params


def _extract_one(in_path: str, out_path: str, params: CstParams,
                 labels: tuple[str, ...], normalize: bool, dtype: str) -> list[str]:
    f = cio.load_gray(in_path)
    maps = cst_extract(f, params)
    stack = assemble(f, maps, labels, normalize=normalize)
    cio.write_tensor(stack, out_path, dtype=dtype)
    return list(stack.labels)


def _worker_count() -> int:
    cap = os.environ.get("CST_THREADS")
    workers = os.cpu_count() or 1
    if cap:
        workers = min(workers, max(1, int(cap)))
    return workers


def cmd_extract(args) -> int:
    params = _params_from_args(args)
    if args.channels:
        labels = resolve_labels(tuple(args.channels.split(",")))
    else:
        labels = resolve_labels(args.preset)

    in_path = Path(args.input)
    if in_path.is_dir():
        images = sorted(
            p for p in in_path.iterdir() if p.suffix.lower() in _IMAGE_SUFFIXES
        )
        if not images:
            raise CstError(f"no .png/.pgm images found in {in_path}")
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        jobs = [(str(p), str(out_dir / (p.stem + ".npy"))) for p in images]
        with ProcessPoolExecutor(max_workers=_worker_count()) as pool:
            futures = [
                pool.submit(_extract_one, src, dst, params, labels,
                            args.normalize, args.dtype)
                for src, dst in jobs
            ]
            for (src, dst), fut in zip(jobs, futures):
                fut.result()
                print(f"{src} -> {dst}")
    else:
        manifest = _extract_one(str(in_path), args.out, params, labels,
                                args.normalize, args.dtype)
        for label in manifest:
            print(label)
    return 0


def cmd_viz(args) -> int:
    params = _params_from_args(args)
    f = cio.load_gray(args.input)
    maps = cst_extract(f, params)
    order = args.order if args.order is not None else min(params.orders)
    by_order = {m.order: m for m in maps}
    if order not in by_order:
        raise MissingOrder(
            f"order {order} was not computed; available: {sorted(by_order)}"
        )
    rgb = render_hsv(by_order[order])
    cio.write_png(args.out, rgb)
    print(f"wrote {args.out}")
    return 0


def cmd_synth(args) -> int:
    width, height = _parse_size(args.size)
    thetas = [float(t) for t in str(args.theta).split(",")]
    if args.kind == "wave":
        field = planar_wave(
            WaveSpec(wavelength=args.wavelength, theta_deg=thetas[0],
                     amplitude=args.amplitude, phase=args.phase),
            width, height)
    elif args.kind == "crossed":
        specs = [
            WaveSpec(wavelength=args.wavelength, theta_deg=t,
                     amplitude=args.amplitude, phase=args.phase)
            for t in thetas
        ]
        field = crossed_waves(specs, width, height)
    else:  # noise
        field = white_noise(width, height, args.seed)

    if args.kind != "noise":
        # affine map onto [0, 1]; preserves periodicity of the pattern
        peak = args.amplitude * (1 if args.kind == "wave" else len(thetas))
        field = (field + peak) / (2.0 * peak)
    cio.write_pgm(args.out, field)
    print(f"wrote {args.out}")
    return 0


def cmd_validate(args) -> int:
    results = run_checks(quick=args.quick,
                         flip_kernel_sign=args.debug_flip_kernel_sign)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {status}  {r.detail}")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cstex",
        description="Dense texture-orientation fields via complex structure tensors",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="compute a channel stack and export as NPY")
    p.add_argument("--input", required=True, help="input image (PNG/PGM) or directory")
    p.add_argument("--out", required=True, help="output .npy file or directory")
    _add_pipeline_flags(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--preset", default=DEFAULT_PRESET,
                       choices=sorted(PRESETS), help="named channel combination")
    group.add_argument("--channels", default=None,
                       help="explicit comma-separated labels, e.g. BW,RE(1),IM(1)")
    p.add_argument("--normalize", action="store_true",
                   help="map interior 1st..99th percentile of each channel to [0,1]")
    p.add_argument("--dtype", choices=("f32", "f64"), default="f32")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("viz", help="render an orientation map as an HSV-colored PNG")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    _add_pipeline_flags(p)
    p.add_argument("--order", type=int, default=None,
                   help="which computed order to render (default: lowest)")
    p.set_defaults(func=cmd_viz)

    p = sub.add_parser("synth", help="generate a synthetic test pattern as PGM")
    p.add_argument("--kind", choices=("wave", "crossed", "noise"), required=True)
    p.add_argument("--theta", default="0",
                   help="wave direction(s) in degrees; comma list for crossed")
    p.add_argument("--wavelength", type=float, default=8.0)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--phase", type=float, default=0.0)
    p.add_argument("--size", default="128x128", help="canvas size WxH")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("validate", help="run oracle equivalence and invariant checks")
    p.add_argument("--quick", action="store_true",
                   help="run only the noise-bound check")
    p.add_argument("--debug-flip-kernel-sign", action="store_true",
                   help=argparse.SUPPRESS)  # fault injection for the sweep check
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CstError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
