"""Command-line interface.

Subcommands:
  verify    run a campaign config, write CSV/JSON report (and figures)
  bounds    evaluate bound families on one domain over a k range
  spectrum  emit a reference spectrum as CSV
  kernels   grid-certify the proof kernels
  profiles  fuzz the moment lemmas with admissible profiles

Exit codes: 0 success (no must-hold violation), 1 must-hold violation found,
2 usage/configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import FAMILY_REGISTRY, load_config
from .errors import ConfigError
from .geometry import Abstract, Ball, Box, DomainSpec, domain_constants
from .kernels import kernel_scan, kernel_validity_table
from .profiles import LEMMAS, fuzz_lemma
from .report import emit_report, render_figures
from .spectra import ball_spectrum, beam_spectrum, box_spectrum, fd_clamped_square
from .verify import evaluate_family, must_hold_violations, run_verification


def _parse_span(text: str) -> tuple[int, int]:
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range {text!r}")
    return lo, hi


def _parse_grid(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be LO:HI:STEP, got {text!r}")
    lo, hi, step = (float(p) for p in parts)
    if lo != 0.0 or hi <= lo or step <= 0:
        raise ValueError(f"grid must start at 0 with HI > 0 and STEP > 0, got {text!r}")
    return lo, hi, step


def _domain_from_args(args: argparse.Namespace) -> DomainSpec:
    used = [
        name
        for name in ("shape", "box", "ball", "volume")
        if getattr(args, name, None) is not None
    ]
    if len(used) != 1:
        raise ConfigError("specify exactly one of --shape, --box, --ball, --volume")
    if args.shape is not None:
        return DomainSpec.from_json(json.loads(args.shape))
    if args.box is not None:
        lengths = tuple(float(v) for v in args.box.split(","))
        return DomainSpec(dimension=len(lengths), shape=Box(lengths))
    if args.ball is not None:
        if args.dim is None:
            raise ConfigError("--ball needs --dim")
        return DomainSpec(dimension=args.dim, shape=Ball(float(args.ball)))
    dim = args.dim
    if dim is None:
        raise ConfigError("--volume needs --dim")
    return DomainSpec(dimension=dim, shape=Abstract(float(args.volume), args.inertia))


def _add_domain_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--shape",
        help='full domain JSON, e.g. \'{"dimension": 2, "shape": {"box": [1, 1]}}\'',
    )
    parser.add_argument("--box", help="comma-separated edge lengths, e.g. 1,1")
    parser.add_argument("--ball", help="ball radius")
    parser.add_argument("--volume", help="abstract domain volume")
    parser.add_argument("--inertia", type=float, help="abstract domain moment of inertia")
    parser.add_argument("--dim", type=int, help="dimension (needed for --ball/--volume)")


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    records = run_verification(cfg)
    fuzz = None
    if cfg.fuzz_trials > 0:
        fuzz = [
            fuzz_lemma(lemma, n, cfg.fuzz_trials, cfg.fuzz_seed)
            for lemma in ("KL_corrected", "KL_printed")
            for n in (2, 3, 4)
        ]
    emit_report(records, args.format, args.out, fuzz=fuzz)
    if args.figures:
        for path in render_figures(records, args.figures):
            print(f"figure: {path}")
    violations = must_hold_violations(records)
    by_status: dict[str, int] = {}
    for rec in records:
        by_status[rec.status] = by_status.get(rec.status, 0) + 1
    summary = ", ".join(f"{status}={count}" for status, count in sorted(by_status.items()))
    print(f"records: {len(records)} ({summary}) -> {args.out}")
    if violations:
        worst = min(violations, key=lambda r: r.margin if r.margin is not None else 0.0)
        print(
            f"must-hold violation: {worst.family} on {worst.domain} at k={worst.k} "
            f"(margin {worst.margin!r})",
            file=sys.stderr,
        )
        return 1
    return 0


def _cmd_bounds(args: argparse.Namespace) -> int:
    spec = _domain_from_args(args)
    constants = domain_constants(spec, assume_inertia_floor=args.assume_inertia_floor)
    lo, hi = _parse_span(args.k)
    params = {
        "c_n": args.c_n,
        "C": args.kvw_c,
        "a0": args.kvw_a0,
        "r0": args.r0,
        "v_shell": args.v_shell,
        "m": args.m,
        "band_a": args.band_a,
        "version": args.version,
    }
    params = {k: v for k, v in params.items() if v is not None}
    print("family,k,value,breakdown")
    rows = []
    for family in args.family:
        info = FAMILY_REGISTRY.get(family)
        if info is None:
            raise ConfigError(f"unknown family {family!r} (known: {sorted(FAMILY_REGISTRY)})")
        for name in info.required:
            if name not in params:
                raise ConfigError(f"family {family!r} requires parameter {name!r}")
        for k in range(lo, hi + 1):
            ev = evaluate_family(
                family,
                constants,
                k,
                params,
                band_policy=args.band_policy,
                variant=args.variant,
                tiling=args.tiling,
            )
            breakdown = ";".join(f"{label}={value!r}" for label, value in ev.terms)
            print(f"{family},{k},{ev.value!r},{breakdown}")
            rows.append((family, k, ev.value))
    if len(args.family) > 1:
        for k in range(lo, hi + 1):
            at_k = [(fam, value) for fam, kk, value in rows if kk == k]
            winner = max(at_k, key=lambda item: item[1])
            print(f"# k={k} winner={winner[0]}")
    return 0


def _cmd_spectrum(args: argparse.Namespace) -> int:
    spec = _domain_from_args(args)
    if args.operator == "laplace":
        if isinstance(spec.shape, Box):
            spectrum = box_spectrum(spec.shape.lengths, args.count)
        elif isinstance(spec.shape, Ball):
            spectrum = ball_spectrum(spec.dimension, spec.shape.radius, args.count)
        else:
            raise ConfigError("no Laplace oracle for abstract domains")
    else:
        if isinstance(spec.shape, Box) and spec.dimension == 1:
            spectrum = beam_spectrum(spec.shape.lengths[0], args.count)
        elif (
            isinstance(spec.shape, Box)
            and spec.dimension == 2
            and abs(spec.shape.lengths[0] - spec.shape.lengths[1]) <= 1e-12
        ):
            unit = fd_clamped_square(args.fd_grid, not args.no_extrapolate, args.count)
            side = spec.shape.lengths[0]
            from .spectra import Spectrum

            spectrum = Spectrum.from_values(
                "bilaplace", [v / side**4 for v in unit.eigenvalues], unit.provenance
            )
        else:
            raise ConfigError("clamped oracles exist for the 1-D box and the 2-D square only")
    out = sys.stdout if args.out is None else open(args.out, "w", encoding="utf-8")
    try:
        out.write("index,eigenvalue,prefix_sum,provenance\n")
        for i, (value, prefix) in enumerate(
            zip(spectrum.eigenvalues, spectrum.prefix_sums), start=1
        ):
            out.write(f"{i},{value!r},{prefix!r},{spectrum.provenance}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_kernels(args: argparse.Namespace) -> int:
    _, t_max, step = _parse_grid(args.grid)
    n_lo, n_hi = _parse_span(args.n)
    if args.m is not None:
        m_span = _parse_span(args.m)
    else:
        m_span = None
    results = []
    for kind, n, m in kernel_validity_table(n_hi):
        if kind != args.kind or n < n_lo:
            continue
        if m_span is not None and m is not None and not (m_span[0] <= m <= m_span[1]):
            continue
        minimum, argmin = kernel_scan(kind, n, m, t_max=t_max, step=step)
        results.append(
            {
                "kind": kind,
                "n": n,
                "m": m,
                "t_max": t_max,
                "step": step,
                "min_value": minimum,
                "argmin": argmin,
                "nonnegative": minimum >= -1e-9,
            }
        )
    text = json.dumps(results, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return 0 if all(r["nonnegative"] for r in results) else 1


def _cmd_profiles(args: argparse.Namespace) -> int:
    n_lo, n_hi = _parse_span(args.n)
    results = []
    for n in range(n_lo, n_hi + 1):
        results.append(
            fuzz_lemma(
                args.lemma,
                n,
                args.trials,
                args.seed,
                m=args.m,
                cap=args.cap,
                slope_bound=args.slope,
                pieces=args.pieces,
            ).to_json()
        )
    text = json.dumps(results, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-lb",
        description="Eigenvalue lower-bound families, reference spectra, and verification reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification campaign from a JSON config")
    p_verify.add_argument("--config", required=True)
    p_verify.add_argument("--out", required=True)
    p_verify.add_argument("--format", choices=("csv", "json"), default="csv")
    p_verify.add_argument("--figures", help="directory for rendered PNG panels")
    p_verify.set_defaults(func=_cmd_verify)

    p_bounds = sub.add_parser("bounds", help="evaluate bound families on one domain")
    p_bounds.add_argument("--family", action="append", required=True)
    _add_domain_flags(p_bounds)
    p_bounds.add_argument("--k", default="1..10", help="index or range A..B")
    p_bounds.add_argument("--band-policy", choices=("isoperimetric", "inertia"),
                          default="isoperimetric")
    p_bounds.add_argument("--variant", choices=("printed", "corrected"), default="printed")
    p_bounds.add_argument("--tiling", action="store_true")
    p_bounds.add_argument("--assume-inertia-floor", action="store_true")
    p_bounds.add_argument("--c-n", dest="c_n", type=float, help="melas constant")
    p_bounds.add_argument("--kvw-c", dest="kvw_c", type=float, help="kvw boundary constant")
    p_bounds.add_argument("--kvw-a0", dest="kvw_a0", type=float, help="kvw inertia share")
    p_bounds.add_argument("--r0", type=float, help="upper-envelope shell parameter")
    p_bounds.add_argument("--v-shell", dest="v_shell", type=float, help="shell volume")
    p_bounds.add_argument("--m", type=int, help="order of the higher families")
    p_bounds.add_argument("--band-a", dest="band_a", type=float,
                          help="explicit band parameter override")
    p_bounds.add_argument("--version", type=int, help="cheng-wei version (1 or 2)")
    p_bounds.set_defaults(func=_cmd_bounds)

    p_spectrum = sub.add_parser("spectrum", help="emit a reference spectrum as CSV")
    _add_domain_flags(p_spectrum)
    p_spectrum.add_argument("--operator", choices=("laplace", "bilaplace"), default="laplace")
    p_spectrum.add_argument("--count", type=int, required=True)
    p_spectrum.add_argument("--fd-grid", type=int, default=32)
    p_spectrum.add_argument("--no-extrapolate", action="store_true")
    p_spectrum.add_argument("--out")
    p_spectrum.set_defaults(func=_cmd_spectrum)

    p_kernels = sub.add_parser("kernels", help="grid-certify the proof kernels")
    p_kernels.add_argument("--kind", choices=("laplace2", "general", "clamped"), required=True)
    p_kernels.add_argument("--n", required=True, help="dimension or range A..B")
    p_kernels.add_argument("--m", help="order or range A..B (defaults to the full table)")
    p_kernels.add_argument("--grid", default="0:10:0.001", help="LO:HI:STEP")
    p_kernels.add_argument("--out")
    p_kernels.set_defaults(func=_cmd_kernels)

    p_profiles = sub.add_parser("profiles", help="fuzz the moment lemmas")
    p_profiles.add_argument("--n", required=True, help="dimension or range A..B")
    p_profiles.add_argument("--trials", type=int, required=True)
    p_profiles.add_argument("--seed", type=int, required=True)
    p_profiles.add_argument("--lemma", choices=LEMMAS, default="KL_corrected")
    p_profiles.add_argument("--m", type=int)
    p_profiles.add_argument("--cap", type=float, default=1.0)
    p_profiles.add_argument("--slope", type=float, default=1.0)
    p_profiles.add_argument("--pieces", type=int, default=8)
    p_profiles.add_argument("--out")
    p_profiles.set_defaults(func=_cmd_profiles)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
