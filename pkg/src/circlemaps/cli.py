"""Command-line front end.

    circlemaps check-homeo --input map.json [--grid N] [--strict]
    circlemaps fourier --input map.json|curve.csv [--window M] [--grid N]
    circlemaps homotopy --input map.json [--steps K] [--grid N]
    circlemaps starlike (--input curve.csv | --seed S) [--center X,Y]
    circlemaps sweep-degree2 [--steps 99] [--grid 65536] [--workers W]
    circlemaps verify-paper [--check K ...]

Exit status: 0 success, 1 failed verification, 2 bad input, 3 Inconclusive
verdict under --strict.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import formats, fourier, geometry, poisson, suite
from .blaschke import BlaschkeProduct, HomotopyPath, RationalCircleMap, homotopy_samples
from .errors import CircleMapError, FormatError
from .poisson import Verdict, criterion_check

COMMANDS = ("check-homeo", "fourier", "homotopy", "starlike", "sweep-degree2", "verify-paper")

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    input_path: Path | None = None
    grid_size: int | None = None
    window: int = 16
    steps: int | None = None
    seed: int | None = None
    output_format: str = "report-text"
    strict: bool = False
    out: Path | None = None
    center: complex | None = None
    curve_out: Path | None = None
    workers: int = 1
    checks: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise FormatError(f"unknown command {self.command!r}")
        for name in ("grid_size", "window", "steps", "workers"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise FormatError(f"--{name.replace('_size', '')} must be positive")
        if self.output_format not in ("report-text", "delimited"):
            raise FormatError("--format must be report-text or delimited")
        needs_input = {"check-homeo", "fourier", "homotopy"}
        if self.command in needs_input and self.input_path is None:
            raise FormatError(f"{self.command} requires --input")
        if self.command == "starlike" and self.input_path is None and self.seed is None:
            raise FormatError("starlike requires --input or --seed")


def _report(fields: dict, cfg: RunConfig) -> str:
    if cfg.output_format == "delimited":
        return formats.report_delimited(fields)
    return formats.report_text(fields)


def _load_samples(cfg: RunConfig) -> fourier.SampledCircleMap:
    path = cfg.input_path
    if path.suffix.lower() == ".json":
        f = formats.read_map(path)
        return fourier.sample_map(f, cfg.grid_size or fourier.default_resolution(cfg.window))
    return formats.read_curve(path)


def cmd_check_homeo(cfg: RunConfig) -> tuple[str, int]:
    f = formats.read_map(cfg.input_path)
    rep = criterion_check(f, cfg.grid_size or poisson.DEFAULT_GRID)
    code = EXIT_INCONCLUSIVE if cfg.strict and rep.verdict is Verdict.INCONCLUSIVE else EXIT_OK
    if rep.verdict is Verdict.INCONCLUSIVE and not cfg.strict:
        print("warning: verdict is Inconclusive (certification gap)", file=sys.stderr)
    return _report(rep.to_dict(), cfg), code


def cmd_fourier(cfg: RunConfig) -> tuple[str, int]:
    sp = fourier.spectrum(_load_samples(cfg), cfg.window)
    return formats.write_table(formats.SPECTRUM_HEADER, formats.spectrum_rows(sp)), EXIT_OK


def cmd_homotopy(cfg: RunConfig) -> tuple[str, int]:
    f = formats.read_map(cfg.input_path)
    path = HomotopyPath.uniform(f, cfg.steps or 11)
    zeta = np.exp(2j * np.pi * np.arange(1024) / 1024)
    rows = []
    inconclusive = False
    for t, g in zip(path.times, homotopy_samples(path)):
        rep = criterion_check(g, cfg.grid_size or poisson.DEFAULT_GRID)
        inconclusive |= rep.verdict is Verdict.INCONCLUSIVE
        deviation = float(np.max(np.abs(g(zeta) - g.rotation * zeta)))
        rows.append((t, rep.verdict.value, rep.margin_lower_bound, rep.witness_angle, rep.grid_size, deviation))
    header = ("t", "verdict", "margin_lower_bound", "witness_angle", "grid_size", "rotation_deviation")
    code = EXIT_INCONCLUSIVE if cfg.strict and inconclusive else EXIT_OK
    return formats.write_table(header, rows), code


def cmd_starlike(cfg: RunConfig) -> tuple[str, int]:
    if cfg.input_path is not None:
        s = formats.read_curve(cfg.input_path)
        profile = None
    else:
        deg = cfg.steps or 3
        s, profile = geometry.random_starlike_embedding(cfg.seed, deg, deg, N=cfg.grid_size or 1024)
    if cfg.curve_out is not None:
        cfg.curve_out.write_text(formats.dumps_curve(s, profile))
    center = cfg.center
    if center is None:
        center = profile.center if profile is not None else geometry.find_star_center(s)
    sp = fourier.spectrum(s, min(cfg.window, (s.N - 1) // 2))
    fields = {}
    if center is None:
        fields["starlike"] = False
        center = complex(np.mean(s.values))
    else:
        orientation = geometry.star_orientation(s, center)
        fields["starlike"] = orientation != 0
        fields["orientation"] = orientation
    fields["center_re"] = center.real
    fields["center_im"] = center.imag
    rep = geometry.embedding_report(s, center)
    fields.update(rep.to_dict())
    c1, cm1 = sp[1], sp[-1]
    fields.update(
        {"c1_re": c1.real, "c1_im": c1.imag, "cm1_re": cm1.real, "cm1_im": cm1.imag,
         "first_coefficient_sum": abs(c1) + abs(cm1)}
    )
    return _report(fields, cfg), EXIT_OK


def _sweep_row(args):
    a, axis, grid = args
    out = []
    for b in axis:
        f = RationalCircleMap.first_kind(BlaschkeProduct(0.0, [complex(a), complex(b)]))
        rep = criterion_check(f, grid)
        closed = poisson.degree2_real_characterization(a, b)
        out.append((a, b, closed, rep.verdict.value, rep.margin_lower_bound,
                    poisson.degree2_closed_form_margin(a, b)))
    return out


def cmd_sweep_degree2(cfg: RunConfig) -> tuple[str, int]:
    axis = [float(x) for x in np.linspace(-0.98, 0.98, cfg.steps or 99)]
    grid = cfg.grid_size or 2**16
    jobs = [(a, axis, grid) for a in axis]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            chunks = list(pool.map(_sweep_row, jobs))
    else:
        chunks = [_sweep_row(j) for j in jobs]
    rows = []
    disagreements = inconclusive = 0
    for a, b, closed, verdict, margin, cf in (c for chunk in chunks for c in chunk):
        if verdict == Verdict.INCONCLUSIVE.value:
            inconclusive += 1
            agree = ""
        else:
            agree = closed == (verdict == Verdict.HOMEO.value)
            disagreements += not agree
        rows.append((a, b, closed, verdict, margin, cf, agree))
    header = ("a", "b", "closed_form", "verdict", "margin_lower_bound", "closed_form_margin", "agree")
    if disagreements:
        code = EXIT_FAILED
    elif cfg.strict and inconclusive:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_OK
    return formats.write_table(header, rows), code


def cmd_verify_paper(cfg: RunConfig) -> tuple[str, int]:
    lines = []
    ok = True
    for check in suite.CHECKS:
        if cfg.checks and check.number not in cfg.checks:
            continue
        r = suite.run_check(check)
        ok &= r.passed
        lines.append(suite.format_result(r))
    return "".join(l + "\n" for l in lines), EXIT_OK if ok else EXIT_FAILED


HANDLERS = {
    "check-homeo": cmd_check_homeo,
    "fourier": cmd_fourier,
    "homotopy": cmd_homotopy,
    "starlike": cmd_starlike,
    "sweep-degree2": cmd_sweep_degree2,
    "verify-paper": cmd_verify_paper,
}


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        text, code = HANDLERS[cfg.command](cfg)
    except (OSError, CircleMapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if cfg.out is not None:
        cfg.out.write_text(text)
    else:
        stdout.write(text)
    return code


def _complex_arg(text: str) -> complex:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}")
    return complex(*parts)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circlemaps", description="Rational circle homeomorphisms and starlike embeddings.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", type=Path, help="map description (.json) or curve table (.csv)")
    common.add_argument("--grid", type=int, help="grid size / number of samples")
    common.add_argument("--window", type=int, default=16, help="Fourier window M")
    common.add_argument("--steps", type=int, help="homotopy steps, sweep resolution, or generator degree")
    common.add_argument("--seed", type=int, help="seed for generated embeddings")
    common.add_argument("--format", dest="output_format", choices=("report-text", "delimited"), default="report-text")
    common.add_argument("--strict", action="store_true", help="treat Inconclusive verdicts as failure (exit 3)")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "starlike":
            p.add_argument("--center", type=_complex_arg, help="star center X,Y (searched if omitted)")
            p.add_argument("--curve-out", type=Path, help="also write the sampled curve and profile table")
        if name == "sweep-degree2":
            p.add_argument("--workers", type=int, default=1)
        if name == "verify-paper":
            p.add_argument("--check", type=int, action="append", dest="checks", default=[])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            input_path=args.input,
            grid_size=args.grid,
            window=args.window,
            steps=args.steps,
            seed=args.seed,
            output_format=args.output_format,
            strict=args.strict,
            out=args.out,
            center=getattr(args, "center", None),
            curve_out=getattr(args, "curve_out", None),
            workers=getattr(args, "workers", 1),
            checks=getattr(args, "checks", []),
        )
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
