"""
Command-line front end: `python run_wormlab.py <command> [options]`.

Exit codes: 0 ok, 2 parse, 3 domain (origin/singular/invalid input), 4 convergence, 5 io.
"""
import argparse
import sys
import numpy as np
import pandas as pd
from dataclasses import dataclass, field
from logging import getLogger
from typing import Any, Dict, List, Optional, Sequence

from .capacity import (check_mahler, check_symplectic_invariance, check_viterbo, min_escape_length)
from .config import WormlabConfig
from .exceptions import (IoError, NonConvergence, ParseError, ReportError, WormlabError)
from .file_io import (bound_report_to_dict, capacity_report_to_dict, curve_to_dict, load_body,
                      load_curve, record_to_dict, write_csv, write_json)
from .figures import emit_svg
from .generators import Circle, DoubledSegment, EquilateralTriangle, Rectangle, normalized
from .geom2 import Disc, LinearMap2
from .logging_setup import setup_logging
from .mlength import minkowski_length
from .wormcover import (CONFIGURATIONS, Q_HAT_MIN, THETA_MAX, certify_bound, falsify_cover,
                        fits_by_translation, generic_lower_bound, wetzel_lower_bound)

logger = getLogger("wormlab")

COMMANDS = ("length", "capacity", "escape", "viterbo", "mahler", "invariance",
            "wetzel", "bound", "fit", "falsify")
FORMATS = ("json", "csv", "svg")
SVG_COMMANDS = ("capacity", "escape", "wetzel", "bound")
GENERATOR_NAMES = ("circle", "segment", "triangle", "rectangle")

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_IO = 0, 2, 3, 4, 5


@dataclass
class RunConfig:
    command: str
    k: Optional[str] = None
    t: Optional[str] = None
    curve: Optional[str] = None
    phi: Optional[List[float]] = None
    symmetric: bool = False
    grid: int = 512
    capacity_refine: int = 200
    capacity_step: float = 1e-10
    resolution: int = 1024
    tolerance: float = 1e-7
    seed: int = 0
    samples: int = 10_000
    outer_grid: int = 24
    refine: int = 40
    configuration: str = "circle+triangle+rectangle"
    generators: List[str] = field(default_factory=lambda: ["circle"])
    alpha: float = 1.0
    threads: int = 1
    out: Optional[str] = None
    fmt: str = "json"
    progress: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ParseError(f"Unknown command {self.command!r}")
        if self.fmt not in FORMATS:
            raise ParseError(f"Unknown format {self.fmt!r}")
        if self.fmt == "svg" and self.command not in SVG_COMMANDS:
            raise ParseError(f"SVG output is not available for {self.command}")
        if self.fmt == "svg" and not self.out:
            raise ParseError("SVG output needs --out")
        if self.tolerance <= 0 or self.alpha <= 0:
            raise ParseError("tolerance and alpha must be > 0")
        if self.grid < 64:
            raise ParseError(f"grid must be >= 64, got {self.grid}")
        if self.resolution < 16:
            raise ParseError(f"resolution must be >= 16, got {self.resolution}")
        if self.outer_grid < 8:
            raise ParseError(f"outer grid must be >= 8, got {self.outer_grid}")
        for name in self.generators:
            if name not in GENERATOR_NAMES:
                raise ParseError(f"Unknown generator {name!r}; choose from {GENERATOR_NAMES}")
        if self.phi is not None and len(self.phi) != 4:
            raise ParseError("--phi takes four numbers m11 m12 m21 m22")


def exit_code(error: BaseException) -> int:
    if isinstance(error, ParseError):
        return EXIT_PARSE
    if isinstance(error, NonConvergence):
        return EXIT_CONVERGENCE
    if isinstance(error, (IoError, ReportError)):
        return EXIT_IO
    return EXIT_DOMAIN


def _require(value: Optional[str], flag: str) -> str:
    if not value:
        raise ParseError(f"Missing required option {flag}")
    return value


def _t_body(config: RunConfig):
    return load_body(config.t) if config.t else Disc(np.zeros(2), 1.0)


def _emit(config: RunConfig, data: Dict[str, Any], table: Optional[pd.DataFrame] = None) -> None:
    if config.fmt == "csv":
        write_csv(table if table is not None else pd.DataFrame([_flatten(data)]), config.out)
    else:
        write_json(data, config.out)


def _flatten(data: Dict[str, Any]) -> Dict[str, Any]:
    return {k: v for k, v in data.items() if not isinstance(v, (list, dict))}


def _bound_families(config: RunConfig, t_body):
    families = []
    for name in config.generators:
        if name == "circle":
            families.append(normalized(Circle(), t_body, config.alpha))
        elif name == "segment":
            families.append(lambda th, q: normalized(DoubledSegment(angle=th), t_body, config.alpha))
        elif name == "triangle":
            families.append(lambda th, q: normalized(EquilateralTriangle(angle=th), t_body, config.alpha))
        else:
            families.append(lambda th, q: normalized(Rectangle(aspect=q), t_body, config.alpha))
    thetas = np.linspace(0.0, THETA_MAX, config.outer_grid) if {"segment", "triangle"} & set(config.generators) else [0.0]
    q_hats = np.geomspace(Q_HAT_MIN, 1.0, config.outer_grid) if "rectangle" in config.generators else [1.0]
    schedule = [(float(th), float(q)) for th in thetas for q in q_hats]
    return families, schedule


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    try:
        config.validate()
        logger.info(f"Running {config.command}")
        cmd = config.command

        if cmd == "length":
            curve = load_curve(_require(config.curve, "--curve"))
            _emit(config, {"length": minkowski_length(curve, _t_body(config)), "vertices": len(curve)})

        elif cmd in ("capacity", "escape"):
            k_body = load_body(_require(config.k, "--k"))
            t_body = _t_body(config)
            report = min_escape_length(k_body, t_body, config.grid, config.capacity_refine, config.capacity_step)
            logger.info(f"Capacity {report.value:.10f} ({report.bounce_count} bounces, grid {config.grid})")
            if config.fmt == "svg":
                emit_svg(report, config.out, k_body, t_body)
            else:
                data = capacity_report_to_dict(report)
                if cmd == "escape":
                    data = {"escape_length": data.pop("value"), **data}
                _emit(config, data)

        elif cmd == "viterbo":
            record = check_viterbo(load_body(_require(config.k, "--k")), _t_body(config), config.grid,
                                   config.capacity_refine)
            _emit(config, record_to_dict(record))

        elif cmd == "mahler":
            record = check_mahler(load_body(_require(config.t, "--t")), config.symmetric, config.grid,
                                  config.capacity_refine)
            _emit(config, record_to_dict(record))

        elif cmd == "invariance":
            if config.phi is None:
                raise ParseError("Missing required option --phi")
            phi = LinearMap2(*config.phi)
            record = check_symplectic_invariance(load_body(_require(config.k, "--k")), _t_body(config),
                                                 phi, config.grid, config.capacity_refine)
            _emit(config, {**record_to_dict(record), "difference": record.difference})

        elif cmd in ("wetzel", "bound"):
            if cmd == "wetzel":
                report = wetzel_lower_bound(config.outer_grid, config.refine, config.tolerance,
                                            config.resolution, config.configuration, config.threads,
                                            config.seed, config.progress)
            else:
                t_body = _t_body(config)
                families, schedule = _bound_families(config, t_body)
                report = generic_lower_bound(families, t_body, schedule, config.alpha,
                                             config.tolerance, config.resolution, config.seed)
            cert = certify_bound(report)
            if abs(cert.area - report.lower_bound) > 1e-6 or not cert.all_fit:
                raise ReportError(f"Certificate mismatch: re-evaluated area {cert.area:.10f}, "
                                  f"reported {report.lower_bound:.10f}, all fit {cert.all_fit}")
            logger.info(f"Bound {report.lower_bound:.10f}, wall time {report.wall_time:.1f} s")
            if config.fmt == "svg":
                emit_svg(report, config.out)
            elif config.fmt == "csv":
                write_csv(report.sweep, config.out)
            else:
                write_json(bound_report_to_dict(report), config.out)

        elif cmd == "fit":
            curve = load_curve(_require(config.curve, "--curve"))
            a = fits_by_translation(curve, load_body(_require(config.k, "--k")))
            _emit(config, {"fits": a is not None,
                           "translation": None if a is None else [float(a[0]), float(a[1])]})

        elif cmd == "falsify":
            worm = falsify_cover(load_body(_require(config.k, "--k")), _t_body(config),
                                 config.samples, config.seed, config.progress)
            _emit(config, {"falsified": worm is not None, "samples": config.samples, "seed": config.seed,
                           "worm": None if worm is None else curve_to_dict(worm)["vertices"]})

    except WormlabError as e:
        code = exit_code(e)
        logger.error(f"{type(e).__name__}: {e}")
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return code

    logger.info(f"Finished {config.command}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wormlab",
                                     description="Minkowski billiards, EHZ capacities and worm-cover bounds")
    parser.add_argument("--config", default="config.toml", help="TOML configuration file")
    parser.add_argument("--log-level", default=None, help="override the configured log level")
    parser.add_argument("--log-dir", default=None, help="override the configured log directory")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output file (stdout when omitted)")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="json")

    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help_text, parents=[common])

    p = add("length", "ℓ_T length of a closed polyline")
    p.add_argument("--curve", required=True)
    p.add_argument("--t", default=None, help="body name or JSON file (default: unit disc)")

    for name, text in (("capacity", "c_EHZ(K x T) and its minimiser"),
                       ("escape", "escape length of K with respect to T")):
        p = add(name, text)
        p.add_argument("--k", required=True)
        p.add_argument("--t", default=None)
        p.add_argument("--grid", type=int, default=None)

    p = add("viterbo", "volume against capacity for K x T")
    p.add_argument("--k", required=True)
    p.add_argument("--t", default=None)
    p.add_argument("--grid", type=int, default=None)

    p = add("mahler", "capacity of T x T° and the volume product")
    p.add_argument("--t", required=True)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--grid", type=int, default=None)

    p = add("invariance", "capacity before and after a linear symplectic map")
    p.add_argument("--k", required=True)
    p.add_argument("--t", default=None)
    p.add_argument("--phi", type=float, nargs=4, required=True, metavar=("M11", "M12", "M21", "M22"))
    p.add_argument("--grid", type=int, default=None)

    p = add("wetzel", "hull-of-worms lower bound for Wetzel's problem")
    p.add_argument("--outer-grid", type=int, default=None)
    p.add_argument("--refine", type=int, default=None)
    p.add_argument("--inner-tolerance", dest="tolerance", type=float, default=None)
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--configuration", choices=sorted(CONFIGURATIONS), default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--progress", action="store_true")

    p = add("bound", "hull-of-worms lower bound for an arbitrary T")
    p.add_argument("--t", default=None)
    p.add_argument("--generators", nargs="+", choices=GENERATOR_NAMES, default=["circle"])
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--outer-grid", type=int, default=None)
    p.add_argument("--inner-tolerance", dest="tolerance", type=float, default=None)
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)

    p = add("fit", "translation fitting a curve into K")
    p.add_argument("--curve", required=True)
    p.add_argument("--k", required=True)

    p = add("falsify", "search for a worm that does not fit into K")
    p.add_argument("--k", required=True)
    p.add_argument("--t", default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--progress", action="store_true")
    return parser


def _pick(args: argparse.Namespace, name: str, default):
    value = getattr(args, name, None)
    return default if value is None else value


def config_from_args(args: argparse.Namespace, cfg: WormlabConfig) -> RunConfig:
    """CLI flags override configuration-file values."""
    command = args.command
    return RunConfig(
        command=command,
        k=getattr(args, "k", None),
        t=getattr(args, "t", None),
        curve=getattr(args, "curve", None),
        phi=getattr(args, "phi", None),
        symmetric=bool(getattr(args, "symmetric", False)),
        grid=_pick(args, "grid", cfg.grid),
        capacity_refine=cfg.capacity_refine_iters,
        capacity_step=cfg.capacity_tolerance,
        resolution=_pick(args, "resolution", cfg.wetzel_resolution if command == "wetzel" else cfg.resolution),
        tolerance=_pick(args, "tolerance", cfg.inner_tolerance),
        seed=_pick(args, "seed", cfg.seed),
        samples=_pick(args, "samples", cfg.falsify_samples),
        outer_grid=_pick(args, "outer_grid", cfg.outer_grid),
        refine=_pick(args, "refine", cfg.wetzel_refine_iters),
        configuration=_pick(args, "configuration", cfg.configuration),
        generators=list(getattr(args, "generators", None) or ["circle"]),
        alpha=_pick(args, "alpha", 1.0),
        threads=cfg.threads,
        out=args.out,
        fmt=args.fmt,
        progress=bool(getattr(args, "progress", False)),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = WormlabConfig.load(args.config)
    except WormlabError as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return exit_code(e)
    except Exception as e:
        sys.stderr.write(f"ParseError: could not read {args.config}: {e}\n")
        return EXIT_PARSE

    try:
        setup_logging(args.log_dir or cfg.log_dir, args.log_level or cfg.log_level)
    except WormlabError as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return exit_code(e)
    logger.info("______________________")
    return run(config_from_args(args, cfg))


if __name__ == "__main__":
    sys.exit(main())
