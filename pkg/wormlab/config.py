import os
import toml
from dataclasses import dataclass
from .exceptions import InvalidParam

THREADS_ENV = "WORMLAB_THREADS"


@dataclass
class WormlabConfig:
    # Paths
    log_dir: str
    results_dir: str

    # General params
    log_level: str
    seed: int
    threads: int

    # Geometry
    resolution: int

    # Capacity solver
    grid: int
    capacity_refine_iters: int
    capacity_tolerance: float

    # Wetzel / hull-of-worms optimisation
    outer_grid: int
    wetzel_refine_iters: int
    inner_tolerance: float
    wetzel_resolution: int
    configuration: str

    # Cover falsification
    falsify_samples: int

    @classmethod
    def load(cls, toml_path: str | None = "config.toml") -> 'WormlabConfig':
        cfg = toml.load(toml_path) if toml_path and os.path.isfile(toml_path) else {}

        paths = cfg.get("paths", {})
        params = cfg.get("parameters", {})
        geometry = cfg.get("geometry", {})
        capacity = cfg.get("capacity", {})
        wetzel = cfg.get("wetzel", {})
        falsify = cfg.get("falsify", {})

        config = cls(
            # Paths
            log_dir=paths.get("log_dir", "./logs"),
            results_dir=paths.get("results_dir", "./results"),

            # Params
            log_level=params.get("log_level", "INFO"),
            seed=int(params.get("seed", 0)),
            threads=threads_from_env(int(params.get("threads", 1))),

            resolution=int(geometry.get("resolution", 1024)),

            grid=int(capacity.get("grid", 512)),
            capacity_refine_iters=int(capacity.get("refine_iters", 200)),
            capacity_tolerance=float(capacity.get("tolerance", 1e-10)),

            outer_grid=int(wetzel.get("outer_grid", 24)),
            wetzel_refine_iters=int(wetzel.get("refine_iters", 40)),
            inner_tolerance=float(wetzel.get("inner_tolerance", 1e-7)),
            wetzel_resolution=int(wetzel.get("resolution", 1024)),
            configuration=wetzel.get("configuration", "circle+triangle+rectangle"),

            falsify_samples=int(falsify.get("samples", 10_000)),
        )
        config.validate()
        return config

    def validate(self) -> None:
        if self.threads < 1:
            raise InvalidParam(f"threads must be >= 1, got {self.threads}")
        if self.resolution < 16 or self.wetzel_resolution < 16:
            raise InvalidParam("polygonisation resolution must be >= 16")
        if self.grid < 64:
            raise InvalidParam(f"capacity grid must be >= 64, got {self.grid}")
        if self.outer_grid < 8:
            raise InvalidParam(f"outer grid must be >= 8, got {self.outer_grid}")
        if self.capacity_tolerance <= 0 or self.inner_tolerance <= 0:
            raise InvalidParam("tolerances must be > 0")
        if self.falsify_samples < 1:
            raise InvalidParam("falsify samples must be >= 1")


def threads_from_env(default: int = 1) -> int:
    """WORMLAB_THREADS caps parallelism; falls back to `default` when unset."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise InvalidParam(f"{THREADS_ENV} must be an integer >= 1, got {raw!r}") from e
    if value < 1:
        raise InvalidParam(f"{THREADS_ENV} must be an integer >= 1, got {value}")
    return value
