import json
import math
import os
import sys
import numpy as np
import pandas as pd
from dataclasses import asdict
from logging import getLogger
from typing import Any, Dict, Optional

from .capacity import CapacityReport, InvarianceRecord, MahlerRecord, SystolicRecord, ViterboRecord
from .exceptions import IoError, ParseError, WormlabError
from .generators import Circle, DoubledSegment, EquilateralTriangle, FreePolyline, GeneratorCurve, Rectangle
from .geom2 import (ConvexBody2, Disc, HullOfUnion, Polygon, diamond, regular_polygon,
                    reuleaux_triangle, square, unit_square)
from .mlength import ClosedPolyline
from .wormcover import BoundReport

logger = getLogger("wormlab")


def _pairs(arr) -> list:
    return [[float(x), float(y)] for x, y in np.asarray(arr, dtype=float)]


def _read_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise IoError(f"File not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e})") from e
    except OSError as e:
        raise IoError(f"Could not read {path}: {e}") from e


# ---------------------------------------------------------------------------------------
# bodies and curves
# ---------------------------------------------------------------------------------------

def body_to_dict(body: ConvexBody2) -> Dict[str, Any]:
    if isinstance(body, Polygon):
        return {"type": "polygon", "vertices": _pairs(body.vertices)}
    if isinstance(body, Disc):
        return {"type": "disc", "center": _pairs([body.center])[0], "radius": float(body.radius)}
    return {"type": "hull", "parts": [body_to_dict(p) for p in body.parts]}


def body_from_dict(data: Any) -> ConvexBody2:
    if not isinstance(data, dict):
        raise ParseError("A body must be a JSON object")
    kind = data.get("type", "polygon" if "vertices" in data else None)
    try:
        if kind == "polygon":
            return Polygon(np.asarray(data["vertices"], dtype=float))
        if kind == "disc":
            return Disc(np.asarray(data.get("center", [0.0, 0.0]), dtype=float), float(data["radius"]))
        if kind == "hull":
            return HullOfUnion(tuple(body_from_dict(p) for p in data["parts"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"Malformed {kind} body: {e}") from e
    raise ParseError(f"Unknown body type {kind!r}")


def named_body(name: str) -> Optional[ConvexBody2]:
    """Built-in bodies: square, unitsquare, disc[:r], diamond, hexagon, reuleaux:<width>."""
    head, _, arg = name.partition(":")
    try:
        if head == "square" and not arg:
            return square()
        if head == "unitsquare" and not arg:
            return unit_square()
        if head == "disc":
            return Disc(np.zeros(2), float(arg) if arg else 1.0)
        if head == "diamond" and not arg:
            return diamond()
        if head == "hexagon" and not arg:
            return regular_polygon(6)
        if head == "reuleaux":
            return reuleaux_triangle(float(arg) if arg else 0.5)
    except ValueError as e:
        raise ParseError(f"Bad parameter in body name {name!r}") from e
    return None


def load_body(source: str) -> ConvexBody2:
    """A named body, or a JSON body file."""
    body = named_body(source)
    if body is not None:
        return body
    return body_from_dict(_read_json(source))


def curve_to_dict(curve: ClosedPolyline) -> Dict[str, Any]:
    return {"vertices": _pairs(curve.vertices)}


def curve_from_dict(data: Any) -> ClosedPolyline:
    if not isinstance(data, dict) or "vertices" not in data:
        raise ParseError('A curve must be a JSON object with a "vertices" list')
    try:
        verts = np.asarray(data["vertices"], dtype=float)
    except (TypeError, ValueError) as e:
        raise ParseError(f"Malformed curve vertices: {e}") from e
    return ClosedPolyline(verts)


def load_curve(path: str) -> ClosedPolyline:
    return curve_from_dict(_read_json(path))


# ---------------------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------------------

def capacity_report_to_dict(report: CapacityReport) -> Dict[str, Any]:
    out = {
        "value": float(report.value),
        "minimizer": _pairs(report.minimizer.vertices),
        "bounces": int(report.bounce_count),
        "grid": int(report.solver_grid),
        "refined": bool(report.refined),
    }
    if report.dual is not None:
        out["dual"] = _pairs(report.dual.vertices)
    return out


def generator_to_dict(gen: GeneratorCurve) -> Dict[str, Any]:
    shape = gen.shape
    if isinstance(shape, FreePolyline):
        params = {"vertices": _pairs(shape.polyline.vertices)}
    else:
        params = {k: float(v) for k, v in asdict(shape).items()}
    return {"kind": gen.kind, "params": params, "translation": _pairs([gen.translation])[0]}


_SHAPES = {"Circle": Circle, "EquilateralTriangle": EquilateralTriangle, "Rectangle": Rectangle,
           "DoubledSegment": DoubledSegment}


def generator_from_dict(data: Dict[str, Any]) -> GeneratorCurve:
    try:
        kind, params = data["kind"], data["params"]
        if kind == "FreePolyline":
            shape = FreePolyline(ClosedPolyline(np.asarray(params["vertices"], dtype=float)))
        else:
            shape = _SHAPES[kind](**params)
        return GeneratorCurve(shape, np.asarray(data["translation"], dtype=float))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"Malformed generator: {e}") from e


def bound_report_to_dict(report: BoundReport) -> Dict[str, Any]:
    # wall time is logged, not serialised, so reruns give identical bytes
    return {
        "lower_bound": float(report.lower_bound),
        "error_bar": float(report.error_bar),
        "configuration": report.configuration,
        "generators": [generator_to_dict(g) for g in report.generators],
        "inner_translations": _pairs(report.inner_translations),
        "outer_params": {k: float(v) for k, v in report.outer_params.items()},
        "iterations": int(report.iterations),
        "resolution": int(report.resolution),
        "landmarks": report.landmarks(),
    }


def bound_report_from_dict(data: Dict[str, Any]) -> BoundReport:
    try:
        return BoundReport(
            lower_bound=float(data["lower_bound"]),
            generators=[generator_from_dict(g) for g in data["generators"]],
            inner_translations=[np.asarray(a, dtype=float) for a in data["inner_translations"]],
            outer_params={k: float(v) for k, v in data["outer_params"].items()},
            iterations=int(data["iterations"]),
            wall_time=math.nan,
            configuration=data.get("configuration", "custom"),
            resolution=int(data.get("resolution", 1024)),
            error_bar=float(data.get("error_bar", 0.0)),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"Malformed bound report: {e}") from e


def record_to_dict(record) -> Dict[str, Any]:
    """Flat numeric records from the conjecture checks."""
    if isinstance(record, (ViterboRecord, MahlerRecord, InvarianceRecord, SystolicRecord)):
        return {k: float(v) for k, v in asdict(record).items()}
    raise WormlabError(f"Not a check record: {type(record).__name__}")


# ---------------------------------------------------------------------------------------
# writers
# ---------------------------------------------------------------------------------------

def dumps(data: Dict[str, Any]) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_json(data: Dict[str, Any], path: Optional[str] = None) -> None:
    """Write to `path`, or to stdout when no path is given."""
    text = dumps(data)
    if path is None:
        sys.stdout.write(text)
        return
    try:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise IoError(f"Could not write {path}: {e}") from e
    logger.info(f"Wrote JSON: {path}")


def write_csv(table: pd.DataFrame, path: Optional[str] = None) -> None:
    """Scalar sweep tables (theta, q_hat, value) and flat records."""
    if path is None:
        sys.stdout.write(table.to_csv(index=False, float_format="%.12g"))
        return
    try:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        table.to_csv(path, index=False, float_format="%.12g")
    except OSError as e:
        raise IoError(f"Could not write {path}: {e}") from e
    logger.info(f"Wrote CSV: {path}")
