"""Strict, line-oriented run configuration.

The format is deliberately small: named sections in square brackets,
``key = value`` pairs, ``#`` comments, blank lines ignored.  Expression
values are double-quoted; numeric values are bare.  Anything unrecognised —
unknown sections, unknown keys, duplicate keys, malformed values — is an
error that names the offending line, because silently ignoring a typo like
``g_t_y`` in a metric would corrupt every downstream number.

    [manifold]
    coords = t x y z

    [metric]                      # symmetric; omitted entries are 0
    g_t_t = "-1"
    g_x_x = "exp(2*t)"

    [vector_field]                # omitted components are 0
    P_t = "1"

    [sampling]
    points = 16                   # sampled points (explicit ones add to these)
    seed = 0
    bounds_t = -0.5 0.5           # default bounds are -1 1
    point = 0.3 0.4 -0.2 0.7      # repeatable: evaluate here as well
    avoid_t = 0                   # keep samples 'margin' away from these
    margin = 0.1

    [fluid]                       # optional; enables the field-equation check
    sigma = "0"
    p = "0"                       # 'rho' is accepted as an alias for p
    lambda = 3
    k = 1

    [tolerances]
    tol = 1e-8

    [report]
    format = text                 # or machine
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .expr import ExprError, parse
from .geometry import MetricSpec, VectorFieldSpec
from .relativity import FluidParams

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_SECTIONS = ("manifold", "metric", "vector_field", "sampling", "fluid",
             "tolerances", "report")


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__("line %d: %s" % (line, message)
                         if line is not None else message)


@dataclass(frozen=True)
class AnalysisSetup:
    coords: tuple
    metric: MetricSpec
    vector: VectorFieldSpec
    bounds: tuple
    explicit_points: tuple         # tuple of ndarray
    n_points: int = 16
    seed: int = 0
    avoid: tuple = ()
    margin: float = 0.1
    fluid: FluidParams | None = None
    tol: float = 1e-8
    fmt: str = "text"


def load_config(path: str) -> AnalysisSetup:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def parse_config(text: str) -> AnalysisSetup:
    entries = _split(text)
    coords = _manifold(entries)
    metric = _metric(entries, coords)
    vector = _vector(entries, coords)
    sampling = _sampling(entries, coords)
    fluid = _fluid(entries, coords)
    tol = _tolerances(entries)
    fmt = _report(entries)
    return AnalysisSetup(coords, metric, vector, fluid=fluid, tol=tol,
                         fmt=fmt, **sampling)


def _split(text: str) -> dict:
    """-> {section: [(key, value, line), ...]}; validates raw shape only."""
    entries = {}
    section = None
    seen_keys = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not (line.endswith("]") and _IDENT.match(line[1:-1] or " ")):
                raise ConfigError("malformed section header %r" % line, lineno)
            section = line[1:-1]
            if section not in _SECTIONS:
                raise ConfigError(
                    "unknown section [%s]; expected one of %s"
                    % (section, ", ".join(_SECTIONS)), lineno)
            if section in entries:
                raise ConfigError("section [%s] appears twice" % section,
                                  lineno)
            entries[section] = []
            continue
        if section is None:
            raise ConfigError("key before any [section]: %r" % line, lineno)
        if "=" not in line:
            raise ConfigError("expected key = value, got %r" % line, lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if not _IDENT.match(key):
            raise ConfigError("malformed key %r" % key, lineno)
        if key not in ("point",) and (section, key) in seen_keys:
            raise ConfigError("duplicate key %r in [%s]" % (key, section),
                              lineno)
        seen_keys.add((section, key))
        entries[section].append((key, value, lineno))
    return entries


def _take(entries, section, required=False):
    if section not in entries:
        if required:
            raise ConfigError("missing required section [%s]" % section)
        return []
    return entries[section]


def _quoted(value: str, key: str, lineno: int, coords=None) -> str:
    if len(value) < 2 or value[0] != '"' or value[-1] != '"':
        raise ConfigError("%s must be a double-quoted expression, got %r"
                          % (key, value), lineno)
    inner = value[1:-1]
    if '"' in inner:
        raise ConfigError("stray quote inside %s" % key, lineno)
    if coords is not None:
        try:
            parse(inner, coords)
        except ExprError as exc:
            raise ConfigError("in %s: %s" % (key, exc), lineno) from exc
    return inner


def _number(value: str, key: str, lineno: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError("%s expects a number, got %r" % (key, value),
                          lineno) from None


def _integer(value: str, key: str, lineno: int) -> int:
    try:
        return int(value, 10)
    except ValueError:
        raise ConfigError("%s expects an integer, got %r" % (key, value),
                          lineno) from None


def _manifold(entries) -> tuple:
    coords = None
    for key, value, lineno in _take(entries, "manifold", required=True):
        if key != "coords":
            raise ConfigError("unknown key %r in [manifold]" % key, lineno)
        names = tuple(value.split())
        if len(names) < 2:
            raise ConfigError("need at least two coordinates", lineno)
        for name in names:
            if not _IDENT.match(name):
                raise ConfigError("bad coordinate name %r" % name, lineno)
        if len(set(names)) != len(names):
            raise ConfigError("repeated coordinate name", lineno)
        coords = names
    if coords is None:
        raise ConfigError("[manifold] must define coords")
    return coords


def _metric(entries, coords) -> MetricSpec:
    n = len(coords)
    rows = [["0"] * n for _ in range(n)]
    given = set()
    any_entry = False
    for key, value, lineno in _take(entries, "metric", required=True):
        parts = key.split("_")
        if len(parts) != 3 or parts[0] != "g" or parts[1] not in coords \
                or parts[2] not in coords:
            raise ConfigError(
                "metric keys look like g_<coord>_<coord>; got %r" % key,
                lineno)
        i, j = coords.index(parts[1]), coords.index(parts[2])
        if (i, j) in given or (j, i) in given:
            raise ConfigError("metric entry (%s, %s) set twice"
                              % (coords[i], coords[j]), lineno)
        given.add((i, j))
        expr = _quoted(value, key, lineno, coords)
        rows[i][j] = expr
        rows[j][i] = expr
        any_entry = True
    if not any_entry:
        raise ConfigError("[metric] defines no entries")
    try:
        return MetricSpec.from_strings(coords, rows)
    except ExprError as exc:
        raise ConfigError("in a metric entry: %s" % exc) from exc


def _vector(entries, coords) -> VectorFieldSpec:
    comps = ["0"] * len(coords)
    for key, value, lineno in _take(entries, "vector_field", required=True):
        parts = key.split("_", 1)
        if len(parts) != 2 or parts[0] != "P" or parts[1] not in coords:
            raise ConfigError("vector keys look like P_<coord>; got %r" % key,
                              lineno)
        comps[coords.index(parts[1])] = _quoted(value, key, lineno)
    try:
        return VectorFieldSpec.from_strings(coords, comps)
    except ExprError as exc:
        raise ConfigError("in a vector component: %s" % exc) from exc


def _sampling(entries, coords) -> dict:
    n = len(coords)
    bounds = [(-1.0, 1.0)] * n
    out = {"n_points": 16, "seed": 0, "margin": 0.1}
    avoid = []
    points = []
    for key, value, lineno in _take(entries, "sampling"):
        if key == "points":
            out["n_points"] = _integer(value, key, lineno)
            if out["n_points"] < 0:
                raise ConfigError("points must be >= 0", lineno)
        elif key == "seed":
            out["seed"] = _integer(value, key, lineno)
        elif key == "margin":
            out["margin"] = _number(value, key, lineno)
            if out["margin"] <= 0:
                raise ConfigError("margin must be positive", lineno)
        elif key == "point":
            vals = [_number(v, key, lineno) for v in value.split()]
            if len(vals) != n:
                raise ConfigError(
                    "point expects %d coordinates, got %d" % (n, len(vals)),
                    lineno)
            points.append(np.array(vals))
        elif key.startswith("bounds_"):
            name = key[len("bounds_"):]
            if name not in coords:
                raise ConfigError("bounds for unknown coordinate %r" % name,
                                  lineno)
            vals = [_number(v, key, lineno) for v in value.split()]
            if len(vals) != 2 or vals[0] >= vals[1]:
                raise ConfigError("%s expects 'lo hi' with lo < hi" % key,
                                  lineno)
            bounds[coords.index(name)] = (vals[0], vals[1])
        elif key.startswith("avoid_"):
            name = key[len("avoid_"):]
            if name not in coords:
                raise ConfigError("avoid for unknown coordinate %r" % name,
                                  lineno)
            for v in value.split():
                avoid.append((coords.index(name), _number(v, key, lineno)))
        else:
            raise ConfigError("unknown key %r in [sampling]" % key, lineno)
    out["bounds"] = tuple(bounds)
    out["avoid"] = tuple(avoid)
    out["explicit_points"] = tuple(points)
    return out


def _fluid(entries, coords) -> FluidParams | None:
    rows = _take(entries, "fluid")
    if not rows:
        return None
    sigma, p = "0", None
    lam, k = 0.0, 1.0
    for key, value, lineno in rows:
        if key == "sigma":
            sigma = _quoted(value, key, lineno, coords)
        elif key in ("p", "rho"):
            if p is not None:
                raise ConfigError(
                    "pressure given twice (p and its alias rho)", lineno)
            p = _quoted(value, key, lineno, coords)
        elif key == "lambda":
            lam = _number(value, key, lineno)
        elif key == "k":
            k = _number(value, key, lineno)
        else:
            raise ConfigError("unknown key %r in [fluid]" % key, lineno)
    try:
        return FluidParams.from_strings(coords, sigma, p if p is not None
                                        else "0", lam, k)
    except ExprError as exc:
        raise ConfigError("in a fluid expression: %s" % exc) from exc


def _tolerances(entries) -> float:
    tol = 1e-8
    for key, value, lineno in _take(entries, "tolerances"):
        if key != "tol":
            raise ConfigError("unknown key %r in [tolerances]" % key, lineno)
        tol = _number(value, key, lineno)
        if tol <= 0:
            raise ConfigError("tol must be positive", lineno)
    return tol


def _report(entries) -> str:
    fmt = "text"
    for key, value, lineno in _take(entries, "report"):
        if key != "format":
            raise ConfigError("unknown key %r in [report]" % key, lineno)
        if value not in ("text", "machine"):
            raise ConfigError("format is 'text' or 'machine', got %r" % value,
                              lineno)
        fmt = value
    return fmt
