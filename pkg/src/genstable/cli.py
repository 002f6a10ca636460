"""Command-line front end.

Every run emits a header (parameters, derived a and b, command, seed,
version) and one row per grid point. Numbers are written with 17 significant
digits so that JSON and CSV output carry identical decimal strings. Failures
emit ``{"error": {...}}`` and exit with status 2.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import __version__
from .density import density_reflected, density_values, fox_parameters, laplace_transform_eval
from .density import asymptotic_infinity, asymptotic_zero
from .errors import GenStableError
from .fracops import QuadratureSpec, ide_residual, steutel_residual, thorin_density_frechet
from .mellin import labr_selfdecomp_criterion, mellin, moment_lattice
from .params import EXISTENCE_MESSAGE, GenStableParams
from .sampling import SampleConfig, sample

COMMANDS = (
    "density",
    "mellin",
    "moments",
    "sample",
    "verify-ide",
    "verify-steutel",
    "asymptotics",
    "laplace",
    "thorin",
    "fox",
    "labr",
)


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("grid count must be at least 1")
        if self.spacing not in ("linear", "log"):
            raise ValueError("spacing must be linear or log")
        if self.count == 1 and self.lo != self.hi:
            raise ValueError("a one-point grid needs lo = hi")
        if self.count > 1 and not self.lo < self.hi:
            raise ValueError("grid needs lo < hi")
        if self.spacing == "log" and not self.lo > 0:
            raise ValueError("log spacing needs lo > 0")

    @classmethod
    def parse(cls, text: str, spacing: str = "linear") -> "GridSpec":
        parts = [t.strip() for t in text.split(",")]
        if len(parts) != 3:
            raise ValueError("grid must read lo,hi,count")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]), spacing)

    def points(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.lo])
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


@dataclass
class RunConfig:
    command: str
    m: float | None = None
    alpha: float | None = None
    grid: GridSpec | None = None
    output: str = "json"
    seed: int = 0
    method: str | None = None
    extra: dict = field(default_factory=dict)

    def params(self) -> GenStableParams:
        if self.m is None or self.alpha is None:
            raise ValueError(f"{self.command} needs --m and --alpha")
        return GenStableParams(self.m, self.alpha)


def fmt(v: Any) -> str:
    """Round-trip decimal text for numbers; JSON literals otherwise."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return '"nan"'
        if math.isinf(v):
            return '"inf"' if v > 0 else '"-inf"'
        return "%.16e" % v
    if v is None:
        return "null"
    return json.dumps(str(v))


def _header(cfg: RunConfig) -> dict:
    a = b = None
    if cfg.m is not None and cfg.alpha is not None:
        a = cfg.m - cfg.alpha
        b = a / cfg.alpha
    return {
        "m": cfg.m,
        "alpha": cfg.alpha,
        "a": a,
        "b": b,
        "command": cfg.command,
        "seed": cfg.seed,
        "version": __version__,
    }


def _grid(cfg: RunConfig, default: str) -> np.ndarray:
    return (cfg.grid or GridSpec.parse(default)).points()


def _frechet_alpha(cfg: RunConfig) -> float:
    """alpha for the m = 2 alpha commands; an explicit m must agree."""
    alpha = cfg.alpha if cfg.alpha is not None else 1.0
    if cfg.m is not None and abs(cfg.m - 2.0 * alpha) > 1e-12 * cfg.m:
        raise ValueError(f"{cfg.command} needs m = 2 alpha, got m={cfg.m}, alpha={alpha}")
    return alpha


def _rows(cfg: RunConfig) -> list[dict]:
    c = cfg.command
    ex = cfg.extra
    if c == "density":
        p = cfg.params()
        xs = _grid(cfg, "1,1,1")
        if ex.get("reflected"):
            out = []
            for x in xs:
                d = density_reflected(p, float(x), cfg.method)
                out.append({"x": float(x), "value": d.value, "err": d.err, "method": d.method})
            return out
        v, e, t = density_values(p, xs, cfg.method)
        return [{"x": float(x), "value": float(vi), "err": float(ei), "method": str(ti)} for x, vi, ei, ti in zip(xs, v, e, t)]
    if c == "mellin":
        p = cfg.params()
        ss = [float(ex["s"])] if ex.get("s") is not None else _grid(cfg, "0,1,2")
        out = []
        for s in ss:
            mv = mellin(p, float(s), cfg.method or "auto")
            out.append({"s": float(s), "value": mv.value, "err": mv.err * mv.value, "method": mv.route})
        return out
    if c == "moments":
        p = cfg.params()
        out = []
        for k in range(int(ex.get("kmax") or 4) + 1):
            mv = moment_lattice(p, k)
            out.append({"s": k * p.a, "value": mv.value, "err": mv.err * mv.value, "method": mv.route})
        return out
    if c == "sample":
        p = cfg.params()
        sc = SampleConfig(
            count=int(ex.get("count") or 10),
            truncation_depth=int(ex.get("depth") or 200),
            tail_correction=ex.get("tail") or "mean-log",
            seed=cfg.seed,
            representation=cfg.method or "first-product",
        )
        batch = sample(p, sc)
        return [
            {"index": i, "value": float(v), "err": 0.0, "method": sc.representation}
            for i, v in enumerate(batch.values)
        ]
    if c == "verify-ide":
        p = cfg.params()
        xs = _grid(cfg, "0.5,5,4")
        nodes = int(ex.get("nodes") or 64)
        q = QuadratureSpec.for_alpha(p.alpha, nodes)
        rep = ide_residual(p, xs, q)
        return [{"x": float(x), "value": float(r), "err": q.tol, "method": q.scheme} for x, r in zip(rep.x, rep.residuals)]
    if c == "verify-steutel":
        alpha = _frechet_alpha(cfg)
        cfg.alpha, cfg.m = alpha, 2.0 * alpha
        xs = _grid(cfg, "1,2,2")
        rep = steutel_residual(alpha, xs, convention=ex.get("convention"))
        conv = ex.get("convention") or "default"
        return [{"x": float(x), "value": float(r), "err": 1e-3, "method": conv} for x, r in zip(rep.x, rep.residuals)]
    if c == "asymptotics":
        p = cfg.params()
        xs = _grid(cfg, "1,1,1")
        v, e, t = density_values(p, xs, cfg.method)
        return [
            {
                "x": float(x),
                "value": float(vi),
                "err": float(ei),
                "method": str(ti),
                "zero": asymptotic_zero(p, float(x)),
                "infinity": asymptotic_infinity(p, float(x)),
            }
            for x, vi, ei, ti in zip(xs, v, e, t)
        ]
    if c == "laplace":
        p = cfg.params()
        out = []
        for lam in _grid(cfg, "1,1,1"):
            v, e, how = laplace_transform_eval(p, float(lam), cfg.method)
            out.append({"lam": float(lam), "value": v, "err": e, "method": how})
        return out
    if c == "thorin":
        alpha = _frechet_alpha(cfg)
        cfg.alpha, cfg.m = alpha, 2.0 * alpha
        out = []
        for u in _grid(cfg, "1,1,1"):
            tp = thorin_density_frechet(alpha, float(u), ex.get("convention"))
            out.append({"u": tp.u, "value": tp.value, "err": 1e-10 * tp.value, "method": tp.constant_convention})
        return out
    if c == "fox":
        fp = fox_parameters(cfg.params(), ex.get("family"))
        return [
            {
                "family": fp.family,
                "m_index": fp.m,
                "n_index": fp.n,
                "p": fp.p,
                "q": fp.q,
                "prefactor": fp.prefactor,
                "scale": fp.scale,
                "upper": " ".join(f"({fmt(x)};{fmt(y)})" for x, y in fp.upper),
                "lower": " ".join(f"({fmt(x)};{fmt(y)})" for x, y in fp.lower),
                "value": fp.prefactor,
                "err": 0.0,
                "method": "exact",
            }
        ]
    if c == "labr":
        a, b, r = (float(ex[k]) for k in ("a", "b", "r"))
        return [{"value": labr_selfdecomp_criterion(a, b, r), "err": 0.0, "method": "grid-scan"}]
    raise ValueError(f"unknown command {c!r}")


def render(cfg: RunConfig, rows: list[dict]) -> str:
    header = _header(cfg)
    if cfg.output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for k, v in header.items():
            buf.write(f"# {k}={fmt(v).strip(chr(34))}\n")
        cols = list(rows[0].keys()) if rows else ["value", "err", "method"]
        w.writerow(cols)
        for row in rows:
            w.writerow([fmt(row[c]).strip('"') for c in cols])
        return buf.getvalue()
    head = ", ".join(f'"{k}": {fmt(v)}' for k, v in header.items())
    body = ",\n    ".join("{" + ", ".join(f'"{k}": {fmt(v)}' for k, v in row.items()) + "}" for row in rows)
    return '{"header": {' + head + '},\n  "rows": [\n    ' + body + "\n  ]}\n"


def error_text(exc: BaseException) -> str:
    msg = str(exc)
    kind = type(exc).__name__
    if EXISTENCE_MESSAGE in msg:
        kind = "ExistenceError"
    return json.dumps({"error": {"type": kind, "message": msg}}) + "\n"


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, emitted text)."""
    try:
        if cfg.command not in COMMANDS:
            raise ValueError(f"unknown command {cfg.command!r}")
        if cfg.output not in ("json", "csv"):
            raise ValueError("output must be json or csv")
        if cfg.m is not None and cfg.alpha is not None:
            GenStableParams(cfg.m, cfg.alpha)
        rows = _rows(cfg)
        return 0, render(cfg, rows)
    except (GenStableError, ValueError, KeyError, ArithmeticError) as exc:
        return 2, error_text(exc)


def read_config(path: str) -> dict:
    """Flat ``key=value`` file; blank lines and ``#`` comments are skipped."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"config line without '=': {line!r}")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="genstable", description="Generalized stable laws G(m, alpha)")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--m", type=float)
    ap.add_argument("--alpha", type=float)
    ap.add_argument("--grid", help="lo,hi,count")
    ap.add_argument("--spacing", choices=("linear", "log"))
    ap.add_argument("--output", choices=("json", "csv"))
    ap.add_argument("--seed", type=int)
    ap.add_argument("--method")
    ap.add_argument("--config")
    ap.add_argument("--s", type=float)
    ap.add_argument("--kmax", type=int)
    ap.add_argument("--count", type=int)
    ap.add_argument("--depth", type=int)
    ap.add_argument("--tail", choices=("none", "mean-log"))
    ap.add_argument("--nodes", type=int)
    ap.add_argument("--convention", choices=("paper", "derived"))
    ap.add_argument("--family")
    ap.add_argument("--reflected", action="store_true", default=None)
    ap.add_argument("--a", type=float)
    ap.add_argument("--b", type=float)
    ap.add_argument("--r", type=float)
    return ap


_EXTRA = ("s", "kmax", "count", "depth", "tail", "nodes", "convention", "family", "reflected", "a", "b", "r")


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    values = dict(read_config(ns.config)) if ns.config else {}
    for k, v in vars(ns).items():
        if v is not None and k not in ("config", "command"):
            values[k] = v

    def num(key, cast=float):
        v = values.get(key)
        return None if v is None else cast(v)

    grid = None
    if values.get("grid") is not None:
        grid = GridSpec.parse(str(values["grid"]), str(values.get("spacing") or "linear"))
    extra = {k: values.get(k) for k in _EXTRA}
    if isinstance(extra["reflected"], str):
        extra["reflected"] = extra["reflected"].lower() in ("1", "true", "yes")
    return RunConfig(
        command=ns.command,
        m=num("m"),
        alpha=num("alpha"),
        grid=grid,
        output=str(values.get("output") or "json"),
        seed=num("seed", int) or 0,
        method=values.get("method"),
        extra=extra,
    )


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (ValueError, OSError) as exc:
        sys.stdout.write(error_text(exc))
        return 2
    status, text = run(cfg)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
