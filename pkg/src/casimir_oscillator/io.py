"""File formats: trajectory CSV, key = value configs, SVG plots, run manifests."""

from __future__ import annotations

import configparser
import csv
import io
import json
from typing import Dict, Iterable, Optional, TextIO

import numpy as np

from .integrator import Trajectory
from .sweep import Axis, SweepSpec

TRAJECTORY_HEADER = ["tau", "u", "v", "energy"]


class ParseError(ValueError):
    pass


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def write_trajectory_csv(traj: Trajectory, fh: TextIO) -> None:
    fh.write(",".join(TRAJECTORY_HEADER) + "\n")
    for row in zip(traj.times, traj.u, traj.v, traj.energy):
        fh.write(",".join(_g17(x) for x in row) + "\n")


def trajectory_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    write_trajectory_csv(traj, buf)
    return buf.getvalue()


def read_trajectory_csv(fh: TextIO, c_hat: float = 0.0) -> Trajectory:
    """Parse a ``tau,u,v,energy`` file; the energy column is kept as written.

    ``c_hat`` is only recorded on the returned trajectory.
    """
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("line 1: empty file") from None
    if [h.strip() for h in header] != TRAJECTORY_HEADER:
        raise ParseError(f"line 1: expected header {','.join(TRAJECTORY_HEADER)!r}, got {','.join(header)!r}")
    rows = []
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 4:
            raise ParseError(f"line {line}: expected 4 fields, got {len(row)}")
        try:
            rows.append([float(c) for c in row])
        except ValueError as exc:
            raise ParseError(f"line {line}: {exc}") from None
    if len(rows) < 2:
        raise ParseError("need at least 2 data rows")
    arr = np.array(rows)
    dt = float(arr[1, 0] - arr[0, 0])
    if not np.all(np.diff(arr[:, 0]) > 0):
        raise ParseError("tau must be strictly increasing")
    return Trajectory(arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy(), arr[:, 3].copy(), c_hat, dt)


def parse_config(text: str) -> Dict[str, object]:
    """Parse flat ``key = value`` lines plus optional ``[axis NAME]`` blocks.

    Numbers become floats; ``true``/``false`` become booleans; other
    values stay strings. Axis blocks are returned under ``"axes"`` as a
    list of dicts, in file order.
    """
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    cp.optionxform = str  # keep key case
    try:
        cp.read_string("[__top__]\n" + text)
    except configparser.Error as exc:
        # line numbers are off by one because of the injected section
        msg = str(exc)
        lineno = getattr(exc, "lineno", None)
        if lineno:
            msg = f"line {lineno - 1}: {msg.splitlines()[0]}"
        raise ParseError(msg) from None
    out: Dict[str, object] = {k.replace("-", "_"): _coerce(v) for k, v in cp["__top__"].items()}
    axes = []
    for sec in cp.sections():
        if sec == "__top__":
            continue
        kind, _, name = sec.partition(" ")
        if kind != "axis" or not name.strip():
            raise ParseError(f"unknown section [{sec}]")
        ax = {k: _coerce(v) for k, v in cp[sec].items()}
        ax["name"] = name.strip()
        axes.append(ax)
    if axes:
        out["axes"] = axes
    return out


def _coerce(v: str):
    s = v.strip()
    if s.lower() in ("true", "yes", "on"):
        return True
    if s.lower() in ("false", "no", "off"):
        return False
    try:
        return float(s)
    except ValueError:
        return s


_AXIS_ALIASES = {"A": "area", "a": "area", "area": "area", "k": "k", "x0": "x0"}


def sweep_spec_from_config(cfg: Dict[str, object]) -> SweepSpec:
    if "axes" not in cfg:
        raise ParseError("sweep file has no [axis ...] block")
    axes = []
    for ax in cfg["axes"]:
        name = _AXIS_ALIASES.get(ax["name"], ax["name"])
        try:
            axes.append(
                Axis(
                    name=name,
                    min=float(ax["min"]),
                    max=float(ax["max"]),
                    count=int(ax["count"]),
                    spacing=str(ax.get("spacing", "linear")),
                )
            )
        except KeyError as exc:
            raise ParseError(f"axis {name}: missing {exc.args[0]}") from None
    fixed = {}
    for key in ("k", "area", "x0", "rho_s"):
        if key in cfg:
            fixed[key] = float(cfg[key])
    kw = {}
    if "dt" in cfg:
        kw["dt"] = float(cfg["dt"])
    if "periods" in cfg:
        kw["periods"] = float(cfg["periods"])
    return SweepSpec(axes=axes, fixed=fixed, simulate=bool(cfg.get("simulate", False)), **kw)


def svg_polyline(
    x: Iterable[float],
    y: Iterable[float],
    width: int = 640,
    height: int = 360,
    xlabel: str = "",
    ylabel: str = "",
    title: str = "",
) -> str:
    """A minimal line plot as an SVG document string."""
    x = np.asarray(list(x), dtype=float)
    y = np.asarray(list(y), dtype=float)
    ml, mr, mt, mb = 70, 20, 30, 45
    pw, ph = width - ml - mr, height - mt - mb
    x0, x1 = float(x.min()), float(x.max())
    y0, y1 = float(y.min()), float(y.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    px = ml + (x - x0) / (x1 - x0) * pw
    py = mt + (y1 - y) / (y1 - y0) * ph
    pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
    return "\n".join(
        [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>',
            f'<polyline fill="none" stroke="#1f77b4" stroke-width="1" points="{pts}"/>',
            f'<text x="{ml + pw / 2}" y="{height - 10}" text-anchor="middle" font-size="12">{xlabel}</text>',
            f'<text x="15" y="{mt + ph / 2}" text-anchor="middle" font-size="12" transform="rotate(-90 15 {mt + ph / 2})">{ylabel}</text>',
            f'<text x="{ml + pw / 2}" y="18" text-anchor="middle" font-size="13">{title}</text>',
            f'<text x="{ml - 5}" y="{mt + 4}" text-anchor="end" font-size="10">{y1:.4g}</text>',
            f'<text x="{ml - 5}" y="{mt + ph}" text-anchor="end" font-size="10">{y0:.4g}</text>',
            f'<text x="{ml}" y="{mt + ph + 14}" text-anchor="middle" font-size="10">{x0:.4g}</text>',
            f'<text x="{ml + pw}" y="{mt + ph + 14}" text-anchor="middle" font-size="10">{x1:.4g}</text>',
            "</svg>",
            "",
        ]
    )


def write_manifest(path: str, manifest: dict) -> None:
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def manifest_path(out: Optional[str]) -> Optional[str]:
    return None if out is None else out + ".manifest.json"
