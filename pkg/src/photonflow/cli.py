"""Deterministic command-line exporter for field maps, traces, and rasters.

Six subcommands: fieldmap (named observable layers on a grid), stokes
(calcite pointer readout vs. the true momentum), trace (streamline CSV),
anomaly (vortices plus backflow/superluminal labeling), force (dipole
force maps), render (PGM raster of one scalar layer).

Output discipline: JSON is compact with sorted keys, floats use Python's
shortest round-trip repr, CSV floats likewise, PGM is binary P5; no
timestamps or environment data enter any output, so identical inputs
give byte-identical files.  Samples where a quantity is undefined are
written as the string "singular", never as silent zeros.  Exit codes:
0 success, 2 validation/usage error, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from . import __version__
from .anomaly import classify_anomalies, detect_vortices
from .errors import ParameterError
from .fields import FieldSpec, GaussianPairSpec, field_from_dict
from .grids import GridSpec, frame_names
from .observables import SINGULAR_REL_THRESHOLD, PolarizationState
from .tracing import ARC_LENGTH, PARAXIAL, TraceConfig, trace_streamline

SCALAR_LAYERS = ("amp", "phase", "re_px", "re_pz", "im_px", "im_pz",
                 "S1", "S2", "S3", "W")
VECTOR_LAYERS = ("P_O", "P_S")
ALL_LAYERS = SCALAR_LAYERS + VECTOR_LAYERS + ("label",)

_POLS = {
    "diag": PolarizationState.linear_diag,
    "x": PolarizationState.linear_x,
    "y": PolarizationState.linear_y,
    "rcp": lambda: PolarizationState.circular(+1),
    "lcp": lambda: PolarizationState.circular(-1),
}


@dataclass(frozen=True)
class GridResult:
    """A sampled grid with named layers and a provenance block.

    Layers are stored JSON-ready: scalar layers as rows of numbers,
    vector layers as rows of [x, y, z] triples, categorical layers as
    rows of strings; undefined samples carry the string "singular".
    """

    grid: GridSpec
    layers: dict
    provenance: dict

    def __post_init__(self):
        n1, n2 = self.grid.counts
        for name, rows in self.layers.items():
            if len(rows) != n2 or any(len(row) != n1 for row in rows):
                raise ParameterError(
                    f"layer {name!r} must have {n2} rows of {n1} entries")

    def to_dict(self) -> dict:
        return {
            "grid": self.grid.to_dict(),
            "layers": self.layers,
            "provenance": self.provenance,
        }


def _scalar_rows(values, mask=None):
    rows = np.asarray(values, dtype=float).tolist()
    if mask is not None:
        for j, i in np.argwhere(mask):
            rows[j][i] = "singular"
    return rows


def _vector_rows(vx, vy, vz, mask=None):
    rows = np.stack([np.asarray(vx, dtype=float),
                     np.asarray(vy, dtype=float),
                     np.asarray(vz, dtype=float)], axis=-1).tolist()
    if mask is not None:
        for j, i in np.argwhere(mask):
            rows[j][i] = "singular"
    return rows


class _LayerBuilder:
    """Vectorized layer evaluation over one grid, shared between subcommands."""

    def __init__(self, spec, grid, delta_x=1e-4, pol=None, bound_model="uniform",
                 guard=0.0):
        self.spec = spec
        self.grid = grid
        self.delta_x = delta_x
        self.pol = pol if pol is not None else PolarizationState.linear_diag()
        self.bound_model = bound_model
        self.guard = guard
        self._base_done = False
        self._stokes_done = False

    def _base(self):
        if self._base_done:
            return
        spec = self.spec
        self.names = frame_names(spec.ndim)
        self.meshes = self.grid.mesh(spec.ndim)
        psi, grads = spec.psi_grad(*self.meshes)
        self.psi = psi
        self.amp = np.abs(psi)
        floor = SINGULAR_REL_THRESHOLD * float(self.amp.max())
        self.sing = self.amp <= floor
        amp2 = self.amp * self.amp
        safe = np.where(self.sing, 1.0, amp2)
        self.flux = {n: np.conj(psi) * g for n, g in zip(self.names, grads)}
        self.re_p = {n: f.imag / safe for n, f in self.flux.items()}
        self.im_p = {n: -f.real / safe for n, f in self.flux.items()}
        self._base_done = True

    def _stokes(self):
        if self._stokes_done:
            return
        self._base()
        spec = self.spec
        if isinstance(spec, GaussianPairSpec) and abs(self.delta_x) > spec.w0_mm / 100.0:
            warnings.warn(
                f"delta_x = {self.delta_x} mm exceeds w0/100; first-order readout degrades",
                stacklevel=2)
        shifted = list(self.meshes)
        shifted[0] = self.meshes[0] - self.delta_x
        psi_shift, _ = spec.psi_grad(*shifted)
        ex = self.pol.ex * psi_shift
        ey = self.pol.ey * self.psi
        intensity = (ex.real ** 2 + ex.imag ** 2) + (ey.real ** 2 + ey.imag ** 2)
        root = np.sqrt(intensity)
        self.sing_stokes = root <= SINGULAR_REL_THRESHOLD * float(root.max())
        safe = np.where(self.sing_stokes, 1.0, intensity)
        cross = np.conj(ex) * ey
        self.S = {
            "S1": ((ex.real ** 2 + ex.imag ** 2) - (ey.real ** 2 + ey.imag ** 2)) / safe,
            "S2": 2.0 * cross.real / safe,
            "S3": 2.0 * cross.imag / safe,
        }
        self._stokes_done = True

    def _flux3(self):
        """Re/Im of psi* grad psi embedded as (x, y, z) component arrays."""
        self._base()
        fx = self.flux["x"]
        fz = self.flux["z"]
        fy = self.flux.get("y", np.zeros_like(fx))
        return fx, fy, fz

    def layer(self, name):
        if name == "amp":
            self._base()
            return _scalar_rows(self.amp)
        if name == "phase":
            self._base()
            return _scalar_rows(np.angle(self.psi), self.sing)
        if name in ("re_px", "re_pz", "im_px", "im_pz"):
            self._base()
            table = self.re_p if name.startswith("re") else self.im_p
            return _scalar_rows(table[name[-1]], self.sing)
        if name in ("S1", "S2", "S3"):
            self._stokes()
            return _scalar_rows(self.S[name], self.sing_stokes)
        if name == "W":
            self._base()
            return _scalar_rows(0.5 * self.amp * self.amp)
        if name == "P_O":
            fx, fy, fz = self._flux3()
            scale = 1.0 / (2.0 * self.spec.wave.omega)
            return _vector_rows(fx.imag * scale, fy.imag * scale, fz.imag * scale)
        if name == "P_S":
            fx, fy, _ = self._flux3()
            scale = self.pol.s3 / (4.0 * self.spec.wave.omega)
            gix = 2.0 * fx.real
            giy = 2.0 * fy.real
            return _vector_rows(giy * scale, -gix * scale, np.zeros_like(gix))
        if name == "label":
            amap = classify_anomalies(self.spec, self.grid, self.bound_model,
                                      superluminal_guard=self.guard)
            return amap.label_names().tolist()
        raise ParameterError(f"unknown layer {name!r}; expected one of {ALL_LAYERS}")


def _load_field(args) -> FieldSpec:
    if getattr(args, "field_json", None):
        text = args.field_json
    else:
        try:
            with open(args.field, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParameterError(f"cannot read field spec: {exc}")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"field spec is not valid JSON: {exc}")
    return field_from_dict(obj)


def _parse_fixed(text: str) -> tuple:
    if not text:
        return ()
    pairs = []
    for clause in text.split(","):
        name, sep, value = clause.partition("=")
        if not sep:
            raise ParameterError(f"fixed coordinate must be name=value, got {clause!r}")
        try:
            pairs.append((name.strip(), float(value)))
        except ValueError:
            raise ParameterError(f"malformed fixed coordinate {clause!r}")
    return tuple(pairs)


def _provenance(spec, args) -> dict:
    return {
        "field": spec.to_dict(),
        "tool_version": __version__,
        "command": " ".join(args.argv),
    }


def _write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, sort_keys=True, separators=(",", ":"), allow_nan=False)
        fh.write("\n")


def _grid_of(args) -> GridSpec:
    return GridSpec.from_string(args.grid, _parse_fixed(args.fixed))


def _cmd_fieldmap(args) -> int:
    spec = _load_field(args)
    grid = _grid_of(args)
    names = [s for s in args.layers.split(",") if s]
    if not names:
        raise ParameterError("at least one layer is required")
    builder = _LayerBuilder(spec, grid, delta_x=args.delta_x_mm, pol=_POLS[args.pol](),
                            bound_model=args.bound, guard=args.superluminal_guard)
    layers = {name: builder.layer(name) for name in names}
    result = GridResult(grid=grid, layers=layers, provenance=_provenance(spec, args))
    _write_json(args.out, result.to_dict())
    return 0


def _cmd_stokes(args) -> int:
    """Exact calcite readout next to its first-order prediction and the truth."""
    spec = _load_field(args)
    grid = _grid_of(args)
    dx = args.delta_x_mm
    if dx == 0.0:
        raise ParameterError("--delta-x-mm must be nonzero for the stokes readout")
    builder = _LayerBuilder(spec, grid, delta_x=dx, pol=_POLS[args.pol]())
    builder._stokes()

    s1p_raw = dx * builder.im_p["x"]
    s3p_raw = dx * builder.re_p["x"]
    norm = np.sqrt(1.0 + s1p_raw ** 2 + s3p_raw ** 2)

    layers = {
        "S1": _scalar_rows(builder.S["S1"], builder.sing_stokes),
        "S2": _scalar_rows(builder.S["S2"], builder.sing_stokes),
        "S3": _scalar_rows(builder.S["S3"], builder.sing_stokes),
        "S1_pred": _scalar_rows(s1p_raw / norm, builder.sing),
        "S2_pred": _scalar_rows(1.0 / norm, builder.sing),
        "S3_pred": _scalar_rows(s3p_raw / norm, builder.sing),
        "re_px_readout": _scalar_rows(builder.S["S3"] / dx, builder.sing_stokes),
        "im_px_readout": _scalar_rows(builder.S["S1"] / dx, builder.sing_stokes),
        "re_px": _scalar_rows(builder.re_p["x"], builder.sing),
        "im_px": _scalar_rows(builder.im_p["x"], builder.sing),
    }
    result = GridResult(grid=grid, layers=layers, provenance=_provenance(spec, args))
    out = result.to_dict()
    out["delta_x_mm"] = dx
    _write_json(args.out, out)
    return 0


def _cmd_anomaly(args) -> int:
    spec = _load_field(args)
    grid = _grid_of(args)
    vortices = detect_vortices(spec, grid)
    amap = classify_anomalies(spec, grid, args.bound, superluminal_guard=args.superluminal_guard)
    out = {
        "grid": grid.to_dict(),
        "bound_model": args.bound,
        "guard": args.superluminal_guard,
        "vortices": [
            {"position": list(v.position), "charge": v.charge, "residual": v.residual}
            for v in vortices
        ],
        "counts": amap.counts,
        "fast_cells": int(np.sum(amap.fast)),
        "provenance": _provenance(spec, args),
    }
    if args.with_labels:
        out["labels"] = amap.label_names().tolist()
    _write_json(args.out, out)
    return 0


def _read_seeds_file(path: str) -> tuple:
    seeds = []
    try:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    seeds.append(tuple(float(tok) for tok in line.split(",")))
                except ValueError:
                    raise ParameterError(f"malformed seed row {line!r} in {path}")
    except OSError as exc:
        raise ParameterError(f"cannot read seeds: {exc}")
    return tuple(seeds)


def _resolve_seeds(args, spec) -> tuple:
    if args.seeds:
        return _read_seeds_file(args.seeds)
    if args.seeds_inline:
        seeds = []
        for clause in args.seeds_inline.split(";"):
            clause = clause.strip()
            if not clause:
                continue
            try:
                seeds.append(tuple(float(tok) for tok in clause.split(",")))
            except ValueError:
                raise ParameterError(f"malformed inline seed {clause!r}")
        return tuple(seeds)
    if isinstance(spec, GaussianPairSpec):
        # presentation default: a uniform fan spanning both input lobes
        # on the waist plane.
        half = spec.a_mm + spec.w0_mm
        return tuple((x, 0.0) for x in np.linspace(-half, half, 17))
    raise ParameterError("this field family has no default seeds; pass --seeds or --seeds-inline")


def _resolve_domain(args, spec, seeds, paraxial: bool) -> tuple:
    names = frame_names(spec.ndim)
    overrides = {}
    if args.domain:
        for clause in args.domain.split(","):
            parts = clause.split(":")
            if len(parts) != 3:
                raise ParameterError(f"domain clause must be name:lo:hi, got {clause!r}")
            name, lo, hi = parts
            if name not in names:
                raise ParameterError(f"domain coordinate {name!r} not in frame {names}")
            try:
                overrides[name] = (float(lo), float(hi))
            except ValueError:
                raise ParameterError(f"malformed domain clause {clause!r}")
    if not paraxial and set(overrides) != set(names):
        raise ParameterError(
            "arc-length tracing needs an explicit --domain covering every coordinate")
    domain = []
    arr = np.asarray(seeds, dtype=float)
    for i, name in enumerate(names):
        if name in overrides:
            domain.append(overrides[name])
            continue
        lo, hi = float(arr[:, i].min()), float(arr[:, i].max())
        if paraxial and name == names[-1]:
            domain.append((lo, hi + args.z_end))
        else:
            pad = max(1.0, hi - lo)
            domain.append((lo - pad, hi + pad))
    return tuple(domain)


def _row3(vec, ndim: int) -> tuple:
    if ndim == 2:
        return (float(vec[0]), 0.0, float(vec[1]))
    return (float(vec[0]), float(vec[1]), float(vec[2]))


def _write_trace_csv(path: str, trajectories) -> None:
    header = "traj_id,s_or_z,x,y,z,re_px,re_py,re_pz,im_px,im_py,im_pz"
    lines = [header]
    for tid, traj in enumerate(trajectories):
        ndim = traj.points.shape[1] if traj.points.size else 0
        for param, point, momentum in zip(traj.params, traj.points, traj.momenta):
            x, y, z = _row3(point, ndim)
            re3 = _row3(momentum.real, ndim)
            im3 = _row3(momentum.imag, ndim)
            cells = [str(tid), repr(float(param)), repr(x), repr(y), repr(z)]
            cells += [repr(v) for v in re3] + [repr(v) for v in im3]
            lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _cmd_trace(args) -> int:
    spec = _load_field(args)
    if args.mode == "3d":
        if spec.ndim != 3:
            raise ParameterError("--mode 3d needs a 3D field (bessel or a 3D plane wave)")
        parameterization = PARAXIAL
    else:
        if spec.ndim != 2:
            raise ParameterError(f"--mode {args.mode} applies to planar fields")
        parameterization = PARAXIAL if args.mode == "paraxial" else ARC_LENGTH
    paraxial = parameterization == PARAXIAL
    seeds = _resolve_seeds(args, spec)
    if not seeds:
        raise ParameterError("no seeds given")
    domain = _resolve_domain(args, spec, seeds, paraxial)
    if args.step is not None:
        step = args.step
    elif paraxial:
        z_lo, z_hi = domain[-1]
        step = (z_hi - z_lo) / 1000.0
    else:
        step = spec.wave.lambda_mm / 20.0
    cfg = TraceConfig(seeds=seeds, parameterization=parameterization, step=step,
                      max_steps=args.max_steps, domain=domain, vortex_guard=args.guard)
    trajectories = trace_streamline(spec, cfg, args.which)
    _write_trace_csv(args.out, trajectories)
    for tid, traj in enumerate(trajectories):
        print(f"trajectory {tid}: {len(traj.params)} points, {traj.termination}")
    return 0


def _cmd_force(args) -> int:
    spec = _load_field(args)
    grid = _grid_of(args)
    try:
        re_chi, im_chi = (float(tok) for tok in args.chi.split(","))
    except ValueError:
        raise ParameterError(f"--chi must be 're,im', got {args.chi!r}")
    if im_chi < 0.0:
        warnings.warn("Im(chi) < 0 describes gain, not a passive particle", stacklevel=2)
    builder = _LayerBuilder(spec, grid)
    fx, fy, fz = builder._flux3()
    w = 0.5 * builder.amp * builder.amp

    if args.normalized:
        mask = builder.sing
        grad_comps = [-re_chi * builder.im_p[n] for n in builder.names]
        scat_comps = [im_chi * builder.re_p[n] for n in builder.names]
        if spec.ndim == 2:
            zero = np.zeros_like(grad_comps[0])
            grad_comps = [grad_comps[0], zero, grad_comps[1]]
            scat_comps = [scat_comps[0], zero, scat_comps[1]]
    else:
        mask = None
        grad_comps = [0.5 * re_chi * f.real for f in (fx, fy, fz)]
        scat_comps = [0.5 * im_chi * f.imag for f in (fx, fy, fz)]

    layers = {
        "F_grad": _vector_rows(*grad_comps, mask),
        "F_scat": _vector_rows(*scat_comps, mask),
        "W": _scalar_rows(w),
    }
    result = GridResult(grid=grid, layers=layers, provenance=_provenance(spec, args))
    out = result.to_dict()
    out["chi"] = [re_chi, im_chi]
    out["normalized"] = bool(args.normalized)
    _write_json(args.out, out)
    return 0


_COMPONENTS = {"x": 0, "y": 1, "z": 2}


def _cmd_render(args) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParameterError(f"cannot read grid result: {exc}")
    except json.JSONDecodeError as exc:
        raise ParameterError(f"grid result is not valid JSON: {exc}")
    layers = obj.get("layers")
    if not isinstance(layers, dict) or args.layer not in layers:
        raise ParameterError(f"no layer {args.layer!r} in {args.input}")
    rows = layers[args.layer]

    height = len(rows)
    width = len(rows[0]) if height else 0
    if height < 1 or width < 1:
        raise ParameterError(f"layer {args.layer!r} is empty")
    values = np.zeros((height, width))
    mask = np.zeros((height, width), dtype=bool)
    for j, row in enumerate(rows):
        if len(row) != width:
            raise ParameterError(f"layer {args.layer!r} rows have inconsistent lengths")
        for i, cell in enumerate(row):
            if cell == "singular":
                mask[j, i] = True
            elif isinstance(cell, list):
                if args.component is None:
                    raise ParameterError(
                        f"layer {args.layer!r} is a vector layer; pass --component x|y|z")
                values[j, i] = float(cell[_COMPONENTS[args.component]])
            elif isinstance(cell, (int, float)) and not isinstance(cell, bool):
                values[j, i] = float(cell)
            else:
                raise ParameterError(
                    f"layer {args.layer!r} is not numeric (cell {cell!r}); "
                    "categorical layers cannot be rendered")

    live = values[~mask]
    pixels = np.zeros((height, width), dtype=np.uint8)
    if live.size:
        vmin = float(live.min())
        vmax = float(live.max())
        if vmax == vmin:
            pixels[~mask] = 128
        else:
            scaled = np.rint((values - vmin) / (vmax - vmin) * 255.0)
            pixels = np.clip(scaled, 0, 255).astype(np.uint8)
            pixels[mask] = 0
    # Row 0 of the data is the lowest second-axis coordinate; PGM viewers
    # draw row 0 at the top, so maps appear flipped vs. plot conventions.
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    with open(args.out, "wb") as fh:
        fh.write(header + pixels.tobytes())
    return 0


def _add_field_flags(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--field", help="path to a field-spec JSON file")
    group.add_argument("--field-json", help="inline field-spec JSON text")


def _add_grid_flags(sub):
    sub.add_argument("--grid", required=True,
                     help="two axes as name:lo:hi:count,name:lo:hi:count (mm)")
    sub.add_argument("--fixed", default="",
                     help="off-axis coordinates as name=value[,name=value]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonflow",
        description="Deterministic exporter of local-momentum field maps and traces.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("fieldmap", help="sample named observable layers on a grid")
    _add_field_flags(p)
    _add_grid_flags(p)
    p.add_argument("--layers", default="amp",
                   help=f"comma list from {','.join(ALL_LAYERS)}")
    p.add_argument("--delta-x-mm", type=float, default=1e-4,
                   help="calcite pointer shift used by the S1/S2/S3 layers")
    p.add_argument("--pol", choices=sorted(_POLS), default="diag",
                   help="input polarization for Stokes and spin-current layers")
    p.add_argument("--bound", choices=("uniform", "piecewise"), default="uniform",
                   help="spectrum bound model for the label layer")
    p.add_argument("--superluminal-guard", type=float, default=0.0,
                   help="relative margin above the bound before labeling superluminal")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_fieldmap)

    p = subs.add_parser("stokes", help="calcite weak-measurement readout maps")
    _add_field_flags(p)
    _add_grid_flags(p)
    p.add_argument("--delta-x-mm", type=float, default=1e-4)
    p.add_argument("--pol", choices=sorted(_POLS), default="diag")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_stokes)

    p = subs.add_parser("trace", help="integrate momentum streamlines to CSV")
    _add_field_flags(p)
    p.add_argument("--seeds", help="CSV file of seed positions, one per row")
    p.add_argument("--seeds-inline", help="seeds as x,z;x,z or x,y,z;x,y,z")
    p.add_argument("--mode", choices=("paraxial", "arc", "3d"), default="paraxial")
    p.add_argument("--which", choices=("re", "im"), default="re")
    p.add_argument("--domain", default="",
                   help="bounds as name:lo:hi[,name:lo:hi]; defaults derived from seeds")
    p.add_argument("--z-end", type=float, default=10.0,
                   help="default trace length past the last seed (paraxial modes)")
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--max-steps", type=int, default=10000)
    p.add_argument("--guard", type=float, default=100.0,
                   help="vortex guard: step halving beyond |p| > guard*k")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_trace)

    p = subs.add_parser("anomaly", help="vortices plus backflow/superluminal labels")
    _add_field_flags(p)
    _add_grid_flags(p)
    p.add_argument("--bound", choices=("uniform", "piecewise"), default="uniform")
    p.add_argument("--superluminal-guard", type=float, default=0.0)
    p.add_argument("--with-labels", action="store_true",
                   help="include the per-cell label grid in the JSON")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_anomaly)

    p = subs.add_parser("force", help="dipole gradient/scattering force maps")
    _add_field_flags(p)
    _add_grid_flags(p)
    p.add_argument("--chi", default="1e-3,1e-4",
                   help="complex polarizability as re,im")
    p.add_argument("--normalized", action="store_true",
                   help="emit F/W (momentum units) instead of raw forces")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_force)

    p = subs.add_parser("render", help="write one scalar layer as a binary PGM")
    p.add_argument("--in", dest="input", required=True,
                   help="grid-result JSON produced by fieldmap/stokes/force")
    p.add_argument("--layer", required=True)
    p.add_argument("--component", choices=sorted(_COMPONENTS), default=None,
                   help="component selector for vector layers")
    p.add_argument("--palette", choices=("gray",), default="gray")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_render)

    return parser


def run(argv) -> int:
    """Parse argv (without the program name) and execute one subcommand."""
    argv = list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    args.argv = argv
    try:
        return args.handler(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))
