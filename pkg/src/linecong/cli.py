"""Command-line front end: JSON requests in, JSON reports and OBJ meshes out.

Exit codes: 0 success, 1 a check failed, 2 malformed input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from .affine_geometry import (ALPHA, DegenerateSurfaceError, GraphHypersurface, TransversalityError,
                              blaschke_field, blaschke_volume_defect, conormal, equiaffine_defect,
                              split_vector)
from .classify import classify_catastrophe, classify_map_germ, corank_at
from .congruence import (BlaschkeCongruence, EuclideanNormalCongruence, LineCongruence,
                         direct_jacobian_det, focal_sheets, jacobian_det_cubic, lagrangian_defect,
                         normality_defect, sheet_faces, singular_times)
from .jetcalc import JetPoly, ScaledJet, format_jet
from .roots import AllTimesSingular
from .support_family import (SupportFamily, hessian_identity_defect, morse_matrix)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2
DIRECTORS = ("blaschke", "euclidean-normal", "explicit")


class InputError(ValueError):
    """Malformed request or command-line argument."""


# ---------------------------------------------------------------- parsing

def parse_number(x, what: str):
    """Fraction from an int or a 'p/q' string; a float stays a float (marked inexact)."""
    if isinstance(x, bool):
        raise InputError(f"{what}: expected a number, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InputError(f"{what}: non-finite value")
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            try:
                v = float(x)
            except ValueError:
                raise InputError(f"{what}: cannot parse {x!r}") from None
            if not math.isfinite(v):
                raise InputError(f"{what}: non-finite value")
            return v
    raise InputError(f"{what}: expected a number, got {type(x).__name__}")


def _exact(x) -> Fraction:
    return Fraction(x).limit_denominator(10 ** 12) if isinstance(x, float) else x


def parse_polynomial(terms, what: str) -> tuple[JetPoly, bool]:
    """Monomial list [{"exp": [a, b, c], "coef": "p/q"}] -> (polynomial, has_float)."""
    if not isinstance(terms, list):
        raise InputError(f"{what}: expected a list of monomials")
    coeffs: dict = {}
    inexact = False
    for k, m in enumerate(terms):
        if not isinstance(m, dict) or "exp" not in m or "coef" not in m:
            raise InputError(f"{what}[{k}]: monomial needs 'exp' and 'coef'")
        e = m["exp"]
        if (not isinstance(e, list) or len(e) != 3
                or not all(isinstance(a, int) and not isinstance(a, bool) and a >= 0 for a in e)):
            raise InputError(f"{what}[{k}]: 'exp' must be three nonnegative integers")
        c = parse_number(m["coef"], f"{what}[{k}].coef")
        inexact |= isinstance(c, float)
        coeffs[tuple(e)] = coeffs.get(tuple(e), Fraction(0)) + _exact(c)
    deg = max((sum(e) for e in coeffs), default=0)
    return JetPoly(3, max(deg, 1), coeffs), inexact


def parse_point(text, what: str = "point") -> tuple:
    if isinstance(text, str):
        parts = [p for p in text.replace(" ", "").split(",")]
    elif isinstance(text, list):
        parts = text
    else:
        raise InputError(f"{what}: expected three coordinates")
    if len(parts) != 3:
        raise InputError(f"{what}: expected three coordinates, got {len(parts)}")
    return tuple(parse_number(p, what) for p in parts)


@dataclass
class Request:
    surface: JetPoly
    director: str
    explicit: tuple | None
    domain: tuple | None
    grid: tuple | None
    points: list
    jet_order: int
    tol: float
    inexact: bool
    digest: str

    def hypersurface(self) -> GraphHypersurface:
        return GraphHypersurface(self.surface)

    def congruence(self):
        M = self.hypersurface()
        if self.director == "blaschke":
            return BlaschkeCongruence(M)
        if self.director == "euclidean-normal":
            return EuclideanNormalCongruence(M)
        order = max([self.surface.degree(), 2] + [p.degree() for p in self.explicit])
        x = M.x_jets((0, 0, 0), order)
        return LineCongruence.from_polynomials(x, list(self.explicit), (0, 0, 0), order)


def parse_request(data) -> Request:
    if not isinstance(data, dict):
        raise InputError("request must be a JSON object")
    if "surface" not in data:
        raise InputError("request needs a 'surface' monomial list")
    h, inexact = parse_polynomial(data["surface"], "surface")
    director = data.get("director", "blaschke")
    explicit = None
    if isinstance(director, dict):
        if set(director) != {"explicit"}:
            raise InputError("director object must be {'explicit': [4 polynomials]}")
        polys = director["explicit"]
        if not isinstance(polys, list) or len(polys) != 4:
            raise InputError("explicit director needs four polynomials")
        parsed = [parse_polynomial(p, f"director.explicit[{i}]") for i, p in enumerate(polys)]
        explicit = tuple(p for p, _ in parsed)
        inexact |= any(f for _, f in parsed)
        director = "explicit"
    elif director not in DIRECTORS[:2]:
        raise InputError(f"director must be one of {DIRECTORS[:2]} or an explicit object")
    domain = data.get("domain")
    if domain is not None:
        if not isinstance(domain, list) or len(domain) != 3:
            raise InputError("domain must be three [min, max] pairs")
        box = []
        for k, iv in enumerate(domain):
            if not isinstance(iv, list) or len(iv) != 2:
                raise InputError(f"domain[{k}] must be [min, max]")
            lo, hi = (parse_number(v, f"domain[{k}]") for v in iv)
            if not lo < hi:
                raise InputError(f"domain[{k}]: min must be below max")
            box.append((lo, hi))
        domain = tuple(box)
    grid = data.get("grid")
    if grid is not None:
        grid = [grid] * 3 if isinstance(grid, int) and not isinstance(grid, bool) else grid
        if (not isinstance(grid, list) or len(grid) != 3
                or not all(isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in grid)):
            raise InputError("grid must be a positive integer or three of them")
        grid = tuple(grid)
    points = []
    for k, rec in enumerate(data.get("points") or []):
        if not isinstance(rec, dict) or "u" not in rec:
            raise InputError(f"points[{k}] needs 'u' (and optionally 't')")
        u = parse_point(rec["u"], f"points[{k}].u")
        t = parse_number(rec["t"], f"points[{k}].t") if rec.get("t") is not None else None
        points.append((u, t))
    jet_order = data.get("jet_order", 6)
    if not isinstance(jet_order, int) or isinstance(jet_order, bool) or jet_order < 1:
        raise InputError("jet_order must be a positive integer")
    tol = data.get("tol", 1e-9)
    if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not tol > 0:
        raise InputError("tol must be a positive number")
    digest = hashlib.sha256(json.dumps(data, sort_keys=True, separators=(",", ":"))
                            .encode()).hexdigest()
    return Request(h, director, explicit, domain, grid, points, jet_order, float(tol),
                   inexact, digest)


def load_request(path: str) -> Request:
    return parse_request(_request_data(argparse.Namespace(input=path, order=None, tol=None,
                                                           grid=None)))


# ---------------------------------------------------------------- output

def number(x):
    """Rationals as {"exact": "p/q", "float": x}; floats as {"float": x}."""
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        q = Fraction(x)
        return {"exact": f"{q.numerator}/{q.denominator}", "float": float(q)}
    return {"float": float(x)}


def numbers(xs):
    return [numbers(x) if isinstance(x, (list, tuple)) else number(x) for x in xs]


def _max_abs(xs) -> float:
    flat = np.asarray([float(v) for v in np.ravel(np.asarray(xs, dtype=object))], dtype=float)
    return float(np.max(np.abs(flat))) if flat.size else 0.0


def _emit(report: dict, json_path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _provenance(req: Request, order: int) -> dict:
    return {"input_sha256": req.digest, "tool_version": __version__, "jet_order": order}


def _sort_key(rec):
    u, t = rec
    return (tuple(float(c) for c in u), math.inf if isinstance(t, str) else float(t))


def exact_grid(box, resolution) -> list[tuple]:
    """Grid points as exact rationals when the box is rational (C order over the axes)."""
    axes = []
    for (lo, hi), n in zip(box, resolution):
        lo, hi = _exact(lo), _exact(hi)
        axes.append([(lo + hi) / 2] if n == 1 else [lo + (hi - lo) * Fraction(k, n - 1)
                                                     for k in range(n)])
    return [(a, b, c) for a in axes[0] for b in axes[1] for c in axes[2]]


# ---------------------------------------------------------------- records

def _time_value(t):
    return t if isinstance(t, (Fraction, int)) else float(t)


def _times_at(C, u):
    ts = singular_times(C, u)
    return None if isinstance(ts, AllTimesSingular) else ts


def _equiaffine_tau(M: GraphHypersurface, u):
    fr = blaschke_field(M, u, 1, ALPHA)
    data = equiaffine_defect([ScaledJet(f) for f in M.x_jets(u, 2)], fr)
    out = []
    for f in data.tau:
        out.append(Fraction(0) if f.jet.constant_term == 0 else f.constant_term)
    return out


def classify_record(req: Request, u, t) -> dict:
    """Everything the report holds for one (u, t)."""
    C = req.congruence()
    M = req.hypersurface()
    tol = req.tol if req.inexact else None
    rec = {"u": numbers(u), "t": number(t), "flags": []}
    try:
        rec["corank"] = corank_at(C, u, t, tol=tol)
        label = classify_map_germ(C, u, t, order=req.jet_order, tol=tol)
    except (DegenerateSurfaceError, TransversalityError, ZeroDivisionError) as e:
        rec["flags"].append("degenerate")
        rec["error"] = str(e) or type(e).__name__
        return rec
    rec["label"] = label.name.value
    rec["contact_class"] = label.contact_class
    ver = label.diagnostics.get("versality")
    if isinstance(ver, dict):
        rec["versality"] = {k: ver[k] for k in ("codim", "rank_T", "rank_T_plus_v", "versal")}
    defects: dict = {}
    n = normality_defect(C, u)
    defects["normality"] = numbers(n)
    try:
        defects["volume"] = number(blaschke_volume_defect(M, u))
        defects["equiaffine"] = numbers(_equiaffine_tau(M, u))
    except DegenerateSurfaceError as e:
        rec["flags"].append("degenerate")
        rec["error"] = str(e)
        defects["volume"] = defects["equiaffine"] = None
    rec["defects"] = defects
    rec["morse_rank"] = None
    if req.director == "blaschke" and "degenerate" not in rec["flags"]:
        S = SupportFamily(M)
        d = hessian_identity_defect(S, u, t)
        defects["hessian_identity"] = numbers(d)
        p = S.criminant_point(u, t)
        _, rk = morse_matrix(S, u, p, max(req.tol, 1e-9))
        rec["morse_rank"] = rk
        cat = classify_catastrophe(S, u, p, order=req.jet_order, tol=tol)
        rec["catastrophe_label"] = cat.name.value
        rec["catastrophe_class"] = cat.contact_class
        if cat.name != label.name:
            rec["flags"].append("paths-disagree")
        for key in ("volume", "equiaffine", "hessian_identity"):
            vals = defects[key]
            mag = _max_abs([v["float"] for v in (vals if isinstance(vals, list) else [vals])
                            for v in (v if isinstance(v, list) else [v])])
            if mag > req.tol:
                rec["flags"].append(f"{key}-defect")
        if rk != 3:
            rec["flags"].append("morse-rank")
    else:
        defects["hessian_identity"] = None
    return rec


def _classify_task(args):
    data, u, t = args
    req = parse_request(data)
    return classify_record(req, u, t)


def _targets(req: Request, cli_point, cli_time) -> list:
    if cli_point is not None:
        pts = [(cli_point, cli_time)]
    elif req.points:
        pts = list(req.points)
    elif req.domain is not None and req.grid is not None:
        pts = [(u, None) for u in exact_grid(req.domain, req.grid)]
    else:
        pts = [((Fraction(0),) * 3, cli_time)]
    C = req.congruence()
    out = []
    for u, t in pts:
        if t is not None:
            out.append((u, t))
            continue
        try:
            ts = _times_at(C, u)
        except (DegenerateSurfaceError, TransversalityError) as e:
            out.append((u, str(e)))
            continue
        for s in sorted(set(ts or []), key=float):
            out.append((u, _time_value(s)))
    return sorted(out, key=_sort_key)


def cmd_classify(req: Request, args) -> tuple[dict, int]:
    if req.jet_order < 4:
        raise InputError("jet_order must be >= 4 for classification")
    targets = _targets(req, args.point, args.time)
    data = _request_data(args)
    tasks = [(data, u, t) for u, t in targets if not isinstance(t, str)]
    records = []
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as ex:
            records = list(ex.map(_classify_task, tasks))
    else:
        records = [_classify_task(x) for x in tasks]
    for u, t in targets:
        if isinstance(t, str):
            records.append({"u": numbers(u), "t": None, "flags": ["degenerate"], "error": t})
    records.sort(key=lambda r: (tuple(c["float"] for c in r["u"]),
                                math.inf if r["t"] is None else r["t"]["float"]))
    summary: dict = {}
    for r in records:
        key = r.get("label", "Degenerate")
        summary[key] = summary.get(key, 0) + 1
    report = {"command": "classify", "director": req.director, "records": records,
              "summary": summary, "singular_points": len(records),
              "provenance": _provenance(req, req.jet_order)}
    return report, EXIT_OK


def cmd_singular(req: Request, args) -> tuple[dict, int]:
    if args.point is not None:
        pts = [args.point]
    elif req.points:
        pts = sorted({u for u, _ in req.points}, key=lambda u: tuple(float(c) for c in u))
    elif req.domain is not None and req.grid is not None:
        pts = exact_grid(req.domain, req.grid)
    else:
        pts = [(Fraction(0),) * 3]
    C = req.congruence()
    out = []
    for u in pts:
        rec = {"u": numbers(u)}
        try:
            cubic = jacobian_det_cubic(C, u)
            ts = cubic.roots()
            rec["cubic_hat"] = numbers(cubic.hat)
            rec["all_singular"] = isinstance(ts, AllTimesSingular)
            rec["times"] = [] if rec["all_singular"] else numbers(ts)
        except (DegenerateSurfaceError, TransversalityError, ValueError) as e:
            rec["error"] = str(e)
        out.append(rec)
    return {"command": "singular", "director": req.director, "points": out,
            "provenance": _provenance(req, req.jet_order)}, EXIT_OK


def _jet_record(vec) -> dict:
    unit, jets = split_vector(vec)
    return {"unit": str(unit), "unit_float": float(unit),
            "components": [format_jet(f) for f in jets],
            "values": numbers([f.constant_term for f in jets])}


def cmd_blaschke(req: Request, args) -> tuple[dict, int]:
    M = req.hypersurface()
    order = args.order if args.order is not None else req.jet_order
    pts = [args.point] if args.point is not None else (
        sorted({u for u, _ in req.points}, key=lambda u: tuple(float(c) for c in u))
        or [(Fraction(0),) * 3])
    out = []
    for u in pts:
        rec = {"u": numbers(u)}
        try:
            rec["blaschke"] = _jet_record(blaschke_field(M, u, order))
            rec["conormal"] = _jet_record(conormal(M, u, order))
            rec["volume_defect"] = number(blaschke_volume_defect(M, u))
            rec["equiaffine_defect"] = numbers(_equiaffine_tau(M, u))
        except DegenerateSurfaceError as e:
            rec["error"] = str(e)
        out.append(rec)
    return {"command": "blaschke", "points": out, "provenance": _provenance(req, order)}, EXIT_OK


def write_obj(path: str, fs, sidecar_path: str) -> dict:
    """OBJ with four-coordinate vertices per sheet plus a JSON sheet index."""
    lines = ["# focal sheets of a line congruence in R^4; vertices carry x1 x2 x3 x4"]
    sheets = []
    offset = 0
    for k in range(3):
        idx, pts = fs.sheet(k)
        if len(idx) == 0:
            continue
        pos = {int(g): offset + i + 1 for i, g in enumerate(idx)}
        lines.append(f"o sheet_{k}")
        lines.extend("v " + " ".join(f"{c:.12g}" for c in p) for p in pts)
        faces = sheet_faces(fs, k)
        lines.extend("f " + " ".join(str(pos[q]) for q in quad) for quad in faces)
        sheets.append({"sheet": k, "vertex_offset": offset, "vertex_count": int(len(idx)),
                       "face_count": len(faces), "grid_indices": [int(i) for i in idx]})
        offset += len(idx)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    side = {"sheets": sheets, "vertex_count": offset,
            "discontinuities": [list(d) for d in fs.discontinuities],
            "all_singular_grid_indices": [int(i) for i in fs.all_singular],
            "grid_shape": list(fs.shape)}
    if offset == 0:
        side["note"] = "no real focal times"
    with open(sidecar_path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(side, indent=2, sort_keys=True) + "\n")
    return side


def cmd_focal(req: Request, args) -> tuple[dict, int]:
    if req.domain is None:
        raise InputError("focal needs a 'domain' box")
    grid = (args.grid,) * 3 if args.grid is not None else req.grid
    if grid is None:
        raise InputError("focal needs a grid ('grid' in the request or --grid)")
    fs = focal_sheets(req.congruence(), [(float(a), float(b)) for a, b in req.domain], grid,
                      req.tol)
    counts = [int(c) for c in fs.counts]
    report = {"command": "focal", "director": req.director, "grid_shape": list(fs.shape),
              "vertex_count": int(sum(c for c in counts if c > 0)),
              "root_counts": counts, "discontinuities": [list(d) for d in fs.discontinuities],
              "num_sheets": fs.num_sheets, "provenance": _provenance(req, req.jet_order)}
    if report["vertex_count"] == 0:
        report["note"] = "no real focal times"
    if args.export_obj:
        side_path = os.path.splitext(args.export_obj)[0] + ".json"
        write_obj(args.export_obj, fs, side_path)
        report["obj"] = os.path.basename(args.export_obj)
        report["sidecar"] = os.path.basename(side_path)
    return report, EXIT_OK


# ---------------------------------------------------------------- checks

def _check(name: str, ok: bool, value=None, informational: bool = False) -> dict:
    out = {"name": name, "passed": bool(ok)}
    if informational:
        out["informational"] = True
    if value is not None:
        out["value"] = value
    return out


def _check_points(req: Request, args) -> list:
    if args.point is not None:
        return [args.point]
    if req.points:
        return sorted({u for u, _ in req.points}, key=lambda u: tuple(float(c) for c in u))
    if args.grid is not None and req.domain is not None:
        return exact_grid(req.domain, req.grid)
    # the origin plus a generic rational point; a full grid needs --grid
    return [(Fraction(0),) * 3, (Fraction(1, 7), Fraction(-1, 11), Fraction(1, 13))]


def run_checks(req: Request, u, tol: float) -> list[dict]:
    M = req.hypersurface()
    C = req.congruence()
    res = []
    try:
        M.check_nondegenerate(u)
    except DegenerateSurfaceError as e:
        return [_check("nondegenerate", False, str(e))]
    res.append(_check("nondegenerate", True))

    # conormal: <nu, xi> = 1 and nu annihilates x_u
    xi = blaschke_field(M, u, 0)
    nu = conormal(M, u, 1)
    xj = M.x_jets(u, 1)
    pair = sum(float(a.constant_term) * float(b.constant_term) for a, b in zip(nu, xi))
    ann = [sum(float(n.constant_term) * float(x.partial(i).constant_term)
               for n, x in zip(nu, xj)) for i in range(3)]
    res.append(_check("conormal", abs(pair - 1) <= tol and _max_abs(ann) <= tol,
                      {"pairing": pair, "annihilation": ann}))

    tau = _equiaffine_tau(M, u)
    res.append(_check("equiaffine", _max_abs(tau) <= tol, numbers(tau)))
    vol = blaschke_volume_defect(M, u)
    res.append(_check("volume", abs(float(vol)) <= tol, number(vol)))

    S = SupportFamily(M)
    B = BlaschkeCongruence(M)
    times = _times_at(B, u) or []
    worst = 0.0
    ranks = []
    for t in sorted(set(times), key=float):
        worst = max(worst, _max_abs(hessian_identity_defect(S, u, _time_value(t))))
        ranks.append(morse_matrix(S, u, S.criminant_point(u, _time_value(t)), max(tol, 1e-9))[1])
    # a generic off-focal time as well
    t_extra = Fraction(1, 3)
    if t_extra not in times:
        worst = max(worst, _max_abs(hessian_identity_defect(S, u, t_extra)))
        ranks.append(morse_matrix(S, u, S.criminant_point(u, t_extra), max(tol, 1e-9))[1])
    res.append(_check("hessian_identity", worst <= tol, worst))
    res.append(_check("morse_rank", all(r == 3 for r in ranks), ranks))

    n = normality_defect(C, u)
    lag = lagrangian_defect(C, u)
    agree = _max_abs([float(a) + float(b) for a, b in zip(n, lag)]) <= tol
    res.append(_check("normality_lagrangian_agreement", agree,
                      {"normality": numbers(n), "lagrangian": numbers(lag)}))
    res.append(_check("normality", True, {"normal": _max_abs(n) <= tol}, informational=True))

    cubic = jacobian_det_cubic(C, u)
    worst = 0.0
    for t in (Fraction(-2), Fraction(-1, 3), Fraction(0), Fraction(1, 2), Fraction(3)):
        a = cubic(t)
        b = direct_jacobian_det(C, u, t)
        worst = max(worst, abs(float(a) - float(b)) / max(1.0, abs(float(b))))
    res.append(_check("cubic_vs_determinant", worst <= max(tol, 1e-10), worst))
    return res


def cmd_checks(req: Request, args) -> tuple[dict, int]:
    tol = max(req.tol, 1e-9)
    out = []
    ok = True
    for u in _check_points(req, args):
        checks = run_checks(req, u, tol)
        ok &= all(c["passed"] for c in checks)
        out.append({"u": numbers(u), "checks": checks})
    report = {"command": "checks", "director": req.director, "passed": ok, "points": out,
              "provenance": _provenance(req, req.jet_order)}
    return report, EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------- main

COMMANDS = {"classify": cmd_classify, "focal": cmd_focal, "singular": cmd_singular,
            "blaschke": cmd_blaschke, "checks": cmd_checks}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="linecong",
                                description="Focal sets and singularities of line congruences in R^4.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--input", required=True, help="request JSON file")
        s.add_argument("--point", help='parameter point "u1,u2,u3" (rationals as p/q)')
        s.add_argument("--time", help="time t on the line (rational p/q or decimal)")
        s.add_argument("--grid", type=int, help="grid resolution per axis (overrides the request)")
        s.add_argument("--order", type=int, help="jet order (overrides jet_order)")
        s.add_argument("--tol", type=float, help="tolerance (overrides tol)")
        s.add_argument("--json", help="also write the report to this path")
        s.add_argument("--export-obj", help="OBJ mesh path (focal)")
        s.add_argument("--jobs", type=int, default=1,
                       help="worker processes for grid scans (0 = all cores)")
    return p


def _request_data(args) -> dict:
    """The request file with command-line overrides applied."""
    try:
        with open(args.input, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {args.input}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{args.input}: invalid JSON ({e.msg} at line {e.lineno})") from None
    if not isinstance(data, dict):
        raise InputError("request must be a JSON object")
    if args.order is not None:
        data["jet_order"] = args.order
    if args.tol is not None:
        data["tol"] = args.tol
    if args.grid is not None:
        data["grid"] = args.grid
    return data


_VALUE_FLAGS = ("--point", "--time")


def _attach_values(argv: list[str]) -> list[str]:
    """Write "--time -1/2" as "--time=-1/2"; argparse reads "-1/2" as a flag otherwise."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_attach_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        if args.order is not None and args.order < 1:
            raise InputError("--order must be positive")
        if args.tol is not None and not args.tol > 0:
            raise InputError("--tol must be positive")
        if args.grid is not None and args.grid < 1:
            raise InputError("--grid must be positive")
        req = parse_request(_request_data(args))
        args.point = parse_point(args.point) if args.point is not None else None
        args.time = parse_number(args.time, "time") if args.time is not None else None
        if args.time is not None and args.point is None:
            args.point = (Fraction(0),) * 3
        report, code = COMMANDS[args.command](req, args)
    except InputError as e:
        _emit({"error": {"type": "InputError", "message": str(e)}}, None)
        return EXIT_INPUT
    except (DegenerateSurfaceError, TransversalityError) as e:
        _emit({"error": {"type": type(e).__name__, "message": str(e)}}, None)
        return EXIT_INPUT
    _emit(report, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
