"""JSON encoding of elements, problem files, and reports.

Every numeric value is emitted twice (decimal and hexfloat) so reports
round-trip bit-exactly.  ``canonical_dumps`` fixes key order; identical
inputs therefore give byte-identical reports.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .core import CommutationCert, AxiomReport, FtvnInstance, get_instance
from .eja import JordanAlgebra, sym_coords
from .nds import RectMatrixSpace
from .reduce import (DistanceObjective, LinearObjective, MaxAffineObjective,
                     SolveReport, VIReport)
from .spectral_sets import (Combiner, FiniteSet, GridOracle, OrbitOf,
                            OrderedPolyhedron, PRODUCT, SUM,
                            SpectralFunctionSpec, ZERO_FN, neg_logdet_fn,
                            table_fn)

SCHEMA = "ftvn/1"


def fnum(x) -> dict:
    x = float(x)
    if math.isfinite(x):
        return {"dec": x, "hex": x.hex()}
    return {"dec": repr(x), "hex": x.hex()}  # 'inf', '-inf', 'nan' as strings


def farr(arr) -> dict:
    vals = [float(v) for v in np.asarray(arr, dtype=float).ravel()]
    return {"dec": vals, "hex": [v.hex() for v in vals]}


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# elements

def element_from_json(inst: FtvnInstance, obj) -> np.ndarray:
    if isinstance(obj, (list, tuple)):
        return inst.check_element(np.asarray(obj, dtype=float))
    kind = obj["kind"]
    if kind == "rn":
        coords = np.asarray(obj["data"], dtype=float)
    elif kind == "sym":
        coords = sym_coords(np.asarray(obj["data"], dtype=float))
    elif kind == "spin":
        coords = np.concatenate([[float(obj["x0"])], np.asarray(obj["xbar"], dtype=float)])
    elif kind == "rect":
        coords = np.asarray(obj["data"], dtype=float).ravel()
    elif kind == "product":
        alg = inst.backend
        if not isinstance(alg, JordanAlgebra) or alg.kind != "product":
            raise ValueError("product element for a non-product instance")
        coords = np.concatenate([element_from_json(part.instance, part_obj)
                                 for part, part_obj in zip(alg_parts(alg), obj["parts"])])
    else:
        raise KeyError(f"unknown element kind {kind!r}")
    return inst.check_element(coords)


def alg_parts(alg: JordanAlgebra):
    # a product algebra's parts are recoverable from its name
    names = alg.name.removeprefix("product:").split("+")
    from .eja import algebra_from_name
    return [algebra_from_name(n) for n in names]


def element_to_json(inst: FtvnInstance, coords) -> dict:
    coords = np.asarray(coords, dtype=float)
    backend = inst.backend
    if isinstance(backend, JordanAlgebra):
        if backend.kind == "sym":
            n = int(round(math.sqrt(coords.size)))
            return {"kind": "sym", "n": n,
                    "data": coords.reshape(n, n).tolist()}
        if backend.kind == "spin":
            return {"kind": "spin", "x0": float(coords[0]), "xbar": coords[1:].tolist()}
        if backend.kind == "product":
            parts = []
            offset = 0
            for part in alg_parts(backend):
                parts.append(element_to_json(part.instance,
                                             coords[offset:offset + part.dim_v]))
                offset += part.dim_v
            return {"kind": "product", "parts": parts}
        return {"kind": "rn", "data": coords.tolist()}
    if isinstance(backend, RectMatrixSpace):
        return {"kind": "rect", "m": backend.m, "n": backend.n,
                "data": coords.reshape(backend.m, backend.n).tolist()}
    return {"kind": "rn", "data": coords.tolist()}


# ---------------------------------------------------------------------------
# problem pieces

def set_spec_from_json(obj) -> Any:
    kind = obj["kind"]
    if kind == "finite":
        return FiniteSet(points=np.asarray(obj["points"], dtype=float),
                         permutation_invariant=bool(obj.get("permutation_invariant", False)))
    if kind == "polyhedron":
        hs = tuple((np.asarray(h["normal"], dtype=float), float(h["offset"]))
                   for h in obj["halfspaces"])
        return OrderedPolyhedron(halfspaces=hs)
    if kind == "orbit":
        return obj  # resolved against the instance by problem_from_json
    if kind == "grid":
        member = obj["membership"]
        if member["kind"] == "ball":
            center = np.asarray(member["center"], dtype=float)
            radius = float(member["radius"])
            fn = lambda q: bool(np.linalg.norm(q - center) <= radius)
        elif member["kind"] == "halfspaces":
            hs = [(np.asarray(h["normal"], dtype=float), float(h["offset"]))
                  for h in member["halfspaces"]]
            fn = lambda q: all(float(np.dot(a, q)) <= b + 1e-12 for a, b in hs)
        else:
            raise KeyError(f"unknown grid membership {member['kind']!r}")
        return GridOracle(membership=fn, box=np.asarray(obj["box"], dtype=float),
                          resolution=int(obj["resolution"]))
    raise KeyError(f"unknown set kind {kind!r}")


def phi_from_json(obj) -> SpectralFunctionSpec:
    if obj is None:
        return ZERO_FN
    kind = obj["kind"]
    if kind == "zero":
        return ZERO_FN
    if kind == "neg_logdet":
        return neg_logdet_fn()
    if kind == "custom_table":
        return table_fn(np.asarray(obj["points"], dtype=float),
                        np.asarray(obj["values"], dtype=float))
    raise KeyError(f"unknown spectral_fn kind {kind!r}")


def combiner_from_json(name) -> Combiner:
    if name in (None, "sum"):
        return SUM
    if name == "product":
        return PRODUCT
    raise KeyError(f"unknown combiner {name!r}")


def objective_from_json(inst: FtvnInstance, obj):
    kind = obj["kind"]
    if kind == "linear":
        return LinearObjective(element_from_json(inst, obj["c"]))
    if kind == "distance":
        return DistanceObjective(element_from_json(inst, obj["c"]))
    if kind == "max_affine":
        pieces = tuple((element_from_json(inst, p["c"]), float(p.get("alpha", 0.0)))
                       for p in obj["pieces"])
        return MaxAffineObjective(pieces)
    raise KeyError(f"unknown objective kind {kind!r}")


def problem_from_json(obj: dict) -> dict:
    inst = get_instance(obj["instance"])
    spec = set_spec_from_json(obj["set"])
    if isinstance(spec, dict):  # orbit: needs the instance to resolve u
        spec = OrbitOf(element_from_json(inst, spec["u"]))
    return {
        "inst": inst,
        "objective": objective_from_json(inst, obj["objective"]),
        "phi": phi_from_json(obj.get("spectral_fn")),
        "combiner": combiner_from_json(obj.get("combiner")),
        "set_spec": spec,
        "sense": obj.get("sense", "max"),
        "tol": float(obj.get("tol", 1e-8)),
        "seed": int(obj.get("seed", 0)),
    }


# ---------------------------------------------------------------------------
# reports

def cert_json(cert: CommutationCert | None) -> Any:
    if cert is None:
        return None
    return {
        "residual_inner": fnum(cert.residual_inner),
        "residual_dist": fnum(cert.residual_dist),
        "residual_addnorm": fnum(cert.residual_addnorm),
        "residual_addvec": fnum(cert.residual_addvec),
        "verdict": bool(cert.verdict),
        "witness_present": cert.witness is not None,
    }


def solve_report_json(inst: FtvnInstance, report: SolveReport) -> dict:
    return {
        "sense": report.sense,
        "optimal_value": fnum(report.optimal_value),
        "optimizer_w": None if report.optimizer_w is None else farr(report.optimizer_w),
        "optimizer_v": None if report.optimizer_v is None
                       else element_to_json(inst, report.optimizer_v),
        "commutation": cert_json(report.commutation),
        "commutes_with": report.commutes_with,
        "attained": report.attained,
        "infeasible": report.infeasible,
        "reduction_gap": fnum(report.reduction_gap),
        "solver_trace": report.solver_trace,
    }


def axiom_report_json(report: AxiomReport) -> dict:
    out = {
        "instance": report.instance,
        "seed": report.seed,
        "n_samples": report.n_samples,
        "tol": fnum(report.tol),
        "a1_max": fnum(report.a1_max),
        "a2_violation": fnum(report.a2_violation),
        "a2_min_gap": fnum(report.a2_min_gap),
        "homogeneity_max": fnum(report.homogeneity_max),
        "sandwich_inner_violation": fnum(report.sandwich_inner_violation),
        "sandwich_dist_violation": fnum(report.sandwich_dist_violation),
        "a3_max_lambda_residual": fnum(report.a3_max_lambda_residual),
        "a3_max_inner_residual": fnum(report.a3_max_inner_residual),
        "a3_worst_gap": fnum(report.a3_worst_gap),
        "a3_failures": report.a3_failures,
        "commute_fraction": fnum(report.commute_fraction),
        "passed": report.passed,
        "notes": list(report.notes),
    }
    if report.a3_worst_pair is not None:
        c, q = report.a3_worst_pair
        out["a3_worst_pair"] = {"c": farr(c), "q": farr(q)}
    return out


def vi_report_json(report: VIReport) -> dict:
    return {
        "membership_ok": report.membership_ok,
        "vi_residual": fnum(report.vi_residual),
        "worst_point": None if report.worst_point is None else farr(report.worst_point),
        "commutation": cert_json(report.cert),
        "exact": report.exact,
        "consistent": report.consistent,
    }
