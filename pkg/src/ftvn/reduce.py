"""The reduction engine.

Optimizing L(f, Phi) over a spectral set E = lam^-1(Q) in V is equivalent to
optimizing L(f-image, phi) over lam(E) in W, provided L is strictly increasing
in its first argument.  This module builds the W-side problem, dispatches it
to an appropriate solver (exhaustive scan, dense simplex LP, Dykstra
projection, projected multistart descent, grid scan), lifts the W-side
optimizer back to V through the instance's A3 witness, and certifies the lift
by a commutation check:

* linear objective:   sup attains commuting with c, inf with -c;
* distance objective: the directions swap (inf with c, sup with -c);
* max-affine sup:     the optimizer commutes with an active piece.

Suprema that a heuristic or grid solver cannot certify as attained are marked
``attained=False`` rather than silently collapsed to maxima.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from scipy.optimize import minimize

from .core import (DEFAULT_TOL, CommutationCert, FtvnInstance, WitnessError,
                   as_vec, commute_check, lambda_tilde)
from .solvers import (dykstra_project, ordered_polyhedron_projectors,
                      projected_descent, simplex_weight_grid, solve_lp)
from .spectral_sets import (Combiner, FiniteSet, GridOracle, OrbitOf,
                            OrderedPolyhedron, SpectralFunctionSpec,
                            SpectralSetSpec, SUM, ZERO_FN, image_candidates,
                            membership_w, probe_monotone)


@dataclass(frozen=True)
class LinearObjective:
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "c", np.asarray(as_vec(self.c), dtype=float))


@dataclass(frozen=True)
class DistanceObjective:
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "c", np.asarray(as_vec(self.c), dtype=float))


@dataclass(frozen=True)
class MaxAffineObjective:
    """h(x) = max_i <c_i, x> + alpha_i (finitely many affine pieces)."""

    pieces: tuple  # of (c ndarray, alpha float)

    def __post_init__(self):
        ps = tuple((np.asarray(as_vec(c), dtype=float), float(a)) for c, a in self.pieces)
        object.__setattr__(self, "pieces", ps)


Objective = Union[LinearObjective, DistanceObjective, MaxAffineObjective]


@dataclass(frozen=True)
class SolveReport:
    sense: str
    optimal_value: float
    optimizer_w: Optional[np.ndarray]
    optimizer_v: Optional[np.ndarray]
    commutation: Optional[CommutationCert]
    commutes_with: Optional[str]      # "c", "-c", or "active piece"
    attained: bool
    infeasible: bool
    reduction_gap: float
    solver_trace: dict


def _eval_objective_v(inst: FtvnInstance, objective: Objective, x: np.ndarray) -> float:
    if isinstance(objective, LinearObjective):
        return inst.inner_v(objective.c, x)
    if isinstance(objective, DistanceObjective):
        return inst.norm_v(objective.c - x)
    return max(inst.inner_v(c, x) + a for c, a in objective.pieces)


def _infeasible_report(sense: str, trace: dict) -> SolveReport:
    value = -math.inf if sense == "max" else math.inf
    return SolveReport(sense=sense, optimal_value=value, optimizer_w=None,
                       optimizer_v=None, commutation=None, commutes_with=None,
                       attained=False, infeasible=True, reduction_gap=math.nan,
                       solver_trace=trace)


class _WSide:
    """The W-side scalar t(q), its lift rule, and the commutation direction."""

    def __init__(self, inst: FtvnInstance, objective: Objective, sense: str,
                 tol: float, seed: int):
        self.inst = inst
        self.objective = objective
        self.sense = sense
        self.tol = tol
        self.seed = seed
        if isinstance(objective, LinearObjective):
            c = objective.c
            self.w_vec = inst.lam(c) if sense == "max" else lambda_tilde(inst, c)
            self.t = lambda q: self.inst.inner_w(self.w_vec, q)
            self.lift_dir = c if sense == "max" else -c
            self.commutes_with = "c" if sense == "max" else "-c"
        elif isinstance(objective, DistanceObjective):
            c = objective.c
            self.w_vec = lambda_tilde(inst, c) if sense == "max" else inst.lam(c)
            self.t = lambda q: self.inst.norm_w(self.w_vec - q)
            self.lift_dir = -c if sense == "max" else c
            self.commutes_with = "-c" if sense == "max" else "c"
        else:
            self.pieces_w = [(inst.lam(c), a, c) for c, a in objective.pieces]
            if sense == "max":
                self.t = lambda q: max(self.inst.inner_w(wc, q) + a
                                       for wc, a, _ in self.pieces_w)
                self.commutes_with = "active piece"
            else:
                self.t = self._h_lower_exact
                self.commutes_with = None
            self.lift_dir = None

    # -- max-affine infimum support -----------------------------------------

    def _h_fn(self, x: np.ndarray) -> float:
        return max(self.inst.inner_v(c, x) + a for c, a in self.objective.pieces)

    def _h_lower_exact(self, q: np.ndarray) -> float:
        value, _, _ = orbit_min(self.inst, self._h_fn, q, seed=self.seed)
        return value

    # -- lifting -------------------------------------------------------------

    def lift(self, q: np.ndarray) -> tuple[Optional[np.ndarray], Optional[CommutationCert]]:
        inst = self.inst
        if isinstance(self.objective, MaxAffineObjective):
            if self.sense == "max":
                vals = [inst.inner_w(wc, q) + a for wc, a, _ in self.pieces_w]
                i = int(np.argmax(vals))
                c_active = self.pieces_w[i][2]
                x = inst.a3_witness(c_active, q)
                return x, commute_check(inst, x, c_active, self.tol)
            # infimum: the orbit argmin is itself the lifted point
            value, x, _ = orbit_min(inst, self._h_fn, q, seed=self.seed)
            return x, None
        x = inst.a3_witness(self.lift_dir, q)
        return x, commute_check(inst, x, self.lift_dir, self.tol)


def orbit_min(inst: FtvnInstance, h: Callable[[np.ndarray], float], q,
              seed: int = 0, n_starts: int = 8, budget: int = 400) -> tuple[float, np.ndarray, bool]:
    """min h over the orbit {x : lam(x) = q}.

    Exact by permutation enumeration on the coordinate instance (dimension
    <= 8); elsewhere a penalized multistart descent whose result is flagged
    heuristic.  Returns (value, argmin, exact_flag).
    """
    q = np.asarray(q, dtype=float)
    if inst.family == "rn" and inst.dim_v <= 8:
        best_v = math.inf
        best_x = None
        for perm in set(itertools.permutations(q.tolist())):
            x = np.array(perm)
            v = h(x)
            if v < best_v:
                best_v = v
                best_x = x
        return best_v, best_x, True
    rng = np.random.default_rng(seed)
    if inst.sample_orbit is not None:
        starts = list(inst.sample_orbit(q, rng, n_starts))
    else:
        starts = [rng.standard_normal(inst.dim_v) for _ in range(n_starts)]
    scale = 1.0 + float(np.linalg.norm(q))
    proj = inst.project_element

    def objective(x):
        x = proj(x)
        feas = np.linalg.norm(inst.lam(x) - q)
        return h(x) + 1e6 * scale * feas ** 2

    best_v = math.inf
    best_x = None
    for s in starts:
        res = minimize(objective, s, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": budget})
        if res.fun < best_v:
            best_v = float(res.fun)
            best_x = proj(np.asarray(res.x, dtype=float))
    return h(best_x), best_x, False


def reduce_solve(inst: FtvnInstance, objective: Objective, set_spec: SpectralSetSpec,
                 phi: SpectralFunctionSpec = ZERO_FN, combiner: Combiner = SUM,
                 sense: str = "max", tol: float = DEFAULT_TOL,
                 seed: int = 0) -> SolveReport:
    """Solve sup/inf of L(f, phi o lam) over E = lam^-1(Q), certify by commutation."""
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    ws = _WSide(inst, objective, sense, tol, seed)
    L = combiner.fn

    def F(q: np.ndarray) -> float:
        return L(ws.t(q), phi(q))

    if isinstance(set_spec, (FiniteSet, OrbitOf, GridOracle)):
        cands = image_candidates(set_spec, inst, tol=max(tol, 1e-9))
        method = {"FiniteSet": "exhaustive", "OrbitOf": "orbit_closed_form",
                  "GridOracle": "grid_scan"}[type(set_spec).__name__]
        trace = {"method": method, "candidates": int(cands.shape[0])}
        if cands.shape[0] == 0:
            return _infeasible_report(sense, trace)
        t_vals = [ws.t(qq) for qq in cands]
        s_vals = [phi(qq) for qq in cands]
        f_vals = [L(t, s) if math.isfinite(t) and math.isfinite(s)
                  else (-math.inf if sense == "max" else math.inf)
                  for t, s in zip(t_vals, s_vals)]
        probe_monotone(combiner, min(t_vals), max(t_vals),
                       sorted(set(round(s, 12) for s in s_vals if math.isfinite(s)))[:5])
        i = int(np.argmax(f_vals)) if sense == "max" else int(np.argmin(f_vals))
        q_star = cands[i]
        value = f_vals[i]
        attained = not isinstance(set_spec, GridOracle)
        return _finish(inst, objective, ws, q_star, value, attained, trace, phi, L, sense)

    if isinstance(set_spec, OrderedPolyhedron):
        return _solve_polyhedron(inst, objective, set_spec, phi, combiner, sense,
                                 tol, seed, ws, F)
    raise TypeError(f"unsupported spectral set spec {type(set_spec).__name__}")


def _cone_rows(n: int) -> tuple[np.ndarray, np.ndarray]:
    # q_{i+1} - q_i <= 0 rows of the nonincreasing cone
    if n < 2:
        return np.zeros((0, n)), np.zeros(0)
    rows = np.zeros((n - 1, n))
    for i in range(n - 1):
        rows[i, i] = -1.0
        rows[i, i + 1] = 1.0
    return rows, np.zeros(n - 1)


def _polyhedron_matrices(spec: OrderedPolyhedron) -> tuple[np.ndarray, np.ndarray]:
    n = spec.dim
    a_rows = [np.asarray(a, dtype=float) for a, _ in spec.halfspaces]
    b_rows = [float(b) for _, b in spec.halfspaces]
    cone_a, cone_b = _cone_rows(n)
    a = np.vstack([np.array(a_rows), cone_a]) if a_rows else cone_a
    b = np.concatenate([np.array(b_rows), cone_b]) if b_rows else cone_b
    return a, b


def _solve_polyhedron(inst, objective, spec, phi, combiner, sense, tol, seed, ws, F):
    a_ub, b_ub = _polyhedron_matrices(spec)
    n = spec.dim
    feas = solve_lp(np.zeros(n), a_ub, b_ub)
    if feas.status == "infeasible":
        return _infeasible_report(sense, {"method": "lp_phase1", "iterations": feas.iterations})
    affine = phi.affine_parts(n)

    if (combiner.kind == "sum" and affine is not None
            and isinstance(objective, LinearObjective)):
        coeffs, const = affine
        lp = solve_lp(ws.w_vec + coeffs, a_ub, b_ub, maximize=(sense == "max"))
        trace = {"method": "lp_simplex", "iterations": lp.iterations}
        if lp.status == "unbounded":
            value = math.inf if sense == "max" else -math.inf
            return SolveReport(sense=sense, optimal_value=value, optimizer_w=None,
                               optimizer_v=None, commutation=None, commutes_with=None,
                               attained=False, infeasible=False, reduction_gap=math.nan,
                               solver_trace=trace)
        q_star = lp.x
        value = lp.value + const
        _probe_around(combiner, ws, phi, q_star, a_ub, b_ub)
        return _finish(inst, objective, ws, q_star, value, True, trace, phi,
                       combiner.fn, sense)

    if (combiner.kind == "sum" and affine is not None
            and isinstance(objective, MaxAffineObjective) and sense == "max"):
        coeffs, const = affine
        best = None
        total_it = 0
        for wc, alpha, _ in ws.pieces_w:
            lp = solve_lp(wc + coeffs, a_ub, b_ub, maximize=True)
            total_it += lp.iterations
            if lp.status == "unbounded":
                return SolveReport(sense=sense, optimal_value=math.inf, optimizer_w=None,
                                   optimizer_v=None, commutation=None, commutes_with=None,
                                   attained=False, infeasible=False, reduction_gap=math.nan,
                                   solver_trace={"method": "lp_per_piece", "iterations": total_it})
            cand = lp.value + alpha + const
            if best is None or cand > best[0]:
                best = (cand, lp.x)
        trace = {"method": "lp_per_piece", "iterations": total_it}
        _probe_around(combiner, ws, phi, best[1], a_ub, b_ub)
        return _finish(inst, objective, ws, best[1], best[0], True, trace, phi,
                       combiner.fn, sense)

    projectors = ordered_polyhedron_projectors(spec.halfspaces, n)

    if (combiner.kind == "sum" and phi.kind == "zero"
            and isinstance(objective, DistanceObjective) and sense == "min"):
        q_star, sweeps = dykstra_project(ws.w_vec, projectors)
        trace = {"method": "dykstra_projection", "sweeps": sweeps}
        value = ws.t(q_star)
        _probe_around(combiner, ws, phi, q_star, a_ub, b_ub)
        return _finish(inst, objective, ws, q_star, value, True, trace, phi,
                       combiner.fn, sense)

    # general path: projected multistart descent (heuristic; attainment unknown)
    rng = np.random.default_rng(seed)
    project = lambda q: dykstra_project(q, projectors)[0]
    anchor = project(np.zeros(n))
    spread = 1.0 + float(np.linalg.norm(anchor))
    starts = [anchor] + [anchor + spread * rng.standard_normal(n) for _ in range(31)]
    sign = -1.0 if sense == "max" else 1.0

    def F_signed(q):
        v = F(q)
        return sign * v if math.isfinite(v) else math.inf

    q_star, v_signed, iters = projected_descent(F_signed, project, starts)
    trace = {"method": "projected_descent", "iterations": iters, "starts": len(starts)}
    value = sign * v_signed
    _probe_around(combiner, ws, phi, q_star, a_ub, b_ub)
    return _finish(inst, objective, ws, q_star, value, False, trace, phi,
                   combiner.fn, sense)


def _probe_around(combiner, ws, phi, q_star, a_ub, b_ub):
    # monotonicity contract check on the t-range seen near the optimum
    t0 = ws.t(q_star)
    s0 = phi(q_star)
    span = 1.0 + abs(t0)
    s_vals = [s0] if math.isfinite(s0) else [0.0]
    probe_monotone(combiner, t0 - 0.5 * span, t0 + 0.5 * span, s_vals)


def _finish(inst, objective, ws, q_star, value, attained, trace, phi, L, sense) -> SolveReport:
    optimizer_v = None
    cert = None
    gap = math.nan
    try:
        optimizer_v, cert = ws.lift(q_star)
    except WitnessError:
        if inst.witness_is_exact:
            raise
        optimizer_v, cert = None, None
    if optimizer_v is not None:
        t_v = _eval_objective_v(inst, objective, optimizer_v)
        s_v = phi(inst.lam(optimizer_v))
        if math.isfinite(t_v) and math.isfinite(s_v) and math.isfinite(value):
            gap = abs(L(t_v, s_v) - value)
    return SolveReport(sense=sense, optimal_value=float(value),
                       optimizer_w=np.asarray(q_star, dtype=float),
                       optimizer_v=optimizer_v, commutation=cert,
                       commutes_with=ws.commutes_with if cert is not None else None,
                       attained=attained, infeasible=False,
                       reduction_gap=gap, solver_trace=trace)


# ---------------------------------------------------------------------------
# named entry points

def orbit_linear(inst: FtvnInstance, c, u, sense: str = "max",
                 tol: float = DEFAULT_TOL) -> SolveReport:
    """max/min of <c, x> over the orbit of u: the trace-inequality value, with
    the witness built on c's own decomposition."""
    cv = inst.check_element(c)
    uv = inst.check_element(u)
    return reduce_solve(inst, LinearObjective(cv), OrbitOf(uv), sense=sense, tol=tol)


def orbit_distance(inst: FtvnInstance, c, u, sense: str = "min",
                   tol: float = DEFAULT_TOL) -> SolveReport:
    cv = inst.check_element(c)
    uv = inst.check_element(u)
    return reduce_solve(inst, DistanceObjective(cv), OrbitOf(uv), sense=sense, tol=tol)


def reduce_solve_linear(inst, c, set_spec, phi=ZERO_FN, combiner=SUM,
                        sense="max", tol=DEFAULT_TOL, seed=0) -> SolveReport:
    return reduce_solve(inst, LinearObjective(as_vec(c)), set_spec, phi, combiner,
                        sense, tol, seed)


def reduce_solve_distance(inst, c, set_spec, phi=ZERO_FN, combiner=SUM,
                          sense="min", tol=DEFAULT_TOL, seed=0) -> SolveReport:
    return reduce_solve(inst, DistanceObjective(as_vec(c)), set_spec, phi, combiner,
                        sense, tol, seed)


# ---------------------------------------------------------------------------
# convex envelopes

def envelope_upper(inst: FtvnInstance, pieces, q) -> float:
    """h*(q) = max over the orbit of q of the max-affine h; exact by the
    trace inequality, independent of the representation of h."""
    q = as_vec(q)
    return max(inst.inner_w(inst.lam(as_vec(c)), q) + float(a) for c, a in pieces)


def envelope_lower_affine(inst: FtvnInstance, pieces, q) -> float:
    """h_*(q): the same supremum with each lam(c_i) replaced by its increasing
    counterpart.  Only a lower bound on the orbit minimum; can be strict."""
    q = as_vec(q)
    return max(inst.inner_w(lambda_tilde(inst, as_vec(c)), q) + float(a) for c, a in pieces)


def envelope_lower_exact(inst: FtvnInstance, h: Callable[[np.ndarray], float], q,
                         seed: int = 0) -> tuple[float, bool]:
    """h**(q) = min of h over the orbit of q; (value, exact flag)."""
    value, _, exact = orbit_min(inst, h, as_vec(q), seed=seed)
    return value, exact


# ---------------------------------------------------------------------------
# commutation principles

@dataclass(frozen=True)
class VIReport:
    membership_ok: bool
    vi_residual: float                 # min <G(a), x - a> over tested x in E
    worst_point: Optional[np.ndarray]
    cert: CommutationCert
    exact: bool                        # tested set was an exact enumeration
    consistent: bool                   # residual >= -tol on exact set => verdict


def _enumerate_E(inst: FtvnInstance, spec: SpectralSetSpec, rng,
                 n_orbit: int, tol: float) -> tuple[np.ndarray, bool]:
    if inst.family == "rn" and inst.dim_v <= 8 and isinstance(spec, (FiniteSet, OrbitOf)):
        qs = image_candidates(spec, inst, tol)
        pts = set()
        for q in qs:
            pts.update(itertools.permutations(q.tolist()))
        return np.array(sorted(pts)), True
    if isinstance(spec, OrderedPolyhedron):
        projectors = ordered_polyhedron_projectors(spec.halfspaces, inst.dim_w)
        anchor, _ = dykstra_project(np.zeros(inst.dim_w), projectors)
        qs = [anchor]
        for _ in range(15):
            z = anchor + (1.0 + np.linalg.norm(anchor)) * rng.standard_normal(inst.dim_w)
            qs.append(dykstra_project(z, projectors)[0])
    else:
        qs = list(image_candidates(spec, inst, tol))
    rows = []
    for q in qs:
        if inst.sample_orbit is not None:
            rows.append(inst.sample_orbit(np.asarray(q, float), rng, n_orbit))
        else:
            rows.append(np.atleast_2d(inst.a3_witness(inst.draw(rng), np.asarray(q, float))))
    return np.vstack(rows) if rows else np.zeros((0, inst.dim_v)), False


def vi_commutation_check(inst: FtvnInstance, G: Callable[[np.ndarray], np.ndarray],
                         set_spec: SpectralSetSpec, a, tol: float = DEFAULT_TOL,
                         seed: int = 0, n_orbit: int = 64) -> VIReport:
    """Is a a variational-inequality point of G over E, and does a commute
    with -G(a)?  On an exactly enumerable E the two must agree."""
    av = inst.check_element(a)
    la = inst.lam(av)
    member = membership_w(set_spec, inst, la, tol)
    if not member:
        raise ValueError("a does not belong to the spectral set (lam(a) not in Q)")
    g = np.asarray(G(av), dtype=float)
    rng = np.random.default_rng(seed)
    pts, exact = _enumerate_E(inst, set_spec, rng, n_orbit, tol)
    residual = math.inf
    worst = None
    for x in pts:
        val = inst.inner_v(g, x - av)
        if val < residual:
            residual = val
            worst = x
    cert = commute_check(inst, av, -g, tol)
    scale = 1.0 + inst.norm_v(g) * (1.0 + inst.norm_v(av))
    consistent = (not exact) or residual < -tol * scale or cert.verdict
    return VIReport(membership_ok=True, vi_residual=float(residual),
                    worst_point=worst, cert=cert, exact=exact, consistent=consistent)


@dataclass(frozen=True)
class LocalMinReport:
    gradient: np.ndarray
    cert: CommutationCert            # a against -h'(a)
    probe_min_delta: float           # min h((1-t)a + tx) - h(a) over probes
    n_probes: int


def local_min_commutation_check(inst: FtvnInstance, h: Callable[[np.ndarray], float],
                                set_spec: SpectralSetSpec, a,
                                fd_step: float = 1e-6, seed: int = 0,
                                n_probes: int = 16,
                                tol: float = DEFAULT_TOL) -> LocalMinReport:
    """Check the differentiable commutation principle at a candidate local
    minimizer: a must commute with minus its gradient.  Local minimality is
    probed along segments toward orbit points (evidence only)."""
    av = inst.check_element(a)
    step = fd_step * (1.0 + inst.norm_v(av))
    grad_coords = np.empty(inst.dim_v)
    for i in range(inst.dim_v):
        e = np.zeros(inst.dim_v)
        e[i] = step
        grad_coords[i] = (h(av + e) - h(av - e)) / (2.0 * step)
    grad = inst.riesz(grad_coords)
    cert = commute_check(inst, av, -grad, tol)
    probe_min = math.inf
    count = 0
    if inst.sample_orbit is not None:
        rng = np.random.default_rng(seed)
        pts = inst.sample_orbit(inst.lam(av), rng, n_probes)
        base = h(av)
        for x in pts:
            for t in (1e-3, 1e-2, 5e-2):
                probe_min = min(probe_min, h((1.0 - t) * av + t * x) - base)
                count += 1
    return LocalMinReport(gradient=grad, cert=cert,
                          probe_min_delta=probe_min if count else math.nan,
                          n_probes=count)


@dataclass(frozen=True)
class SubdiffReport:
    active_indices: tuple
    c_found: Optional[np.ndarray]
    cert: Optional[CommutationCert]
    n_tested: int


def subdiff_min_commutation_check(inst: FtvnInstance, pieces, set_spec, a,
                                  tol: float = DEFAULT_TOL,
                                  resolution: int = 32) -> SubdiffReport:
    """At a minimizer of a max-affine h over a convex spectral set, some
    subgradient c must have a commuting with -c.  Searches the simplex of
    active-piece combinations on a 1/resolution grid."""
    av = inst.check_element(a)
    ps = [(np.asarray(as_vec(c), dtype=float), float(alpha)) for c, alpha in pieces]
    vals = [inst.inner_v(c, av) + alpha for c, alpha in ps]
    h_a = max(vals)
    scale = 1.0 + abs(h_a)
    active = [i for i, v in enumerate(vals) if v >= h_a - tol * scale]
    if len(active) > 5:
        raise ValueError("too many active pieces for the grid search")
    tested = 0
    for w in simplex_weight_grid(len(active), resolution):
        c = np.sum([wi * ps[i][0] for wi, i in zip(w, active)], axis=0)
        cert = commute_check(inst, av, -c, tol)
        tested += 1
        if cert.verdict:
            return SubdiffReport(active_indices=tuple(active), c_found=c,
                                 cert=cert, n_tested=tested)
    return SubdiffReport(active_indices=tuple(active), c_found=None,
                         cert=None, n_tested=tested)


# ---------------------------------------------------------------------------
# Hausdorff distance and interval image

def hausdorff_distance(points_a: np.ndarray, points_b: np.ndarray) -> float:
    pa = np.atleast_2d(points_a)
    pb = np.atleast_2d(points_b)
    d = np.linalg.norm(pa[:, None, :] - pb[None, :, :], axis=2)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def hausdorff_spectral(inst: FtvnInstance, spec_e: FiniteSet, spec_f: FiniteSet,
                       tol: float = 1e-9) -> float:
    """Hausdorff distance between two finite spectral sets, computed entirely
    on the W side; equals the V-side distance for FTvN systems."""
    pe = image_candidates(spec_e, inst, tol)
    pf = image_candidates(spec_f, inst, tol)
    if pe.shape[0] == 0 or pf.shape[0] == 0:
        raise ValueError("empty spectral set has no Hausdorff distance")
    return hausdorff_distance(pe, pf)


@dataclass(frozen=True)
class IntervalImage:
    lo: float
    hi: float
    report_lo: SolveReport
    report_hi: SolveReport


_SIMPLE_FAMILIES = ("sym", "spin")


def interval_image(inst: FtvnInstance, c, q_spec: SpectralSetSpec,
                   tol: float = DEFAULT_TOL, seed: int = 0) -> IntervalImage:
    """The set {<c, x> : x in lam^-1(Q)} for compact permutation-invariant Q
    over a simple algebra: a closed interval with commuting endpoint witnesses."""
    if inst.family not in _SIMPLE_FAMILIES and not (inst.family == "rn" and inst.dim_w == 1):
        raise ValueError("interval image requires a simple algebra instance")
    cv = inst.check_element(c)
    lo = reduce_solve(inst, LinearObjective(cv), q_spec, sense="min", tol=tol, seed=seed)
    hi = reduce_solve(inst, LinearObjective(cv), q_spec, sense="max", tol=tol, seed=seed)
    return IntervalImage(lo=lo.optimal_value, hi=hi.optimal_value,
                         report_lo=lo, report_hi=hi)
