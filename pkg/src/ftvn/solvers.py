"""Small dense solvers used by the reduction engine.

All of these operate on the W-side (low-dimensional sorted-eigenvalue
coordinates), so robustness matters more than scale: the LP is a two-phase
dense simplex with Bland's rule, cone projection is pool-adjacent-violators,
polyhedron projection is Dykstra alternation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

DYKSTRA_MAX_SWEEPS = 10_000
DYKSTRA_TOL = 1e-10


def pav_decreasing(y: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the nonincreasing cone (isotonic regression).

    Pool-adjacent-violators: merge neighboring blocks whose means violate the
    ordering, then broadcast block means back.
    """
    y = np.asarray(y, dtype=float)
    n = y.size
    means = []   # block means
    counts = []  # block sizes
    for v in y:
        means.append(v)
        counts.append(1)
        # decreasing constraint: each block mean must be <= the previous one
        while len(means) > 1 and means[-2] < means[-1]:
            total = means[-2] * counts[-2] + means[-1] * counts[-1]
            cnt = counts[-2] + counts[-1]
            means[-2:] = [total / cnt]
            counts[-2:] = [cnt]
    out = np.empty(n)
    pos = 0
    for m, c in zip(means, counts):
        out[pos:pos + c] = m
        pos += c
    return out


def project_halfspace(q: np.ndarray, normal: np.ndarray, offset: float) -> np.ndarray:
    """Projection onto {q : <normal, q> <= offset}."""
    viol = float(np.dot(normal, q)) - offset
    if viol <= 0.0:
        return q.copy()
    return q - (viol / float(np.dot(normal, normal))) * normal


def dykstra_project(q0: np.ndarray, projectors: list[Callable[[np.ndarray], np.ndarray]],
                    max_sweeps: int = DYKSTRA_MAX_SWEEPS,
                    tol: float = DYKSTRA_TOL) -> tuple[np.ndarray, int]:
    """Dykstra's alternating projection onto an intersection of convex sets.

    Returns (point, sweeps used).  Convergence: total displacement of one
    full sweep below tol.
    """
    x = np.asarray(q0, dtype=float).copy()
    corrections = [np.zeros_like(x) for _ in projectors]
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        delta = 0.0
        for i, proj in enumerate(projectors):
            prev = x
            x = proj(prev + corrections[i])
            corrections[i] = prev + corrections[i] - x
            delta += float(np.linalg.norm(x - prev))
        if delta <= tol:
            break
    return x, sweeps


def ordered_polyhedron_projectors(halfspaces, n: int):
    """Projector list for {halfspaces} intersected with the nonincreasing cone."""
    projs: list[Callable[[np.ndarray], np.ndarray]] = [pav_decreasing]
    for normal, offset in halfspaces:
        a = np.asarray(normal, dtype=float)
        b = float(offset)
        projs.append(lambda q, a=a, b=b: project_halfspace(q, a, b))
    return projs


# ---------------------------------------------------------------------------
# dense two-phase primal simplex, Bland's rule

@dataclass(frozen=True)
class LpResult:
    status: str                 # "optimal" | "unbounded" | "infeasible"
    x: Optional[np.ndarray]
    value: float
    iterations: int


_PIVOT_EPS = 1e-11


def _simplex_iterate(tableau: np.ndarray, basis: np.ndarray, cost: np.ndarray,
                     max_iter: int = 20_000) -> tuple[str, int]:
    # tableau: rows = constraints (A | b); reduced costs recomputed per step.
    m, ncols = tableau.shape
    n = ncols - 1
    it = 0
    for it in range(1, max_iter + 1):
        cb = cost[basis]
        reduced = cost - cb @ tableau[:, :n]
        entering = -1
        for j in range(n):  # Bland: smallest eligible index
            if reduced[j] < -_PIVOT_EPS:
                entering = j
                break
        if entering < 0:
            return "optimal", it
        col = tableau[:, entering]
        best_ratio = math.inf
        leave = -1
        for i in range(m):
            if col[i] > _PIVOT_EPS:
                ratio = tableau[i, n] / col[i]
                if ratio < best_ratio - 1e-12 or (abs(ratio - best_ratio) <= 1e-12
                                                  and (leave < 0 or basis[i] < basis[leave])):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return "unbounded", it
        pivot = tableau[leave, entering]
        tableau[leave] /= pivot
        for i in range(m):
            if i != leave and abs(tableau[i, entering]) > 0.0:
                tableau[i] -= tableau[i, entering] * tableau[leave]
        basis[leave] = entering
    return "maxiter", it


def solve_lp(c: np.ndarray, a_ub: np.ndarray, b_ub: np.ndarray,
             maximize: bool = False) -> LpResult:
    """min (or max) c.q subject to a_ub @ q <= b_ub, q free.

    Free variables are split into positive parts; a two-phase simplex with
    Bland's rule keeps the iteration finite and deterministic.
    """
    c = np.asarray(c, dtype=float)
    a_ub = np.atleast_2d(np.asarray(a_ub, dtype=float))
    b_ub = np.asarray(b_ub, dtype=float)
    if maximize:
        c = -c
    m, n = a_ub.shape
    # standard form: [A, -A, I] z = b, z >= 0
    a_std = np.hstack([a_ub, -a_ub, np.eye(m)])
    b_std = b_ub.copy()
    neg = b_std < 0
    a_std[neg] *= -1.0
    b_std[neg] *= -1.0
    n_std = a_std.shape[1]

    # phase 1
    tableau = np.hstack([a_std, np.eye(m), b_std[:, None]])
    basis = np.arange(n_std, n_std + m)
    cost1 = np.concatenate([np.zeros(n_std), np.ones(m)])
    status, it1 = _simplex_iterate(tableau, basis, cost1)
    if status == "maxiter":
        raise RuntimeError("simplex phase 1 exceeded iteration cap")
    feas_val = float(cost1[basis] @ tableau[:, -1])
    if feas_val > 1e-8:
        return LpResult("infeasible", None, math.nan, it1)
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n_std:
            row = tableau[i, :n_std]
            j = next((jj for jj in range(n_std) if abs(row[jj]) > _PIVOT_EPS), -1)
            if j >= 0:
                pivot = tableau[i, j]
                tableau[i] /= pivot
                for k in range(m):
                    if k != i:
                        tableau[k] -= tableau[k, j] * tableau[i]
                basis[i] = j

    # phase 2 on the original columns
    keep = np.concatenate([np.arange(n_std), [tableau.shape[1] - 1]])
    tableau2 = tableau[:, keep].copy()
    cost2 = np.concatenate([c, -c, np.zeros(m)])
    if np.any(basis >= n_std):  # degenerate all-zero rows: drop them
        rows = [i for i in range(m) if basis[i] < n_std]
        tableau2 = tableau2[rows]
        basis = basis[rows]
    status, it2 = _simplex_iterate(tableau2, basis, cost2)
    if status == "maxiter":
        raise RuntimeError("simplex phase 2 exceeded iteration cap")
    if status == "unbounded":
        return LpResult("unbounded", None, -math.inf if not maximize else math.inf, it1 + it2)
    z = np.zeros(n_std)
    z[basis] = tableau2[:, -1]
    q = z[:n] - z[n:2 * n]
    value = float(np.dot(c, q))
    if maximize:
        value = -value
    return LpResult("optimal", q, value, it1 + it2)


# ---------------------------------------------------------------------------
# derivative-free projected descent (heuristic path)

def fd_gradient(f: Callable[[np.ndarray], float], q: np.ndarray,
                step: float) -> np.ndarray:
    g = np.empty_like(q)
    for i in range(q.size):
        e = np.zeros_like(q)
        e[i] = step
        g[i] = (f(q + e) - f(q - e)) / (2.0 * step)
    return g


def projected_descent(f: Callable[[np.ndarray], float],
                      project: Callable[[np.ndarray], np.ndarray],
                      starts: list[np.ndarray],
                      max_iter: int = 200, fd_step: float = 1e-6) -> tuple[np.ndarray, float, int]:
    """Multistart projected gradient descent with backtracking.

    Deterministic: starts are consumed in order and ties resolve to the
    earliest start.  Returns (best point, best value, total iterations).
    """
    best_q = None
    best_v = math.inf
    total_it = 0
    for s in starts:
        q = project(np.asarray(s, dtype=float))
        v = f(q)
        for _ in range(max_iter):
            total_it += 1
            g = fd_gradient(f, q, fd_step * (1.0 + float(np.linalg.norm(q))))
            gn = float(np.linalg.norm(g))
            if gn < 1e-12:
                break
            improved = False
            beta = 1.0 / (1.0 + gn)
            for _ in range(30):
                cand = project(q - beta * g)
                cv = f(cand)
                if cv < v - 1e-14 * (1.0 + abs(v)):
                    q, v = cand, cv
                    improved = True
                    break
                beta *= 0.5
            if not improved:
                break
        if v < best_v - 1e-15:
            best_v = v
            best_q = q
    return best_q, best_v, total_it


def simplex_weight_grid(k: int, resolution: int = 32):
    """All convex-combination weights on the k-simplex with denominators
    `resolution`; yields arrays summing to one."""
    for comp in itertools.combinations(range(resolution + k - 1), k - 1):
        parts = []
        prev = -1
        for c in comp:
            parts.append(c - prev - 1)
            prev = c
        parts.append(resolution + k - 2 - prev)
        yield np.array(parts, dtype=float) / resolution
