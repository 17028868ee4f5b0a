"""Normal-decomposition-system instances on matrices, plus two edge systems.

* ``svd:MxN``          -- m x n real matrices under <X,Y> = tr(XY^T) with the
                          singular-value map (nonincreasing, nonnegative);
                          witnesses come from simultaneous ordered SVDs.
* ``rot90``            -- R^2 with lam = rotation through 90 degrees: a linear
                          isometry, so every pair of elements commutes.
* ``z-counterexample`` -- sort-descending restricted to the plane spanned by
                          (3,2,1) and (-1,0,0) inside R^3.  Norm preservation
                          and the trace-type inequality survive restriction
                          but the witness axiom does not; its witness is a
                          dense angular grid search that reports the best
                          feasible point it can find.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import FtvnInstance, WitnessError, as_vec, register_instance
from .eja import dedup_points, is_sorted_desc, sort_desc
from .linalg import svd_jacobi


class RectMatrixSpace:
    """m x n real matrices with the Frobenius inner product and sigma-map."""

    def __init__(self, m: int, n: int):
        if m < 1 or n < 1:
            raise ValueError("matrix dimensions must be positive")
        self.m = m
        self.n = n
        self.k = min(m, n)
        self.name = f"svd:{m}x{n}"
        self.instance = self._build_instance()

    def mat(self, x) -> np.ndarray:
        return np.asarray(as_vec(x), dtype=float).reshape(self.m, self.n)

    def coords(self, matrix) -> np.ndarray:
        a = np.asarray(matrix, dtype=float)
        if a.shape != (self.m, self.n):
            raise ValueError(f"expected a {self.m}x{self.n} matrix, got {a.shape}")
        return a.ravel()

    def singular_values(self, x) -> np.ndarray:
        _, s, _ = svd_jacobi(self.mat(x))
        return s

    def gamma(self, x) -> np.ndarray:
        """The m x n matrix carrying sigma(x) on its leading diagonal."""
        out = np.zeros((self.m, self.n))
        out[np.arange(self.k), np.arange(self.k)] = self.singular_values(x)
        return out

    def _a3_witness(self, c: np.ndarray, q: np.ndarray) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        if q.size != self.k:
            raise WitnessError(f"{self.name}: target has length {q.size}, expected {self.k}")
        if not is_sorted_desc(q) or q[-1] < -1e-9 * (1.0 + abs(q[0])):
            raise WitnessError(f"{self.name}: target violates the sorted-nonnegative cone")
        u, _, v = svd_jacobi(self.mat(c))
        return (u @ np.diag(np.clip(q, 0.0, None)) @ v.T).ravel()

    def _commute_witness(self, x: np.ndarray, y: np.ndarray, tol: float):
        u, _, v = svd_jacobi(self.mat(x) + self.mat(y))
        sx = self.singular_values(x)
        sy = self.singular_values(y)
        rx = np.linalg.norm(self.mat(x) - u @ np.diag(sx) @ v.T)
        ry = np.linalg.norm(self.mat(y) - u @ np.diag(sy) @ v.T)
        if (rx <= math.sqrt(tol) * (1.0 + np.linalg.norm(sx))
                and ry <= math.sqrt(tol) * (1.0 + np.linalg.norm(sy))):
            return (u, v)
        return None

    def orbit_sample(self, q, rng: np.random.Generator, count: int) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        u = _haar_batch(rng, count, self.m)
        v = _haar_batch(rng, count, self.n)
        diag = np.zeros((count, self.m, self.n))
        diag[:, np.arange(self.k), np.arange(self.k)] = q
        mats = u @ diag @ np.transpose(v, (0, 2, 1))
        return mats.reshape(count, self.m * self.n)

    def _build_instance(self) -> FtvnInstance:
        return FtvnInstance(
            name=self.name,
            dim_v=self.m * self.n,
            dim_w=self.k,
            lam=self.singular_values,
            a3_witness=self._a3_witness,
            witness_is_exact=True,
            family="svd",
            image_contains=lambda q, tol: (q.size == self.k and is_sorted_desc(q, tol)
                                           and q[-1] >= -tol * (1.0 + abs(q[0]))),
            sample=lambda rng: rng.standard_normal(self.m * self.n),
            sample_orbit=self.orbit_sample,
            commute_witness=self._commute_witness,
            backend=self,
        )


def _haar_batch(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    z = rng.standard_normal((count, n, n))
    q, r = np.linalg.qr(z)
    d = np.sign(np.einsum("kii->ki", r))
    d[d == 0] = 1.0
    return q * d[:, None, :]


def singular_map(space: RectMatrixSpace, x) -> np.ndarray:
    return space.singular_values(x)


def nds_a3_witness(space: RectMatrixSpace, c, q) -> np.ndarray:
    """X = U diag(q) V^T built from a full SVD of c; attains the trace bound."""
    return space._a3_witness(as_vec(c), as_vec(q))


def nds_commute_check(space: RectMatrixSpace, x, y, tol: float = 1e-8):
    from .core import commute_check
    return commute_check(space.instance, x, y, tol)


# ---------------------------------------------------------------------------
# rotation isometry on R^2

_ROT = np.array([[0.0, -1.0], [1.0, 0.0]])


def rotation_instance() -> FtvnInstance:
    """lam = rotation through 90 degrees about the origin: (V, V, S) with S a
    linear isometry.  Any two elements commute; lam is not idempotent, which
    separates this system from the sorted-map families."""
    def witness(c, q):
        q = np.asarray(q, dtype=float)
        if q.size != 2:
            raise WitnessError("rot90: target must lie in R^2")
        return _ROT.T @ q

    return FtvnInstance(
        name="rot90",
        dim_v=2,
        dim_w=2,
        lam=lambda x: _ROT @ x,
        a3_witness=witness,
        witness_is_exact=True,
        family="rot90",
        image_contains=lambda q, tol: q.size == 2,
        sample=lambda rng: rng.standard_normal(2),
        sample_orbit=lambda q, rng, count: np.tile(_ROT.T @ np.asarray(q, float), (count, 1)),
        commute_witness=lambda x, y, tol: ("isometry",),
    )


# ---------------------------------------------------------------------------
# restricted-subspace pseudo-instance (A1/A2 hold, A3 fails)

Z_GRID_POINTS = 100_000


@dataclass(frozen=True)
class ZWitnessSearch:
    """Outcome of the angular grid search for one (c, q) target."""

    x: np.ndarray          # best feasible point found (exact eigenvalues)
    gap: float             # <lam c, q> - <c, x>; positive = A3 shortfall
    slack: float           # Lipschitz slack of the grid certificate


class SubspacePseudoInstance:
    """Sort-descending restricted to a 2-d subspace of R^3.

    The feasible set {x in Z : lam(x) = q} is finite; the witness walks a
    dense grid of directions, snaps each near-feasible direction to the exact
    permuted target, and returns the best inner product among them.
    """

    def __init__(self, spanning=((3.0, 2.0, 1.0), (-1.0, 0.0, 0.0)),
                 grid_points: int = Z_GRID_POINTS):
        p = np.asarray(spanning[0], dtype=float)
        q = np.asarray(spanning[1], dtype=float)
        b1 = p / np.linalg.norm(p)
        b2 = q - np.dot(q, b1) * b1
        b2 /= np.linalg.norm(b2)
        self.basis = np.vstack([b1, b2])
        self.normal = np.cross(b1, b2)
        theta = np.linspace(0.0, 2.0 * np.pi, grid_points, endpoint=False)
        self._circle = np.outer(np.cos(theta), b1) + np.outer(np.sin(theta), b2)
        self._arc = 2.0 * np.pi / grid_points
        self.name = "z-counterexample"
        self.instance = self._build_instance()

    def embed(self, coeffs) -> np.ndarray:
        return np.asarray(coeffs, dtype=float) @ self.basis

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = as_vec(x)
        return abs(float(np.dot(x, self.normal))) <= tol * (1.0 + np.linalg.norm(x))

    def feasible_points(self, q, tol: float = 1e-9) -> np.ndarray:
        """All permutations of q lying in the subspace (exact enumeration)."""
        q = np.asarray(q, dtype=float)
        cands = []
        for perm in itertools.permutations(range(3)):
            v = q[list(perm)]
            if self.contains(v, tol):
                cands.append(v)
        return dedup_points(cands) if cands else np.zeros((0, 3))

    def witness_search(self, c, q) -> ZWitnessSearch:
        c = as_vec(c)
        q = np.asarray(q, dtype=float)
        if q.size != 3 or not is_sorted_desc(q):
            raise WitnessError("z-counterexample: target is not a sorted vector")
        r = float(np.linalg.norm(q))
        if r == 0.0:
            return ZWitnessSearch(x=np.zeros(3), gap=0.0, slack=0.0)
        pts = r * self._circle
        feas_err = np.linalg.norm(-np.sort(-pts, axis=1) - q, axis=1)
        near = np.flatnonzero(feas_err <= max(1e-3 * (1.0 + r), 4.0 * r * self._arc))
        best_x = None
        best_val = -math.inf
        if near.size:
            # snap each near-feasible direction to the exact permuted target;
            # only the sort order matters, and there are at most 6 of those
            orders = np.unique(np.argsort(-pts[near], axis=1), axis=0)
            for order in orders:
                cand = np.empty(3)
                cand[order] = q
                if not self.contains(cand, 1e-9):
                    continue
                val = float(np.dot(c, cand))
                if val > best_val:
                    best_val = val
                    best_x = cand
        if best_x is None:
            raise WitnessError("z-counterexample: target not in the restricted image")
        gap = float(np.dot(sort_desc(c), q)) - best_val
        slack = float(np.linalg.norm(c)) * r * self._arc
        return ZWitnessSearch(x=best_x, gap=gap, slack=slack)

    def _a3_witness(self, c: np.ndarray, q: np.ndarray) -> np.ndarray:
        return self.witness_search(c, q).x

    def _build_instance(self) -> FtvnInstance:
        def sample(rng):
            return self.embed(rng.standard_normal(2))

        def image_contains(q, tol):
            return (q.size == 3 and is_sorted_desc(q, tol)
                    and self.feasible_points(q, max(tol, 1e-9)).shape[0] > 0)

        def project(x):
            return x - float(np.dot(x, self.normal)) * self.normal

        return FtvnInstance(
            name=self.name,
            dim_v=3,
            dim_w=3,
            lam=lambda x: sort_desc(x),
            a3_witness=self._a3_witness,
            witness_is_exact=False,
            family="z",
            image_contains=image_contains,
            sample=sample,
            project_element=project,
            riesz=project,
            backend=self,
        )


def z_counterexample_instance() -> SubspacePseudoInstance:
    return SubspacePseudoInstance()


def _svd_factory(args: str) -> FtvnInstance:
    m_str, _, n_str = args.partition("x")
    return RectMatrixSpace(int(m_str), int(n_str)).instance


register_instance("svd", _svd_factory)
register_instance("rot90", lambda args: rotation_instance())
register_instance("z-counterexample", lambda args: z_counterexample_instance().instance)
