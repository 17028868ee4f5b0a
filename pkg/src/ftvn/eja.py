"""Euclidean Jordan algebra instances and their spectral machinery.

Four families are provided, all carrying the trace inner product:

* ``rn:N``    -- R^N with componentwise product; eigenvalue map = sort descending.
* ``sym:N``   -- real symmetric N x N matrices (stored as row-major flattenings)
                 with X o Y = (XY + YX)/2; eigenvalue map = spectrum descending.
* ``spin:N``  -- the spin factor on R^(1+N): elements (x0, xbar), rank 2,
                 eigenvalues x0 +/- ||xbar||.
* ``product:` -- finite direct products of the above; eigenvalues merge-sorted.

Every algebra also exposes itself as a :class:`~ftvn.core.FtvnInstance` whose
A3 witness is the constructive one: decompose c, then rebuild the target
eigenvalues on c's own frame.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import (DEDUP_TOL, DEFAULT_TOL, FtvnInstance, WitnessError,
                   as_vec, commute_check, register_instance)
from .linalg import eigh_desc


@dataclass(frozen=True)
class JordanFrame:
    """Ordered complete system of orthogonal primitive idempotents (rows)."""

    idempotents: np.ndarray

    def __post_init__(self):
        arr = np.array(self.idempotents, dtype=float)
        arr.flags.writeable = False
        object.__setattr__(self, "idempotents", arr)

    def __len__(self):
        return self.idempotents.shape[0]


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray  # nonincreasing
    frame: JordanFrame


def sort_desc(q) -> np.ndarray:
    """Nonincreasing rearrangement q-down."""
    return -np.sort(-np.asarray(q, dtype=float))


def is_sorted_desc(q, tol: float = 1e-9) -> bool:
    q = np.asarray(q, dtype=float)
    if q.size <= 1:
        return True
    return bool(np.all(np.diff(q) <= tol * (1.0 + np.abs(q).max())))


def dedup_points(points, tol: float = DEDUP_TOL) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    out: list[np.ndarray] = []
    for p in pts:
        if all(np.linalg.norm(p - o) > tol for o in out):
            out.append(p)
    return np.array(out) if out else np.zeros((0, pts.shape[1]))


def q_cap_qdown(points, tol: float = DEDUP_TOL) -> np.ndarray:
    """Members of a finite Q that are their own decreasing rearrangement.

    This equals the intersection of Q with Q-down, hence the eigenvalue image
    of the spectral set Q induces.  May legitimately be empty.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    keep = [p for p in pts if is_sorted_desc(p, tol)]
    if not keep:
        return np.zeros((0, pts.shape[1]))
    return dedup_points(keep, tol)


def sigma_orbit(points, tol: float = DEDUP_TOL) -> np.ndarray:
    """Full permutation expansion of a finite set (dimension capped at 8)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n = pts.shape[1]
    if n > 8:
        raise ValueError(f"permutation expansion capped at dimension 8, got {n}")
    seen: set[tuple] = set()
    for p in pts:
        seen.update(itertools.permutations(p.tolist()))
    return dedup_points(np.array(sorted(seen)), tol)


class JordanAlgebra:
    """One algebra in coordinates: product, unit, inner product, decomposition.

    Instances are immutable by convention; every method is a pure function
    of its arguments.
    """

    def __init__(self, kind: str, name: str, rank: int, dim_v: int,
                 jordan_product: Callable[[np.ndarray, np.ndarray], np.ndarray],
                 unit: np.ndarray,
                 inner_weights: np.ndarray,
                 decompose: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]],
                 sample: Callable[[np.random.Generator], np.ndarray],
                 orbit_rows: Callable[[np.ndarray, np.random.Generator], np.ndarray],
                 project: Optional[Callable[[np.ndarray], np.ndarray]] = None):
        self.kind = kind
        self.name = name
        self.rank = rank
        self.dim_v = dim_v
        self.jordan_product = jordan_product
        self.unit = np.asarray(unit, dtype=float)
        self._w = np.asarray(inner_weights, dtype=float)
        self._decompose = decompose
        self._sample = sample
        self._orbit_rows = orbit_rows
        self._project = project if project is not None else (lambda x: x)
        self.instance = self._build_instance()

    # -- algebra structure -------------------------------------------------

    def inner(self, x, y) -> float:
        x = as_vec(x)
        y = as_vec(y)
        return float(np.dot(self._w * x, y))

    def norm(self, x) -> float:
        return math.sqrt(max(self.inner(x, x), 0.0))

    def decompose(self, x) -> tuple[np.ndarray, np.ndarray]:
        """Eigenvalues (nonincreasing) and frame rows reconstructing x."""
        return self._decompose(as_vec(x))

    def eigvals(self, x) -> np.ndarray:
        return self._decompose(as_vec(x))[0]

    def orbit_sample(self, q, rng: np.random.Generator, count: int) -> np.ndarray:
        """``count`` elements sharing the eigenvalues of q, stacked as rows."""
        q = np.asarray(q, dtype=float)
        rows = np.tile(q, (count, 1))
        return self._orbit_rows(rows, rng)

    # -- FTvN instance wrapper ----------------------------------------------

    def _a3_witness(self, c: np.ndarray, q: np.ndarray) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        if q.size != self.rank:
            raise WitnessError(f"{self.name}: target has length {q.size}, expected {self.rank}")
        if not is_sorted_desc(q):
            raise WitnessError(f"{self.name}: target eigenvalues are not nonincreasing")
        _, frame = self.decompose(c)
        return q @ frame

    def _commute_witness(self, x: np.ndarray, y: np.ndarray, tol: float) -> Optional[JordanFrame]:
        _, frame = self.decompose(x + y)
        lx = self.eigvals(x)
        ly = self.eigvals(y)
        rx = self.norm(x - lx @ frame)
        ry = self.norm(y - ly @ frame)
        if rx <= math.sqrt(tol) * (1.0 + self.norm(x)) and ry <= math.sqrt(tol) * (1.0 + self.norm(y)):
            return JordanFrame(frame)
        return None

    def _build_instance(self) -> FtvnInstance:
        return FtvnInstance(
            name=self.name,
            dim_v=self.dim_v,
            dim_w=self.rank,
            lam=self.eigvals,
            a3_witness=self._a3_witness,
            inner_v=self.inner,
            witness_is_exact=True,
            family=self.kind,
            image_contains=lambda q, tol: q.size == self.rank and is_sorted_desc(q, tol),
            sample=self._sample,
            sample_orbit=self.orbit_sample,
            commute_witness=self._commute_witness,
            riesz=lambda g: self._project(g) / self._w,
            project_element=self._project,
            backend=self,
        )


# ---------------------------------------------------------------------------
# concrete families

def rn_algebra(n: int) -> JordanAlgebra:
    if n < 1:
        raise ValueError("rank must be positive")
    eye = np.eye(n)

    def decompose(x):
        order = np.argsort(-x, kind="stable")
        return x[order], eye[order]

    def orbit_rows(rows, rng):
        shuffles = np.argsort(rng.random(rows.shape), axis=1)
        return np.take_along_axis(rows, shuffles, axis=1)

    return JordanAlgebra(
        kind="rn", name=f"rn:{n}", rank=n, dim_v=n,
        jordan_product=lambda x, y: x * y,
        unit=np.ones(n),
        inner_weights=np.ones(n),
        decompose=decompose,
        sample=lambda rng: rng.standard_normal(n),
        orbit_rows=orbit_rows,
    )


def mat_of(x, n: int) -> np.ndarray:
    return np.asarray(x, dtype=float).reshape(n, n)


def sym_coords(matrix) -> np.ndarray:
    """Flatten a symmetric matrix into element coordinates (validates symmetry)."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.allclose(m, m.T, atol=1e-10 * (1.0 + np.abs(m).max(initial=0.0))):
        raise ValueError("matrix is not symmetric")
    return (0.5 * (m + m.T)).ravel()


def sym_algebra(n: int) -> JordanAlgebra:
    if n < 1:
        raise ValueError("rank must be positive")

    def jp(x, y):
        a = mat_of(x, n)
        b = mat_of(y, n)
        return (0.5 * (a @ b + b @ a)).ravel()

    def project(x):
        m = mat_of(x, n)
        return (0.5 * (m + m.T)).ravel()

    def decompose(x):
        # total on the flattening: the symmetric part is the element
        m = mat_of(x, n)
        w, v = eigh_desc(0.5 * (m + m.T))
        frame = np.einsum("ji,ki->ijk", v, v).reshape(n, n * n)
        return w, frame

    def sample(rng):
        g = rng.standard_normal((n, n))
        return (0.5 * (g + g.T)).ravel()

    def orbit_rows(rows, rng):
        count = rows.shape[0]
        z = rng.standard_normal((count, n, n))
        qm, rm = np.linalg.qr(z)
        d = np.sign(np.einsum("kii->ki", rm))
        d[d == 0] = 1.0
        qm = qm * d[:, None, :]
        mats = np.einsum("kij,kj,klj->kil", qm, rows, qm)
        return mats.reshape(count, n * n)

    return JordanAlgebra(
        kind="sym", name=f"sym:{n}", rank=n, dim_v=n * n,
        jordan_product=jp,
        unit=np.eye(n).ravel(),
        inner_weights=np.ones(n * n),
        decompose=decompose,
        sample=sample,
        orbit_rows=orbit_rows,
        project=project,
    )


def spin_algebra(n: int) -> JordanAlgebra:
    """Spin factor on R^(1+n); rank 2.  Trace inner product = 2 * dot."""
    if n < 1:
        raise ValueError("need at least one spatial coordinate")
    default_axis = np.zeros(n)
    default_axis[0] = 1.0

    def jp(x, y):
        out = np.empty(n + 1)
        out[0] = np.dot(x, y)
        out[1:] = x[0] * y[1:] + y[0] * x[1:]
        return out

    def decompose(x):
        x0 = x[0]
        xbar = x[1:]
        r = np.linalg.norm(xbar)
        axis = xbar / r if r > 0 else default_axis
        eigs = np.array([x0 + r, x0 - r])
        frame = 0.5 * np.vstack([np.concatenate(([1.0], axis)),
                                 np.concatenate(([1.0], -axis))])
        return eigs, frame

    def orbit_rows(rows, rng):
        count = rows.shape[0]
        hi = rows.max(axis=1)
        lo = rows.min(axis=1)
        axes = rng.standard_normal((count, n))
        nrm = np.linalg.norm(axes, axis=1)
        bad = nrm < 1e-12
        if np.any(bad):
            axes[bad] = default_axis
            nrm[bad] = 1.0
        axes /= nrm[:, None]
        out = np.empty((count, n + 1))
        out[:, 0] = 0.5 * (hi + lo)
        out[:, 1:] = 0.5 * (hi - lo)[:, None] * axes
        return out

    return JordanAlgebra(
        kind="spin", name=f"spin:{n}", rank=2, dim_v=n + 1,
        jordan_product=jp,
        unit=np.concatenate(([1.0], np.zeros(n))),
        inner_weights=np.full(n + 1, 2.0),
        decompose=decompose,
        sample=lambda rng: rng.standard_normal(n + 1),
        orbit_rows=orbit_rows,
    )


def product_algebra(parts: list[JordanAlgebra]) -> JordanAlgebra:
    if not parts:
        raise ValueError("product needs at least one part")
    rank = sum(p.rank for p in parts)
    dim_v = sum(p.dim_v for p in parts)
    v_off = np.cumsum([0] + [p.dim_v for p in parts])
    r_off = np.cumsum([0] + [p.rank for p in parts])
    name = "product:" + "+".join(p.name for p in parts)

    def slices_v(x):
        return [x[v_off[i]:v_off[i + 1]] for i in range(len(parts))]

    def jp(x, y):
        return np.concatenate([p.jordan_product(a, b)
                               for p, a, b in zip(parts, slices_v(x), slices_v(y))])

    def decompose(x):
        items = []
        for i, (p, xi) in enumerate(zip(parts, slices_v(x))):
            eigs, frame = p.decompose(xi)
            for j in range(p.rank):
                items.append((-eigs[j], i, j, frame[j]))
        items.sort(key=lambda t: (t[0], t[1], t[2]))
        eigs = np.array([-t[0] for t in items])
        frame = np.zeros((rank, dim_v))
        for row, (_, i, _, part_row) in enumerate(items):
            frame[row, v_off[i]:v_off[i + 1]] = part_row
        return eigs, frame

    def sample(rng):
        return np.concatenate([p._sample(rng) for p in parts])

    def orbit_rows(rows, rng):
        count = rows.shape[0]
        shuffles = np.argsort(rng.random(rows.shape), axis=1)
        mixed = np.take_along_axis(rows, shuffles, axis=1)
        blocks = []
        for i, p in enumerate(parts):
            blocks.append(p._orbit_rows(mixed[:, r_off[i]:r_off[i + 1]], rng))
        return np.concatenate(blocks, axis=1)

    def project(x):
        return np.concatenate([p._project(xi) for p, xi in zip(parts, slices_v(x))])

    return JordanAlgebra(
        kind="product", name=name, rank=rank, dim_v=dim_v,
        jordan_product=jp,
        unit=np.concatenate([p.unit for p in parts]),
        inner_weights=np.concatenate([p._w for p in parts]),
        decompose=decompose,
        sample=sample,
        orbit_rows=orbit_rows,
        project=project,
    )


# ---------------------------------------------------------------------------
# operations

def spectral_decompose(alg: JordanAlgebra, x) -> SpectralDecomposition:
    eigs, frame = alg.decompose(x)
    return SpectralDecomposition(eigenvalues=eigs, frame=JordanFrame(frame))


def build_from_frame(alg: JordanAlgebra, q, frame: JordanFrame) -> np.ndarray:
    """Rebuild sum_i q_i e_i from coefficients and an ordered frame."""
    q = np.asarray(q, dtype=float)
    if q.size != len(frame):
        raise ValueError(f"coefficient vector has length {q.size}, frame has {len(frame)}")
    return q @ frame.idempotents


def eja_a3_witness(alg: JordanAlgebra, c, q) -> np.ndarray:
    """The constructive witness: target eigenvalues rebuilt on c's frame.

    Exact: lam(result) = q and <c, result> = <lam(c), q>, because the frame
    is orthonormal under the trace inner product.
    """
    return alg._a3_witness(as_vec(c), as_vec(q))


def strong_commute_check(alg: JordanAlgebra, x, y, tol: float = DEFAULT_TOL):
    """Commutativity in the FTvN sense = strong operator commutativity here;
    the certificate carries a shared frame when the verdict is positive."""
    return commute_check(alg.instance, x, y, tol)


def operator_commute_check(alg: JordanAlgebra, x, y, tol: float = DEFAULT_TOL) -> bool:
    """Do the multiplication operators L_x and L_y commute?

    Tested as a linear-operator identity over the coordinate basis.  Weaker
    than strong commutativity: it ignores eigenvalue ordering.
    """
    xv = as_vec(x)
    yv = as_vec(y)
    basis = np.eye(alg.dim_v)
    lx = np.column_stack([alg.jordan_product(xv, b) for b in basis])
    ly = np.column_stack([alg.jordan_product(yv, b) for b in basis])
    resid = np.linalg.norm(lx @ ly - ly @ lx)
    scale = 1.0 + np.linalg.norm(lx) * np.linalg.norm(ly)
    return bool(resid <= tol * scale)


@dataclass(frozen=True)
class MajorizationReport:
    prefix_gaps: np.ndarray  # length rank-1; each must be >= -tol
    trace_gap: float         # must be ~0
    ok: bool


def majorization_check(alg: JordanAlgebra, x, y, tol: float = DEFAULT_TOL) -> MajorizationReport:
    """lam(x+y) against lam(x) + lam(y): prefix sums dominated, totals equal."""
    xv = as_vec(x)
    yv = as_vec(y)
    s = np.cumsum(alg.eigvals(xv) + alg.eigvals(yv))
    t = np.cumsum(alg.eigvals(xv + yv))
    prefix = (s - t)[:-1]
    trace_gap = float(s[-1] - t[-1])
    scale = 1.0 + alg.norm(xv) + alg.norm(yv)
    ok = bool(np.all(prefix >= -tol * scale) and abs(trace_gap) <= tol * scale)
    return MajorizationReport(prefix_gaps=prefix, trace_gap=trace_gap, ok=ok)


def idempotent_orbit_max(alg: JordanAlgebra, c, k: int) -> tuple[float, np.ndarray]:
    """Largest <c, x> over rank-k idempotents: the top-k eigenvalue sum,
    attained at the sum of the first k idempotents of c's own frame."""
    if not 1 <= k <= alg.rank:
        raise ValueError(f"k must lie in 1..{alg.rank}")
    eigs, frame = alg.decompose(c)
    value = float(np.sum(eigs[:k]))
    idem = np.sum(frame[:k], axis=0)
    return value, idem


# ---------------------------------------------------------------------------
# registry

def algebra_from_name(name: str) -> JordanAlgebra:
    head, _, args = name.partition(":")
    if head == "rn":
        return rn_algebra(int(args))
    if head == "sym":
        return sym_algebra(int(args))
    if head == "spin":
        return spin_algebra(int(args))
    if head == "product":
        return product_algebra([algebra_from_name(p) for p in args.split("+")])
    raise KeyError(f"unknown algebra {name!r}")


register_instance("rn", lambda args: algebra_from_name(f"rn:{args}").instance)
register_instance("sym", lambda args: algebra_from_name(f"sym:{args}").instance)
register_instance("spin", lambda args: algebra_from_name(f"spin:{args}").instance)
register_instance("product", lambda args: algebra_from_name(f"product:{args}").instance)
