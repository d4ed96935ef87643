"""Initial embeddings (random or PCA) and fixed-axis assignment."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, DEFAULT_RANGE, ScaleRange

INIT_MODES = ("random", "pca")


@dataclass(eq=False)
class Embedding:
    """N x n coordinate matrix under optimization, n in {2, 3}.

    The last axis is the fixed axis. ``fixed_origin`` holds the values
    assigned to it at initialization and is present whenever a pinning
    policy is active.
    """

    coords: np.ndarray
    fixed_origin: np.ndarray | None = None

    def __post_init__(self):
        coords = np.ascontiguousarray(self.coords, dtype=float)
        self.coords = coords
        if coords.ndim != 2 or coords.shape[1] not in (2, 3):
            raise ValueError(f"coords must be N x 2 or N x 3, got {coords.shape}")
        if not np.isfinite(coords).all():
            raise ValueError("coords must be finite")
        if self.fixed_origin is not None:
            origin = np.ascontiguousarray(self.fixed_origin, dtype=float)
            if origin.shape != (coords.shape[0],):
                raise ValueError("fixed_origin length must match point count")
            self.fixed_origin = origin

    @property
    def n_points(self) -> int:
        return self.coords.shape[0]

    @property
    def n_dims(self) -> int:
        return self.coords.shape[1]

    @property
    def fixed_axis(self) -> int:
        return self.n_dims - 1


def jacobi_eigh(a: np.ndarray, max_sweeps: int = 60,
                tol: float = 1e-13) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigendecomposition of a small symmetric matrix.

    Returns (eigenvalues, eigenvectors-as-columns), unsorted. Plenty for the
    F <= 64 covariance matrices this package sees; raises with the sweep
    count if the off-diagonal mass refuses to vanish.
    """
    a = np.array(a, dtype=float)
    f = a.shape[0]
    if a.shape != (f, f):
        raise ValueError("matrix must be square")
    v = np.eye(f)
    if f == 1:
        return a.diagonal().copy(), v
    norm = np.linalg.norm(a)
    if norm == 0.0:
        return np.zeros(f), v
    upper = np.triu_indices(f, 1)
    for sweep in range(1, max_sweeps + 1):
        # off-diagonal mass measured entry-wise: the sum-of-squares minus
        # diagonal form cancels and floors out near norm * sqrt(eps)
        off = np.sqrt(2.0 * (a[upper] ** 2).sum())
        if off <= tol * norm:
            return a.diagonal().copy(), v
        for p in range(f - 1):
            for q in range(p + 1, f):
                apq = a[p, q]
                if abs(apq) <= 1e-18 * norm:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e10:
                    t = 0.5 / tau  # asymptotic form; tau*tau would overflow
                elif tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # a <- J^T a J on the (p, q) plane, then accumulate v <- v J
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    raise RuntimeError(f"eigensolver did not converge after {max_sweeps} sweeps")


def pca_components(values: np.ndarray, n_components: int) -> tuple[np.ndarray, np.ndarray]:
    """Top principal components of a sample matrix.

    Returns (components as F x n columns, their variances). Components carry
    a deterministic sign: the largest-magnitude loading of each is positive.
    """
    x = np.asarray(values, dtype=float)
    if not 1 <= n_components <= x.shape[1]:
        raise ValueError(f"n_components must lie in [1, {x.shape[1]}]")
    centered = x - x.mean(axis=0)
    cov = centered.T @ centered / (x.shape[0] - 1)
    eigenvalues, eigenvectors = jacobi_eigh(cov)
    order = np.argsort(-eigenvalues, kind="stable")[:n_components]
    components = eigenvectors[:, order].copy()
    for k in range(components.shape[1]):
        lead = np.argmax(np.abs(components[:, k]))
        if components[lead, k] < 0:
            components[:, k] = -components[:, k]
    return components, eigenvalues[order]


def init_embedding(d: Dataset, n_dims: int, mode: str, seed: int,
                   scale: ScaleRange = DEFAULT_RANGE) -> Embedding:
    """Create the starting embedding for an (already scaled) dataset.

    ``random`` draws coordinates i.i.d. uniform over the scale range so the
    initial spread is comparable across datasets; ``pca`` projects the
    mean-centered data onto its top n_dims principal components
    (deterministic, seed unused).
    """
    if n_dims not in (2, 3):
        raise ValueError(f"n_dims must be 2 or 3, got {n_dims}")
    if d.n_points < n_dims:
        raise ValueError(f"need at least {n_dims} points")
    if mode == "random":
        rng = np.random.default_rng(seed)
        coords = rng.uniform(scale.low, scale.high, size=(d.n_points, n_dims))
    elif mode == "pca":
        components, _ = pca_components(d.values, n_dims)
        coords = (d.values - d.values.mean(axis=0)) @ components
    else:
        raise ValueError(f"unknown init mode {mode!r}; expected one of {INIT_MODES}")
    return Embedding(coords)


def fix_axis(e: Embedding, feature_values: np.ndarray) -> Embedding:
    """Overwrite the last axis with the given values and record them as origin."""
    feature_values = np.asarray(feature_values, dtype=float)
    if feature_values.shape != (e.n_points,):
        raise ValueError(
            f"expected {e.n_points} feature values, got {feature_values.shape}"
        )
    if not np.isfinite(feature_values).all():
        raise ValueError("feature values must be finite")
    coords = e.coords.copy()
    coords[:, -1] = feature_values
    return Embedding(coords, fixed_origin=feature_values.copy())
