"""Structured signal sets, projections onto them, and random generators.

A signal model is a structure set ``K`` (sparse vectors, low-rank matrices
in vectorized form, or a scaled l1 ball) intersected with the norm annulus
``{alpha <= ||u||_2 <= beta}``.  Recovery algorithms only touch the model
through the two projections and, for the error analysis, the restricted
dual norm of the difference set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import derive_seed, stream

__all__ = [
    "Sparse",
    "LowRank",
    "L1Ball",
    "SignalModel",
    "UnsupportedModelError",
    "project_structure",
    "project_norm",
    "project_model",
    "gen_signal",
    "restricted_dual_norm",
    "l1ball_magnitudes",
    "random_in_model",
]


class UnsupportedModelError(ValueError):
    """Raised when an operation has no closed form for the given structure."""


@dataclass(frozen=True)
class Sparse:
    """Vectors with at most ``k`` nonzero entries in dimension ``n``."""

    k: int
    n: int

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise ValueError(f"need k >= 1 and n >= 1, got k={self.k}, n={self.n}")

    @property
    def ambient_dim(self) -> int:
        return self.n


@dataclass(frozen=True)
class LowRank:
    """``n1 x n2`` matrices of rank at most ``r``, vectorized column-major."""

    r: int
    n1: int
    n2: int

    def __post_init__(self):
        if self.r < 1 or self.n1 < 1 or self.n2 < 1:
            raise ValueError(f"need r, n1, n2 >= 1, got r={self.r}, n1={self.n1}, n2={self.n2}")

    @property
    def ambient_dim(self) -> int:
        return self.n1 * self.n2


@dataclass(frozen=True)
class L1Ball:
    """The l1 ball of the given radius in dimension ``n``.

    Radius ``sqrt(k)`` models "effectively sparse" signals: unit vectors in
    this ball concentrate most of their mass on about ``k`` coordinates.
    """

    radius: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"radius must be a positive finite real, got {self.radius}")
        if self.n < 1:
            raise ValueError(f"need n >= 1, got n={self.n}")

    @property
    def ambient_dim(self) -> int:
        return self.n


Structure = Sparse | LowRank | L1Ball


@dataclass(frozen=True)
class SignalModel:
    """Structure set intersected with the annulus ``alpha <= ||u|| <= beta``."""

    structure: Structure
    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= self.beta) or not math.isfinite(self.beta) or self.beta <= 0:
            raise ValueError(f"need 0 <= alpha <= beta with beta > 0, got ({self.alpha}, {self.beta})")

    @property
    def ambient_dim(self) -> int:
        return self.structure.ambient_dim


def _check_dim(model: SignalModel, u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.shape != (model.ambient_dim,):
        raise ValueError(f"expected shape ({model.ambient_dim},), got {u.shape}")
    return u


def project_structure(model: SignalModel, u) -> np.ndarray:
    """Euclidean projection of ``u`` onto the structure set ``K``.

    Sparse: keep the ``k`` largest-magnitude entries, ties broken toward the
    lowest index. LowRank: truncate the SVD of the (column-major) reshaped
    matrix to rank ``r``. L1Ball: exact sort-based projection.
    """
    u = _check_dim(model, u)
    s = model.structure
    if isinstance(s, Sparse):
        if s.k >= s.n:
            return u.copy()
        # stable sort on -|u|: equal magnitudes keep their original order,
        # which is exactly the lowest-index tie break
        order = np.argsort(-np.abs(u), kind="stable")
        out = np.zeros_like(u)
        keep = order[: s.k]
        out[keep] = u[keep]
        return out
    if isinstance(s, LowRank):
        if s.r >= min(s.n1, s.n2):
            return u.copy()
        M = u.reshape((s.n1, s.n2), order="F")
        U, sv, Vt = np.linalg.svd(M, full_matrices=False)
        sv = sv.copy()
        sv[s.r :] = 0.0
        return ((U * sv) @ Vt).reshape(-1, order="F")
    return _project_l1_ball(u, s.radius)


def _project_l1_ball(u: np.ndarray, radius: float) -> np.ndarray:
    """Sort-based projection onto ``{||p||_1 <= radius}``."""
    if np.abs(u).sum() <= radius:
        return u.copy()
    w = np.sort(np.abs(u))[::-1]
    css = np.cumsum(w) - radius
    js = np.arange(1, u.size + 1)
    rho = js[w > css / js][-1]
    theta = css[rho - 1] / rho
    return np.sign(u) * np.maximum(np.abs(u) - theta, 0.0)


def project_norm(alpha: float, beta: float, u) -> np.ndarray:
    """Rescale ``u`` to the nearest point of the annulus ``[alpha, beta]``.

    The zero vector with ``alpha > 0`` has no unique nearest point; the tie
    is broken deterministically as ``alpha * e_1``.
    """
    if not (0.0 <= alpha <= beta) or not math.isfinite(beta) or beta <= 0:
        raise ValueError(f"need 0 <= alpha <= beta with beta > 0, got [{alpha}, {beta}]")
    u = np.asarray(u, dtype=float)
    nrm = float(np.linalg.norm(u))
    if nrm == 0.0:
        if alpha == 0.0:
            return u.copy()
        out = np.zeros_like(u)
        out[0] = alpha
        return out
    if nrm < alpha:
        return u * (alpha / nrm)
    if nrm > beta:
        return u * (beta / nrm)
    return u.copy()


def project_model(model: SignalModel, u) -> np.ndarray:
    """The two-stage projection used by the recovery iteration."""
    return project_norm(model.alpha, model.beta, project_structure(model, u))


def l1ball_magnitudes(radius: float, n: int, c: int) -> tuple[float, float]:
    """Entry magnitudes ``(a, b)`` of the two-valued effectively sparse draw.

    With ``k = radius**2``, the vector with ``c`` entries of magnitude ``a``
    and ``n - c`` of magnitude ``b`` has unit l2 norm and l1 norm ``sqrt(k)``.
    ``b`` may come out negative for unlucky ``c``; callers resample then.
    """
    k = radius * radius
    if c < 1 or c >= n:
        raise ValueError(f"need 1 <= c < n, got c={c}, n={n}")
    disc = k + n * (n - k - c) / c
    if disc < 0:
        raise ValueError(f"no real solution: n={n} too small for radius**2={k} with c={c}")
    a = (math.sqrt(k) + math.sqrt(disc)) / n
    b = (math.sqrt(k) - c * a) / (n - c)
    return a, b


def gen_signal(model: SignalModel, seed: int) -> np.ndarray:
    """Draw a random member of the model from the seed's "signal" stream.

    Sparse: uniform support, Gaussian values on it, normalized to the unit
    sphere. LowRank: rank-``r`` SVD truncation of a Gaussian matrix,
    normalized in Frobenius norm. Both are then scaled by a uniform draw
    from ``[alpha, beta]`` (a no-op on the sphere ``alpha = beta``).
    L1Ball: the two-valued construction with ``c`` large entries,
    ``c ~ U{1..ceil(0.6 k)}`` resampled while infeasible; it has unit l2
    norm and l1 norm exactly ``radius``.
    """
    rng = stream(seed, "signal")
    s = model.structure
    if isinstance(s, Sparse):
        x = np.zeros(s.n)
        support = rng.choice(s.n, size=min(s.k, s.n), replace=False)
        vals = rng.standard_normal(support.size)
        x[support] = vals / np.linalg.norm(vals)
    elif isinstance(s, LowRank):
        G = rng.standard_normal((s.n1, s.n2))
        U, sv, Vt = np.linalg.svd(G, full_matrices=False)
        sv[s.r :] = 0.0
        M = (U * sv) @ Vt
        x = (M / np.linalg.norm(M)).reshape(-1, order="F")
    else:
        k = s.radius * s.radius
        cmax = max(1, math.ceil(0.6 * k))
        for _ in range(1000):
            c = int(rng.integers(1, cmax + 1))
            a, b = l1ball_magnitudes(s.radius, s.n, c)
            if b >= 0:
                break
        else:
            raise ValueError("could not draw a feasible two-valued vector; radius too large for n")
        mags = np.full(s.n, b)
        mags[:c] = a
        return rng.choice(np.array([-1.0, 1.0]), size=s.n) * mags
    scale = model.alpha if model.alpha == model.beta else rng.uniform(model.alpha, model.beta)
    return x * scale


def restricted_dual_norm(model: SignalModel, z, phi: float) -> float:
    """Support function of ``(K - K)`` intersected with the radius-``phi`` ball.

    Closed forms: for ``k``-sparse models this is ``phi`` times the l2 norm
    of the ``2k`` largest-magnitude entries of ``z``; for rank-``r`` models,
    ``phi`` times the l2 norm of the ``2r`` largest singular values of the
    reshaped ``z``. The l1 ball has no such closed form here.
    """
    if not (math.isfinite(phi) and phi > 0):
        raise ValueError(f"phi must be a positive finite real, got {phi}")
    z = _check_dim(model, z)
    s = model.structure
    if isinstance(s, Sparse):
        top = min(2 * s.k, s.n)
        largest = np.sort(np.abs(z))[s.n - top :]
        return phi * float(np.linalg.norm(largest))
    if isinstance(s, LowRank):
        sv = np.linalg.svd(z.reshape((s.n1, s.n2), order="F"), compute_uv=False)
        top = min(2 * s.r, sv.size)
        return phi * float(np.linalg.norm(sv[:top]))
    raise UnsupportedModelError("restricted dual norm has no closed form for l1-ball models")


def random_in_model(model: SignalModel, seed: int) -> np.ndarray:
    """Model member used for random initialization (derived "init" stream)."""
    return gen_signal(model, derive_seed(seed, "init"))
