"""Moment maps and energy gradients on the cotangent phase space.

States are pairs (x, y) of complex vectors: base and fiber coordinates
on the cotangent space of C^n.  The fiber transforms by the negative
transpose of the base action, which for a skew-Hermitian generator e is
its entrywise conjugate.  Real moment-map components carry the one-half
normalization; the holomorphic component does not, so that for a circle
acting with weight one on C the maps reduce to (|x|^2 - |y|^2)/2 and xy.

Gradients are returned in complex form: the complex vector whose real
and imaginary parts are the partial derivatives with respect to the real
and imaginary parts of the coordinate.  Flowing along the negative of
that vector is plain gradient descent in real coordinates.
"""

from typing import Tuple

import numpy as np

from ..errors import InputError
from .reps import GroupRep

ENERGY_KINDS = ("muR2", "muC2", "muHK2")


def moment_real(rep: GroupRep, alpha: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Real moment map of the base action alone, level subtracted."""
    out = np.empty(rep.k)
    for a in range(rep.k):
        out[a] = -0.5 * np.real(np.vdot(1j * (rep.basis[a] @ x), x))
    return out - np.asarray(alpha, dtype=np.float64)


def moment_hk(rep: GroupRep, alpha, beta, x, y) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The hyperkahler triple (mu1, mu2, mu3), levels subtracted."""
    mu1 = np.empty(rep.k)
    for a in range(rep.k):
        e = rep.basis[a]
        mu1[a] = (-0.5 * np.real(np.vdot(1j * (e @ x), x))
                  - 0.5 * np.real(np.vdot(1j * (np.conj(e) @ y), y)))
    mu1 -= np.asarray(alpha, dtype=np.float64)
    mu_c = moment_holo(rep, beta, x, y)
    return mu1, np.real(mu_c), np.imag(mu_c)


def moment_holo(rep: GroupRep, beta, x, y) -> np.ndarray:
    """Holomorphic moment map mu_2 + i mu_3, level subtracted."""
    out = np.empty(rep.k, dtype=np.complex128)
    for a in range(rep.k):
        out[a] = -1j * (y @ (rep.basis[a] @ x))
    return out - np.asarray(beta, dtype=np.complex128)


def _holo_partials(rep: GroupRep, x, y):
    """Per-component complex partials of the holomorphic moment map."""
    dx = np.empty((rep.k, x.shape[0]), dtype=np.complex128)
    dy = np.empty((rep.k, y.shape[0]), dtype=np.complex128)
    for a in range(rep.k):
        e = rep.basis[a]
        dx[a] = -1j * (e.T @ y)
        dy[a] = -1j * (e @ x)
    return dx, dy


def grad_moment_real(rep: GroupRep, x, y, a: int):
    """Gradient (complex form) of the a-th real moment component."""
    e = rep.basis[a]
    return -1j * (e @ x), -1j * (np.conj(e) @ y)


def grad_component(rep: GroupRep, index: int, alpha, beta, x, y):
    """Gradient of |mu_index|^2 for index in {1, 2, 3}."""
    gx = np.zeros_like(x, dtype=np.complex128)
    gy = np.zeros_like(y, dtype=np.complex128)
    if index == 1:
        mu1, _, _ = moment_hk(rep, alpha, beta, x, y)
        for a in range(rep.k):
            dgx, dgy = grad_moment_real(rep, x, y, a)
            gx += 2.0 * mu1[a] * dgx
            gy += 2.0 * mu1[a] * dgy
        return gx, gy
    if index not in (2, 3):
        raise InputError("component index must be 1, 2 or 3")
    mu_c = moment_holo(rep, beta, x, y)
    dx, dy = _holo_partials(rep, x, y)
    if index == 2:
        weight = np.real(mu_c)
        factor = 1.0
    else:
        weight = np.imag(mu_c)
        factor = 1j
    for a in range(rep.k):
        gx += 2.0 * weight[a] * factor * np.conj(dx[a])
        gy += 2.0 * weight[a] * factor * np.conj(dy[a])
    return gx, gy


def energy(rep: GroupRep, which: str, alpha, beta, x, y) -> float:
    """Squared distance of the selected moment map from its level."""
    if which not in ENERGY_KINDS:
        raise InputError(f"unknown energy kind {which!r}")
    total = 0.0
    if which in ("muR2", "muHK2"):
        mu1, _, _ = moment_hk(rep, alpha, beta, x, y)
        total += float(np.sum(mu1 * mu1))
    if which in ("muC2", "muHK2"):
        mu_c = moment_holo(rep, beta, x, y)
        total += float(np.sum(np.abs(mu_c) ** 2))
    return total


def grad(rep: GroupRep, which: str, alpha, beta, x, y):
    """Gradient (complex form) of the selected energy."""
    if which not in ENERGY_KINDS:
        raise InputError(f"unknown energy kind {which!r}")
    gx = np.zeros_like(x, dtype=np.complex128)
    gy = np.zeros_like(y, dtype=np.complex128)
    if which in ("muR2", "muHK2"):
        ax, ay = grad_component(rep, 1, alpha, beta, x, y)
        gx += ax
        gy += ay
    if which in ("muC2", "muHK2"):
        mu_c = moment_holo(rep, beta, x, y)
        dx, dy = _holo_partials(rep, x, y)
        for a in range(rep.k):
            gx += 2.0 * mu_c[a] * np.conj(dx[a])
            gy += 2.0 * mu_c[a] * np.conj(dy[a])
    return gx, gy


def abelian_gradient_norm2(bmat: np.ndarray, beta: np.ndarray, x, y) -> float:
    """Closed form for |grad of the holomorphic energy|^2 on a torus.

    For the diagonal torus with integer weight rows b_j the squared
    gradient norm of (B^T z - beta)^H G^{-1} (B^T z - beta), z_j = x_j y_j,
    equals 4 sum_j (|x_j|^2 + |y_j|^2) |(B w)_j|^2 with w = G^{-1}(B^T z - beta).
    Here beta is the level in the original weight coordinates.
    """
    bmat = np.asarray(bmat, dtype=np.float64)
    if bmat.ndim != 2:
        raise InputError("weight matrix must be two-dimensional")
    if bmat.shape[1] == 0:
        return 0.0
    z = np.asarray(x) * np.asarray(y)
    gram = bmat.T @ bmat
    w = np.linalg.solve(gram, bmat.T @ z - np.asarray(beta, dtype=np.complex128))
    rates = bmat @ w
    sizes = np.abs(np.asarray(x)) ** 2 + np.abs(np.asarray(y)) ** 2
    return float(4.0 * np.sum(sizes * np.abs(rates) ** 2))


def pack_state(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Interleave (x, y) into one flat real vector."""
    xs = np.ascontiguousarray(x, dtype=np.complex128)
    ys = np.ascontiguousarray(y, dtype=np.complex128)
    return np.concatenate([xs.view(np.float64), ys.view(np.float64)])


def unpack_state(state: np.ndarray, n: int):
    """Inverse of pack_state for base dimension n."""
    flat = np.ascontiguousarray(state, dtype=np.float64)
    x = flat[:2 * n].copy().view(np.complex128)
    y = flat[2 * n:].copy().view(np.complex128)
    return x, y
