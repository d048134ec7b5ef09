"""Nystrom discretization of the Hermite and Airy kernels.

A kernel K on (lower, upper) is discretized as the symmetric matrix
A_ij = sqrt(w_i) K(x_i, x_j) sqrt(w_j).  Fredholm determinants are
det(I - A); resolvent solves return the node values of (I - K)^{-1} f,
and the natural Nystrom formula extends solutions off the grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .errors import NumericalError, ParameterError
from .special import QuadratureGrid, airy, hermite_phi_deriv, hermite_phi_two

#: below this separation the difference quotient loses too many digits
#: and the diagonal-limit form with a first-order Taylor step is used
DIAG_GUARD = 1e-6


def _hermite_parts(n: int, x):
    """phi_n, phi_{n-1} and their derivatives, scaled by sqrt(n/2)."""
    f, g = hermite_phi_two(n, x)  # f = phi_n, g = phi_{n-1}
    x = np.asarray(x, dtype=float)
    fp = -x * f + np.sqrt(2.0 * n) * g
    gp = hermite_phi_deriv(n - 1, x)
    return f, g, fp, gp


def hermite_kernel(n: int, x, y):
    """Christoffel-Darboux kernel sqrt(n/2) (phi_n(x)phi_{n-1}(y) - phi_n(y)phi_{n-1}(x))/(x-y).

    Near the diagonal the limit form sqrt(n/2)(phi_n'(x)phi_{n-1}(x) -
    phi_n(x)phi_{n-1}'(x)) is used, with a first-order Taylor correction
    in (y - x).
    """
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    c = np.sqrt(n / 2.0)
    fx, gx, fpx, gpx = _hermite_parts(n, x)
    fy, gy, fpy, gpy = _hermite_parts(n, y)
    diff = x - y
    near = np.abs(diff) <= DIAG_GUARD
    safe = np.where(near, 1.0, diff)
    off = c * (fx * gy - fy * gx) / safe
    # diagonal limit at x plus d/dy of the limit, evaluated via symmetry:
    # K(x, x+h) = K0(x) + (h/2) K0'(x) + O(h^2) with K0 the diagonal value
    diag_x = c * (fpx * gx - fx * gpx)
    diag_y = c * (fpy * gy - fy * gpy)
    taylor = 0.5 * (diag_x + diag_y)  # midpoint form, first-order accurate
    out = np.where(near, taylor, off)
    if out.ndim == 0:
        return float(out)
    return out


def airy_kernel(x, y):
    """(Ai(x)Ai'(y) - Ai(y)Ai'(x))/(x - y) with diagonal limit Ai'(x)^2 - x Ai(x)^2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ax, apx = airy(x)
    ay, apy = airy(y)
    diff = x - y
    near = np.abs(diff) <= DIAG_GUARD
    safe = np.where(near, 1.0, diff)
    off = (ax * apy - ay * apx) / safe
    diag_x = apx * apx - x * ax * ax
    diag_y = apy * apy - y * ay * ay
    taylor = 0.5 * (diag_x + diag_y)
    out = np.where(near, taylor, off)
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class DiscretizedKernel:
    """Symmetrized Nystrom matrix of a kernel on a grid."""

    grid: QuadratureGrid
    matrix: np.ndarray
    kernel_id: str
    _hermite_n: int | None = field(default=None, repr=False)

    def kernel_row(self, x) -> np.ndarray:
        """Kernel values K(x, x_j) at the grid nodes (unsymmetrized)."""
        if self._hermite_n is not None:
            return hermite_kernel(self._hermite_n, x, self.grid.nodes)
        return airy_kernel(x, self.grid.nodes)

    @cached_property
    def _lu(self):
        ident = np.eye(self.matrix.shape[0])
        return lu_factor(ident - self.matrix)


@dataclass(frozen=True)
class ResolventSolution:
    """Node values of (I - K)^{-1} rhs on the grid of the parent operator."""

    node_values: np.ndarray
    rhs_id: str


def assemble(kernel_id: str, grid: QuadratureGrid) -> DiscretizedKernel:
    """Build the symmetrized Nystrom matrix for ``"airy"`` or ``"hermite(n)"``."""
    x = grid.nodes
    if kernel_id == "airy":
        raw = airy_kernel(x[:, None], x[None, :])
        n = None
    elif kernel_id.startswith("hermite(") and kernel_id.endswith(")"):
        n = int(kernel_id[len("hermite(") : -1])
        raw = hermite_kernel(n, x[:, None], x[None, :])
    else:
        raise ParameterError(f"unknown kernel_id {kernel_id!r}")
    sw = grid.sqrt_weights
    matrix = sw[:, None] * raw * sw[None, :]
    matrix = 0.5 * (matrix + matrix.T)  # scrub last-bit asymmetry
    return DiscretizedKernel(grid=grid, matrix=matrix, kernel_id=kernel_id, _hermite_n=n)


def fredholm_log_det(op: DiscretizedKernel) -> float:
    """log det(I - K); stays finite where the determinant underflows."""
    sign, logdet = np.linalg.slogdet(np.eye(op.matrix.shape[0]) - op.matrix)
    if sign <= 0 or not np.isfinite(logdet):
        raise NumericalError(f"determinant lost positivity for {op.kernel_id}")
    return float(logdet)


def fredholm_det(op: DiscretizedKernel) -> float:
    """det(I - K) via pivoted LU in log space; value in (0, 1] for these kernels."""
    return float(np.exp(fredholm_log_det(op)))


def resolvent_solve(op: DiscretizedKernel, rhs: np.ndarray, rhs_id: str = "") -> ResolventSolution:
    """Solve the Nystrom system (I - K) f = rhs; returns f at the nodes.

    With the symmetrized matrix A the solve is (I - A) y = sqrt(w) rhs,
    f_j = y_j / sqrt(w_j).
    """
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape != op.grid.nodes.shape:
        raise ParameterError("rhs sample count does not match grid")
    sw = op.grid.sqrt_weights
    y = lu_solve(op._lu, sw * rhs)
    if not np.all(np.isfinite(y)):
        raise NumericalError(f"resolvent solve failed for {op.kernel_id}")
    return ResolventSolution(node_values=y / sw, rhs_id=rhs_id)


def resolvent_solve_many(op: DiscretizedKernel, rhs_block: np.ndarray) -> np.ndarray:
    """Column-wise solves sharing one factorization; returns node values."""
    sw = op.grid.sqrt_weights
    y = lu_solve(op._lu, sw[:, None] * rhs_block)
    if not np.all(np.isfinite(y)):
        raise NumericalError(f"resolvent solve failed for {op.kernel_id}")
    return y / sw[:, None]


def nystrom_extend(op: DiscretizedKernel, sol: ResolventSolution, rhs_fn, x):
    """Natural Nystrom extension rhs(x) + sum_j w_j K(x, x_j) f_j.

    Valid at any finite x, including points below the grid interval;
    at a node it reproduces the node value.
    """
    xarr = np.asarray(x, dtype=float)
    scalar = xarr.ndim == 0
    pts = np.atleast_1d(xarr)
    kernel_block = op.kernel_row(pts[:, None])  # shape (len(pts), count)
    vals = np.asarray(rhs_fn(pts), dtype=float) + kernel_block @ (
        op.grid.weights * sol.node_values
    )
    return float(vals[0]) if scalar else vals


def inner_product(grid: QuadratureGrid, f: np.ndarray, g: np.ndarray) -> float:
    """Quadrature inner product sum_j w_j f_j g_j on the grid interval."""
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != grid.nodes.shape or g.shape != grid.nodes.shape:
        raise ParameterError("sample count does not match grid")
    return float(np.sum(grid.weights * f * g))
