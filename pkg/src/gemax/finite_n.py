"""Exact finite-n largest-eigenvalue distributions F_{n,1}, F_{n,2}, F_{n,4}.

Everything is driven by the endpoint resolvent values

    q_n(t) = ((I - K_{n,2})^{-1} phi)(t),   p_n(t) = ((I - K_{n,2})^{-1} psi)(t)

on (t, infinity) and their tail integrals a(t) = int_t^inf q_n,
b(t) = int_t^inf p_n.  The GOE/GSE closed forms are hyperbolic functions
of g = sqrt(2 a b); an independent first-principles path recomputes the
same epsilon quantities directly from the resolvent for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NumericalError, ParameterError
from .fredholm import (
    assemble,
    fredholm_log_det,
    hermite_kernel,
    inner_product,
    nystrom_extend,
    resolvent_solve,
    resolvent_solve_many,
)
from .special import build_grid, phi_psi_values

DEFAULT_NODES = 64


def _upper_cutoff(n: int, t: float) -> float:
    # beyond sqrt(2n)+10 the wave functions are < 1e-16 of their peak
    return max(t + 1.0, math.sqrt(2.0 * n) + 10.0)


def _lower_cutoff(n: int) -> float:
    return -(math.sqrt(2.0 * n) + 10.0)


@dataclass(frozen=True)
class FiniteNEvaluation:
    """Per-(n, t) bundle of endpoint quantities and distribution values."""

    n: int
    t: float
    q_n: float
    p_n: float
    a: float
    b: float
    f_n2: float
    f_n1: float | None
    f_n4: float | None


@dataclass(frozen=True)
class EpsilonQuantities:
    """The epsilon-operator quantities entering the GOE/GSE representations."""

    v_tilde_eps: float
    q_eps: float
    p1: float
    r1: float
    p4: float
    r4: float
    c_phi: float
    c_psi: float


@lru_cache(maxsize=200_000)
def _endpoint_state(n: int, t: float, nodes: int):
    """Operator on (t, T), LU-backed q_n(t), p_n(t) and node solutions."""
    grid = build_grid(t, _upper_cutoff(n, t), nodes)
    op = assemble(f"hermite({n})", grid)
    phi, psi = phi_psi_values(n, grid.nodes)
    sols = resolvent_solve_many(op, np.column_stack([phi, psi]))
    q_sol = sols[:, 0]
    p_sol = sols[:, 1]
    wq = op.grid.weights * q_sol
    wp = op.grid.weights * p_sol
    krow = op.kernel_row(t)
    phi_t, psi_t = phi_psi_values(n, t)
    q_t = float(phi_t + krow @ wq)
    p_t = float(psi_t + krow @ wp)
    return op, q_sol, p_sol, q_t, p_t


def q_p_n(n: int, t: float, nodes: int = DEFAULT_NODES) -> tuple[float, float]:
    """Endpoint resolvent values (q_n(t), p_n(t))."""
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    _, _, _, q_t, p_t = _endpoint_state(n, t, nodes)
    return q_t, p_t


@lru_cache(maxsize=50_000)
def _tail_integrals(n: int, t: float, nodes: int):
    """a(t), b(t) and int_t^inf (x - t) q_n(x) p_n(x) dx on a shared outer grid."""
    outer = build_grid(t, _upper_cutoff(n, t), nodes)
    q_vals = np.empty(nodes)
    p_vals = np.empty(nodes)
    for j, x in enumerate(outer.nodes):
        q_vals[j], p_vals[j] = q_p_n(n, float(x), nodes)
    a = float(np.sum(outer.weights * q_vals))
    b = float(np.sum(outer.weights * p_vals))
    moment = float(np.sum(outer.weights * (outer.nodes - t) * q_vals * p_vals))
    return a, b, moment


def ab(n: int, t: float, nodes: int = DEFAULT_NODES) -> tuple[float, float]:
    """Tail integrals a(t) = int_t^inf q_n, b(t) = int_t^inf p_n."""
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    a, b, _ = _tail_integrals(n, t, nodes)
    return a, b


@lru_cache(maxsize=1024)
def c_constants(n: int, nodes: int = 400) -> tuple[float, float]:
    """The constants c_phi = (1/2) int phi and c_psi = (1/2) int psi.

    Parity kills one of the two: c_phi = 0 for n odd, c_psi = 0 for n even.
    For n odd c_psi has the closed form
    (pi (n-1))^{1/4} 2^{-3/4-(n-1)/2} ((n-1)!)^{1/2} / ((n-1)/2)!;
    for n even c_phi is computed by quadrature of the even integrand.
    """
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    if n % 2 == 1:
        m = n - 1
        if m == 0:
            # psi = (1/2)^{1/4} phi_0 and int phi_0 = sqrt(2) pi^{1/4}
            c_psi = 2.0 ** -0.75 * math.pi ** 0.25
        else:
            log_cpsi = 0.25 * math.log(math.pi * m) + (-0.75 - 0.5 * m) * math.log(2.0)
            log_cpsi += 0.5 * math.lgamma(m + 1) - math.lgamma(m // 2 + 1)
            c_psi = math.exp(log_cpsi)
        return 0.0, c_psi
    # n even: c_phi by quadrature of the even function phi on (0, T), doubled
    upper = _upper_cutoff(n, 0.0)
    grid = build_grid(0.0, upper, nodes)
    phi, _ = phi_psi_values(n, grid.nodes)
    c_phi = float(np.sum(grid.weights * phi))  # = (1/2) * 2 * int_0^inf phi
    return c_phi, 0.0


def log_f_n2(n: int, t: float, method: str = "determinant", nodes: int = DEFAULT_NODES) -> float:
    """log F_{n,2}(t); safe where the probability underflows."""
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    if method == "determinant":
        op, _, _, _, _ = _endpoint_state(n, t, nodes)
        return fredholm_log_det(op)
    if method == "exponential":
        _, _, moment = _tail_integrals(n, t, nodes)
        return -2.0 * moment
    raise ParameterError(f"unknown method {method!r}")


# when log det(I - K) is this small the resolvent conditioning no longer
# supports a trustworthy sign for the assembled bracket; a negative bracket
# there is rounding noise on a vanishing probability, not a real failure
LOG_FLOOR = -30.0


def f_n2(n: int, t: float, method: str = "determinant", nodes: int = DEFAULT_NODES) -> float:
    """GUE distribution F_{n,2}(t) = det(I - K_{n,2}) = exp(-2 int (x-t) q_n p_n)."""
    try:
        return float(math.exp(log_f_n2(n, t, method, nodes)))
    except NumericalError:
        # sign loss happens only once det(I - K) is below rounding noise
        return 0.0


def cosh_sqrt(z: float) -> float:
    """cosh(sqrt(z)) as an entire function of z (cos(sqrt(-z)) for z < 0)."""
    if abs(z) < 1e-8:
        return 1.0 + z / 2.0 + z * z / 24.0
    if z >= 0.0:
        return math.cosh(math.sqrt(z))
    return math.cos(math.sqrt(-z))


def coshm1_sqrt(z: float) -> float:
    """(cosh(sqrt(z)) - 1)/z as an entire function of z."""
    if abs(z) < 1e-8:
        return 0.5 + z / 24.0 + z * z / 720.0
    return (cosh_sqrt(z) - 1.0) / z


def sinhc_sqrt(z: float) -> float:
    """sinh(sqrt(z))/sqrt(z) as an entire function of z."""
    if abs(z) < 1e-8:
        return 1.0 + z / 6.0 + z * z / 120.0
    if z >= 0.0:
        g = math.sqrt(z)
        return math.sinh(g) / g
    g = math.sqrt(-z)
    return math.sin(g) / g


def _hyperbolic_block(a: float, b: float):
    """cosh g, sqrt(a/2b) sinh g, sqrt(b/2a) sinh g with g = sqrt(2ab).

    Everything is expressed through the entire functions cosh(sqrt(z)) and
    sinh(sqrt(z))/sqrt(z) of z = 2ab, so negative or vanishing products
    (g imaginary or zero) are handled without branching into complex
    arithmetic:  sqrt(a/2b) sinh sqrt(2ab) = a * sinh(sqrt(z))/sqrt(z).
    """
    z = 2.0 * a * b
    cosh_g = cosh_sqrt(z)
    shc = sinhc_sqrt(z)
    rho_s = a * shc  # sqrt(a/(2b)) sinh g
    r_s = b * shc  # sqrt(b/(2a)) sinh g
    return cosh_g, rho_s, r_s


def epsilon_closed(n: int, t: float, nodes: int = DEFAULT_NODES) -> EpsilonQuantities:
    """Closed-form epsilon quantities as hyperbolic functions of sqrt(2ab).

    The GSE set (c_psi terms) is the published one up to the sign of the
    sinh term in P_{n,4}; the GOE set up to the sign of the c_phi term in
    R_{n,1}.  Both corrections are forced by the first-principles path
    (:func:`epsilon_numeric`) and by the requirement that the assembled
    determinant reproduce the direct F_{n,1}/F_{n,4} formulas.
    """
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    a, b = ab(n, t, nodes)
    c_phi, c_psi = c_constants(n)
    cosh_g, rho_s, r_s = _hyperbolic_block(a, b)
    half = 0.5 * (1.0 + cosh_g)
    if n % 2 == 1:  # GSE parity: c_phi = 0
        v_tilde = 1.0 - half
        q_eps = -rho_s
        p4 = -c_psi * half + r_s
        r4 = -c_psi * rho_s + cosh_g - 1.0
        p1 = -r_s  # c_phi = 0 collapses the GOE forms
        r1 = 1.0 - cosh_g
    else:  # GOE parity: c_psi = 0
        v_tilde = 1.0 - half + c_phi * r_s
        q_eps = -rho_s + c_phi * cosh_g
        p1 = 2.0 * c_phi * b * b * coshm1_sqrt(2.0 * a * b) - r_s
        r1 = 1.0 + 2.0 * c_phi * r_s - cosh_g
        p4 = r_s
        r4 = cosh_g - 1.0
    return EpsilonQuantities(
        v_tilde_eps=v_tilde,
        q_eps=q_eps,
        p1=p1,
        r1=r1,
        p4=p4,
        r4=r4,
        c_phi=c_phi,
        c_psi=c_psi,
    )


def epsilon_numeric(
    n: int, t: float, nodes: int = DEFAULT_NODES, outer_nodes: int | None = None
) -> EpsilonQuantities:
    """First-principles epsilon quantities from the resolvent, no closed forms.

    eps phi(x) = c_phi - int_x^inf phi is built by quadrature, fed through
    (I - K)^{-1}, and the script quantities are quadratures of the Nystrom
    extensions of P_n and of the resolvent kernel over (-inf, t) and
    against the kernel of eps.
    """
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    if outer_nodes is None:
        # phi_n oscillates ~n/2 times across the bulk; GL resolves ~m/pi periods
        outer_nodes = max(200, 6 * n)
    return _epsilon_numeric(n, t, nodes, outer_nodes)


@lru_cache(maxsize=50_000)
def _epsilon_numeric(n: int, t: float, nodes: int, outer_nodes: int) -> EpsilonQuantities:
    op, _, p_sol, _, _ = _endpoint_state(n, t, nodes)
    grid = op.grid
    c_phi, c_psi = c_constants(n)
    upper = grid.upper

    def tail_phi(x: float) -> float:
        g = build_grid(x, max(upper, x + 1.0), nodes)
        phi, _ = phi_psi_values(n, g.nodes)
        return float(np.sum(g.weights * phi))

    def eps_phi(x):
        pts = np.atleast_1d(np.asarray(x, dtype=float))
        vals = np.array([c_phi - tail_phi(float(p)) for p in pts])
        return vals if np.asarray(x).ndim else float(vals[0])

    _, psi_nodes = phi_psi_values(n, grid.nodes)
    eps_phi_nodes = np.asarray(eps_phi(grid.nodes))
    q_eps_sol = resolvent_solve(op, eps_phi_nodes, rhs_id="eps phi")
    v_tilde = inner_product(grid, q_eps_sol.node_values, psi_nodes)
    q_eps = nystrom_extend(op, q_eps_sol, eps_phi, t)

    # P_n(x;t) extension and resolvent kernel column R_n(x,t;t)
    psi_sol_obj = resolvent_solve(op, psi_nodes, rhs_id="psi")
    k_col = op.kernel_row(t)  # K(t, x_j) = K(x_j, t)
    r_sol = resolvent_solve(op, np.asarray(k_col), rhs_id="K(.,t)")

    def p_extend(x):
        def psi_fn(pts):
            _, ps = phi_psi_values(n, pts)
            return ps

        return nystrom_extend(op, psi_sol_obj, psi_fn, x)

    # quadratures over (-inf, t): integrands decay like the wave functions
    low = _lower_cutoff(n)
    left = build_grid(min(low, t - 1.0), t, outer_nodes)
    p_left = p_extend(left.nodes)
    # R_n(x, t) for x on the left grid
    k_left = hermite_kernel(n, left.nodes[:, None], grid.nodes[None, :])
    k_xt = hermite_kernel(n, left.nodes, np.full_like(left.nodes, t))
    r_left = k_xt + k_left @ (grid.weights * r_sol.node_values)
    p1 = float(np.sum(left.weights * p_left))
    r1 = float(np.sum(left.weights * r_left))

    # right-side pieces int_t^inf P_n and int_t^inf R_n(x,t)
    p_right = float(np.sum(grid.weights * p_sol))
    k_nodes_t = np.asarray(op.kernel_row(grid.nodes[:, None]))  # (m, m) full block
    r_right_vals = np.asarray(k_col) + k_nodes_t @ (grid.weights * r_sol.node_values)
    r_right = float(np.sum(grid.weights * r_right_vals))

    p4 = 0.5 * (p_right - p1)
    r4 = 0.5 * (r_right - r1)
    return EpsilonQuantities(
        v_tilde_eps=float(v_tilde),
        q_eps=float(q_eps),
        p1=p1,
        r1=r1,
        p4=p4,
        r4=r4,
        c_phi=c_phi,
        c_psi=c_psi,
    )


def f1_sq_ratio(eps: EpsilonQuantities) -> float:
    """F_{n,1}^2 / F_{n,2} assembled from epsilon quantities (n even)."""
    return (1.0 - eps.v_tilde_eps) * (1.0 - 0.5 * eps.r1) - 0.5 * (
        eps.q_eps - eps.c_phi
    ) * eps.p1


def f4_sq_ratio(eps: EpsilonQuantities) -> float:
    """F_{n,4}^2 / F_{n,2} assembled from epsilon quantities (n odd).

    The c_psi contributions of q_eps * p4 and of r4 cancel identically,
    so the value is invariant under c_psi -> 0.
    """
    return (1.0 - eps.v_tilde_eps) * (1.0 + 0.5 * eps.r4) + 0.5 * eps.q_eps * eps.p4


def f_n1(
    n: int,
    t: float,
    nodes: int = DEFAULT_NODES,
    method: str = "assembly",
    outer_nodes: int | None = None,
) -> float:
    """GOE distribution F_{n,1}(t) for n even.

    The default "assembly" method squares to F_{n,2} times the determinant
    representation evaluated with first-principles epsilon quantities; it is
    exact up to quadrature error.  The "closed" method evaluates the
    hyperbolic bracket in a(t), b(t) instead, which is an edge asymptotic
    (it degrades to percent-level accuracy at small n away from t -> inf).
    """
    if n < 1 or n % 2 != 0:
        raise ParameterError(f"F_n1 requires even n, got {n}")
    try:
        log_f2 = log_f_n2(n, t, "determinant", nodes)
    except NumericalError:
        # sign loss happens only once det(I - K) is below rounding noise,
        # where the true probability is far beyond double-precision resolution
        return 0.0
    if method == "assembly":
        eps = epsilon_numeric(n, t, nodes, outer_nodes)
        bracket = f1_sq_ratio(eps)
    elif method == "closed":
        a, b = ab(n, t, nodes)
        c_phi, _ = c_constants(n)
        cosh_g, _, r_s = _hyperbolic_block(a, b)
        # regrouped so the (b/a)(cosh g - 1) piece is entire in the product ab
        bracket = (
            0.5 * (1.0 + cosh_g)
            + 2.0 * c_phi * c_phi * b * b * coshm1_sqrt(2.0 * a * b)
            - 2.0 * c_phi * r_s
        )
    else:
        raise ParameterError(f"unknown method {method!r}")
    if bracket < -1e-10:
        if log_f2 < LOG_FLOOR:
            return 0.0  # ill-conditioned bracket noise on a vanishing probability
        raise NumericalError(f"negative squared ratio {bracket} at n={n}, t={t}")
    val = math.exp(0.5 * (log_f2 + math.log(max(bracket, 0.0)))) if bracket > 0 else 0.0
    return min(val, 1.0)


def f_n4(
    n: int,
    u: float,
    nodes: int = DEFAULT_NODES,
    method: str = "assembly",
    outer_nodes: int | None = None,
) -> float:
    """GSE-side distribution F_{n,4}(u) for odd kernel index n.

    u is the GSE-scale argument; the representations live on the GUE-side
    variable t = u sqrt(2).  The index n labels the Hermite kernel K_{n,2},
    not a matrix size: F_{n,4} is the largest-eigenvalue distribution of the
    symplectic ensemble with (n-1)/2 eigenvalues (so F_{1,4} is identically
    one).  See :func:`gse_largest_cdf` for the matrix-size parametrization.

    The default "assembly" method is exact up to quadrature error; "closed"
    is the edge-asymptotic cosh(sqrt(ab/2)) exp(-int (x-t) q_n p_n) form.
    """
    if n < 1 or n % 2 != 1:
        raise ParameterError(f"F_n4 requires odd n, got {n}")
    t = u * math.sqrt(2.0)
    try:
        log_f2 = log_f_n2(n, t, "determinant", nodes)
    except NumericalError:
        return 0.0
    if method == "assembly":
        eps = epsilon_numeric(n, t, nodes, outer_nodes)
        bracket = f4_sq_ratio(eps)
        if bracket < -1e-10:
            if log_f2 < LOG_FLOOR:
                return 0.0
            raise NumericalError(f"negative squared ratio {bracket} at n={n}, u={u}")
        val = (
            math.exp(0.5 * (log_f2 + math.log(max(bracket, 0.0)))) if bracket > 0 else 0.0
        )
    elif method == "closed":
        a, b, moment = _tail_integrals(n, t, nodes)
        val = cosh_sqrt(0.5 * a * b) * math.exp(-moment)
    else:
        raise ParameterError(f"unknown method {method!r}")
    return min(val, 1.0)


def gse_largest_cdf(
    n_eigs: int, u: float, nodes: int = DEFAULT_NODES, method: str = "assembly"
) -> float:
    """P(largest eigenvalue <= u) for the symplectic ensemble with n_eigs eigenvalues.

    The kernel index of the representation is 2 n_eigs + 1: the symplectic
    ensemble with N eigenvalues is governed by the odd Hermite kernel of
    order 2N + 1.
    """
    if n_eigs < 1:
        raise ParameterError(f"need n_eigs >= 1, got {n_eigs}")
    return f_n4(2 * n_eigs + 1, u, nodes, method)


def evaluate(n: int, t: float, nodes: int = DEFAULT_NODES) -> FiniteNEvaluation:
    """Bundle q_n, p_n, a, b and all parity-valid distribution values at t."""
    q_t, p_t = q_p_n(n, t, nodes)
    a, b, moment = _tail_integrals(n, t, nodes)
    fn2 = math.exp(-2.0 * moment)
    fn1 = f_n1(n, t, nodes) if n % 2 == 0 else None
    fn4 = f_n4(n, t / math.sqrt(2.0), nodes) if n % 2 == 1 else None
    return FiniteNEvaluation(
        n=n, t=t, q_n=q_t, p_n=p_t, a=a, b=b, f_n2=min(fn2, 1.0), f_n1=fn1, f_n4=fn4
    )
