"""Limiting soft-edge quantities on the Airy kernel and Edgeworth expansions.

The building block is the resolvent (I - K_Ai)^{-1} on (s, infinity).  Its
endpoint values against x^i Ai and x^i Ai' give q_i(s), p_i(s); inner
products give u_i, v_i, v~_i, w_i.  In particular q_0 is the Hastings-McLeod
solution of Painleve II, recovered here from the resolvent rather than by
ODE shooting (which is exponentially unstable).

The integrals mu, nu, alpha, eta need the endpoint scalars as *functions*
of the left endpoint, so the outer quadratures re-evaluate a small bundle
at every outer node; an LRU cache keyed by the node makes repeated bundle
construction cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ParameterError
from .fredholm import assemble, fredholm_log_det, resolvent_solve_many
from .special import airy as airy_fn
from .special import build_grid

DEFAULT_NODES = 96
S_MIN = -10.0
S_MAX = 8.0
SQRT2 = math.sqrt(2.0)


def _window_check(s: float) -> None:
    if not S_MIN <= s <= S_MAX:
        raise ParameterError(f"s = {s} outside supported window [{S_MIN}, {S_MAX}]")


def _cutoff(s: float) -> float:
    # Ai(x) ~ e^{-(2/3)x^{3/2}}: thirty units past max(s, 0) the tail is < 1e-16
    return max(s, 0.0) + 30.0


def tau(n: int, c: float, s: float) -> float:
    """Soft-edge scaling tau(s) = sqrt(2(n+c)) + 2^{-1/2} n^{-1/6} s."""
    if n + c <= 0:
        raise ParameterError(f"need n + c > 0, got n={n}, c={c}")
    return math.sqrt(2.0 * (n + c)) + s / (SQRT2 * n ** (1.0 / 6.0))


@dataclass(frozen=True)
class AiryBundle:
    """Endpoint scalars and integrals of the Airy resolvent at s.

    q, p, u, v, v_tilde, w are triples indexed by the weight power i = 0,1,2
    (rhs x^i Ai and x^i Ai').  eta is split into its c-independent integral
    piece plus (q', p); eta(c) assembles the full definition.
    """

    s: float
    q: tuple[float, float, float]
    p: tuple[float, float, float]
    u: tuple[float, float, float]
    v: tuple[float, float, float]
    v_tilde: tuple[float, float, float]
    w: tuple[float, float, float]
    mu: float
    nu: float
    alpha: float
    eta_integral: float
    q_prime: float

    def eta(self, c: float) -> float:
        return self.eta_integral - (20.0 * c * c * self.q_prime + 3.0 * self.p[0]) / (
            20.0 * SQRT2
        )


@dataclass(frozen=True)
class EdgeworthResult:
    """Terms of an expansion F ~ leading + n^{-1/3} first + n^{-2/3} second."""

    leading: float
    order_one_third: float
    order_two_thirds: float
    combined: float


@lru_cache(maxsize=100_000)
def _point_values(s: float, nodes: int):
    """Endpoint scalars (q_i, p_i, u_i, v_i, v~_i, w_i) of the operator on (s, S)."""
    grid = build_grid(s, _cutoff(s), nodes)
    op = assemble("airy", grid)
    ai, aip = airy_fn(grid.nodes)
    powers = np.column_stack([np.ones(nodes), grid.nodes, grid.nodes**2])
    rhs = np.column_stack([powers * ai[:, None], powers * aip[:, None]])
    sols = resolvent_solve_many(op, rhs)  # columns: Q0 Q1 Q2 P0 P1 P2
    krow = op.kernel_row(s)
    ai_s, aip_s = airy_fn(s)
    endpoint_rhs = np.array([ai_s, s * ai_s, s * s * ai_s, aip_s, s * aip_s, s * s * aip_s])
    endpoint = endpoint_rhs + krow @ (grid.weights[:, None] * sols)
    w_ai = grid.weights * ai
    w_aip = grid.weights * aip
    u = tuple(float(w_ai @ sols[:, i]) for i in range(3))
    v = tuple(float(w_ai @ sols[:, 3 + i]) for i in range(3))
    v_tilde = tuple(float(w_aip @ sols[:, i]) for i in range(3))
    w = tuple(float(w_aip @ sols[:, 3 + i]) for i in range(3))
    q = tuple(float(endpoint[i]) for i in range(3))
    p = tuple(float(endpoint[3 + i]) for i in range(3))
    return q, p, u, v, v_tilde, w


def hastings_mcleod_q(s: float, nodes: int = DEFAULT_NODES) -> float:
    """Hastings-McLeod Painleve II solution q(s), from the Airy resolvent."""
    _window_check(s)
    q, _, _, _, _, _ = _point_values(s, nodes)
    return q[0]


def _q_prime(s: float, nodes: int, h: float = 1e-3) -> float:
    # 5-point central difference; q is analytic so the error is ~h^4
    vals = [hastings_mcleod_q(s + k * h, nodes) for k in (-2, -1, 1, 2)]
    return (vals[0] - 8.0 * vals[1] + 8.0 * vals[2] - vals[3]) / (12.0 * h)


@lru_cache(maxsize=10_000)
def _bundle_cached(s: float, nodes: int) -> AiryBundle:
    q, p, u, v, v_tilde, w = _point_values(s, nodes)
    outer = build_grid(s, _cutoff(s), nodes)
    local = [_point_values(float(x), nodes) for x in outer.nodes]
    qx = np.array([loc[0][0] for loc in local])
    px = np.array([loc[1][0] for loc in local])
    ux = np.array([loc[2][0] for loc in local])
    mu = float(np.sum(outer.weights * qx))
    nu = float(np.sum(outer.weights * px))
    alpha = float(np.sum(outer.weights * qx * ux))
    eta_integrand = np.array(
        [
            6.0 * lq[0] * lv[0]
            + 3.0 * lp[0] * lu[0]
            + 2.0 * lp[2]
            + 2.0 * lp[1] * lv[0]
            + 2.0 * lp[0] * lv[1]
            - 2.0 * lq[2] * lu[0]
            - 2.0 * lq[1] * lu[1]
            - 2.0 * lq[0] * lu[2]
            for lq, lp, lu, lv, _, _ in local
        ]
    )
    eta_integral = float(np.sum(outer.weights * eta_integrand)) / (20.0 * SQRT2)
    return AiryBundle(
        s=s,
        q=q,
        p=p,
        u=u,
        v=v,
        v_tilde=v_tilde,
        w=w,
        mu=mu,
        nu=nu,
        alpha=alpha,
        eta_integral=eta_integral,
        q_prime=_q_prime(s, nodes),
    )


def airy_bundle(s: float, nodes: int = DEFAULT_NODES) -> AiryBundle:
    """All Airy-resolvent scalars and integrals at s (cached)."""
    _window_check(s)
    return _bundle_cached(s, nodes)


def log_f2_limit(s: float, method: str = "exponential", nodes: int = DEFAULT_NODES) -> float:
    """log F_2(s); exponential integral or Airy Fredholm determinant path."""
    _window_check(s)
    if method == "determinant":
        grid = build_grid(s, _cutoff(s), nodes)
        return fredholm_log_det(assemble("airy", grid))
    if method == "exponential":
        outer = build_grid(s, _cutoff(s), nodes)
        qx = np.array([_point_values(float(x), nodes)[0][0] for x in outer.nodes])
        return -float(np.sum(outer.weights * (outer.nodes - s) * qx * qx))
    raise ParameterError(f"unknown method {method!r}")


def f2_limit(s: float, method: str = "exponential", nodes: int = DEFAULT_NODES) -> float:
    """Tracy-Widom distribution F_2(s) = exp(-int (x-s) q(x)^2 dx) = det(I - K_Ai)."""
    return min(math.exp(log_f2_limit(s, method, nodes)), 1.0)


def f1_limit(s: float, nodes: int = DEFAULT_NODES) -> float:
    """Limiting orthogonal-ensemble law F_1(s) = sqrt(F_2(s)) e^{-mu/2}."""
    b = airy_bundle(s, nodes)
    return min(math.exp(0.5 * (log_f2_limit(s, "exponential", nodes) - b.mu)), 1.0)


def f4_limit(s: float, nodes: int = DEFAULT_NODES) -> float:
    """Limiting symplectic-ensemble law F_4(s) = sqrt(F_2(s)) cosh(mu/2)."""
    b = airy_bundle(s, nodes)
    val = math.exp(0.5 * log_f2_limit(s, "exponential", nodes)) * math.cosh(0.5 * b.mu)
    return min(val, 1.0)


def e_c2(s: float, c: float, nodes: int = DEFAULT_NODES) -> float:
    """Second-order unitary correction polynomial E_{c,2}(s)."""
    b = airy_bundle(s, nodes)
    return (
        2.0 * b.w[1]
        - 3.0 * b.u[2]
        + (-20.0 * c * c + 3.0) * b.v[0]
        + b.u[1] * b.v[0]
        - b.u[0] * b.v[1]
        + b.u[0] * b.v[0] ** 2
        - b.u[0] ** 2 * b.w[0]
    )


def e_c1(s: float, c: float, nodes: int = DEFAULT_NODES) -> float:
    """Second-order orthogonal correction E_{c,1}(s), assembled term by term."""
    b = airy_bundle(s, nodes)
    mu = b.mu
    if mu < 1e-12:
        return 0.0
    q, p, u, nu, alpha = b.q[0], b.p[0], b.u[0], b.nu, b.alpha
    eta = b.eta(c)
    emu = math.exp(-mu)
    total = -e_c2(s, c, nodes) * emu / 20.0
    total += -c * alpha / (2.0 * mu * mu) + c * p / (2.0 * mu)
    total += (2.0 * c - 1.0) * nu * nu / (4.0 * mu * mu)
    total += c * u * (c * q * emu - nu * (1.0 - emu) / (2.0 * mu))
    total += emu * emu * (nu * (nu + 8.0 * c * q) / (32.0 * mu) - eta / (4.0 * SQRT2))
    inner = (2.0 * SQRT2 * c * c * q * q - 3.0 * eta) / (4.0 * SQRT2)
    inner += (
        nu * nu - 8.0 * (2.0 * c * p + c * c * q * q) - 4.0 * c * c * alpha * alpha
    ) / (32.0 * mu)
    inner += -c * c * q * q / (8.0 * mu * mu)
    inner += (
        (2.0 - mu)
        / (2.0 * mu * mu)
        * (c * q * alpha + 0.25 * nu * nu + (c * c - c) * q * q)
    )
    total += emu * inner
    total -= (
        (4.0 * c * c * alpha * alpha + 3.0 * c * c * q * q - nu * nu)
        * math.cosh(mu)
        / (8.0 * mu * mu)
    )
    return total


def edgeworth_f2(n: int, c: float, s: float, nodes: int = DEFAULT_NODES) -> EdgeworthResult:
    """Unitary expansion F_{n,2}(tau(s)) ~ F_2 {1 + c u_0 n^{-1/3} - E_{c,2}/20 n^{-2/3}}."""
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    b = airy_bundle(s, nodes)
    f2 = f2_limit(s, "exponential", nodes)
    first = f2 * c * b.u[0]
    second = -f2 * e_c2(s, c, nodes) / 20.0
    combined = f2 + first * n ** (-1.0 / 3.0) + second * n ** (-2.0 / 3.0)
    return EdgeworthResult(f2, first, second, combined)


def edgeworth_f1_sq(n: int, c: float, s: float, nodes: int = DEFAULT_NODES) -> EdgeworthResult:
    """Orthogonal expansion of F_{n,1}(tau(s))^2 through order n^{-2/3}."""
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    b = airy_bundle(s, nodes)
    f2 = f2_limit(s, "exponential", nodes)
    mu = b.mu
    emu = math.exp(-mu)
    leading = f2 * emu
    if mu < 1e-12:
        first = 0.0
        second = 0.0
    else:
        first = f2 * (
            c * (b.q[0] + b.u[0]) * emu - b.nu * (1.0 - emu) / (2.0 * mu)
        )
        second = f2 * e_c1(s, c, nodes)
    combined = leading + first * n ** (-1.0 / 3.0) + second * n ** (-2.0 / 3.0)
    return EdgeworthResult(leading, first, second, combined)


def edgeworth_f4_sq(n: int, c: float, s: float, nodes: int = DEFAULT_NODES) -> EdgeworthResult:
    """Symplectic expansion of F_{n,4}(tau(s)/sqrt2)^2 through order n^{-2/3}."""
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    b = airy_bundle(s, nodes)
    f2 = f2_limit(s, "exponential", nodes)
    mu = b.mu
    ch, sh = math.cosh(mu), math.sinh(mu)
    q, u0, nu = b.q[0], b.u[0], b.nu
    leading = f2 * 0.5 * (1.0 + ch)  # cosh^2(mu/2)
    first = f2 * 0.5 * c * (u0 * (1.0 + ch) - q * sh)
    if mu < 1e-12:
        second = 0.0
    else:
        second = f2 * 0.25 * (
            nu * sh / (2.0 * SQRT2 * mu)
            + c * c * q * q * ch
            + (ch - 1.0) / 10.0 * e_c2(s, c, nodes)
            + SQRT2 * (b.eta(c) - SQRT2 * c * c * q * u0) * sh
        )
    combined = leading + first * n ** (-1.0 / 3.0) + second * n ** (-2.0 / 3.0)
    return EdgeworthResult(leading, first, second, combined)
