"""Assembly of the rank-relaxed convex subproblem for fixed approximation points.

All beamforming matrices are expressed in units of their BS power budget
(Q_hat = Q / P_i), so the per-BS power constraint reads sum_k trace(Q_hat) <= 1
whatever the transmit SNR.

The per-cluster scalars are also measured in units read off the fixed points:
x = X / c^2, y = Y / d^2, tau = t / c and r = rho / rho_ref. Near a fixed point
all of them are of order one, so the conic rows stay well conditioned even
when channel gains span many orders of magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import cvxpy as cp
import numpy as np

from ..errors import DimensionError
from ..precoding import EffectiveChannels, interference_scalars, scaled_by_power, served_traces


@dataclass(frozen=True)
class FixedPoints:
    """Approximation points (c, d, w_tilde, t_tilde), each of shape (N, K).

    c and d are the AGM points of the SIC and QoS bounds, (w_tilde, t_tilde)
    the linearization point of the SINR bound. `clamped` marks clusters whose
    power split was floored before computing c and d.
    """

    c: np.ndarray
    d: np.ndarray
    w_tilde: np.ndarray
    t_tilde: np.ndarray
    clamped: np.ndarray | None = field(default=None)

    def __post_init__(self):
        shape = self.c.shape
        for name in ("d", "w_tilde", "t_tilde"):
            if getattr(self, name).shape != shape:
                raise DimensionError(f"fixed point {name} has shape {getattr(self, name).shape}, expected {shape}")
        for name in ("c", "d", "w_tilde", "t_tilde"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise ValueError(f"fixed point {name} has non-finite entries")
        if np.any(self.c <= 0) or np.any(self.d <= 0):
            raise ValueError("AGM points c and d must be positive")
        if np.any(self.w_tilde < 1.0):
            raise ValueError("w_tilde must be >= 1")
        if np.any(self.t_tilde < 0):
            raise ValueError("t_tilde must be >= 0")

    @property
    def shape(self) -> tuple[int, int]:
        return self.c.shape


@dataclass(frozen=True)
class ClusterScales:
    """Per-cluster units of the sum-rate subproblem, shape (N, K) each.

    rho_ref is the linearized SINR at the fixed point, floored at 1, and
    kappa = c^2 / (w_tilde * rho_ref) the Taylor row gain in those units.
    At a fixed point tau_tilde equals the power split.
    """

    c2: np.ndarray
    d2: np.ndarray
    tau_tilde: np.ndarray
    rho_ref: np.ndarray
    kappa: np.ndarray

    @classmethod
    def from_fixed_points(cls, fp: FixedPoints) -> ClusterScales:
        c2 = fp.c**2
        rho_ref = np.maximum(fp.t_tilde**2 / fp.w_tilde, 1.0)
        return cls(
            c2=c2,
            d2=fp.d**2,
            tau_tilde=fp.t_tilde / fp.c,
            rho_ref=rho_ref,
            kappa=c2 / (fp.w_tilde * rho_ref),
        )


@dataclass(frozen=True)
class P3Options:
    """Variants of the subproblem used by the solver and the baselines.

    fixed_split freezes the power split a at a constant. enforce_sic and
    enforce_qos drop the corresponding constraint families when False.
    """

    fixed_split: float | None = None
    enforce_sic: bool = True
    enforce_qos: bool = True


@dataclass
class P3Problem:
    """A built subproblem: the cvxpy problem plus what is needed to read it back.

    For "sum_rate" the S blocks hold (a, tau, x) and rho holds r; `scales`
    converts them back to t = c * tau and rho = rho_ref * r. For "qos_slot"
    each QoS row is divided by `row_norm`.
    """

    kind: Literal["sum_rate", "qos_slot"]
    problem: cp.Problem
    Q: list[list[cp.Variable]]
    scaled: EffectiveChannels
    source: EffectiveChannels
    powers: np.ndarray
    gamma: float
    options: P3Options
    fixed_points: FixedPoints | None = None
    scales: ClusterScales | None = None
    S: list[list[cp.Variable]] | None = None
    rho: cp.Variable | None = None
    row_norm: np.ndarray | None = None

    @property
    def num_cells(self) -> int:
        return self.scaled.num_cells

    @property
    def clusters_per_cell(self) -> int:
        return self.scaled.clusters_per_cell

    def variable_summary(self) -> list[str]:
        d = self.scaled.basis_dim
        lines = []
        for n, row in enumerate(self.Q):
            for k, var in enumerate(row):
                lines.append(f"Q[{n},{k}] hermitian {d}x{d} id={var.id}")
                if self.S is not None:
                    lines.append(f"S[{n},{k}] symmetric 2x2 id={self.S[n][k].id} (a, t/c, X/c^2)")
        if self.rho is not None:
            lines.append(f"rho {self.num_cells}x{self.clusters_per_cell} id={self.rho.id} (units of rho_ref)")
        return lines


def _trace_expr(A: np.ndarray, Q: cp.Variable) -> cp.Expression:
    return cp.real(cp.trace(A @ Q))


def _interference_exprs(scaled: EffectiveChannels, Q: list[list[cp.Variable]]):
    """cvxpy versions of (u, v) in the same layout as interference_scalars."""
    n_cells, k_cl = scaled.num_cells, scaled.clusters_per_cell
    u = [[None] * k_cl for _ in range(n_cells)]
    v = [[None] * k_cl for _ in range(n_cells)]
    for n in range(n_cells):
        for k in range(k_cl):
            u_terms, v_terms = [], []
            for i in range(n_cells):
                for j in range(k_cl):
                    if i != n:
                        u_terms.append(_trace_expr(scaled.G[i, j, n, k], Q[i][j]))
                        v_terms.append(_trace_expr(scaled.H[i, j, n, k], Q[i][j]))
                    elif j != k:
                        v_terms.append(_trace_expr(scaled.H[i, j, n, k], Q[i][j]))
            u[n][k] = cp.sum(cp.hstack(u_terms)) + 1.0 if u_terms else cp.Constant(1.0)
            v[n][k] = cp.sum(cp.hstack(v_terms)) + 1.0 if v_terms else cp.Constant(1.0)
    return u, v


def _beamforming_variables(scaled: EffectiveChannels) -> tuple[list[list[cp.Variable]], list]:
    d = scaled.basis_dim
    Q = [[cp.Variable((d, d), hermitian=True, name=f"Q_{n}_{k}")
          for k in range(scaled.clusters_per_cell)]
         for n in range(scaled.num_cells)]
    constraints = []
    for n, row in enumerate(Q):
        constraints += [var >> 0 for var in row]
        constraints.append(cp.sum(cp.hstack([cp.real(cp.trace(var)) for var in row])) <= 1.0)
    return Q, constraints


def build_p3(
    eff: EffectiveChannels,
    fp: FixedPoints,
    gamma: float,
    powers: np.ndarray,
    options: P3Options | None = None,
) -> P3Problem:
    """Build the convex subproblem maximizing sum log(1 + rho) at fixed points fp.

    Per cluster: a PSD block Q, a 2x2 PSD block S = [[a, tau], [tau, x]] with
    x = trace(G_own Q) / c^2, and r = rho / rho_ref bounded by the linearized
    SINR. The SIC and QoS constraints are the AGM bounds divided by c^2
    (resp. d^2). The objective drops the constant sum log(rho_ref).
    """
    options = options or P3Options()
    n_cells, k_cl = eff.num_cells, eff.clusters_per_cell
    if fp.shape != (n_cells, k_cl):
        raise DimensionError(f"fixed points of shape {fp.shape} do not match (N={n_cells}, K={k_cl})")

    scaled = scaled_by_power(eff, powers)
    scales = ClusterScales.from_fixed_points(fp)
    Q, constraints = _beamforming_variables(scaled)
    S = [[cp.Variable((2, 2), symmetric=True, name=f"S_{n}_{k}") for k in range(k_cl)]
         for n in range(n_cells)]
    r = cp.Variable((n_cells, k_cl), name="rho")
    u, v = _interference_exprs(scaled, Q)
    sic_coef = 2.0 / (1.0 + gamma)

    for n in range(n_cells):
        for k in range(k_cl):
            block = S[n][k]
            a, tau, x = block[0, 0], block[0, 1], block[1, 1]
            c2, d2 = scales.c2[n, k], scales.d2[n, k]
            y = _trace_expr(scaled.H[n, k, n, k] / d2, Q[n][k])
            tau_fix, kappa = scales.tau_tilde[n, k], scales.kappa[n, k]

            constraints += [
                block >> 0,
                x == _trace_expr(scaled.G[n, k, n, k] / c2, Q[n][k]),
                tau >= 0, a <= 1, a >= 0, r[n, k] >= 0,
            ]
            if options.fixed_split is not None:
                constraints.append(a == options.fixed_split)
            constraints.append(
                r[n, k] <= kappa * (2 * tau_fix * tau - tau_fix**2 * u[n][k] / fp.w_tilde[n, k])
            )
            if options.enforce_sic:
                constraints.append(cp.square(x) + cp.square(a) <= sic_coef * (x - gamma * u[n][k] / c2))
            if options.enforce_qos:
                constraints.append(cp.square(y) + cp.square(a) <= sic_coef * (y - gamma * v[n][k] / d2))

    objective = cp.Maximize(cp.sum(cp.log(r + 1.0 / scales.rho_ref)))
    return P3Problem(
        kind="sum_rate",
        problem=cp.Problem(objective, constraints),
        Q=Q,
        scaled=scaled,
        source=eff,
        powers=np.asarray(powers, dtype=float),
        gamma=gamma,
        options=options,
        fixed_points=fp,
        scales=scales,
        S=S,
        rho=r,
    )


def build_qos_slot(eff: EffectiveChannels, gamma: float, powers: np.ndarray) -> P3Problem:
    """Minimum-power beamforming giving every Group-2 user SINR >= gamma alone on its slot.

    With the whole slot reserved for Group 2 (a = 0) the QoS constraint is
    linear in Q, so no approximation points are involved. Each row is divided
    by the full-budget received power of its user (floored at 1).
    """
    scaled = scaled_by_power(eff, powers)
    Q, constraints = _beamforming_variables(scaled)
    _, v = _interference_exprs(scaled, Q)
    row_norm = np.maximum(np.real(np.einsum("nkdd->nk", scaled.H[_own_index(scaled)])), 1.0)
    for n in range(scaled.num_cells):
        for k in range(scaled.clusters_per_cell):
            Y = _trace_expr(scaled.H[n, k, n, k], Q[n][k])
            constraints.append((Y - gamma * v[n][k]) / row_norm[n, k] >= 0)
    total = cp.sum(cp.hstack([cp.real(cp.trace(var)) for row in Q for var in row]))
    return P3Problem(
        kind="qos_slot",
        problem=cp.Problem(cp.Minimize(total), constraints),
        Q=Q,
        scaled=scaled,
        source=eff,
        powers=np.asarray(powers, dtype=float),
        gamma=gamma,
        options=P3Options(fixed_split=0.0, enforce_sic=False),
        row_norm=row_norm,
    )


def _own_index(scaled: EffectiveChannels) -> tuple[np.ndarray, ...]:
    n, k = np.meshgrid(np.arange(scaled.num_cells), np.arange(scaled.clusters_per_cell), indexing="ij")
    return n, k, n, k


def _min_eig(matrix: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(matrix).min())


def constraint_violations(
    problem: P3Problem,
    Q_hat: np.ndarray,
    a: np.ndarray | None = None,
    t: np.ndarray | None = None,
    rho: np.ndarray | None = None,
) -> dict[str, float]:
    """Replay a candidate point against the subproblem constraints in numpy.

    Q_hat is in budget units, shape (N, K, D, D); a, t and rho are in their
    natural units and are converted to the subproblem's own. Returns the
    largest violation per constraint family (0 when satisfied).
    """
    scaled = problem.scaled
    n_cells, k_cl = scaled.num_cells, scaled.clusters_per_cell
    Q_hat = 0.5 * (Q_hat + np.conj(np.swapaxes(Q_hat, -1, -2)))
    X, Y = served_traces(scaled, Q_hat)
    u, v = interference_scalars(scaled, Q_hat)

    out = {
        "psd": max(0.0, -min(_min_eig(Q_hat[n, k]) for n in range(n_cells) for k in range(k_cl))),
        "power": max(0.0, float(np.max(np.real(np.einsum("nkdd->n", Q_hat))) - 1.0)),
    }
    if problem.kind == "qos_slot":
        out["qos"] = max(0.0, float(np.max((problem.gamma * v - Y) / problem.row_norm)))
        return out

    fp, sc, opts, gamma = problem.fixed_points, problem.scales, problem.options, problem.gamma
    x, y = X / sc.c2, Y / sc.d2
    tau, r = t / fp.c, rho / sc.rho_ref
    schur = [
        -_min_eig(np.array([[a[n, k], tau[n, k]], [tau[n, k], x[n, k]]]))
        for n in range(n_cells) for k in range(k_cl)
    ]
    out["schur"] = max(0.0, max(schur))
    taylor = sc.kappa * (2 * sc.tau_tilde * tau - sc.tau_tilde**2 * u / fp.w_tilde) - r
    out["taylor"] = max(0.0, float(np.max(-taylor)))
    coef = 2.0 / (1.0 + gamma)
    if opts.enforce_sic:
        sic = x**2 + a**2 - coef * (x - gamma * u / sc.c2)
        out["sic"] = max(0.0, float(np.max(sic)))
    if opts.enforce_qos:
        qos = y**2 + a**2 - coef * (y - gamma * v / sc.d2)
        out["qos"] = max(0.0, float(np.max(qos)))
    bounds = np.concatenate([(-r).ravel(), (-tau).ravel(), (-a).ravel(), (a - 1).ravel()])
    out["bounds"] = max(0.0, float(bounds.max()))
    if opts.fixed_split is not None:
        out["fixed_split"] = float(np.max(np.abs(a - opts.fixed_split)))
    return out
