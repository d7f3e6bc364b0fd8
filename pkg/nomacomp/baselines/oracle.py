"""Exhaustive grid search for the two-cell single-antenna single-cluster case."""

from __future__ import annotations

import logging

import numpy as np

from ..config import ORACLE_COARSE_POINTS, ORACLE_REFINE_POINTS
from ..errors import UnsupportedConfigurationError
from ..evaluation import achieved_sinrs, check_constraints
from ..precoding import build_bases
from ..sca import SolveResult
from ..scenario import ChannelSet, NetworkConfig

logger = logging.getLogger(__name__)

ORACLE_SHAPE = (2, 1, 1)

GridPoint = tuple[float, float, float, float]


def _cell_terms(p_own, p_other, split, gain_g, gain_g_cross, gain_h, gain_h_cross, gamma):
    """Group-1 rate and feasibility of one cell on a broadcast grid.

    Gains are normalized by the receiver noise, so the noise term is 1.
    """
    signal_g = p_own * gain_g
    signal_h = p_own * gain_h
    interference_g = p_other * gain_g_cross + 1.0
    interference_h = p_other * gain_h_cross + 1.0
    rate = np.log2(1.0 + split * signal_g / interference_g)
    sic_ok = (1.0 - split) * signal_g >= gamma * (split * signal_g + interference_g)
    qos_ok = (1.0 - split) * signal_h >= gamma * (split * signal_h + interference_h)
    return rate, sic_ok & qos_ok


def grid_search(
    axes: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray],
    gains_g: np.ndarray,
    gains_h: np.ndarray,
    gamma: float,
) -> tuple[float, GridPoint] | None:
    """Best feasible (p1, p2, a1, a2) on the product grid, or None.

    gains_*[i, n] is the noise-normalized gain from BS i to the user of cell n.
    The grid is swept one p1 value at a time; ties keep the lexicographically
    first point.
    """
    p1_axis, p2_axis, a1_axis, a2_axis = (np.asarray(x, dtype=float) for x in axes)
    p2 = p2_axis[:, np.newaxis, np.newaxis]
    a1 = a1_axis[np.newaxis, :, np.newaxis]
    a2 = a2_axis[np.newaxis, np.newaxis, :]

    best_value, best_point = -np.inf, None
    for p1 in p1_axis:
        rate1, ok1 = _cell_terms(p1, p2, a1, gains_g[0, 0], gains_g[1, 0], gains_h[0, 0], gains_h[1, 0], gamma)
        rate2, ok2 = _cell_terms(p2, p1, a2, gains_g[1, 1], gains_g[0, 1], gains_h[1, 1], gains_h[0, 1], gamma)
        value = np.where(ok1 & ok2, rate1 + rate2, -np.inf)
        flat = int(np.argmax(value))
        candidate = value.flat[flat]
        if candidate > best_value:
            i, j, k = np.unravel_index(flat, value.shape)
            best_value = float(candidate)
            best_point = (float(p1), float(p2_axis[i]), float(a1_axis[j]), float(a2_axis[k]))
    if best_point is None:
        return None
    return best_value, best_point


def _refined_axis(center: float, step: float, upper: float, points: int) -> np.ndarray:
    return np.clip(center + step * np.linspace(-1.0, 1.0, points), 0.0, upper)


def brute_force_oracle(
    config: NetworkConfig,
    channels: ChannelSet,
    coarse_points: int = ORACLE_COARSE_POINTS,
    refine_points: int = ORACLE_REFINE_POINTS,
) -> SolveResult:
    """Grid-optimal powers and splits for N=2, M=1, K=1.

    A coarse grid over [0, P]^2 x [0, 1]^2 is refined once around the
    incumbent with spacing one coarse step on either side. objective_trace
    holds (coarse value, refined value).
    """
    shape = (config.num_cells, config.antennas_per_bs, config.clusters_per_cell)
    if shape != ORACLE_SHAPE:
        raise UnsupportedConfigurationError(
            f"brute force covers (N, M, K) = {ORACLE_SHAPE} only, got {shape}"
        )

    power = config.transmit_power
    noise_g = channels.noise_g[:, 0][np.newaxis, :]
    noise_h = channels.noise_h[:, 0][np.newaxis, :]
    gains_g = np.abs(channels.g[:, :, 0, 0]) ** 2 / noise_g
    gains_h = np.abs(channels.h[:, :, 0, 0]) ** 2 / noise_h
    gamma = config.sinr_target

    p_axis = np.linspace(0.0, power, coarse_points)
    a_axis = np.linspace(0.0, 1.0, coarse_points)
    coarse = grid_search((p_axis, p_axis, a_axis, a_axis), gains_g, gains_h, gamma)
    if coarse is None:
        logger.debug("no feasible grid point")
        return SolveResult.infeasible(2, 1, 1)

    coarse_value, point = coarse
    steps = (p_axis[1] - p_axis[0],) * 2 + (a_axis[1] - a_axis[0],) * 2
    uppers = (power, power, 1.0, 1.0)
    refined_axes = tuple(
        _refined_axis(c, s, u, refine_points) for c, s, u in zip(point, steps, uppers)
    )
    refined_value, refined_point = grid_search(refined_axes, gains_g, gains_h, gamma)
    if refined_value > coarse_value:
        point = refined_point
    best_value = max(refined_value, coarse_value)

    p1, p2, a1, a2 = point
    q = np.sqrt(np.array([p1, p2]))[:, np.newaxis, np.newaxis].astype(complex)
    a = np.array([[a1], [a2]])
    bases = build_bases(channels)
    report = achieved_sinrs(channels, bases, q, a, config.target_rate)
    record = check_constraints(report, q, power)
    feasible = record.all_ok
    return SolveResult(
        q=q,
        a=a,
        sum_rate_group1=report.sum_rate_group1 if feasible else 0.0,
        feasible=feasible,
        rank_ratios=np.full((2, 1), np.inf),
        iterations_used=0,
        converged=True,
        objective_trace=(coarse_value, best_value),
        qos_violations=report.qos_violations,
        report=report,
        bases=bases,
        Q=(np.abs(q) ** 2)[..., np.newaxis],
    )
