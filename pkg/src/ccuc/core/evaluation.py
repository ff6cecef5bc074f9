"""
Cost evaluation and deterministic feasibility checking of UC solutions.

Constraint identifiers returned by the checker use the same prefixes as the
row names of the MILP model (``balance``, ``ramp_lo``, ``cap_hi``, ...), with
0-based indices, so a reported violation can be matched to the model row.
"""

import logging
from typing import List

import numpy as np

from .instance import UCInstance, UCSolution, check_solution_shape

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-6


def evaluate_cost(inst: UCInstance, sol: UCSolution) -> float:
    """
    Total operating cost of a solution.

    Sums no-load, startup, shutdown and reserve costs over all snapshots plus
    the contingency-weighted generation cost.

    Raises:
        DataError: If the solution shape does not match the instance.
    """
    check_solution_shape(inst, sol)
    fleet = inst.fleet
    alpha = inst.contingencies.weights

    commitment = (
        sol.z @ fleet.c_z + sol.u @ fleet.c_u + sol.v @ fleet.c_v + sol.r @ fleet.c_r
    ).sum()
    generation = np.einsum("k,tki,i->", alpha, sol.g, fleet.c_g)
    return float(commitment + generation)


def _flag(out: List[str], prefix: str, mask: np.ndarray, axes: tuple) -> None:
    """Append one identifier per True entry of ``mask``."""
    for idx in zip(*np.nonzero(mask)):
        labels = ",".join(f"{axis}={int(i)}" for axis, i in zip(axes, idx))
        out.append(f"{prefix}[{labels}]")


def commitment_violations(inst: UCInstance, z, u, v) -> List[str]:
    """
    Check the binary-only constraints: startup/shutdown logic and minimum
    on/off times. ``z``, ``u``, ``v`` are ``(n_t, n_g)`` 0/1 arrays.
    """
    fleet = inst.fleet
    z = np.asarray(z)
    u = np.asarray(u)
    v = np.asarray(v)
    n_t = z.shape[0]
    out: List[str] = []

    z_prev = np.vstack([fleet.z0.reshape(1, -1), z[:-1]])
    _flag(out, "startup", z_prev - z + u < 0, ("t", "i"))
    _flag(out, "shutdown", z - z_prev + v < 0, ("t", "i"))

    # Indexed from the second snapshot; the window is clipped at the horizon.
    for i in range(inst.n_g):
        for t in range(1, n_t):
            last_on = min(t + int(fleet.min_on[i]) - 1, n_t - 1)
            for tau in range(t + 1, last_on + 1):
                if z[t, i] - z[t - 1, i] > z[tau, i]:
                    out.append(f"min_on[t={t},i={i},tau={tau}]")
            last_off = min(t + int(fleet.min_off[i]) - 1, n_t - 1)
            for tau in range(t + 1, last_off + 1):
                if z[t - 1, i] - z[t, i] > 1 - z[tau, i]:
                    out.append(f"min_off[t={t},i={i},tau={tau}]")
    return out


def check_deterministic_feasibility(
    inst: UCInstance, sol: UCSolution, tol: float = DEFAULT_TOL
) -> List[str]:
    """
    Check every deterministic constraint of the UC problem.

    The chance (scenario) constraint is not checked here; see
    :func:`ccuc.risk.violation.is_violated`.

    Args:
        inst: Instance the solution belongs to
        sol: Candidate solution
        tol: Absolute tolerance for continuous constraints

    Returns:
        Identifiers of violated constraints; empty when feasible

    Raises:
        DataError: If the solution shape does not match the instance.
    """
    check_solution_shape(inst, sol)
    fleet = inst.fleet
    avail = inst.contingencies.availability.astype(float)  # (K, n_g)
    z = sol.z.astype(float)
    g = sol.g
    r = sol.r
    out: List[str] = []

    for name in ("z", "u", "v"):
        _flag(out, f"binary_{name}", ~np.isin(getattr(sol, name), (0, 1)), ("t", "i"))
    _flag(out, "reserve_sign", r < -tol, ("t", "i"))

    # Supply covers forecast net demand in every contingency.
    supply = g.sum(axis=2)
    net = inst.net_forecast()
    _flag(out, "balance", supply < net[:, None] - tol, ("t", "k"))

    # Ramping, with the pre-horizon level a^k * g0.
    g_prev = np.concatenate([(avail * fleet.g0)[None, :, :], g[:-1]], axis=0)
    delta = g - g_prev
    _flag(out, "ramp_lo", delta < avail * fleet.ramp_lo - tol, ("t", "k", "i"))
    _flag(out, "ramp_hi", delta > avail * fleet.ramp_hi + tol, ("t", "k", "i"))

    # Contingency dispatch stays within the base-case reserve band.
    base = g[:, 0:1, :]
    band_lo = avail[None] * (base - r[:, None, :])
    band_hi = avail[None] * (base + r[:, None, :])
    _flag(out, "cont_lo", g < band_lo - tol, ("t", "k", "i"))
    _flag(out, "cont_hi", g > band_hi + tol, ("t", "k", "i"))

    # Base-case capacity and reserve headroom.
    g0t = g[:, 0, :]
    lo = fleet.g_lo * z
    hi = fleet.g_hi * z
    _flag(out, "cap_lo", g0t < lo - tol, ("t", "i"))
    _flag(out, "cap_hi", g0t > hi + tol, ("t", "i"))
    _flag(out, "res_lo", g0t - r < lo - tol, ("t", "i"))
    _flag(out, "res_hi", g0t + r > hi + tol, ("t", "i"))

    out.extend(commitment_violations(inst, sol.z, sol.u, sol.v))

    if out:
        logger.debug("Solution violates %d constraints, first: %s", len(out), out[0])
    return out
