"""
Deterministic (d-UC) and scenario-based (s-UC) unit-commitment MILPs.

Variable names carry 0-based indices: ``z[t=0,i=3]``, ``g[t=2,k=0,i=17]``,
``r[t=0,i=3]``. Row names follow the same scheme; scenario rows are
``U[i=<scenario>,t=<t>,k=<k>]``.

The per-contingency capacity rows (``cap_k_lo``/``cap_k_hi``) are implied by
the contingency band and the base-case capacity/reserve rows, so they are
only added on request.
"""

import logging
from typing import Dict

from ..core.instance import UCInstance, require_valid
from ..scenarios.sampling import ScenarioSet, check_compatible
from .model import Family, MilpModel, Sense, VarKind, describe, format_name

logger = logging.getLogger(__name__)


def _declare_variables(model: MilpModel, inst: UCInstance) -> Dict[str, dict]:
    """Declare z, u, v, g, r in a fixed order and return their column maps."""
    n_t, n_k, n_g = inst.n_t, inst.n_k, inst.n_g
    cols: Dict[str, dict] = {"z": {}, "u": {}, "v": {}, "g": {}, "r": {}}
    for symbol in ("z", "u", "v"):
        for t in range(n_t):
            for i in range(n_g):
                cols[symbol][t, i] = model.add_variable(
                    format_name(symbol, t=t, i=i), VarKind.BINARY
                )
    for t in range(n_t):
        for k in range(n_k + 1):
            for i in range(n_g):
                cols["g"][t, k, i] = model.add_variable(format_name("g", t=t, k=k, i=i))
    for t in range(n_t):
        for i in range(n_g):
            cols["r"][t, i] = model.add_variable(format_name("r", t=t, i=i))
    return cols


def _set_objective(model: MilpModel, inst: UCInstance, cols: Dict[str, dict]) -> None:
    fleet = inst.fleet
    alpha = inst.contingencies.weights
    costs = {"z": fleet.c_z, "u": fleet.c_u, "v": fleet.c_v, "r": fleet.c_r}
    for symbol, cost in costs.items():
        for (t, i), col in cols[symbol].items():
            model.add_to_objective(col, cost[i])
    for (t, k, i), col in cols["g"].items():
        model.add_to_objective(col, alpha[k] * fleet.c_g[i])


def _add_balance(model, inst, cols) -> None:
    net = inst.net_forecast()
    for t in range(inst.n_t):
        for k in range(inst.n_k + 1):
            model.add_row(
                format_name("balance", t=t, k=k),
                {cols["g"][t, k, i]: 1.0 for i in range(inst.n_g)},
                Sense.GE,
                net[t],
                Family.CONTINUOUS,
            )


def _add_ramp(model, inst, cols) -> None:
    fleet = inst.fleet
    avail = inst.contingencies.availability
    for t in range(inst.n_t):
        for k in range(inst.n_k + 1):
            for i in range(inst.n_g):
                a = float(avail[k, i])
                col = cols["g"][t, k, i]
                if t == 0:
                    # Pre-horizon level is a^k * g0.
                    coeffs = {col: 1.0}
                    offset = a * fleet.g0[i]
                else:
                    coeffs = {col: 1.0, cols["g"][t - 1, k, i]: -1.0}
                    offset = 0.0
                model.add_row(
                    format_name("ramp_lo", t=t, k=k, i=i),
                    coeffs,
                    Sense.GE,
                    a * fleet.ramp_lo[i] + offset,
                    Family.CONTINUOUS,
                )
                model.add_row(
                    format_name("ramp_hi", t=t, k=k, i=i),
                    coeffs,
                    Sense.LE,
                    a * fleet.ramp_hi[i] + offset,
                    Family.CONTINUOUS,
                )


def _add_contingency_band(model, inst, cols) -> None:
    # For k = 0 the band reduces to r >= 0, which is the variable bound.
    avail = inst.contingencies.availability
    for t in range(inst.n_t):
        for k in range(1, inst.n_k + 1):
            for i in range(inst.n_g):
                a = float(avail[k, i])
                g_k, g_0, r = cols["g"][t, k, i], cols["g"][t, 0, i], cols["r"][t, i]
                model.add_row(
                    format_name("cont_lo", t=t, k=k, i=i),
                    {g_k: 1.0, g_0: -a, r: a},
                    Sense.GE,
                    0.0,
                    Family.CONTINUOUS,
                )
                model.add_row(
                    format_name("cont_hi", t=t, k=k, i=i),
                    {g_k: 1.0, g_0: -a, r: -a},
                    Sense.LE,
                    0.0,
                    Family.CONTINUOUS,
                )


def _add_capacity(model, inst, cols) -> None:
    fleet = inst.fleet
    for t in range(inst.n_t):
        for i in range(inst.n_g):
            g, z, r = cols["g"][t, 0, i], cols["z"][t, i], cols["r"][t, i]
            lo, hi = fleet.g_lo[i], fleet.g_hi[i]
            model.add_row(
                format_name("cap_lo", t=t, i=i), {g: 1.0, z: -lo}, Sense.GE, 0.0, Family.HYBRID
            )
            model.add_row(
                format_name("cap_hi", t=t, i=i), {g: 1.0, z: -hi}, Sense.LE, 0.0, Family.HYBRID
            )
            model.add_row(
                format_name("res_lo", t=t, i=i),
                {g: 1.0, r: -1.0, z: -lo},
                Sense.GE,
                0.0,
                Family.HYBRID,
            )
            model.add_row(
                format_name("res_hi", t=t, i=i),
                {g: 1.0, r: 1.0, z: -hi},
                Sense.LE,
                0.0,
                Family.HYBRID,
            )


def _add_redundant_capacity(model, inst, cols) -> None:
    fleet = inst.fleet
    avail = inst.contingencies.availability
    for t in range(inst.n_t):
        for k in range(inst.n_k + 1):
            for i in range(inst.n_g):
                a = float(avail[k, i])
                g, z = cols["g"][t, k, i], cols["z"][t, i]
                model.add_row(
                    format_name("cap_k_lo", t=t, k=k, i=i),
                    {g: 1.0, z: -a * fleet.g_lo[i]},
                    Sense.GE,
                    0.0,
                    Family.REDUNDANT,
                )
                model.add_row(
                    format_name("cap_k_hi", t=t, k=k, i=i),
                    {g: 1.0, z: -a * fleet.g_hi[i]},
                    Sense.LE,
                    0.0,
                    Family.REDUNDANT,
                )


def _add_commitment_logic(model, inst, cols) -> None:
    fleet = inst.fleet
    z, u, v = cols["z"], cols["u"], cols["v"]
    for t in range(inst.n_t):
        for i in range(inst.n_g):
            if t == 0:
                # z^{-1} = z0 moves to the right-hand side.
                z0 = float(fleet.z0[i])
                model.add_row(
                    format_name("startup", t=t, i=i),
                    {z[t, i]: -1.0, u[t, i]: 1.0},
                    Sense.GE,
                    -z0,
                    Family.BINARY,
                )
                model.add_row(
                    format_name("shutdown", t=t, i=i),
                    {z[t, i]: 1.0, v[t, i]: 1.0},
                    Sense.GE,
                    z0,
                    Family.BINARY,
                )
            else:
                model.add_row(
                    format_name("startup", t=t, i=i),
                    {z[t - 1, i]: 1.0, z[t, i]: -1.0, u[t, i]: 1.0},
                    Sense.GE,
                    0.0,
                    Family.BINARY,
                )
                model.add_row(
                    format_name("shutdown", t=t, i=i),
                    {z[t, i]: 1.0, z[t - 1, i]: -1.0, v[t, i]: 1.0},
                    Sense.GE,
                    0.0,
                    Family.BINARY,
                )


def _add_min_up_down(model, inst, cols) -> None:
    # Enforced from the second snapshot on; windows are clipped at the horizon.
    fleet = inst.fleet
    z = cols["z"]
    n_t = inst.n_t
    for i in range(inst.n_g):
        for t in range(1, n_t):
            for tau in range(t + 1, min(t + int(fleet.min_on[i]) - 1, n_t - 1) + 1):
                model.add_row(
                    format_name("min_on", t=t, i=i, tau=tau),
                    {z[t, i]: 1.0, z[t - 1, i]: -1.0, z[tau, i]: -1.0},
                    Sense.LE,
                    0.0,
                    Family.BINARY,
                )
            for tau in range(t + 1, min(t + int(fleet.min_off[i]) - 1, n_t - 1) + 1):
                model.add_row(
                    format_name("min_off", t=t, i=i, tau=tau),
                    {z[t - 1, i]: 1.0, z[t, i]: -1.0, z[tau, i]: 1.0},
                    Sense.LE,
                    1.0,
                    Family.BINARY,
                )


def _build(inst: UCInstance, name: str, include_redundant: bool):
    require_valid(inst)
    model = MilpModel(name)
    model.meta.update({"n_t": inst.n_t, "n_k": inst.n_k, "n_g": inst.n_g})
    cols = _declare_variables(model, inst)
    _set_objective(model, inst, cols)
    _add_balance(model, inst, cols)
    _add_ramp(model, inst, cols)
    _add_contingency_band(model, inst, cols)
    _add_capacity(model, inst, cols)
    if include_redundant:
        _add_redundant_capacity(model, inst, cols)
    _add_commitment_logic(model, inst, cols)
    _add_min_up_down(model, inst, cols)
    return model, cols


def build_duc(inst: UCInstance, include_redundant: bool = False) -> MilpModel:
    """
    Build the deterministic UC model.

    Args:
        inst: Validated instance
        include_redundant: Also add the implied per-contingency capacity rows

    Raises:
        DataError: If the instance is invalid.
    """
    model, _ = _build(inst, "d-UC", include_redundant)
    logger.debug("Built d-UC: %s", describe(model))
    return model


def build_suc(
    inst: UCInstance, scen: ScenarioSet, include_redundant: bool = False
) -> MilpModel:
    """
    Build the scenario UC model: d-UC plus one supply row per
    (scenario, snapshot, contingency).

    Raises:
        DataError: If the instance is invalid or the scenarios do not fit it.
    """
    check_compatible(inst, scen)
    model, cols = _build(inst, "s-UC", include_redundant)
    model.meta["scenarios"] = scen.N

    net = inst.net_forecast()
    scenario_net = scen.d_err.sum(axis=2) - scen.w_err.sum(axis=2)
    for s in range(scen.N):
        for t in range(inst.n_t):
            rhs = net[t] + scenario_net[s, t]
            for k in range(inst.n_k + 1):
                model.add_row(
                    format_name("U", i=s, t=t, k=k),
                    {cols["g"][t, k, i]: 1.0 for i in range(inst.n_g)},
                    Sense.GE,
                    rhs,
                    Family.UNCERTAIN,
                )

    logger.debug("Built s-UC: %s", describe(model, {"scenarios": scen.N}))
    return model
