"""
Aggregate tables derived from the experiment row table.

Every table is a pure function of the rows, so it can be recomputed from
``rows.csv`` alone.
"""

from typing import Tuple

import pandas as pd

from ..risk.support import theoretical_curve


def _ok_rows(rows: pd.DataFrame) -> pd.DataFrame:
    return rows[rows["status"] == "ok"]


def _grid(rows: pd.DataFrame) -> pd.Index:
    return pd.Index(sorted(rows["N"].unique()), name="N")


def objective_risk_table(rows: pd.DataFrame) -> pd.DataFrame:
    """Per N: objective and empirical violation with min/max bands."""
    ok = _ok_rows(rows).astype({"objective": float, "epsilon_hat": float})
    grouped = ok.groupby("N")
    table = pd.DataFrame(
        {
            "trials_ok": grouped.size(),
            "objective_mean": grouped["objective"].mean(),
            "objective_min": grouped["objective"].min(),
            "objective_max": grouped["objective"].max(),
            "epsilon_hat_mean": grouped["epsilon_hat"].mean(),
            "epsilon_hat_min": grouped["epsilon_hat"].min(),
            "epsilon_hat_max": grouped["epsilon_hat"].max(),
        }
    ).reindex(_grid(rows))
    table["trials_ok"] = table["trials_ok"].fillna(0).astype(int)
    return table.reset_index()


def violation_curve_table(rows: pd.DataFrame, n_t: int, beta: float) -> pd.DataFrame:
    """Per N: empirical violation band against the guaranteed level."""
    grid = _grid(rows)
    curve = dict(theoretical_curve(n_t, beta, [int(n) for n in grid]))
    ok = _ok_rows(rows).astype({"epsilon_hat": float})
    grouped = ok.groupby("N")["epsilon_hat"]
    table = pd.DataFrame(
        {
            "epsilon_hat_mean": grouped.mean(),
            "epsilon_hat_min": grouped.min(),
            "epsilon_hat_max": grouped.max(),
            "exceed_count": ok.assign(over=ok["epsilon_hat"] > ok["N"].map(curve)).groupby("N")["over"].sum(),
        }
    ).reindex(grid)
    table.insert(0, "epsilon_bound", [curve[int(n)] for n in grid])
    table.insert(1, "vacuous", [int(n) < n_t for n in grid])
    table["exceed_count"] = table["exceed_count"].fillna(0).astype(int)
    return table.reset_index()


def support_counts_table(rows: pd.DataFrame, n_t: int) -> pd.DataFrame:
    """Per N: min/mean/max number of support scenarios and candidates."""
    ok = _ok_rows(rows).astype({"n_support": float, "n_candidates": float})
    grouped = ok.groupby("N")
    table = pd.DataFrame(
        {
            "support_min": grouped["n_support"].min(),
            "support_mean": grouped["n_support"].mean(),
            "support_max": grouped["n_support"].max(),
            "candidates_min": grouped["n_candidates"].min(),
            "candidates_max": grouped["n_candidates"].max(),
        }
    ).reindex(_grid(rows))
    table["n_t"] = n_t
    return table.reset_index()


def aggregate_tables(
    rows: pd.DataFrame, n_t: int, beta: float
) -> Tuple[pd.DataFrame, pd.DataFrame, pd.DataFrame]:
    """(objective/risk, violation curve, support counts) tables."""
    return (
        objective_risk_table(rows),
        violation_curve_table(rows, n_t, beta),
        support_counts_table(rows, n_t),
    )
