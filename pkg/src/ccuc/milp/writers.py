"""
Text exports of a MilpModel: free MPS, fixed MPS and CPLEX LP.

MPS output keeps model names unchanged. CPLEX LP identifiers may not contain
``=``, ``[`` or ``]``; the LP writer maps them to ``_``, ``(`` and ``)``.
"""

import logging
import math
import os
from typing import Callable, Dict, List, Optional

from ..errors import DataError
from ..utils.files import safe_write_file
from .model import MilpModel, Sense, VarKind

logger = logging.getLogger(__name__)

OBJECTIVE_ROW = "COST"
EXPORT_FORMATS = ("mps", "fixed-mps", "lp")

_MPS_SENSE = {Sense.LE: "L", Sense.GE: "G", Sense.EQ: "E"}
_LP_SENSE = {Sense.LE: "<=", Sense.GE: ">=", Sense.EQ: "="}
_LP_NAME_MAP = str.maketrans({"=": "_", "[": "(", "]": ")"})
_LP_TERMS_PER_LINE = 8


def _num(value: float) -> str:
    """Shortest text that reads back to the same float."""
    value = float(value)
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def lp_name(name: str) -> str:
    """Identifier of a model name in CPLEX LP files."""
    return name.translate(_LP_NAME_MAP)


def _columns_by_variable(model: MilpModel) -> List[List[tuple]]:
    """Per column, the (row, value) nonzeros in row order."""
    matrix = model.constraint_matrix().tocsc()
    entries: List[List[tuple]] = []
    for col in range(model.n_variables):
        start, end = matrix.indptr[col], matrix.indptr[col + 1]
        entries.append(list(zip(matrix.indices[start:end].tolist(), matrix.data[start:end].tolist())))
    return entries


def _mps_bounds(model: MilpModel) -> List[tuple]:
    """(type, column name, value or None) records for the BOUNDS section."""
    records = []
    for var in model.variables:
        lower, upper = var.lower, var.upper
        if lower == upper:
            records.append(("FX", var.name, lower))
        elif var.kind is VarKind.BINARY and (lower, upper) == (0.0, 1.0):
            records.append(("BV", var.name, None))
        elif math.isinf(lower) and math.isinf(upper):
            records.append(("FR", var.name, None))
        else:
            if math.isinf(lower):
                records.append(("MI", var.name, None))
            elif lower != 0.0:
                records.append(("LO", var.name, lower))
            if not math.isinf(upper):
                records.append(("UP", var.name, upper))
    return records


def _mps_lines(model: MilpModel, field: Callable[..., str]) -> List[str]:
    objective = model.objective_terms()
    columns = _columns_by_variable(model)
    lines = [f"NAME          {model.name}", "ROWS", f" N  {OBJECTIVE_ROW}"]
    lines += [f" {_MPS_SENSE[row.sense]}  {row.name}" for row in model.rows]

    lines.append("COLUMNS")
    in_integer_block = False
    marker = 0
    for col, var in enumerate(model.variables):
        is_integer = var.kind is VarKind.BINARY
        if is_integer != in_integer_block:
            tag = "'INTORG'" if is_integer else "'INTEND'"
            lines.append(field("", f"MARKER{marker}", "'MARKER'", tag))
            marker += 1
            in_integer_block = is_integer
        entries = []
        if col in objective:
            entries.append((OBJECTIVE_ROW, objective[col]))
        entries += [(model.rows[row].name, value) for row, value in columns[col]]
        if not entries:
            # keep every column declared
            entries.append((OBJECTIVE_ROW, 0.0))
        for row_name, value in entries:
            lines.append(field("", var.name, row_name, _num(value)))
    if in_integer_block:
        lines.append(field("", f"MARKER{marker}", "'MARKER'", "'INTEND'"))

    lines.append("RHS")
    for row in model.rows:
        if row.rhs != 0.0:
            lines.append(field("", "RHS", row.name, _num(row.rhs)))

    bounds = _mps_bounds(model)
    if bounds:
        lines.append("BOUNDS")
        for kind, name, value in bounds:
            if value is None:
                lines.append(field(kind, "BND", name))
            else:
                lines.append(field(kind, "BND", name, _num(value)))
    lines.append("ENDATA")
    return lines


def mps_text(model: MilpModel, fixed: bool = False) -> str:
    """
    Render a model in MPS format.

    Args:
        model: Model to render
        fixed: Fixed-column layout. Name fields are widened to the longest
            name (at least 8 characters) so long names stay intact. Model
            names exceed 8 characters, so the result does not fit the strict
            columns 2-3, 5-12, 15-22, 25-36 layout and readers that cut
            fields by column reject it. Use the free layout for external
            solvers.

    Returns:
        File content ending with a newline
    """
    if fixed:
        names = [var.name for var in model.variables] + [row.name for row in model.rows]
        width = max([8, len(OBJECTIVE_ROW)] + [len(name) for name in names])

        def field(kind: str, first: str, second: str = "", value: str = "") -> str:
            line = f" {kind:<2} {first:<{width}}  {second:<{width}}  {value}"
            return line.rstrip()

    else:

        def field(kind: str, first: str, second: str = "", value: str = "") -> str:
            parts = [kind] if kind else []
            parts += [part for part in (first, second, value) if part]
            return " " + " ".join(parts) if kind else "    " + " ".join(parts)

    return "\n".join(_mps_lines(model, field)) + "\n"


def _lp_expression(terms: List[tuple]) -> List[str]:
    """Signed terms wrapped over several lines."""
    pieces = [f"{'-' if coef < 0 else '+'} {_num(abs(coef))} {name}" for name, coef in terms]
    return [
        " ".join(pieces[start : start + _LP_TERMS_PER_LINE])
        for start in range(0, len(pieces), _LP_TERMS_PER_LINE)
    ]


def lp_text(model: MilpModel) -> str:
    """Render a model in CPLEX LP format."""
    names = [lp_name(var.name) for var in model.variables]
    placeholder = names[0] if names else None
    lines = [f"\\ Problem: {model.name}", "Minimize"]

    objective = sorted(model.objective_terms().items())
    terms = [(names[col], coef) for col, coef in objective]
    if not terms and placeholder:
        terms = [(placeholder, 0.0)]
    expression = _lp_expression(terms)
    lines.append(" obj: " + (expression[0] if expression else "0"))
    lines += ["   " + part for part in expression[1:]]

    lines.append("Subject To")
    matrix = model.constraint_matrix()
    for r, row in enumerate(model.rows):
        start, end = matrix.indptr[r], matrix.indptr[r + 1]
        terms = [
            (names[col], val)
            for col, val in zip(matrix.indices[start:end].tolist(), matrix.data[start:end].tolist())
        ]
        if not terms and placeholder:
            terms = [(placeholder, 0.0)]
        expression = _lp_expression(terms)
        lines.append(f" {lp_name(row.name)}: {expression[0]}")
        lines += ["   " + part for part in expression[1:]]
        lines[-1] += f" {_LP_SENSE[row.sense]} {_num(row.rhs)}"

    bounds = []
    for name, var in zip(names, model.variables):
        lower, upper = var.lower, var.upper
        if lower == upper:
            bounds.append(f" {name} = {_num(lower)}")
        elif var.kind is VarKind.BINARY:
            continue
        elif math.isinf(lower) and math.isinf(upper):
            bounds.append(f" {name} free")
        elif (lower, upper) != (0.0, math.inf):
            low = "-inf" if math.isinf(lower) else _num(lower)
            high = "+inf" if math.isinf(upper) else _num(upper)
            bounds.append(f" {low} <= {name} <= {high}")
    if bounds:
        lines.append("Bounds")
        lines += bounds

    binaries = [name for name, var in zip(names, model.variables) if var.kind is VarKind.BINARY]
    if binaries:
        lines.append("Binaries")
        lines += [" " + name for name in binaries]
    lines.append("End")
    return "\n".join(lines) + "\n"


def write_mps(model: MilpModel, path: str, fixed: bool = False) -> bool:
    """Write a model as (free or fixed) MPS. Returns True on success."""
    ok = safe_write_file(path, mps_text(model, fixed=fixed))
    if ok:
        logger.info("Wrote %s MPS model to %s", "fixed" if fixed else "free", path)
    return ok


def write_lp(model: MilpModel, path: str) -> bool:
    """Write a model as CPLEX LP. Returns True on success."""
    ok = safe_write_file(path, lp_text(model))
    if ok:
        logger.info("Wrote LP model to %s", path)
    return ok


_WRITERS: Dict[str, Callable[[MilpModel, str], bool]] = {
    "mps": lambda model, path: write_mps(model, path),
    "fixed-mps": lambda model, path: write_mps(model, path, fixed=True),
    "lp": write_lp,
}


def export_model(model: MilpModel, path: str, fmt: Optional[str] = None) -> bool:
    """
    Write a model in ``fmt``, or in the format implied by the extension.

    Raises:
        DataError: If the format is unknown or cannot be inferred.
    """
    if fmt is None:
        ext = os.path.splitext(path)[1].lower().lstrip(".")
        fmt = {"mps": "mps", "lp": "lp"}.get(ext)
        if fmt is None:
            raise DataError(f"cannot infer model format from {path!r}; use one of {EXPORT_FORMATS}")
    if fmt not in _WRITERS:
        raise DataError(f"unknown model format {fmt!r}; use one of {EXPORT_FORMATS}")
    return _WRITERS[fmt](model, path)
