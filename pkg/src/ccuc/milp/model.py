"""
Solver-agnostic mixed-integer linear model.

Variables and rows are kept in insertion order, so identical inputs always
produce structurally identical models. Coefficients are stored in coordinate
form (row, column, value) and converted to a sparse matrix for backends.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np
from scipy import sparse

from ..errors import DataError

logger = logging.getLogger(__name__)

_NAME_RE = re.compile(r"^(?P<symbol>[A-Za-z_]+)\[(?P<labels>[^\]]*)\]$")


class VarKind(Enum):
    """Variable domains."""

    CONTINUOUS = "continuous"
    BINARY = "binary"


class Sense(Enum):
    """Row senses."""

    LE = "<="
    GE = ">="
    EQ = "=="


class Family(Enum):
    """Constraint families of the UC problem."""

    BINARY = "B"  # commitment logic only
    CONTINUOUS = "C"  # dispatch and reserve only
    HYBRID = "H"  # couples commitment and dispatch
    UNCERTAIN = "U"  # scenario supply rows
    REDUNDANT = "R"  # implied per-contingency capacity rows


@dataclass(frozen=True)
class Variable:
    """A decision variable."""

    name: str
    kind: VarKind
    lower: float
    upper: float


@dataclass(frozen=True)
class Row:
    """A linear constraint; coefficients live in the model's COO arrays."""

    name: str
    sense: Sense
    rhs: float
    family: Family


def format_name(symbol: str, **labels: int) -> str:
    """``format_name("g", t=3, k=0, i=17)`` -> ``"g[t=3,k=0,i=17]"``."""
    inner = ",".join(f"{key}={value}" for key, value in labels.items())
    return f"{symbol}[{inner}]"


def parse_name(name: str) -> Tuple[str, Dict[str, int]]:
    """
    Inverse of :func:`format_name`.

    Raises:
        DataError: If the name is not of the form ``symbol[key=value,...]``.
    """
    match = _NAME_RE.match(name)
    if not match:
        raise DataError(f"cannot parse model name {name!r}")
    labels: Dict[str, int] = {}
    for part in match.group("labels").split(","):
        key, sep, value = part.partition("=")
        if not sep or not value.strip().lstrip("-").isdigit():
            raise DataError(f"cannot parse model name {name!r}")
        labels[key.strip()] = int(value)
    return match.group("symbol"), labels


class MilpModel:
    """
    A minimization MILP with named variables and rows.

    ``meta`` carries the dimensions (``n_t``, ``n_k``, ``n_g``) the UC
    builders used, for solution extraction.
    """

    def __init__(self, name: str = "ccuc") -> None:
        self.name = name
        self.variables: List[Variable] = []
        self.rows: List[Row] = []
        self.meta: Dict[str, Any] = {}
        self._index: Dict[str, int] = {}
        self._objective: Dict[int, float] = {}
        self._coo_row: List[int] = []
        self._coo_col: List[int] = []
        self._coo_val: List[float] = []

    # -- construction --------------------------------------------------

    def add_variable(
        self,
        name: str,
        kind: VarKind = VarKind.CONTINUOUS,
        lower: float = 0.0,
        upper: float = np.inf,
    ) -> int:
        """Declare a variable and return its column index."""
        if name in self._index:
            raise DataError(f"duplicate variable {name!r}")
        if kind is VarKind.BINARY:
            lower, upper = max(0.0, lower), min(1.0, upper)
        self._index[name] = len(self.variables)
        self.variables.append(Variable(name, kind, float(lower), float(upper)))
        return self._index[name]

    def add_row(
        self,
        name: str,
        coeffs: Mapping[int, float],
        sense: Sense,
        rhs: float,
        family: Family,
    ) -> int:
        """
        Add a row ``sum coeffs[j] * x_j  sense  rhs`` keyed by column index.

        Raises:
            DataError: If a coefficient references an undeclared column.
        """
        row = len(self.rows)
        n_vars = len(self.variables)
        for col, value in coeffs.items():
            if not 0 <= col < n_vars:
                raise DataError(f"row {name!r} references undeclared column {col}")
            if value != 0.0:
                self._coo_row.append(row)
                self._coo_col.append(col)
                self._coo_val.append(float(value))
        self.rows.append(Row(name, sense, float(rhs), family))
        return row

    def set_objective(self, coeffs: Mapping[int, float]) -> None:
        """Replace the (minimized) objective."""
        self._objective = {col: float(v) for col, v in coeffs.items() if v != 0.0}

    def add_to_objective(self, col: int, value: float) -> None:
        self._objective[col] = self._objective.get(col, 0.0) + float(value)

    # -- queries -------------------------------------------------------

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def index(self, name: str) -> int:
        """Column index of a variable name."""
        return self._index[name]

    def count(self, kind: VarKind) -> int:
        return sum(1 for var in self.variables if var.kind is kind)

    def rows_in_family(self, family: Family) -> List[int]:
        return [r for r, row in enumerate(self.rows) if row.family is family]

    def rows_with_prefix(self, prefix: str) -> List[int]:
        return [r for r, row in enumerate(self.rows) if row.name.startswith(prefix + "[")]

    def row_coefficients(self, row: int) -> Dict[str, float]:
        """Coefficients of one row keyed by variable name."""
        matrix = self.constraint_matrix()
        start, end = matrix.indptr[row], matrix.indptr[row + 1]
        return {
            self.variables[col].name: float(val)
            for col, val in zip(matrix.indices[start:end], matrix.data[start:end])
        }

    def objective_vector(self) -> np.ndarray:
        c = np.zeros(self.n_variables)
        for col, value in self._objective.items():
            c[col] = value
        return c

    def objective_terms(self) -> Dict[int, float]:
        return dict(self._objective)

    def constraint_matrix(self) -> sparse.csr_matrix:
        """Row-major sparse coefficient matrix (duplicates summed)."""
        return sparse.csr_matrix(
            (self._coo_val, (self._coo_row, self._coo_col)),
            shape=(self.n_rows, self.n_variables),
        )

    def row_bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        """Lower and upper activity bounds per row."""
        lower = np.full(self.n_rows, -np.inf)
        upper = np.full(self.n_rows, np.inf)
        for r, row in enumerate(self.rows):
            if row.sense is not Sense.LE:
                lower[r] = row.rhs
            if row.sense is not Sense.GE:
                upper[r] = row.rhs
        return lower, upper

    def variable_bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        lower = np.array([v.lower for v in self.variables], dtype=float)
        upper = np.array([v.upper for v in self.variables], dtype=float)
        return lower, upper

    def integrality(self) -> np.ndarray:
        return np.array(
            [1 if v.kind is VarKind.BINARY else 0 for v in self.variables], dtype=np.int64
        )

    # -- derived models ------------------------------------------------

    def with_fixed(self, values: Mapping[int, float]) -> "MilpModel":
        """
        Copy with the given columns fixed (lower = upper = value).

        Rows, coefficients and the objective are shared with this model.
        """
        fixed = MilpModel.__new__(MilpModel)
        fixed.__dict__.update(self.__dict__)
        fixed.meta = dict(self.meta)
        fixed.variables = list(self.variables)
        for col, value in values.items():
            var = fixed.variables[col]
            fixed.variables[col] = Variable(var.name, var.kind, float(value), float(value))
        return fixed

    def summary(self) -> Dict[str, int]:
        return {
            "variables": self.n_variables,
            "binaries": self.count(VarKind.BINARY),
            "rows": self.n_rows,
            "nonzeros": len(self._coo_val),
        }


def describe(model: MilpModel, extra: Optional[Dict[str, Any]] = None) -> str:
    """One-line size summary for logs."""
    info = dict(model.summary())
    if extra:
        info.update(extra)
    return " ".join(f"{key}={value}" for key, value in info.items())
