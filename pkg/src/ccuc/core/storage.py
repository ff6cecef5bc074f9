"""
JSON storage for instances, solutions and reports.

Every saved document carries an ``_integrity_hash``; a document whose hash no
longer matches its content is refused on load.
"""

import hmac
import json
import logging
from typing import Any, Dict, Optional

import numpy as np

from ..errors import DataError
from ..utils.files import safe_read_file, safe_write_file
from ..utils.hashing import INTEGRITY_KEY, compute_integrity_hash
from .instance import (
    FLEET_FIELDS,
    ContingencySet,
    ForecastSeries,
    GeneratorFleet,
    UCInstance,
    UCSolution,
)

logger = logging.getLogger(__name__)

INSTANCE_FORMAT = "ccuc-instance"
SOLUTION_FORMAT = "ccuc-solution"
FORMAT_VERSION = 1


def instance_to_dict(inst: UCInstance) -> Dict[str, Any]:
    """Serialize an instance to plain JSON types."""
    fleet = inst.fleet
    return {
        "format": INSTANCE_FORMAT,
        "version": FORMAT_VERSION,
        "fleet": {
            "n_g": inst.n_g,
            **{name: getattr(fleet, name).tolist() for name in FLEET_FIELDS},
        },
        "contingencies": {
            "n_k": inst.n_k,
            "availability": inst.contingencies.availability.tolist(),
            "weights": inst.contingencies.weights.tolist(),
        },
        "forecasts": {
            "n_t": inst.n_t,
            "n_d": inst.n_d,
            "n_w": inst.n_w,
            "d_hat": inst.forecasts.d_hat.tolist(),
            "w_hat": inst.forecasts.w_hat.tolist(),
        },
    }


def _require_count(section: Dict[str, Any], key: str, actual: int) -> None:
    if key in section and int(section[key]) != actual:
        raise DataError(f"{key} = {section[key]} but data has {actual}")


def instance_from_dict(data: Dict[str, Any]) -> UCInstance:
    """
    Build an instance from its JSON form.

    Raises:
        DataError: On missing fields or inconsistent declared counts.
    """
    try:
        fleet_data = data["fleet"]
        cont_data = data["contingencies"]
        fc_data = data["forecasts"]
        fleet = GeneratorFleet(**{name: fleet_data[name] for name in FLEET_FIELDS})
        contingencies = ContingencySet(
            availability=cont_data["availability"], weights=cont_data["weights"]
        )
        n_t = int(fc_data.get("n_t", len(fc_data["d_hat"])))
        n_w = int(fc_data.get("n_w", 0))
        w_hat = np.asarray(fc_data.get("w_hat", []), dtype=float).reshape(n_t, n_w)
        forecasts = ForecastSeries(d_hat=fc_data["d_hat"], w_hat=w_hat)
    except KeyError as e:
        raise DataError(f"instance document is missing field {e}") from e
    except (TypeError, ValueError) as e:
        raise DataError(f"malformed instance document: {e}") from e

    inst = UCInstance(fleet=fleet, contingencies=contingencies, forecasts=forecasts)
    _require_count(fleet_data, "n_g", inst.n_g)
    _require_count(cont_data, "n_k", inst.n_k)
    _require_count(fc_data, "n_t", inst.n_t)
    _require_count(fc_data, "n_d", inst.n_d)
    return inst


def solution_to_dict(sol: UCSolution) -> Dict[str, Any]:
    """Serialize a solution; binaries as 0/1 integers."""
    return {
        "format": SOLUTION_FORMAT,
        "version": FORMAT_VERSION,
        "objective": sol.objective,
        "mip_gap": sol.mip_gap,
        "z": sol.z.tolist(),
        "u": sol.u.tolist(),
        "v": sol.v.tolist(),
        "g": sol.g.tolist(),
        "r": sol.r.tolist(),
    }


def solution_from_dict(data: Dict[str, Any]) -> UCSolution:
    """
    Build a solution from its JSON form.

    Raises:
        DataError: On missing fields.
    """
    try:
        return UCSolution(
            z=data["z"],
            u=data["u"],
            v=data["v"],
            g=data["g"],
            r=data["r"],
            objective=data.get("objective", 0.0),
            mip_gap=data.get("mip_gap", 0.0),
        )
    except KeyError as e:
        raise DataError(f"solution document is missing field {e}") from e
    except (TypeError, ValueError) as e:
        raise DataError(f"malformed solution document: {e}") from e


def save_document(document: Dict[str, Any], filename: str) -> bool:
    """
    Save a JSON document with an integrity hash.

    Args:
        document: JSON-serializable dictionary
        filename: Output filename

    Returns:
        True if successful, False otherwise
    """
    try:
        data_with_hash = dict(document)
        data_with_hash[INTEGRITY_KEY] = compute_integrity_hash(document)
        content = json.dumps(data_with_hash, indent=2)
        return safe_write_file(filename, content)
    except (TypeError, ValueError) as e:
        logger.error("Error saving %s: %s", filename, e)
        return False


def load_document(filename: str) -> Optional[Dict[str, Any]]:
    """
    Load a JSON document, verifying its integrity hash when present.

    Returns:
        The document without the hash field, or None on error
    """
    content = safe_read_file(filename)
    if not content:
        logger.error("File not found or could not be read: %s", filename)
        return None

    try:
        data = json.loads(content)
    except json.JSONDecodeError as e:
        logger.error("Invalid JSON in %s: %s", filename, e)
        return None

    if not isinstance(data, dict):
        logger.error("Expected a JSON object in %s", filename)
        return None

    if INTEGRITY_KEY in data:
        stored_hash = data.pop(INTEGRITY_KEY)
        if not hmac.compare_digest(str(stored_hash), compute_integrity_hash(data)):
            logger.error("Integrity check failed for %s - data may be tampered", filename)
            return None

    return data


def save_instance(inst: UCInstance, filename: str) -> bool:
    """Save an instance document."""
    return save_document(instance_to_dict(inst), filename)


def load_instance(filename: str) -> Optional[UCInstance]:
    """Load an instance document, or None on error."""
    data = load_document(filename)
    if data is None:
        return None
    try:
        return instance_from_dict(data)
    except DataError as e:
        logger.error("Error loading instance %s: %s", filename, e)
        return None


def save_solution(sol: UCSolution, filename: str) -> bool:
    """Save a solution document."""
    return save_document(solution_to_dict(sol), filename)


def load_solution(filename: str) -> Optional[UCSolution]:
    """Load a solution document, or None on error."""
    data = load_document(filename)
    if data is None:
        return None
    try:
        return solution_from_dict(data)
    except DataError as e:
        logger.error("Error loading solution %s: %s", filename, e)
        return None
