"""
Content hashing for stored documents and experiment configs.
"""

import hashlib
import json
from typing import Any, Dict

INTEGRITY_KEY = "_integrity_hash"


def canonical_json(data: Any) -> bytes:
    """Serialize with sorted keys so equal content hashes equally."""
    return json.dumps(data, sort_keys=True, separators=(",", ":")).encode("utf-8")


def compute_integrity_hash(data: Dict[str, Any]) -> str:
    """
    SHA3-256 over a document, excluding any embedded integrity hash.

    Args:
        data: JSON-serializable document

    Returns:
        Hex-encoded hash string
    """
    payload = {k: v for k, v in data.items() if k != INTEGRITY_KEY}
    return hashlib.sha3_256(canonical_json(payload)).hexdigest()
