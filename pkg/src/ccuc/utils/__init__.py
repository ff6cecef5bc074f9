"""
Utility modules for configuration, file I/O and hashing.
"""

from .config import load_config, init_config, solver_backend_name
from .files import safe_read_file, safe_write_file
from .hashing import compute_integrity_hash

__all__ = [
    "load_config",
    "init_config",
    "solver_backend_name",
    "safe_read_file",
    "safe_write_file",
    "compute_integrity_hash",
]
