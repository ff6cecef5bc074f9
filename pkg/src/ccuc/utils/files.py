"""
Safe file I/O helpers with size limits and atomic writes.
"""

import logging
import os
import tempfile
from typing import Optional

logger = logging.getLogger(__name__)

# Solution documents of large instances run to tens of MB.
MAX_READ_SIZE = 512 * 1024 * 1024


def resolve_path(path: str) -> str:
    """
    Expand ``~`` and resolve a path to an absolute path.

    Args:
        path: The path to resolve

    Returns:
        Absolute path

    Raises:
        ValueError: If path is empty or points into a device tree
    """
    if not path:
        raise ValueError("Path cannot be empty")

    resolved = os.path.realpath(os.path.expanduser(path))

    if resolved.startswith("/dev/") or resolved.startswith("/proc/"):
        raise ValueError(f"Invalid path: {path}")

    return resolved


def output_path(filename: str, out_dir: Optional[str] = None) -> str:
    """Place a relative output filename under ``out_dir`` (absolute paths win)."""
    if out_dir and not os.path.isabs(os.path.expanduser(filename)):
        return os.path.join(out_dir, filename)
    return filename


def safe_read_file(filepath: str, max_size: int = MAX_READ_SIZE) -> Optional[str]:
    """
    Safely read a text file with size limits.

    Args:
        filepath: Path to file
        max_size: Maximum file size in bytes

    Returns:
        File contents as string, or None on error
    """
    try:
        resolved = resolve_path(filepath)

        if os.path.getsize(resolved) > max_size:
            logger.warning("File too large: %s", filepath)
            return None

        with open(resolved, "r", encoding="utf-8") as f:
            return f.read()
    except (OSError, ValueError):
        return None


def safe_write_file(filepath: str, content: str, permissions: int = 0o644) -> bool:
    """
    Write a text file atomically (temporary file + rename).

    Args:
        filepath: Path to file
        content: Content to write
        permissions: File permissions (default: 0o644)

    Returns:
        True if successful, False otherwise
    """
    try:
        resolved = resolve_path(filepath)

        parent_dir = os.path.dirname(resolved)
        os.makedirs(parent_dir, exist_ok=True)

        fd, tmp_path = tempfile.mkstemp(dir=parent_dir, prefix=".ccuc-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(content)
            os.chmod(tmp_path, permissions)
            os.replace(tmp_path, resolved)
        except Exception:
            if os.path.exists(tmp_path):
                os.remove(tmp_path)
            raise

        return True
    except (OSError, ValueError) as e:
        logger.error("Could not write %s: %s", filepath, e)
        return False
