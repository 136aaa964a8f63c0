# utils.py
"""
Small parsing and formatting helpers shared by the CLI and the HTTP handlers
"""

import logging
from typing import Any

from family import EmbedMode

logger = logging.getLogger(__name__)


def format_file_size(size_bytes):
    """Format file size in human readable format"""
    if size_bytes < 1024:
        return f"{size_bytes} B"
    elif size_bytes < 1024 * 1024:
        return f"{size_bytes / 1024:.1f} KB"
    else:
        return f"{size_bytes / (1024 * 1024):.1f} MB"


def parse_mode(value: Any) -> EmbedMode:
    """'rooted' or 'free' (case-insensitive)"""
    try:
        return EmbedMode(str(value).strip().lower())
    except ValueError:
        raise ValueError(f"Mode must be 'rooted' or 'free', got {value!r}")


def parse_non_negative_int(value: Any, name: str) -> int:
    if isinstance(value, bool):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if number < 0:
        raise ValueError(f"{name} must be non-negative, got {number}")
    return number


def parse_positive_int(value: Any, name: str) -> int:
    number = parse_non_negative_int(value, name)
    if number < 1:
        raise ValueError(f"{name} must be >= 1, got {number}")
    return number


def parse_flag(value: Any) -> bool:
    """Truthy form/JSON flag ('true', '1', 'yes', True)"""
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ('true', '1', 'yes', 'on')
