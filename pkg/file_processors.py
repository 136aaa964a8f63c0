"""
File processing for tree, witness and certificate files (text and JSON)
"""

import os
import sys
import logging
from typing import Optional, Tuple

from tree import RootedTree, TreeFormatError, parse_tree, tree_from_json
from utils import format_file_size

logger = logging.getLogger(__name__)

ALLOWED_EXTENSIONS = {'.txt', '.tree', '.json', ''}


def detect_tree_format(text: str) -> str:
    """'json' for a parent-array object, 'text' for parenthesis notation"""
    return 'json' if text.lstrip().startswith('{') else 'text'


def parse_tree_payload(text: str, fmt: Optional[str] = None) -> RootedTree:
    """Parse tree content in the given (or detected) format"""
    fmt = fmt or detect_tree_format(text)
    if fmt == 'json':
        return tree_from_json(text)
    if fmt == 'text':
        return parse_tree(text)
    raise TreeFormatError(f"Unknown tree format: {fmt}")


def validate_file(path: str, max_bytes: int) -> Tuple[bool, str]:
    """Check that a file exists, has a known extension and fits the size limit"""
    if not os.path.isfile(path):
        return False, f"No such file: {path}"

    file_ext = os.path.splitext(path)[1].lower()
    if file_ext not in ALLOWED_EXTENSIONS:
        return False, f"Unsupported file type {file_ext}. Use .txt, .tree or .json"

    size = os.path.getsize(path)
    if size > max_bytes:
        return False, f"File too large ({format_file_size(size)}); limit is {format_file_size(max_bytes)}"

    return True, "File is valid"


def read_text_file(path: str, max_bytes: int) -> str:
    """Read a UTF-8 file after validation ('-' reads stdin)"""
    if path == '-':
        return sys.stdin.read()

    is_valid, message = validate_file(path, max_bytes)
    if not is_valid:
        raise ValueError(message)

    try:
        with open(path, 'r', encoding='utf-8') as f:
            return f.read()
    except (OSError, UnicodeDecodeError) as e:
        logger.error(f"Error reading {path}: {e}")
        raise ValueError(f"Failed to read file {path}: {str(e)}")


def load_tree_file(path: str, max_bytes: int, fmt: Optional[str] = None) -> RootedTree:
    """Read and parse a tree file"""
    text = read_text_file(path, max_bytes)
    t = parse_tree_payload(text, fmt)
    logger.info(f"Loaded {t.n}-vertex tree from {path}")
    return t


def write_output(content: str, path: Optional[str] = None):
    """Write to a file (creating its directory) or to stdout"""
    if not content.endswith('\n'):
        content += '\n'
    if not path or path == '-':
        sys.stdout.write(content)
        return

    try:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(content)
    except OSError as e:
        logger.error(f"Error writing {path}: {e}")
        raise ValueError(f"Failed to write file {path}: {str(e)}")
    logger.info(f"Wrote {path}")
