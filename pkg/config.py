"""
Configuration and setup for the tree-minor toolkit (CLI and HTTP service)
"""

import os
import logging
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv
from flask import Flask
from flask_limiter import Limiter
from flask_limiter.util import get_remote_address


@dataclass
class Settings:
    """Runtime settings read from the environment (and .env when present)"""
    log_level: str = 'INFO'
    log_dir: Optional[str] = None
    cert_instance_depth: int = 8
    cert_max_depth: int = 64
    verify_guest_radius: int = 4
    verify_host_radius: int = 12
    horizon_default: int = 32
    reports_dir: str = 'reports'
    secret_key: str = 'dev-secret-key-change-this'
    max_tree_bytes: int = 1024 * 1024
    api_rate_limit: str = '30 per minute'


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None or value.strip() == '':
        return default
    try:
        return int(value)
    except ValueError:
        logging.getLogger(__name__).warning(f"Ignoring non-integer {name}={value!r}, using {default}")
        return default


def load_settings() -> Settings:
    """Load .env (if any) and build Settings from environment variables"""
    load_dotenv()
    return Settings(
        log_level=os.environ.get('TREE_MINOR_LOG_LEVEL', 'INFO').upper(),
        log_dir=os.environ.get('TREE_MINOR_LOG_DIR') or None,
        cert_instance_depth=_env_int('CERT_INSTANCE_DEPTH', 8),
        cert_max_depth=_env_int('CERT_MAX_DEPTH', 64),
        verify_guest_radius=_env_int('VERIFY_GUEST_RADIUS', 4),
        verify_host_radius=_env_int('VERIFY_HOST_RADIUS', 12),
        horizon_default=_env_int('HORIZON_DEFAULT', 32),
        reports_dir=os.environ.get('REPORTS_DIR', 'reports'),
        secret_key=os.environ.get('SECRET_KEY', 'dev-secret-key-change-this'),
        max_tree_bytes=_env_int('MAX_TREE_BYTES', 1024 * 1024),
        api_rate_limit=os.environ.get('API_RATE_LIMIT', '30 per minute'),
    )


def create_app(settings: Optional[Settings] = None):
    """Create and configure Flask application"""
    settings = settings or load_settings()
    app = Flask(__name__)

    app.config['SECRET_KEY'] = settings.secret_key
    app.config['MAX_CONTENT_LENGTH'] = settings.max_tree_bytes
    app.json.sort_keys = False
    app.config['TREE_MINOR_SETTINGS'] = settings

    return app


def setup_logging(level: str = 'INFO', log_dir: Optional[str] = None):
    """Configure application logging"""
    handlers = [logging.StreamHandler()]
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(os.path.join(log_dir, 'app.log')))

    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )
    return logging.getLogger(__name__)


def setup_rate_limiter(app, default_limit: str = '200 per hour'):
    """Configure rate limiting"""
    limiter = Limiter(
        get_remote_address,
        app=app,
        default_limits=[default_limit],
        storage_uri="memory://"
    )
    return limiter


def ensure_directories(settings: Settings):
    """Create report and log directories"""
    directories = [settings.reports_dir]
    if settings.log_dir:
        directories.append(settings.log_dir)
    for directory in directories:
        os.makedirs(directory, exist_ok=True)
