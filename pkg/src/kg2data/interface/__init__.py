"""Operator surface: CLI commands and the HTTP session service."""
from .cli import cli_dispatch, main
from .config import AppConfig, load_config
from .context import AppContext, build_context
from .service import SessionService, serve_sessions

__all__ = [
    "cli_dispatch",
    "main",
    "AppConfig",
    "load_config",
    "AppContext",
    "build_context",
    "SessionService",
    "serve_sessions",
]
