"""HTTP model service speaking the uttergen backend wire protocol."""

from .config import ModelLoadError, SidecarConfig, load_config
from .service import create_app

__all__ = ["ModelLoadError", "SidecarConfig", "create_app", "load_config"]
