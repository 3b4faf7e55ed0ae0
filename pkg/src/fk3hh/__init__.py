"""Exact Hochschild cohomology, cup products and Gerstenhaber brackets of the
Fomin-Kirillov algebra on three generators."""

__version__ = "1.0.0"

from .session import Config, Session  # noqa: E402

__all__ = ["Config", "Session", "__version__"]
