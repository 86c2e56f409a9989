"""DB package exposing the SQLAlchemy Base class for the results store."""
from .base import Base  # noqa: F401
