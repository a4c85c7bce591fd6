"""Code smell detection and refactoring recommendation with graph neural networks."""

import os

__version__ = "0.1.0"

_FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(*parts) -> str:
    """Absolute path of a bundled fixture file or directory."""
    return os.path.join(_FIXTURES, *parts)
