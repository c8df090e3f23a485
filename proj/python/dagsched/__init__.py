"""DAG-aware multi-resource cluster scheduling toolkit (Python bindings)."""

try:
    from dagsched._dagsched import *  # noqa: F401,F403
except ImportError:  # pragma: no cover - build-tree layout
    from _dagsched import *  # noqa: F401,F403
