import logging
import sys

LOG_FORMAT = "[%(name)s] %(levelname)s %(message)s"


def setup_logging(level: str | int = "WARNING") -> None:
    """Route all graphmdl loggers to stderr; stdout is reserved for reports."""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    root = logging.getLogger("graphmdl")
    root.setLevel(level)
    for h in list(root.handlers):
        root.removeHandler(h)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.propagate = False
