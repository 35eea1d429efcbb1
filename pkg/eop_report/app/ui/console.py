"""Console logging: ``[HH:MM:SS] LEVEL message`` on stderr, colored on a terminal."""

from __future__ import annotations

import logging
import sys

from colorama import Fore, Style, just_fix_windows_console

LEVEL_COLORS = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}


class ColorFormatter(logging.Formatter):
    def __init__(self, use_color: bool = False) -> None:
        super().__init__(fmt="[%(asctime)s] %(levelname)s %(message)s", datefmt="%H:%M:%S")
        self.use_color = use_color

    def format(self, record: logging.LogRecord) -> str:
        text = super().format(record)
        if not self.use_color:
            return text
        color = LEVEL_COLORS.get(record.levelno, "")
        return f"{color}{text}{Style.RESET_ALL}"


def setup_logging(verbosity: int = 0, stream=None) -> logging.Handler:
    """Install one stderr handler on the package logger.

    ``verbosity`` 0 logs info, 1+ debug; negative only warnings and errors.
    """
    stream = stream if stream is not None else sys.stderr
    use_color = hasattr(stream, "isatty") and stream.isatty()
    if use_color:
        just_fix_windows_console()

    handler = logging.StreamHandler(stream)
    handler.setFormatter(ColorFormatter(use_color=use_color))

    level = logging.WARNING if verbosity < 0 else (logging.INFO if verbosity == 0 else logging.DEBUG)
    package_logger = logging.getLogger("eop_report")
    for old in list(package_logger.handlers):
        package_logger.removeHandler(old)
    package_logger.addHandler(handler)
    package_logger.setLevel(level)
    package_logger.propagate = False
    return handler
