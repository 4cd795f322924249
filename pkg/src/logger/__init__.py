import logging
from pathlib import Path
from threading import Lock
from typing import Union

__all__ = ["root_logger", "get_logger", "resolve_log_dir"]

from src.logger.buffered_handler import BufferedFileHandler

_logger_lock = Lock()

FULL_FORMATTER = logging.Formatter('[%(asctime)s] [%(levelname)s] [%(name)s]: %(message)s')

_PROJECT_ROOT = Path(__file__).resolve().parents[2]


def resolve_log_dir(log_dir: Union[str, Path, None]) -> Path:
    """None means <project_root>/logs; relative paths resolve against the project root."""
    if log_dir is None:
        path = _PROJECT_ROOT / "logs"
    else:
        path = Path(log_dir)
        if not path.is_absolute():
            path = _PROJECT_ROOT / path
    path.mkdir(parents=True, exist_ok=True)
    return path


def _close_handlers_in(root: logging.Logger, log_dir: Path) -> None:
    for h in list(root.handlers):
        base = getattr(h, "baseFilename", None)
        if base and Path(base).resolve().parent == log_dir.resolve():
            root.removeHandler(h)
            try:
                h.close()
            except Exception:
                pass


def root_logger(log_dir: Union[str, Path] = None,
                log_name: str = "consensus.log",
                console_level: int = logging.WARNING,
                erase_old_logs: bool = False,
                log_level: int = logging.NOTSET) -> logging.Logger:
    """
    Configure the root logger:

    - Console handler at console_level (standard error, so diagnostics never mix with reports)
    - Buffered file handler for the root file logging everything at log_level
    - If erase_old_logs is True, delete all *.log files inside the resolved log_dir first.

    Calling it again reconfigures levels instead of stacking handlers.

    Returns the root logger.
    """
    log_dir = resolve_log_dir(log_dir)
    file_path_str = str((log_dir / log_name).resolve())

    root = logging.getLogger()
    root.setLevel(log_level)

    if erase_old_logs:
        _close_handlers_in(root, log_dir)
        for p in log_dir.glob("*.log"):
            try:
                p.unlink()
            except OSError:
                pass

    with _logger_lock:
        stream_handlers = [h for h in root.handlers
                           if type(h) is logging.StreamHandler]
        if not stream_handlers:
            ch = logging.StreamHandler()
            ch.setLevel(console_level)
            ch.setFormatter(FULL_FORMATTER)
            root.addHandler(ch)
        else:
            for h in stream_handlers:
                h.setLevel(console_level)
                h.setFormatter(FULL_FORMATTER)

        existing_root_file = any(getattr(h, "baseFilename", "") == file_path_str for h in root.handlers)
        if not existing_root_file:
            root_file_handler = BufferedFileHandler(file_path_str, capacity=100, encoding="utf-8")
            root_file_handler.setLevel(log_level)
            root_file_handler.setFormatter(FULL_FORMATTER)
            root.addHandler(root_file_handler)

    return root


def get_logger(name: str,
               log_dir: Union[str, Path] = None,
               propagate: bool = True,
               handler_level: int = logging.INFO,
               buffered: bool = True,
               buffer_capacity: int = 100) -> logging.Logger:
    """
    Get a module-specific logger with its own `<name>.log` file.

    The logger's level stays NOTSET so it never filters records before they propagate to root;
    filtering belongs to the handlers.
    """
    log_dir = resolve_log_dir(log_dir)
    logger = logging.getLogger(name)
    module_log_path = str((log_dir / f"{name}.log").resolve())

    with _logger_lock:
        already = any(getattr(h, "baseFilename", "") == module_log_path for h in logger.handlers)
        if not already:
            if buffered:
                handler = BufferedFileHandler(module_log_path, capacity=buffer_capacity, encoding="utf-8")
            else:
                handler = logging.FileHandler(module_log_path, encoding="utf-8")
            handler.setLevel(handler_level)
            handler.setFormatter(FULL_FORMATTER)
            logger.addHandler(handler)

    logger.setLevel(logging.NOTSET)
    logger.propagate = propagate
    return logger
