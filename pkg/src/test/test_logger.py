import logging

from src.logger import get_logger, resolve_log_dir, root_logger
from src.logger.buffered_handler import BufferedFileHandler


def _record(level: int, msg: str) -> logging.LogRecord:
    return logging.LogRecord("consensus.test", level, __file__, 1, msg, None, None)


class TestBufferedFileHandler:

    def test_buffers_until_capacity(self, tmp_path):
        path = tmp_path / "buffer.log"
        handler = BufferedFileHandler(path, capacity=3)
        handler.emit(_record(logging.INFO, "one"))
        handler.emit(_record(logging.INFO, "two"))
        assert handler.pending() == 2
        assert path.read_text(encoding="utf-8") == ""
        handler.emit(_record(logging.INFO, "three"))
        assert handler.pending() == 0
        assert path.read_text(encoding="utf-8").count("\n") == 3
        handler.close()

    def test_warnings_are_written_at_once(self, tmp_path):
        path = tmp_path / "warn.log"
        handler = BufferedFileHandler(path, capacity=100)
        handler.emit(_record(logging.INFO, "queued"))
        handler.emit(_record(logging.WARNING, "budget close to the cap"))
        text = path.read_text(encoding="utf-8")
        assert "queued" in text and "[WARNING]" in text
        handler.close()

    def test_close_flushes(self, tmp_path):
        path = tmp_path / "close.log"
        handler = BufferedFileHandler(path, capacity=100)
        handler.emit(_record(logging.DEBUG, "late"))
        handler.close()
        assert "late" in path.read_text(encoding="utf-8")


class TestLoggerSetup:

    def test_resolve_creates_directory(self, tmp_path):
        target = tmp_path / "nested" / "logs"
        assert resolve_log_dir(target) == target
        assert target.is_dir()

    def test_root_logger_does_not_stack_handlers(self, tmp_path):
        root = root_logger(tmp_path, log_name="stack.log")
        count = len(root.handlers)
        root_logger(tmp_path, log_name="stack.log")
        assert len(root.handlers) == count
        assert sum(getattr(h, "baseFilename", "").endswith("stack.log") for h in root.handlers) == 1

    def test_module_logger_has_its_own_file(self, tmp_path):
        logger = get_logger("consensus.module", log_dir=tmp_path, buffered=False)
        logger.propagate = False
        logger.warning("pinned continent")
        for h in logger.handlers:
            h.flush()
        assert "pinned continent" in (tmp_path / "consensus.module.log").read_text(encoding="utf-8")
        assert get_logger("consensus.module", log_dir=tmp_path).handlers == logger.handlers
