"""
Logging for orbitquant

Four rotating streams under one directory: app.log takes everything at the
configured level, errors.log and warnings.log take their levels only, and
events.log records suite lifecycle, failed cases, overrides and errors.
Console output goes to stderr because stdout carries command results.
"""

import logging
import os
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from typing import Dict, Optional


# stream name -> (file, fixed level or None for the configured level)
STREAMS = {
    'main': ('app.log', None),
    'error': ('errors.log', logging.ERROR),
    'warning': ('warnings.log', logging.WARNING),
    'event': ('events.log', logging.INFO),
}
LOG_FILES = [filename for filename, _ in STREAMS.values()]

MAX_BYTES = 10 * 1024 * 1024
BACKUP_COUNT = 5
LOG_FORMAT = '%(asctime)s | %(levelname)-7s | %(name)s | %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


class AppLogger:
    """Multi-file logger shared by the CLI, the verification runner and the library"""

    def __init__(self, log_dir: str = "logs", log_level: str = "INFO", console: bool = True):
        """
        Args:
            log_dir: Directory for the log files, created if missing
            log_level: DEBUG, INFO, WARNING or ERROR for app.log
            console: Mirror warnings and errors to stderr
        """
        self.log_dir = log_dir
        self.log_level = getattr(logging, str(log_level).upper(), logging.INFO)
        self.console = console
        os.makedirs(self.log_dir, exist_ok=True)

        self._streams: Dict[str, logging.Logger] = {
            name: self._open_stream(name, filename, self.log_level if level is None else level)
            for name, (filename, level) in STREAMS.items()
        }

    def _open_stream(self, name: str, filename: str, level: int) -> logging.Logger:
        stream = logging.getLogger(f"orbitquant.{name}")
        stream.setLevel(level)
        stream.propagate = False

        # A second setup (another log_dir in tests) replaces the old handlers
        for handler in list(stream.handlers):
            stream.removeHandler(handler)
            handler.close()

        formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
        to_file = RotatingFileHandler(os.path.join(self.log_dir, filename),
                                      maxBytes=MAX_BYTES, backupCount=BACKUP_COUNT)
        to_file.setLevel(level)
        to_file.setFormatter(formatter)
        stream.addHandler(to_file)

        if self.console and name == 'main':
            to_console = logging.StreamHandler(sys.stderr)
            to_console.setLevel(max(level, logging.WARNING))
            to_console.setFormatter(formatter)
            stream.addHandler(to_console)
        return stream

    @staticmethod
    def _tag(message: str, component: Optional[str]) -> str:
        return f"[{component}] {message}" if component else message

    def debug(self, message: str, component: Optional[str] = None):
        self._streams['main'].debug(self._tag(message, component))

    def info(self, message: str, component: Optional[str] = None):
        self._streams['main'].info(self._tag(message, component))

    def warning(self, message: str, component: Optional[str] = None):
        """Write to app.log and warnings.log"""
        text = self._tag(message, component)
        self._streams['main'].warning(text)
        self._streams['warning'].warning(text)

    def error(self, message: str, component: Optional[str] = None, exc_info: bool = False):
        """Write to app.log and errors.log"""
        text = self._tag(message, component)
        for name in ('main', 'error'):
            self._streams[name].error(text, exc_info=exc_info)

    def event(self, event_type: str, message: str, component: Optional[str] = None):
        """
        Record an event in events.log (and app.log)

        Args:
            event_type: SUITE, CASE, OVERRIDE, ERROR or STARTUP
            message: Event description
            component: Optional component tag
        """
        text = self._tag(f"[{event_type}] {message}", component)
        self._streams['event'].info(text)
        self._streams['main'].info(text)

    def log_suite_event(self, suite: str, event: str, details: str = ""):
        """Suite lifecycle: START, PASS or FAIL"""
        self.event("SUITE", f"Suite {suite} {event}" + (f" - {details}" if details else ""), "Verification")

    def log_case_event(self, case_id: str, status: str, details: str = ""):
        """
        Record a case outcome; failed cases are also warnings

        Args:
            case_id: Case identifier
            status: pass, fail or derived-override
            details: Residual or notes
        """
        text = f"Case {case_id}: {status}" + (f" - {details}" if details else "")
        if status == "fail":
            self.warning(text, "Verification")
        self.event("CASE", text, "Verification")

    def log_override_event(self, case_id: str, details: str = ""):
        """A printed closed form replaced by the derived one"""
        text = f"Derived form overrides printed form in {case_id}" + (f" - {details}" if details else "")
        self.event("OVERRIDE", text, "Verification")

    def log_error_event(self, error_type: str, error_msg: str, component: Optional[str] = None):
        text = f"{error_type}: {error_msg}"
        self.error(text, component)
        self.event("ERROR", text, component)

    def get_log_stats(self) -> dict:
        """
        Size and modification time of each log file

        Returns:
            Mapping file name -> {path, size, modified}, or None for files not yet written
        """
        stats = {}
        for filename in LOG_FILES:
            path = os.path.join(self.log_dir, filename)
            stats[filename] = None if not os.path.exists(path) else {
                'path': path,
                'size': os.path.getsize(path),
                'modified': datetime.fromtimestamp(os.path.getmtime(path)),
            }
        return stats

    def flush(self):
        for stream in self._streams.values():
            for handler in stream.handlers:
                handler.flush()


_instance: Optional[AppLogger] = None


def get_logger(log_dir: str = "logs", log_level: str = "INFO") -> AppLogger:
    """Process-wide logger, created on first use"""
    global _instance
    if _instance is None:
        _instance = AppLogger(log_dir, log_level)
    return _instance


def setup_logger(log_dir: str = "logs", log_level: str = "INFO") -> AppLogger:
    """
    Replace the process-wide logger

    Args:
        log_dir: Directory for log files
        log_level: Level for app.log

    Returns:
        The new AppLogger
    """
    global _instance
    _instance = AppLogger(log_dir, log_level)
    return _instance
