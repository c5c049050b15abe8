"""
Logging setup for flagshare commands.

A process-wide singleton owns the ``flagshare`` logger. Library modules log
through ``logging.getLogger(__name__)`` and inherit its handlers:
- File handler with size-based rotation (``flagshare_YYYYMMDD.log``)
- Console handler for immediate feedback

Note:
    Worker processes of a Monte Carlo run do not call setup; their records
    go nowhere unless the parent configured the root logger.
"""

import logging
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import List, Optional

LOGGER_NAME = "flagshare"


class Logger:
    """
    Singleton wrapper around the ``flagshare`` logger.

    Attributes:
        _instance (Optional[Logger]): Singleton instance
        _initialized (bool): Initialization flag
        logger (logging.Logger): Configured logger instance
    """

    _instance: Optional['Logger'] = None

    def __new__(cls) -> 'Logger':
        if cls._instance is None:
            cls._instance = super(Logger, cls).__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self) -> None:
        if getattr(self, '_initialized', False):
            return

        self._initialized = True
        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(logging.INFO)

    def setup(self, log_dir: Optional[str], level: str = 'INFO',
              max_log_files: int = 5, max_log_size_mb: int = 10) -> None:
        """
        Set up the logger with file and console handlers.

        Args:
            log_dir (Optional[str]): Directory to store log files; None logs to the console only
            level (str, optional): Logging level. Defaults to 'INFO'
            max_log_files (int, optional): Rotated files kept. Defaults to 5
            max_log_size_mb (int, optional): Size of each log file in MB. Defaults to 10

        Raises:
            OSError: If log directory cannot be created

        Note:
            Existing handlers are cleared first, so calling setup twice is safe.
        """
        numeric = getattr(logging, str(level).upper(), None)
        if not isinstance(numeric, int):
            logging.warning(f"Invalid log level '{level}', using INFO")
            numeric = logging.INFO
        self.logger.setLevel(numeric)
        self.logger.handlers.clear()
        self.logger.propagate = False

        file_formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - '
            '%(filename)s:%(lineno)d - %(message)s'
        )
        console_formatter = logging.Formatter(
            '%(asctime)s - %(levelname)s - %(message)s'
        )

        try:
            if log_dir:
                log_path = Path(log_dir)
                log_path.mkdir(parents=True, exist_ok=True)
                self.cleanup_old_logs(log_dir, max_log_files)
                log_file = log_path / f'flagshare_{datetime.now().strftime("%Y%m%d")}.log'
                file_handler = RotatingFileHandler(
                    log_file,
                    maxBytes=max_log_size_mb * 1024 * 1024,
                    backupCount=max_log_files,
                    encoding='utf-8'
                )
                file_handler.setFormatter(file_formatter)
                self.logger.addHandler(file_handler)
        except OSError as e:
            logging.error(f"Error setting up logger: {str(e)}")
            raise

        console_handler = logging.StreamHandler()
        console_handler.setFormatter(console_formatter)
        self.logger.addHandler(console_handler)
        self.logger.debug(
            f"Logger configured - Level: {logging.getLevelName(numeric)}, "
            f"Max files: {max_log_files}, Max size: {max_log_size_mb}MB"
        )

    def cleanup_old_logs(self, log_dir: str, max_log_files: int) -> None:
        """Remove all but the ``max_log_files`` most recent log files."""
        log_path = Path(log_dir)
        if not log_path.exists():
            return
        log_files: List[Path] = sorted(
            log_path.glob('flagshare_*.log'),
            key=lambda x: x.stat().st_mtime,
            reverse=True
        )
        for old_file in log_files[max_log_files:]:
            try:
                old_file.unlink()
                self.logger.debug(f"Removed old log file: {old_file}")
            except OSError as e:
                self.logger.error(f"Error removing old log file {old_file}: {str(e)}")

    def get_logger(self) -> logging.Logger:
        return self.logger
