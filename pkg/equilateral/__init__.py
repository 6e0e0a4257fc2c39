# equilateral/__init__.py
import logging
from typing import Optional

from config import Config

logger = logging.getLogger(__name__)


def configure_logging(level: str = Config.LOG_LEVEL, log_file: Optional[str] = None):
    """Timestamped log lines on stderr, plus a log file when one is configured."""
    handlers = [logging.StreamHandler()]  # stderr, stdout carries the artifacts
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format='%(asctime)s [%(levelname)s] %(name)s: %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        handlers=handlers,
        force=True,
    )


def create_cli():
    logger.debug("Creating command line interface")
    from equilateral.cli import cli
    return cli
