# ttfkit/log.py
"""Logging setup. Modules only call ``logging.getLogger(__name__)``; entry points call this."""
import logging

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(path=None, level="WARNING"):
    """
    Attach one handler to the ``ttfkit`` logger.

    :param path: log file; a stderr stream handler is used when omitted.
    :param level: level name or number.
    :return: the configured ``ttfkit`` logger.
    """
    logger = logging.getLogger("ttfkit")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    handler = logging.FileHandler(path) if path else logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level)
    return logger
