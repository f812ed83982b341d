# -*- coding: utf-8 -*-
# File: gorenstein/logger.py
# Logger for the package using Python's logging module.
# Records go through a queue to a console handler (stderr) and, when
# GORENSTEIN_LOG_FILE is set, to a file handler.
import functools
import logging
import logging.handlers
import time
from queue import Queue
from typing import Callable, Optional

from gorenstein.config import LOG_FILE, LOG_LEVEL

_log_queue = Queue(-1)
_listener_obj = None

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def get_logger(name: Optional[str] = None):
    """
    Get a logger with the specified name. Ensures no duplicate handlers.
    Console and file output happen on the queue listener thread.
    """
    global _listener_obj
    logger = logging.getLogger(name or __name__)
    logger.setLevel(LOG_LEVEL)
    if not any(isinstance(h, logging.handlers.QueueHandler) for h in logger.handlers):
        qh = logging.handlers.QueueHandler(_log_queue)
        logger.addHandler(qh)
        logger.propagate = False
    # One listener at a time; restarted after stop_logger
    if _listener_obj is None:
        formatter = logging.Formatter(LOG_FORMAT)
        console_handler = logging.StreamHandler()
        console_handler.setLevel(LOG_LEVEL)
        console_handler.setFormatter(formatter)
        handlers = [console_handler]
        if LOG_FILE:
            file_handler = logging.FileHandler(LOG_FILE, encoding="utf-8")
            file_handler.setLevel(LOG_LEVEL)
            file_handler.setFormatter(formatter)
            handlers.append(file_handler)
        _listener_obj = logging.handlers.QueueListener(_log_queue, *handlers)
        _listener_obj.start()
    return logger


def stop_logger():
    """
    Stop the QueueListener and flush all logs before exit.
    """
    global _listener_obj
    if _listener_obj is not None:
        _listener_obj.stop()
        _listener_obj = None


def log_command(command_name: str):
    """
    Decorator logging start, duration and failure of a CLI command.
    """
    def decorator(func: Callable):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_logger("gorenstein.commands")
            start_time = time.perf_counter()
            logger.debug(f"command {command_name} started")
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                elapsed_ms = int((time.perf_counter() - start_time) * 1000)
                logger.error(f"command {command_name} failed after {elapsed_ms} ms: {e}")
                raise
            elapsed_ms = int((time.perf_counter() - start_time) * 1000)
            logger.info(f"command {command_name} finished in {elapsed_ms} ms")
            return result
        return wrapper
    return decorator
