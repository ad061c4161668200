"""
Logging configuration shared by the CLI and the verification harness
"""

import logging

from pythonjsonlogger import jsonlogger

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(level: str = "INFO", json_output: bool = False) -> None:
    logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO), format=LOG_FORMAT, force=True)
    if json_output:
        formatter = jsonlogger.JsonFormatter(LOG_FORMAT)
        for handler in logging.getLogger().handlers:
            handler.setFormatter(formatter)
