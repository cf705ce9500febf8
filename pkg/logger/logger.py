import logging
from typing import Optional

from rich.logging import RichHandler

APP_LOGGER_NAME: str = 'MARKETSIM'


def setup_app_level_logger(logger_name: str = APP_LOGGER_NAME,
                           level: str = 'INFO',
                           use_stdout: bool = False,
                           file_name: Optional[str] = "marketsim.log") -> logging.Logger:
    """create the application logger

    Args:
        logger_name (str, optional): name of the logger. Defaults to APP_LOGGER_NAME.
        level (str, optional): controls the output level. Defaults to 'INFO'.
        use_stdout (bool, optional): Whether output log to the console through rich. Defaults to False.
        file_name (str, optional): path where the log is saved, None disables the file. Defaults to "marketsim.log".

        level option: {
            'CRITICAL': CRITICAL,
            'ERROR': ERROR,
            'WARNING': WARNING,
            'INFO': INFO,
            'DEBUG': DEBUG,
            'NOTSET': NOTSET,}
    Returns:
        logging.Logger: the logger object
    """
    logger = logging.getLogger(logger_name)
    logger.setLevel(level)
    # repeated setup (several CLI calls in one process) must not stack handlers
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(
        "[%(levelname)-s]:%(filename)s %(funcName)s [Line %(lineno)s] - %(message)s")

    # output log to file
    if file_name:
        file_handler = logging.FileHandler(file_name, mode='w')
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    # output to the console
    if use_stdout:
        console_handler = RichHandler(show_path=False, rich_tracebacks=True)
        console_handler.setFormatter(logging.Formatter("%(name)s - %(message)s"))
        logger.addHandler(console_handler)

    return logger


def get_logger(module_name: str) -> logging.Logger:
    """obtain the module's logger name

    Args:
        module_name (str): name of the logger.

    Returns:
        logging.Logger: the logger object

    """
    return logging.getLogger(APP_LOGGER_NAME).getChild(module_name)
