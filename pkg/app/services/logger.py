import logging
import os

def setup_logger(name=__name__):
    """
    Sets up a logger for the given module name.

    The level comes from the LOG_LEVEL environment variable. When it is unset,
    ENV_TYPE=dev selects DEBUG and every other environment selects INFO.
    Records go to stderr so that command line output on stdout stays clean.

    Parameters:
    name (str): The name of the logger.

    Returns:
    logging.Logger: Configured logger.
    """
    env_type = os.environ.get('ENV_TYPE', 'dev')
    default_level = 'DEBUG' if env_type == 'dev' else 'INFO'
    level_name = os.environ.get('LOG_LEVEL', default_level).upper()

    logger = logging.getLogger(name)

    if not logger.handlers:
        handler = logging.StreamHandler()
        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.propagate = False

    logger.setLevel(getattr(logging, level_name, logging.INFO))
    return logger
