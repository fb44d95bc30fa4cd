"""
Log do zn-falconer

Um único handler no logger 'znfal'; os módulos usam logging.getLogger(__name__)
e propagam até ele. stdout fica livre para os relatórios JSON.
"""
import logging
import sys

LOGGER_NAME = 'znfal'

LOG_FORMAT = '%(asctime)s %(levelname)-7s [%(name)s] %(message)s'
DATE_FORMAT = '%H:%M:%S'


def _reset_handlers(logger: logging.Logger):
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


def setup_logger(verbose: bool = False, stream=None) -> logging.Logger:
    """
    Configura o logger do pacote e devolve-o

    Chamadas repetidas substituem o handler anterior.

    Args:
        verbose: Se True, mostra mensagens DEBUG
        stream: Destino do log (padrão: sys.stderr no momento da chamada)
    """
    level = logging.DEBUG if verbose else logging.INFO
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)
    _reset_handlers(logger)

    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    logger.addHandler(handler)
    return logger
