import logging
import sys

from . import settings

_handler = None


def get_logger(name):
    global _handler
    root = logging.getLogger('superlab')
    if _handler is None:
        _handler = logging.StreamHandler(sys.stderr)
        _handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
        root.addHandler(_handler)
        root.setLevel(settings.LOG_LEVEL)
    return logging.getLogger('superlab.%s' % name)


def print_sameline(string):
    # progress goes to stderr, reports own stdout
    sys.stderr.write('\033[K')
    sys.stderr.write('%s\r' % string)
    sys.stderr.flush()
