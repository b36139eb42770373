from ._logger import logger
from .config import Config

__version__ = '0.3.0'

config = Config()

from . import model  # noqa: E402
from . import kernel  # noqa: E402
from . import dyadic  # noqa: E402
from . import operators  # noqa: E402
from . import testing  # noqa: E402
from . import proofscope  # noqa: E402
from . import datasets  # noqa: E402

__all__ = [
    '__version__',
    'config',
    'logger',
    'model',
    'kernel',
    'dyadic',
    'operators',
    'testing',
    'proofscope',
    'datasets',
]
