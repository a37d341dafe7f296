# Licensed under a 3-clause BSD style license - see LICENSE.rst

import logging

__all__ = ["__version__"]

try:
    from .version import version as __version__
except ImportError:
    __version__ = ""

# Global variables

# Highest stem degree carried by the built-in stem table (pi_0 .. pi_5)
STEM_MAX_DEGREE = 5
# Default number of levels above V_0 when a resolution is built greedily
DEFAULT_RESOLUTION_LENGTH = 5
# Default top cohomological degree reported by the command line
DEFAULT_MAX_DEGREE = 5
# Largest finite group or coset that is ever enumerated element by element
ENUMERATION_LIMIT = 4096
# Search radius along infinite kernel directions when a lift picks its lex-minimal solution
LIFT_SEARCH_RADIUS = 2

# Exit codes used by the command line front end
EXIT_OK = 0
EXIT_PARSE = 1
EXIT_FAILURE = 2

logger = logging.getLogger("pialgkit")
if not logger.handlers:
    _handler = logging.StreamHandler()
    _handler.setFormatter(logging.Formatter("pialgkit %(levelname)s: %(message)s"))
    logger.addHandler(_handler)
logger.setLevel(logging.INFO)
