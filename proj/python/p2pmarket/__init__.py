"""Game-theoretic engine for P2P-era ISP/CP market states.

Thin package wrapper around the compiled extension; see the project
README for the model and the CLI.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = _core_doc
__version__ = "0.1.0"
