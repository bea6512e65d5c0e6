"""Fermi-Dirac-Fokker-Planck numerical lab.

Thin re-export of the compiled ``_fdfp`` extension.
"""

from ._fdfp import *  # noqa: F401,F403
from ._fdfp import ConfigError, SolverError  # noqa: F401

__version__ = "0.1.0"
