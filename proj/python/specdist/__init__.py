"""Spectral distance between matrix sequences and their spectral symbols."""

from ._specdist import *  # noqa: F401,F403
from ._specdist import __doc__, symbols  # noqa: F401
