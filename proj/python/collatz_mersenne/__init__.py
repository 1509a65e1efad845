"""Collatz path lengths of Mersenne numbers."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, Error, DomainError, RangeError, CycleGuardExceeded, ParseError  # noqa: F401
