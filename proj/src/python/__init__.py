"""Coarse-grained vs rotating-wave Markovian master equations for a V-type
three-level system coupled to an Ohmic bath."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
