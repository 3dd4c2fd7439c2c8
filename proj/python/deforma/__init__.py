"""Deformed and fractional calculus: q/Q-calculus, Caputo/Riesz/Feller
derivatives, the reflection-deformed derivative, oscillator spectra and
quantum potentials."""

from ._deforma import *  # noqa: F401,F403
from ._deforma import __version__  # noqa: F401
