"""Resource dilution under noise: rates, scenarios and a phase-flip code simulator."""

from . import channels, dilution, functionals, linalg, qec, rates, states, sweep
from .errors import BadDims, Degenerate, DimMismatch, NotHermitian, UnknownFigure

__version__ = "0.1.0"

from . import cli  # noqa: E402  (cli reads __version__)

__all__ = [
    "channels",
    "cli",
    "dilution",
    "functionals",
    "linalg",
    "qec",
    "rates",
    "states",
    "sweep",
    "BadDims",
    "Degenerate",
    "DimMismatch",
    "NotHermitian",
    "UnknownFigure",
]
