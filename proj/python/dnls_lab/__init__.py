"""Pseudospectral lab for the derivative nonlinear Schrodinger equation."""

import numpy as np

from ._core import *  # noqa: F401,F403
from ._core import Field, Frame, Grid, __version__


def field_from_function(grid, fn, frame=Frame.ORIGINAL):
    """Samples a vectorized callable on the grid nodes."""
    return Field(grid, np.asarray(fn(grid.x), dtype=complex), frame)


def gaussian(grid, A=1.0, w=1.0, x0=0.0, frame=Frame.ORIGINAL):
    return field_from_function(grid, lambda x: A * np.exp(-((x - x0) / w) ** 2), frame)
