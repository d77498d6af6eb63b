"""Free-fall trajectories, interferometer phase budgets, and phase-space
densities under gravity-gradient field models."""

from qfall._core import *  # noqa: F401,F403
from qfall._core import __version__  # noqa: F401
