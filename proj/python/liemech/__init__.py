"""Lie groups, root systems and rigid-body mechanics."""

from ._liemech import *  # noqa: F401,F403
from ._liemech import LiemechError, __version__  # noqa: F401
