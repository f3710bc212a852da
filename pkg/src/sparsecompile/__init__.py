"""Routing compiler and topology analytics for sparse 2D qubit layouts."""

from .topology import LayoutSpec, build, build_linear, build_rectangular, build_sparse
from .metrics import stats_bruteforce, mean_sparse_closed
from .permutation import route, verify_schedule
from .pairwise import compile_pairwise

__version__ = "0.1.0"
