"""Minimum dominating sets of unit disks via hexagonal partitions."""

from hexmds._jit import backend
from hexmds.cover import (
    CoverInstance,
    InstanceTooLarge,
    Solution,
    chi,
    exact_mds,
    is_dominating,
    min_cover_bounded,
    one_disk_completion,
    uncovered,
    verify,
)
from hexmds.geom import HexGrid, cell_of, cells_of
from hexmds.io import Instance, gen_clustered, gen_uniform, load_instance, save_instance
from hexmds.solvers import (
    WindowTooDense,
    cell_baseline,
    five_half,
    four_factor,
    ptas,
    shifted_solve,
    solve_dupercell,
    solve_septa,
    solve_supercell,
    three_factor,
)
from hexmds.tiling import default_dupercell, default_septa, default_supercell, validate_tiling

__version__ = "0.1.0"

__all__ = [
    "CoverInstance", "Instance", "InstanceTooLarge", "HexGrid", "Solution", "WindowTooDense",
    "backend", "cell_baseline", "cell_of", "cells_of", "chi", "default_dupercell", "default_septa",
    "default_supercell", "exact_mds", "five_half", "four_factor", "gen_clustered", "gen_uniform",
    "is_dominating", "load_instance", "min_cover_bounded", "one_disk_completion", "ptas", "save_instance",
    "shifted_solve", "solve_dupercell", "solve_septa", "solve_supercell", "three_factor", "uncovered",
    "validate_tiling", "verify",
]
