"""Chirp sensing frames from Delsarte-Goethals sets, with a fast sparse decoder."""

__version__ = "0.1.0"

from .decoder import (RecoveryOptions, RecoveryReport, SparseSignal, column_budget, measure,
                      recover)
from .frame import (ChirpColumn, ColumnIndex, ConstructionError, DGFrame, FrameParams,
                    GaussianInt, chirp_column, column_vector, dg_basis, gauss_sum,
                    get_frame, group_product)
from .gf2 import GF2m, BinSymMatrix
from .kernels import BACKEND
from .wht import fwht

__all__ = [
    "BACKEND", "BinSymMatrix", "ChirpColumn", "ColumnIndex", "ConstructionError", "DGFrame",
    "FrameParams", "GF2m", "GaussianInt", "RecoveryOptions", "RecoveryReport", "SparseSignal",
    "chirp_column", "column_budget", "column_vector", "dg_basis", "fwht", "gauss_sum",
    "get_frame", "group_product", "measure", "recover",
]
