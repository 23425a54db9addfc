"""Quaternion-matrix SVD by a structure-preserving one-sided Jacobi method.

The package keeps quaternion matrices as four real component matrices,
orthogonalizes columns in pairs with right-applied quaternion plane
rotations, and reads the SVD off the column norms.  A brute-force oracle
path through explicit real counterparts, a color-image compressor, and a
CLI sit on top.
"""

from .errors import (DimensionMismatchError, MultiplicityViolationError,
                     NotConvergedError, ParseError)
from .imaging import ColorImage, CompressedImage, compress, psnr
from .jacobi import (ConvergenceReport, CosineSineGroup, JacobiConfig, Pivot,
                     QSvd, SortOrder, low_rank, svd)
from .qmatrix import QMatrix
from .quaternion import Quaternion

__version__ = "0.1.0"

__all__ = [
    "ColorImage",
    "CompressedImage",
    "ConvergenceReport",
    "CosineSineGroup",
    "DimensionMismatchError",
    "JacobiConfig",
    "MultiplicityViolationError",
    "NotConvergedError",
    "ParseError",
    "Pivot",
    "QMatrix",
    "QSvd",
    "Quaternion",
    "SortOrder",
    "compress",
    "low_rank",
    "psnr",
    "svd",
    "__version__",
]
