"""Exact cohomology, cocycles and braidings for Vec_G with G = Z_m x Z_n."""

from .exact import SizeLimitError, UnityRoot, root, smith_normal_form, solve_mod1
from .group import GroupElement, GroupSpec

__version__ = "0.1.0"

__all__ = [
    "GroupElement",
    "GroupSpec",
    "SizeLimitError",
    "UnityRoot",
    "root",
    "smith_normal_form",
    "solve_mod1",
    "__version__",
]
