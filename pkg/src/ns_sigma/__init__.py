"""Exact Schur expansions of KP tau functions of (n, s)-curves and the sigma series they determine."""

from .curve import NSCurve
from .pipeline import CurveData, compute, verify
from .schur import Partition

__all__ = ["NSCurve", "Partition", "CurveData", "compute", "verify"]
__version__ = "0.1.0"
