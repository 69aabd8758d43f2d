"""Invariant classification of 3D second-order superintegrable systems and certified contractions.

Covariant sextics, their root structures under the Moebius action, recovery of
the sextic from a potential, and exact eps -> 0 limits over truncated Laurent
series.
"""

from .catalog import CONTRACTIONS, SystemId, contraction_spec, covariant_poly, covariant_sextic, potential_eval
from .contraction import diagram_dot, run_all, run_contraction
from .invariants import classify
from .recovery import recover
from .series import EpsSeries
from .sextic import RootCluster, Sextic, roots

__all__ = [
    "CONTRACTIONS",
    "EpsSeries",
    "RootCluster",
    "Sextic",
    "SystemId",
    "classify",
    "contraction_spec",
    "covariant_poly",
    "covariant_sextic",
    "diagram_dot",
    "potential_eval",
    "recover",
    "roots",
    "run_all",
    "run_contraction",
]
