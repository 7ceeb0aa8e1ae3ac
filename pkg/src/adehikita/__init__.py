"""Exact B-algebras of ADE minimal-orbit quantizations and equivariant cohomology of Kleinian resolutions.

Submodules: ``rootsystem``, ``exactalg``, ``weights``, ``cohomology``,
``enveloping``, ``joseph``, ``hikita``, ``errata``, ``cli``.
"""

__version__ = "0.1.0"

from .rootsystem import LieType, RootSystem, AsymmetryFunction, build_root_system  # noqa: E402
from .cohomology import MultiplicationTable, RingElement, an_cup_table, bg_cup_table  # noqa: E402
from .weights import freudenthal_table, zero_weight_multiplicity  # noqa: E402
from .joseph import b_algebra, joseph_generators, close_under_ad  # noqa: E402
from .hikita import verify_isomorphism, substitution_map  # noqa: E402

__all__ = [
    "__version__",
    "LieType", "RootSystem", "AsymmetryFunction", "build_root_system",
    "MultiplicationTable", "RingElement", "an_cup_table", "bg_cup_table",
    "freudenthal_table", "zero_weight_multiplicity",
    "b_algebra", "joseph_generators", "close_under_ad",
    "verify_isomorphism", "substitution_map",
]
