"""Band structure and band density of periodic quantum graphs.

Workflow: describe one translational cell of the periodic graph (or a
pre-reduced magnetic graph), reduce it with :func:`bloch_reduce`, build
the bond scattering system, and then either scan momentum bands directly
or sample the band set on the torus of edge phases.  For generic edge
lengths both routes estimate the same length-independent band density.
"""

from .graph_model import (Edge, EXAMPLE_NAMES, FundamentalCell, GraphError,
                          Identification, MagneticGraph, as_magnetic,
                          bind_lengths, bloch_reduce, build_example,
                          from_payload, load_graph, save_graph, to_payload,
                          validate_cell, with_random_lengths)
from .bond_system import BondSystem, bond_matrices, unitary_at, vertex_scattering
from .secular import (SecularValue, eval_phi, eval_secular,
                      real_secular_values, scattering_parity, secular_values)
from .spectrum import (AlphaPolynomial, Band, BandList, DensitySeries,
                       alpha_polynomial, band_intervals, density, in_spectrum,
                       measure_below, membership_from_phases,
                       momentum_membership)
from .torus import (RationalDependency, TorusPoint, VolumeEstimate,
                    flow_point, mc_volume, sigma_membership)
from .reference_models import (InteriorResonanceError, ReferenceValue,
                               dihedral_density, dihedral_membership,
                               dihedral_secular, effective_reflection,
                               lasso_membership, lasso_reference_density,
                               phi_lasso)

__version__ = "0.1.0"

__all__ = [
    "AlphaPolynomial", "Band", "BandList", "BondSystem", "DensitySeries",
    "EXAMPLE_NAMES", "Edge", "FundamentalCell", "GraphError",
    "Identification", "InteriorResonanceError", "MagneticGraph",
    "RationalDependency", "ReferenceValue", "SecularValue", "TorusPoint",
    "VolumeEstimate", "alpha_polynomial", "as_magnetic", "band_intervals",
    "bind_lengths", "bloch_reduce", "bond_matrices", "build_example",
    "density", "dihedral_density", "dihedral_membership", "dihedral_secular",
    "effective_reflection", "eval_phi", "eval_secular", "flow_point",
    "from_payload", "in_spectrum", "lasso_membership",
    "lasso_reference_density", "load_graph", "mc_volume", "measure_below",
    "membership_from_phases", "momentum_membership", "phi_lasso",
    "real_secular_values", "save_graph", "scattering_parity",
    "secular_values", "sigma_membership", "to_payload", "unitary_at",
    "validate_cell", "vertex_scattering", "with_random_lengths",
]
