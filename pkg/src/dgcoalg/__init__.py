"""Exact homological algebra for finite-dimensional dg coalgebras.

Coalgebras, comodules and bicomodules with validators; standard resolutions
and derived cotensor and Hom; Hochschild, H and cyclic cohomology; and
verification of quasi-isomorphism invariance, Morita contexts and cotilting
certificates.
"""

from .linalg import QQ, Field, Matrix, rank, solve
from .complexes import ChainComplex, ChainMap, cohomology_dims, cone, shift, is_quasi_iso, homotopy_witness
from .coalgebra import (Bicomodule, CoalgebraMorphism, DGCoalgebra, DGComodule, StructureError,
                        ValidationReport, validate_bicomodule, validate_coalgebra, validate_comodule,
                        validate_morphism)
from .resolution import (augmented_resolution, cotensor, derived_cotensor, ext_comodule, hom_into_resolution,
                         standard_resolution)
from .cyclic import WindowError, h_cohomology, hc, hoch, hoch_bicomodule, operator, operator_identities, sbi
from .invariance import (CotiltingCertificate, MoritaContext, check_morita_context, check_quasi_iso_invariance,
                         conclude_cohomology_transfer, verify_cotilting)
from .io import FixtureDocument, FixtureError, dumps, emit, loads, parse

__version__ = "0.1.0"
