"""Entanglement of the SU(n) valence bond solid chain: closed forms and
dense brute-force oracles."""

__version__ = "0.1.0"

from .entanglement import (BlockSpectrum, EntropyReport, UnsupportedBlockLength,
                           block_overlap_functional, block_spectrum_exact,
                           block_spectrum_oracle, entropy_report,
                           geometric_entanglement_per_block, optimize_product_blocks,
                           renyi, von_neumann)
from .localizable import bell_measure_all, boundary_entanglement, entanglement_length_report
from .repn import (BellLabel, adjoint_basis, adjoint_projector, bell_vector, lie_generators,
                   random_special_unitary, singlet_vector)
from .state import (BoundaryCondition, DenseState, build_dense_vbs, build_dense_vbs_periodic,
                    reduced_density, state_norm_dense)
from .tensor import SpectralForm, Tensor, contract, hermitian_eigs, matricize, partial_trace
from .transfer import (ModelParams, TransferMatrix, chain_norm, connected_correlator,
                       correlation_length, lr_spectrum, transfer_power, transfer_single)
