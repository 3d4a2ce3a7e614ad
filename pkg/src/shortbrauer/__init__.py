"""Exact diagram calculus for Brauer, blob and short Brauer (Li-chain) algebras."""
from __future__ import annotations

from .blob import BlobDiagram, BlobSum, blob_generators, check_blob_relations, compose_blob, enumerate_blob, \
    left_exposed_pairs, parse_blob
from .brauer import DiagramSum, GeneratorSet, U, check_relations, compose, coxeter_closure, monoid_closure, \
    product, sigma
from .cellrep import HalfDiagram, gram_det, gram_matrix, half_diagram_basis, rank_at, spin_hamiltonian, \
    spin_rep_U
from .chains import boundary_height_seq, enumerate_li_chain, is_chain, is_li_chain, li_chain_decompose
from .errors import CompositionError, DiagramError, DomainError, InternalConsistencyError, ResourceLimitError
from .iso import chain_x, chain_xbar, overline_embed, phi, psi, psi_inv, verify_phi_functor, verify_theta
from .pairpart import B, PairPartition, T, Vertex, chi, enumerate_J, flip, is_noncrossing, parse_diagram, tensor
from .scalars import LaurentQ, Poly, chebyshev_d, qbracket

__version__ = "0.1.0"
