"""Exact Brandt graphs and Brandt complexes of hermitian lattices over definite quaternion orders."""
from .quat import (MaximalOrder, Quaternion, QuaternionAlgebra, construct_algebra, hilbert_symbol,
                   maximal_order, ramified_primes)
from .herm import (AmbientSpace, HermitianLattice, dual_lattice, enumerate_sublattices,
                   enumerate_superlattices, is_ell_bounded, lattice_type, standard_lattice)
from .isometry import AutomorphismGroup, are_isometric, automorphism_group, find_isometry, fingerprint
from .complex import (CellChain, EnhancedComplex, InvariantError, LittleComplex, VertexClass,
                      build_enhanced_complex, build_little_complex, class_counts)
from .formulas import (MassTable, bernoulli, count_isotropic, count_isotropic_bruteforce, principal_mass,
                       type_mass, verify_masses)
from .graphs import (BlockAdjacency, WeightedGraph, big_adjacency, enhanced_adjacency, little_adjacency,
                     match_block_permutation, regular_subgraph)
from .spectra import SpectrumReport, char_poly, connectivity_and_bipartite, is_ramanujan, spectrum_report

__all__ = [name for name in dir() if not name.startswith("_")]
