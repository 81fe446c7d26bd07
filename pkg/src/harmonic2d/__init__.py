"""Harmonic decompositions of 2D strain-gradient elasticity tensors."""
from .tensor import (GroupElement, as_tensor, contract, inner, norm, outer, permute,
                     rayleigh, reflection, rotation, trace_pair, transpose_block)
from .iso import identity_on, iso, kronecker, levi_civita
from .harmonic import (HarmonicComponent, fourier_extract, from_tensor, isotypic_part,
                       rho_matrix, rho_rotate, split_self_map, to_tensor)
from .embeddings import Embedding, embedding, projector, verify_embedding
from .state import (T2Harmonics, T3Harmonics, decompose_t2, decompose_t3,
                    reconstruct_t2, reconstruct_t3, split_stretch_rotation)
from .ela import (Ela4Harmonics, Ela5Harmonics, Ela6Harmonics, apply_law, cghd,
                  cghd_ela4, cghd_ela5, cghd_ela6, energy_split, ibd_ela4, ibd_ela5,
                  ibd_ela6, random_tensor, reconstruct, reconstruct_ela4,
                  reconstruct_ela5, reconstruct_ela6)
from .symmetry import (SymmetryClass, classify_high, class_generators, is_invariant,
                       restrict_to_class)
from .errors import (ArityError, ConsistencyError, HarmonicError, NotHarmonicError,
                     ParseError, UnresolvedClassError, ValidationError)

__version__ = "0.1.0"
