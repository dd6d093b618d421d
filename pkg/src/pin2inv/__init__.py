"""Exact Pin(2)-equivariant invariants of Brieskorn spheres and their connected sums."""

from __future__ import annotations

__version__ = "0.1.0"

from .borel import AbcdValues, ManolescuSet, abc, abcd, d_invariant_chain, manolescu
from .errors import (IdentityFailure, InvalidComplex, InvalidInput, MissingDInvariant,
                     ResourceLimit, Unsupported)
from .galgebra import GElement, galg_boundary, galg_mul
from .gcomplex import (SWFLikeComplex, Triple, make_fixed_complex, make_T, suspend_h,
                       suspend_rtilde, tensor, tensor_all, validate)
from .roots import (DeltaSequence, GradedRoot, UModule, build_root, delta_tilde, reduce,
                    refine, symmetrize, tau, u_module)
from .seifert import (DTable, SeifertInvariants, alpha_count, brieskorn_delta,
                      creature_decompose, local_class, seifert_invariants)
from .sums import (asymptotic_table, check_sum_inequalities, connected_sum_chain,
                   connected_sum_invariants, dualize, h_split, non_seifert_witness,
                   psi_coordinates, recover_max_delta_tilde, round_up_even)
