"""Twisted Alexander polynomials of knot groups from finite permutation
representations, with exact Laurent-polynomial linear algebra throughout."""

from .covers import (BranchedCover, CosetAction, CoverPresentation,
                     branched_cover, branched_cover_presentation,
                     cover_homology, cyclic_action, induced_cover_action,
                     presentation_homology, reidemeister_schreier)
from .certify import (Certificate, Exhausted, SearchLimits, certify_nontrivial,
                      verify_certificate)
from .intlinalg import (AbelianGroup, chain_homology, cokernel_invariants,
                        smith_normal_form)
from .laurent import (LaurentMatrix, LaurentPoly, UnitNormalForm, base_change,
                      cyclic_resultant, det_laurent, divides, exact_divide,
                      gcd_polys, normalize_unit, parse_poly, resultant,
                      units_equal)
from .permrep import (FiniteSubgroup, PeriodicRep, PermRep, epsilon_kernel_image,
                      extend_periodic, image_subgroup, is_transitive,
                      least_period, least_period_of_periodic, periodic_from_rep,
                      search_homs, trivial_rep)
from .perms import Permutation, all_permutations
from .twisted import (TwistedMatrixRep, TwistedResult, alexander_polynomial,
                      finite_cover_module_homology, twisted_alexander_poly,
                      twisted_jacobian, twisted_matrix, twisted_module_quotient)
from .words import (AbelianizationMap, GroupPresentation, GroupRingElement,
                    Word, abelianization_map, builtin_presentation,
                    fox_derivative, free_reduce, letter, meridian_word,
                    parse_presentation, word_inverse, word_mul, word_pow)

__version__ = "0.1.0"
