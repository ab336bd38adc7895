"""Exact computations in graded Lie algebras over arbitrary group gradings:
strong enveloping normal forms, free graded Lie algebras at bounded degree,
and universal grading group analysis."""

from .groups import (BackendMismatch, GroupElement, GroupError, GroupSpec,
                     InvalidCayleyTable, commute, generates_abelian_subgroup)
from .liealg import (EndoMatrix, GradedLieAlgebra, GradedSpanError,
                     LieAlgebraError, bracket, center, inner_derivations,
                     is_graded_lie_subspace, validate)
from .pbw import (SUElement, embed_check, monomial_degree, normalize,
                  pbw_basis, su_mul, ug_spanning)
from .freelie import (GradedAlphabet, LyndonElement, abelian_lift_check,
                      degree_product, free_monomial_basis, lyndon_basis,
                      witt_check)
from .unigroup import (AbelianizationData, Coarsening, Presentation,
                       abelianize, coarsening_check, is_abelian_grading,
                       is_abelian_presentation, support,
                       universal_presentation)
from .algfile import (AlgebraFileError, ValidationFailure, load_algebra,
                      load_mats, load_relabel, parse_algebra, parse_word)

__version__ = "0.1.0"
