"""Covering the Boolean cube minus a small forbidden point set by faces:
zero-matrix function model, exact DNF minimization, and structural
audits of the associated rank lower bounds."""

__version__ = "0.1.0"

from .analysis import (ClassificationReport, CompletenessReport,
                       ConjunctionClass, CutLemmaReport, InequalityReport,
                       NearZeroReport, RankBound, SweepRow, TailCheck,
                       TailRankBound, almost_all_rank_bound,
                       check_inequalities, check_literal_multiplicity,
                       chernoff_tail_check, classify_conjunctions,
                       enumerate_cuts, near_zero_incidence_check,
                       near_zero_sets, rank_bound_sweep, rank_lower_bound,
                       reduction_completeness_rate, sample_function)
from .canon import (ColumnGrouping, HeavyColumnReport, SignedPermutation,
                    apply_transform, complete_function, extract_reduced,
                    heavy_column_function, heavy_column_metadata,
                    heavy_column_threshold, lift_reduced_dnf,
                    not_all_equal_dnf, to_proper)
from .errors import (BudgetError, ConstantColumnError, DecompositionError,
                     DimensionError, DuplicateRowError, FaceCoverError,
                     MatrixFormatError, NotProperError, PreconditionError)
from .implicants import (Conjunction, Literal, conjunction_from_decomposition,
                         enumerate_prime_implicants, is_decomposition,
                         is_implicant, is_orthogonal_decomposition,
                         is_prime_implicant, literal_vector)
from .model import (BitVector, ClassMembership, FewZeroFunction, ZeroMatrix,
                    classify_matrix, column_sets, hamming_adjacent, weight)
from .solver import (Dnf, SolveResult, all_minimal_dnfs, greedy_dnf,
                     minimal_dnf, realizes)

__all__ = [name for name in dir() if not name.startswith("_")]
