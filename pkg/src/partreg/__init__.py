"""Exact-rational toolkit for partition regularity of linear systems.

Decide Rado's columns property with checkable certificates, generate the
classical finite systems (Schur, van der Waerden, Folkman) and a family of
infinite chain/block systems, evaluate the number-theoretic colorings that
block monochromatic solutions, and run desk-scale combinatorial searches
for forcing numbers and monochromatic kernel vectors.
"""

from .colorings import (Coloring, DigitDecomposition, FactorialExpansion,
                        base_q_digit_decompose, digit_class_coloring,
                        factorial_expand, floor_log2, get_coloring, nu,
                        nu_table, parity_coloring, phi, phi_index, phi_prime,
                        phi_prime_index, product_coloring, psi, tau,
                        two_adic_valuation)
from .linalg import (Matrix, Vector, column_sum, frac, kernel_basis, rank,
                     span_membership, vector)
from .regularity import (CapacityError, ColumnsPropertyCertificate,
                         RowSumProfile, bounded_row_sums, columns_property,
                         extract_zero_subset_from_solution,
                         is_partition_regular, smallest_admissible_prime,
                         verify_certificate, zero_column_subset)
from .search import (BlockingResult, ForcingResult, SearchBudget,
                     SearchOutcome, blocking_counterexample_search,
                     find_mono_solution, forcing_number, solution_in_class,
                     truncation_forcing_demo, verify_avoiding)
from .systems import (AugmentedSystem, InfiniteMatrix, SystemSpec,
                      augment_neg_identity, chain_minus, chain_plus2,
                      dyadic_blocks, folkman, get_system, growing_diagonal,
                      schur, truncate, truncate_with_identity,
                      truncated_block_system, vdw)

__version__ = "0.1.0"
