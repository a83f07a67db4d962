"""Sprague-Grundy analysis of subtraction games.

Compute Nim sequences, detect their periodicity, evaluate representation
words over exotic numeration systems, build the bounded aperiodic ternary
construction and its alphabet promotions, and run budgeted greedy searches.
"""

from .construction import (FamilyConstruction, PromotionMap, build_word_prefix,
                           ends_in_two_block, family, fib, fib_repseq, in_I,
                           morphic_word_prefix, odd_fib_to_zeck, promote,
                           promote_word, promoted_subtraction_set,
                           promotion_value, ternary_i_set, ternary_sequence,
                           ternary_t_set, ternary_v_set, ternary_word,
                           valid_ternary_rep, verify_wythoff_zeros,
                           word_lengths)
from .grundy import (CheckReport, NimSequence, ResourceLimitError,
                     SubtractionSet, best_move, check_binary_period,
                     check_gcd_scaling, check_generalized_ferguson, mex,
                     nim_sequence)
from .numeration import (BeattyWitness, DigitString, RepresentingSequence,
                         WythoffSide, base_sequence, beatty_difference_witness,
                         in_lower_wythoff, in_upper_wythoff, index_of,
                         is_m_volatile, is_zend, represent, value_of,
                         wythoff_class, wythoff_lower, wythoff_upper,
                         zeckendorf_sequence)
from .periodicity import (PeriodDecomposition, get_period_and_prefix,
                          verify_decomposition)
from .repwords import (DerivedSets, ExtractionResult, RepWord,
                       VerificationReport, derived_sets,
                       extract_representation_sequence, fergusonian_criterion,
                       generate_fergusonian, is_fergusonian,
                       is_strongly_fergusonian, verify_absmain,
                       verify_truncation)
from .search import (BudgetExhaustedError, ConjectureReport, SearchState,
                     StepRecord, explore_conjecture1, explore_conjecture2,
                     extend_rep_seq, extend_set, greedy_chain, read_checkpoint,
                     resume_chain, write_checkpoint)

__version__ = "0.1.0"
