"""Identities and inequalities of upper-triangular Boolean matrices.

Exact deciders for (T_n,+,.), (T_n,.,<=), (T_n,.) and (U_{n+1},.), a brute
force oracle over the matrix spaces, the nine-element semigroup C4 with its
Hitting Set reduction, and membership tools for simple languages.
"""

from .boolmat import BoolMatrix, enumerate_space, identity, mat_add, mat_le, mat_mul, matrix_unit, zero
from .decider import (
    STRUCTURES,
    CounterEvidence,
    Verdict,
    ais_identity_holds,
    ais_inequality_holds,
    check_claim,
    condition_exists_EG,
    condition_forall_EG,
    leftmost_gaps_equal,
    same_subwords_of_length,
    sem_identity_holds,
    sem_inequality_holds,
    u_sem_identity_holds,
)
from .estimators import ClaimClassifier, SimpleLanguageFeaturizer
from .hardness import (
    HittingSetInstance,
    c4_table,
    extract_hitting_set,
    hitting_set_exists,
    reduce_hitting_set,
    verify_c4_properties,
)
from .langtools import (
    SimpleLanguage,
    distinguishing_language,
    enumerate_languages,
    language_member_matrix,
    language_member_scan,
    parse_language,
)
from .occurrences import enumerate_occurrences, gaps_of, leftmost_occurrence, minimal_profiles
from .oracle import Substitution, brute_force_check, build_phi_uv, eval_polynomial, eval_word, random_falsify
from .oracle import subword_criterion
from .terms import Claim, Polynomial, Word, parse_claim, parse_polynomial, parse_word, var, word, zimin

__version__ = "0.1.0"
