"""Exact verification and search for k-th power Diophantine tuples, and a
mechanical replay of the finite case analysis showing that no triple
{a**k, b, c} with 1 < a**k < b < c exists for k >= 3."""

__version__ = "0.1.0"

from .arith import binomial, iroot, perfect_power_root
from .bounds import (
    BoundEnvelope,
    ConditionNotCertified,
    bennett_gap,
    check_condition,
    envelope,
    height_bound,
    k3_tail_closed,
    k4_tail_closed,
    lambda_exponent,
    mu,
    prime_case_closed,
)
from .cf import SurdExpansion, convergent, expand, expand_until, verify_expansion
from .elimination import (
    enumerate_k3_candidates,
    full_replay,
    replay_k3,
    replay_k4,
    replay_primes,
    verify_k3_exceptions,
    verify_k3_quotient_formula,
)
from .intervals import RationalInterval, UndecidedError
from .report import EliminationRecord, ReplayReport, Verdict
from .tuples import PowerTuple, canonical_pair, extend_pair, failing_pair, search_triples, verify_tuple

__all__ = [
    "BoundEnvelope",
    "ConditionNotCertified",
    "EliminationRecord",
    "PowerTuple",
    "RationalInterval",
    "ReplayReport",
    "SurdExpansion",
    "UndecidedError",
    "Verdict",
    "bennett_gap",
    "binomial",
    "canonical_pair",
    "check_condition",
    "convergent",
    "enumerate_k3_candidates",
    "envelope",
    "expand",
    "expand_until",
    "extend_pair",
    "failing_pair",
    "full_replay",
    "height_bound",
    "iroot",
    "k3_tail_closed",
    "k4_tail_closed",
    "lambda_exponent",
    "mu",
    "perfect_power_root",
    "prime_case_closed",
    "replay_k3",
    "replay_k4",
    "replay_primes",
    "search_triples",
    "verify_expansion",
    "verify_k3_exceptions",
    "verify_k3_quotient_formula",
    "verify_tuple",
]
