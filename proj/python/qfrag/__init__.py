"""Entanglement measures of Temperley-Lieb fragmented chains.

Exact quantities come back as ``int`` and ``fractions.Fraction``.
"""

import json

from ._qfrag import (
    ConsistencyError,
    DomainError,
    ResourceError,
    ValidationError,
    VerificationFailure,
    a_epsilon,
    e_greater_asymp,
    e_less_asymp,
    e_su2_asymp,
    krylov_dim,
    measures,
    q_from_N,
    qdim,
    run,
    sector_table,
    truncate,
    truncation_tail,
)

__all__ = [
    "ConsistencyError",
    "DomainError",
    "ResourceError",
    "ValidationError",
    "VerificationFailure",
    "a_epsilon",
    "e_greater_asymp",
    "e_less_asymp",
    "e_su2_asymp",
    "krylov_dim",
    "measures",
    "q_from_N",
    "qdim",
    "run",
    "sector_table",
    "truncate",
    "truncation_tail",
    "verify",
]


def verify(**kwargs):
    """Dense oracle report as a dict; see ``run("verify", ...)`` for arguments."""
    return json.loads(run("verify", **kwargs))
