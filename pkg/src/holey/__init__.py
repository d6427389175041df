"""Cycle decompositions of complete graphs with holes.

Constructs m-cycle decompositions of K_v minus K_u for odd m, verifies
them as edge-exact certificates, and exposes the admissibility arithmetic
that governs which pairs (u, v) are possible.
"""

from .certify import (
    Certificate,
    VerificationReport,
    make_certificate,
    read_certificate,
    verify,
    write_certificate,
)
from .errors import (
    HoleyError,
    HypothesisViolation,
    InternalInvariantViolation,
    InvalidInputSystem,
    InvalidParameters,
    NotAdmissible,
    OutOfCoveredRange,
    ParseError,
    PreconditionViolation,
    ResourceExhausted,
    Unsupported,
)
from .graphs import CyclePacking, HoledGraph, Leave, canonical_cycle
from .oracles import SolverConfig
from .pipeline import (
    AdmissibilityReport,
    DispatchTrace,
    admissible,
    construct,
    embed_system,
    nu,
    search_small,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "Certificate",
    "CyclePacking",
    "DispatchTrace",
    "HoledGraph",
    "HoleyError",
    "HypothesisViolation",
    "InternalInvariantViolation",
    "InvalidInputSystem",
    "InvalidParameters",
    "Leave",
    "NotAdmissible",
    "OutOfCoveredRange",
    "ParseError",
    "PreconditionViolation",
    "ResourceExhausted",
    "SolverConfig",
    "Unsupported",
    "VerificationReport",
    "admissible",
    "canonical_cycle",
    "construct",
    "embed_system",
    "make_certificate",
    "nu",
    "read_certificate",
    "search_small",
    "verify",
    "write_certificate",
]
