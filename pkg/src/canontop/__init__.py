"""Finite, checkable models of sieves, canonical Grothendieck topologies and
homotopy colimits of simplicial sets."""

from __future__ import annotations

from .errors import AmbientTooLarge, CanonTopError, InputError
from .fincat import FinCategory, FinFunctor, NatTrans, validate_category
from .finset import FinSetObject, SetFunction
from .sieves import ExplicitSieve, GeneratedSieve, is_colim_sieve, is_universal_colim_sieve
from .topology import canonical_topology, is_sheaf, verify_topology_axioms

__version__ = "0.1.0"

__all__ = [
    "AmbientTooLarge",
    "CanonTopError",
    "ExplicitSieve",
    "FinCategory",
    "FinFunctor",
    "FinSetObject",
    "GeneratedSieve",
    "InputError",
    "NatTrans",
    "SetFunction",
    "canonical_topology",
    "is_colim_sieve",
    "is_sheaf",
    "is_universal_colim_sieve",
    "validate_category",
    "verify_topology_axioms",
]
