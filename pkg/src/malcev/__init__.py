"""Exact computation with finite semigroups.

Core data: dense Cayley tables with 0-based element ids.  Submodules:

  core         tables, transformations, Rees matrix semigroups, closures
  structure    Green's relations, principal series, structural predicates
  nilpotency   pair-dynamics membership deciders and rank witnesses
  pseudoid     omega terms and iterated-endomorphism identities
  action       orbit notation, L-class actions, glued unions
  division     division search, isomorphism, product-primality trials
  zoo          the bundled named semigroups
  sgp          the .sgp text format
  enumeration  all small semigroups up to isomorphism
  cli          the command-line interface
"""

from .core import (
    FiniteSemigroup,
    ReesMatrixSpec,
    Transformation,
    adjoin_identity,
    adjoin_zero,
    direct_product,
    from_rees,
    from_table,
    from_transformations,
    generated_subsemigroup,
    omega_power,
)

__all__ = [
    "FiniteSemigroup",
    "ReesMatrixSpec",
    "Transformation",
    "adjoin_identity",
    "adjoin_zero",
    "direct_product",
    "from_rees",
    "from_table",
    "from_transformations",
    "generated_subsemigroup",
    "omega_power",
]
