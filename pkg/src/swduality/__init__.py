"""Exact computations around the quantum affine Schur-Weyl duality between
type A(1) and A(2): R-matrix denominators, pole quivers, the KLR algebra of
type A_infinity with its segment modules, the commuting-family identities
and Grothendieck-ring bookkeeping."""

__version__ = "0.1.0"
