"""Deep inference proof systems: formulae modulo AC, the SKSg family,
macro expansion, translations to and from Gentzen and Frege systems,
extension and substitution, and tautology generators."""

import sys

from .formula import (
    And, Atom, F, Formula, Or, T, Var, dual, parse_formula, print_formula, size,
)
from .equality import canonicalize, equal_mod_ac
from .derivation import Builder, CosDerivation, check_derivation, semantic_check

__version__ = "0.1.0"

# translations recurse along formula depth and proof structure
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

__all__ = [
    "And", "Atom", "F", "Formula", "Or", "T", "Var", "dual", "parse_formula",
    "print_formula", "size", "canonicalize", "equal_mod_ac", "Builder",
    "CosDerivation", "check_derivation", "semantic_check", "__version__",
]
