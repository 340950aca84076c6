"""Weighted regular programs over idempotent semirings: syntax, relational and
guarded-string semantics, partial-semigroup function algebras, and equivalence."""

from .errors import (HypothesisError, KawtError, ModelError, ParseError, SortError,
                     StarDivergence, UndeclaredIdentifier)
from .semiring import BOOLEAN, INF, LUKASIEWICZ, MUTANT, SEMIRINGS, TROPICAL, Semiring, get_semiring
from .syntax import (SKI_SIGNATURE, Signature, build_ski_programs, parse, parse_program_text,
                     pretty, ski_hypotheses)
from .relational import Relation, TransitionSystem, interpret, rel_star
from .guarded import Alphabet, Language, canonical_valuation, gt_interpret, theta
from .psg import FunctionAlgebra, PartialSemigroup, check_theorem1
from .equivalence import (Hypothesis, bounded_equiv, equiv_under_zero_hypotheses, model_equiv,
                          ski_case_study)

__all__ = [
    "HypothesisError", "KawtError", "ModelError", "ParseError", "SortError", "StarDivergence",
    "UndeclaredIdentifier", "BOOLEAN", "INF", "LUKASIEWICZ", "MUTANT", "SEMIRINGS", "TROPICAL",
    "Semiring", "get_semiring", "SKI_SIGNATURE", "Signature", "build_ski_programs", "parse",
    "parse_program_text", "pretty", "ski_hypotheses", "Relation", "TransitionSystem", "interpret",
    "rel_star", "Alphabet", "Language", "canonical_valuation", "gt_interpret", "theta",
    "FunctionAlgebra", "PartialSemigroup", "check_theorem1", "Hypothesis", "bounded_equiv",
    "equiv_under_zero_hypotheses", "model_equiv", "ski_case_study",
]
