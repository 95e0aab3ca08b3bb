"""Finite and windowed models of autometrized lattice-ordered monoids:
axiom checking, a claim language, constructions, structure analysis,
congruences and small-model search."""
from .algebra import (AlgebraError, FiniteAlgebra, MalformedTable, NoUnity, OutOfWindow, SizeLimit,
                      WindowedAlgebra, builtin, make_boolean, make_godel_chain, make_int_window,
                      make_int_with_top, make_int_with_top_bottom, make_mv_chain, trivial_algebra,
                      validate_algebra)
from .catalog import CATALOG, get_claim, run_catalog
from .profiles import ProfileReport, check_drl, check_profile
from .search import SearchSpec, canonical_form, enumerate_models, find_counterexample, independence_report
from .terms import Claim, ClaimReport, check_claim, parse_claim, parse_claims
from .textformat import format_algebra, load_algebra, parse_algebra

__version__ = "0.1.0"
