"""Combinatorial invariants of level-1 stratifications of BT1 groups."""

from .errors import (Bt1Error, ConstraintError, CyclicLinear,
                     DimensionCeiling, InternalError, NotBT1, NotMinusPair,
                     NotStabilized, PathExplosion, PermutationParseError,
                     RTooLarge)
from .perm import Bt1Datum, PairTable, Refined, Region, refine
from .kappa import (KappaReport, condition_c, kappa_of_class, kappa_of_perm,
                    scalar_action_period)
from .kraft import (KraftInvariant, SemilinearPair, a_number, build_pair,
                    class_count, dual, dual_datum, kraft_invariant, p_rank)
from .polysys import (FinitenessReport, PolySystem, WeightCertificate,
                      check_certificate, default_certificate,
                      eliminate_linear, finiteness_report, gen_system,
                      stabilizer_param, verify_stabilizer, weight_search)
from .diagram import ascii_diagram, svg_diagram
from .catalog import read_catalog, sweep, write_catalog

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
