"""Exact arithmetic for finite henselization stages.

Newton polygons over valued fields, Hensel codes and special polynomials,
the extension K[beta] with its certified zero test, localization stages
A_f with the morphism theta_f, and the decision procedure showing that
Ker theta_f is a minimal prime, every step replayable from certificates.
"""

__version__ = "0.1.0"

from .codes import (CheckReport, NagataPoly, SlopeConversion, SpecialPoly,
                    Specialization, check, check_code, check_nagata,
                    check_special, nagata, nagata_from_slope, special,
                    special_to_nagata, specialize)
from .errors import HardFault, ParseError
from .extension import (BetaContext, ImmediateDescription, KBetaElement,
                        KBetaField, analyze, immediate_description, invert,
                        is_zero, valuation)
from .kernel import (Annihilator, InSf, KernelDecision, MinimalityReport,
                     decide_kernel, decision_from_dict, decision_to_dict,
                     minimality_report, verify_certificate)
from .newton import (NewtonPolygon, ValuationMultiset, isolated_slopes,
                     polygon, root_valuations)
from .oracle import (GroundTruth, PadicCompletion, RootReport,
                     SeriesCompletion, build_ground_truth_context,
                     default_precision, exhaustive_root_valuations,
                     lift_hensel_zero)
from .parsing import eval_in, parse_poly
from .rings import QQ, LocalizedRing, MultiPoly, QuotientSpec
from .stage import (MAX_TOWER_DEPTH, AfElement, StageContext, Tower, af,
                    alpha, embed, factor_through, in_Uf, is_unit_af,
                    make_stage_base, residue_af, theta_f, tower_extend,
                    try_invert_af)
from .unipoly import (ModElement, UniPoly, berkowitz_charpoly,
                      cayley_hamilton_check, char_poly_mod, eval_at_mod)
from .valued import (PRESET_NAMES, MinimalValuedRing, MonomialFunctionField,
                     PadicRationals, RationalFunctionField, instance_from_config,
                     preset)
from .values import INF, ExtendedValue, ValueVector

__all__ = [name for name in dir() if not name.startswith("_")]
