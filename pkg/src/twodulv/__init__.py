"""Multi-round group decision engine on 2-dimensional uncertain
linguistic variables."""

from .core import (COMPARISON_TOL, LinguisticScale, Ordering, TwoDULV,
                   UncertainInterval, canonicalize, compare, dulv, dulv_add,
                   dulv_div, dulv_mul, dulv_pow, dulv_scale, expectation,
                   format_dulv, hamming_distance, interval_arith, parse_dulv,
                   uncertainty_degree)
from .aggregation import dulgwa, temporal_aggregate
from .weighting import (DEFAULT_ETA, ExpertWeights, combined_weights,
                        deviation_degree, deviation_weights,
                        expert_uncertainty, uncertainty_weights)
from .consensus import (ExpectationMatrix, FittedPreference, GroupResult,
                        cosine_similarity, expectation_matrix, fit_preference,
                        group_preference)
from .pipeline import (DecisionReport, RoundMatrix, Session, load_report,
                       load_session, run_pipeline, save_report, save_session,
                       validate_session)
from .errors import (ConvergenceError, DomainError, PipelineError,
                     TwoDulvError, ValidationError)

__version__ = "0.1.0"
