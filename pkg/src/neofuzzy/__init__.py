"""Online time-series forecasting with an evolving cascade of neo-fuzzy nodes."""
from .cascade import CascadeModel, GrowthPolicy, StepReport, build_model
from .data import (LagSample, Normalizer, SeriesFrame, fit_normalizer, gen_synthetic,
                   lag_embed, load_csv, split)
from .membership import MembershipBasis, build_basis, eval_basis
from .metrics import EvalReport, RunningError, ew_update, rmse
from .neuron import NeoFuzzyNode, new_node

__version__ = "0.1.0"
