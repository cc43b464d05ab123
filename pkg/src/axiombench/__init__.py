"""Axiom-based benchmark harness for online binary sequence predictors."""

from . import fixtures  # noqa: F401  (registers the built-in fixture models)
from .axioms import TestConfig, run_all, sample_generator
from .errors import HarnessIncompatibility, IndeterminateResult, UsageError
from .kernels import BACKEND
from .model_api import (LearnOutcome, Model, ModelFactory, autoregress, learn, register_model,
                        registered_models, resolve_model)
from .report import Report, TestResult
from .signals import (Sequence, count_admissible, is_admissible, match_score, random_admissible)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "HarnessIncompatibility", "IndeterminateResult", "LearnOutcome", "Model",
    "ModelFactory", "Report", "Sequence", "TestConfig", "TestResult", "UsageError",
    "autoregress", "count_admissible", "is_admissible", "learn", "match_score",
    "random_admissible", "register_model", "registered_models", "resolve_model", "run_all",
    "sample_generator",
]
