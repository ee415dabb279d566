"""Hellinger integrals, power divergences and decision bounds for Poisson
Galton-Watson processes with immigration."""

from ._gwi import *  # noqa: F401,F403
from ._gwi import GwiError, ParamSet, SDEParams, DecisionConfig  # noqa: F401

__version__ = "0.1.0"
