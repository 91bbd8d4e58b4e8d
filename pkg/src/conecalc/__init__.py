"""Cone structures, causal lattices and null distances on semi-Riemannian spacetimes."""
from .cone import ConeClass, classify, interior_vector, strict_witness
from .errors import (ConeCalcError, DimensionError, DomainError, FrameDependenceError, GridError,
                     LinearDependenceError, WitnessError)
from .lattice import CausalGraph, GridSpec, PiecewisePath, build_graph, diamond, reach
from .nulldist import DistanceResult, TimeFunction, estimate, null_length
from .spacetime import SpacetimeStructure, extend_negative, flat, metric_from_frame, validate
from .verify import run_suite

__version__ = "0.1.0"
