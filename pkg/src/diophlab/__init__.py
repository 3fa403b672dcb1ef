"""Certified diophantine approximation: sequence groups of a real number,
lattice relation certificates, matrix and number-field generalizations,
polynomial dependence search, Kronecker foliations, and bounded harnesses
for the classical transcendence statements.
"""

from .config import Config, DEFAULT_CONFIG, load_config
from .intervals import Interval
from .oracles import (ConstOracle, DigitStreamOracle, MinpolyOracle,
                      RationalOracle, RealOracle, SurdOracle, PHI,
                      parse_oracle)

__all__ = [
    "Config", "DEFAULT_CONFIG", "load_config", "Interval", "RealOracle",
    "RationalOracle", "SurdOracle", "MinpolyOracle", "ConstOracle",
    "DigitStreamOracle", "PHI", "parse_oracle",
]

__version__ = "0.1.0"
