"""
orbitquant
Deformation quantization of coadjoint orbits: exact star products, Darboux
charts, operator representations and their verification
"""

__version__ = "1.0.0"
__author__ = "orbitquant"

from .config import ConfigManager
from .logger import AppLogger, get_logger, setup_logger
from .symalg import ExactScalar, ExpPoly, VarSet
from .grammar import format_expr, parse_expr
from .liealg import bracket, coadjoint, get_algebra
from .orbits import classify_orbit, darboux_chart, make_orbit
from .moyal import PoissonStructure, star
from .operators import hat_ell, line_operator
from .homology import chern_character
from .verification import run_verification

__all__ = [
    'ConfigManager',
    'AppLogger',
    'get_logger',
    'setup_logger',
    'ExactScalar',
    'ExpPoly',
    'VarSet',
    'format_expr',
    'parse_expr',
    'bracket',
    'coadjoint',
    'get_algebra',
    'classify_orbit',
    'darboux_chart',
    'make_orbit',
    'PoissonStructure',
    'star',
    'hat_ell',
    'line_operator',
    'chern_character',
    'run_verification',
]
