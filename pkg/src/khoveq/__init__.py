"""Exact Khovanov-type homology with the universal (s, t) differential."""

from .complex import build_complex, differential, verify_delta_squared
from .diagram import LinkDiagram, MoveSite, apply_move, find_move_sites, format_pd, parse_pd
from .frobenius import FrobeniusCalculus, load_calculus, universal_calculus
from .homology import homology_at, mod2_bar_natan, smith_normal_form
from .polyring import BAR_NATAN, KHOVANOV, KHOVANOV_MOD2, LEE, Poly, Specialization

__version__ = "0.1.0"
