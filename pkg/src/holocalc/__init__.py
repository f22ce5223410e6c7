"""Exact exterior calculus for circle-invariant G2 and Spin(7) structures.

Forms carry polynomial coefficients over the rationals; identities are
checked exactly. A float shadow (module ``shadow``) covers the few places
that need irrational values or order-of-vanishing estimates.
"""

from .exterior import Form, Metric, Poly, d, hodge_star, wedge
from .g2 import G2Data, standard_phi

__version__ = "0.1.0"

__all__ = ["Form", "Metric", "Poly", "d", "hodge_star", "wedge", "G2Data", "standard_phi", "__version__"]
