"""twistlab: certificates and experiments for twists of superelliptic curves
Y^n = d * P(T, Z) without rational points."""

__version__ = "0.1.0"

from .zpoly import IntPoly, parse_polynomial  # noqa: F401
