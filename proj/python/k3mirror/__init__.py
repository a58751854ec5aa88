"""p-cyclic K3 surfaces: classification and mirror verification.

Thin wrapper over the C++ core. Polynomials are strings like
"x^2+y^3+z^8+w^24", groups are generator literals like "2/3,1/3,0,0"
(';'-separated, always on top of J_W), lattices are expressions like
"U(3)+A2^2".
"""

from k3mirror._core import *  # noqa: F401,F403
