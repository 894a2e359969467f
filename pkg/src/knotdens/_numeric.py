"""High-precision real constants and helpers (gmpy2/MPFR backed).

All densities use natural logarithms: with ln, twice the square-lattice
tree entropy per vertex matches 4*Catalan = voct, which is what makes the
diagrammatic and geometric density scales comparable at all.
"""

from __future__ import annotations

import gmpy2

DEFAULT_BITS = 192

# Volume of the regular ideal octahedron: 8 * Lobachevsky(pi/4) = 4 * Catalan.
# Computed from the Catalan constant at import precision; see voct().

# Volume of the regular ideal tetrahedron, 2 * Lobachevsky(pi/6); thirty
# digits, cross-checked in the test suite against an independent Clausen
# series evaluation.
V_TET_30 = "1.01494160640965362502120255427452"


def context(bits=DEFAULT_BITS):
    return gmpy2.context(precision=bits)


def mpfr(x, bits=DEFAULT_BITS):
    with gmpy2.local_context(context(bits)):
        return gmpy2.mpfr(x)


def voct(bits=DEFAULT_BITS):
    """4 * Catalan, the volume of the regular ideal octahedron."""
    with gmpy2.local_context(context(bits)):
        return 4 * gmpy2.const_catalan()


def v_tet(bits=DEFAULT_BITS):
    with gmpy2.local_context(context(bits)):
        return gmpy2.mpfr(V_TET_30)


def two_pi(bits=DEFAULT_BITS):
    with gmpy2.local_context(context(bits)):
        return 2 * gmpy2.const_pi()


def ln(x, bits=DEFAULT_BITS):
    """Natural log at the requested precision; exact ints convert losslessly."""
    with gmpy2.local_context(context(bits)):
        return gmpy2.log(gmpy2.mpfr(x))
