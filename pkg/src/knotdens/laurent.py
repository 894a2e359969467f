"""Sparse integer Laurent polynomials and the eighth-root evaluation ring.

One polynomial class covers both variables used by the skein machinery:

* variable ``"A"``  -- the bracket variable, integer exponents;
* variable ``"t2"`` -- the Jones variable in half-integer grading: the
  stored exponent ``k`` stands for ``t^(k/2)``, so links with even
  component count need no fractional arithmetic.

Evaluation of the bracket at ``A = exp(i*pi/4)`` happens in the exact ring
``Z[zeta8]`` (integers with an adjoined primitive eighth root of unity),
which turns ``|V(-1)|`` into an exact integer computation.
"""

from __future__ import annotations

import math
from fractions import Fraction


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial with arbitrary-precision
    integer coefficients.  ``terms`` maps exponent -> coefficient and
    never stores zeros."""

    __slots__ = ("terms", "variable")

    def __init__(self, terms=None, variable="A"):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = int(c)
        self.terms = clean
        self.variable = variable

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variable="A"):
        return cls({}, variable)

    @classmethod
    def one(cls, variable="A"):
        return cls({0: 1}, variable)

    @classmethod
    def monomial(cls, coeff, exponent, variable="A"):
        return cls({exponent: coeff}, variable)

    # -- ring operations ----------------------------------------------

    def _check(self, other):
        if self.variable != other.variable:
            raise ValueError(
                f"variable mismatch: {self.variable!r} vs {other.variable!r}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out, self.variable)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return LaurentPolynomial(out, self.variable)

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.terms.items()},
                                 self.variable)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial(
                {e: c * other for e, c in self.terms.items()}, self.variable)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(out, self.variable)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by variable**k."""
        return LaurentPolynomial({e + k: c for e, c in self.terms.items()},
                                 self.variable)

    def __eq__(self, other):
        return (isinstance(other, LaurentPolynomial)
                and self.variable == other.variable
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.variable, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ----------------------------------------------------

    @property
    def min_exp(self):
        return min(self.terms) if self.terms else 0

    @property
    def max_exp(self):
        return max(self.terms) if self.terms else 0

    def span(self):
        """max exponent - min exponent (0 for the zero polynomial)."""
        return self.max_exp - self.min_exp if self.terms else 0

    def coefficient(self, e):
        return self.terms.get(e, 0)

    def abs_coefficient_sum(self):
        return sum(abs(c) for c in self.terms.values())

    # -- substitutions -------------------------------------------------

    def mirror(self):
        """Substitute variable -> variable**-1."""
        return LaurentPolynomial({-e: c for e, c in self.terms.items()},
                                 self.variable)

    def to_jones_variable(self):
        """Map a writhe-corrected bracket in A to the Jones polynomial in
        half-integer t-grading via ``A = t^(-1/4)``, i.e. ``t^(1/2) = A^-2``.

        Exponents must all be even; odd exponents indicate a bug upstream.
        """
        if self.variable != "A":
            raise ValueError("expected a polynomial in the bracket variable")
        out = {}
        for e, c in self.terms.items():
            if e % 2:
                raise ValueError(f"odd bracket exponent {e} after writhe correction")
            out[-e // 2] = c
        return LaurentPolynomial(out, "t2")

    def divide_exact(self, other):
        """Exact division; raises ValueError when the remainder is nonzero."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return LaurentPolynomial.zero(self.variable)
        rem = dict(self.terms)
        lead = other.max_exp
        lead_c = other.terms[lead]
        out = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if c % lead_c:
                raise ValueError("inexact Laurent division")
            q = c // lead_c
            qe = e - lead
            out[qe] = q
            for oe, oc in other.terms.items():
                k = qe + oe
                v = rem.get(k, 0) - q * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPolynomial(out, self.variable)

    def evaluate_zeta8(self):
        """Evaluate a polynomial in A at a primitive eighth root of unity,
        exactly, as an element of Z[zeta8]."""
        if self.variable != "A":
            raise ValueError("zeta8 evaluation is for the bracket variable")
        acc = Zeta8.zero()
        for e, c in self.terms.items():
            acc = acc + Zeta8.unit_power(e) * c
        return acc

    def evaluate_float(self, x):
        """Evaluate numerically; for variable 't2' pass the value of t**(1/2)."""
        return sum(c * x ** e for e, c in self.terms.items())

    # -- printing --------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if self.variable == "t2":
                mono = f"t^({Fraction(e, 2)})"
            else:
                mono = f"A^{e}"
            parts.append(f"{'+' if c >= 0 else '-'} {abs(c)}*{mono}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__


class Zeta8:
    """Exact arithmetic in Z[zeta8] = Z[x]/(x^4 + 1).

    Used to evaluate bracket polynomials at ``A = zeta8`` (so that the
    Jones variable ``t = A^-4 = -1``), which yields the link determinant
    as ``|value|`` without any floating point.
    """

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (c0, c1, c2, c3)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def unit_power(cls, k):
        """zeta8**k for any integer k."""
        k %= 8
        sign = 1 if k < 4 else -1
        coeffs = [0, 0, 0, 0]
        coeffs[k % 4] = sign
        return cls(*coeffs)

    def __add__(self, other):
        a, b = self.c, other.c
        return Zeta8(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])

    def __mul__(self, other):
        if isinstance(other, int):
            return Zeta8(*(x * other for x in self.c))
        a, b = self.c, other.c
        out = [0, 0, 0, 0, 0, 0, 0]
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return Zeta8(out[0] - out[4], out[1] - out[5], out[2] - out[6], out[3])

    def conjugate(self):
        c0, c1, c2, c3 = self.c
        return Zeta8(c0, -c3, -c2, -c1)

    def abs_is_integer(self):
        """Return |self| when |self|^2 is a rational integer square.

        For bracket evaluations of link diagrams the square modulus is the
        square of the determinant, so both conditions are asserts here.
        """
        prod = self * self.conjugate()
        r0, r1, r2, r3 = prod.c
        # z * conj(z) lies in Z[sqrt2]: r0 + r1*sqrt2 with r2 = 0, r3 = -r1.
        if r2 != 0 or r3 != -r1:
            raise ArithmeticError(f"|z|^2 not real: {prod.c}")
        if r1 != 0:
            raise ArithmeticError(f"|z|^2 irrational: {r0} + {r1}*sqrt2")
        root = math.isqrt(r0)
        if root * root != r0:
            raise ArithmeticError(f"|z|^2 = {r0} is not a perfect square")
        return root

    def __repr__(self):
        return f"Zeta8{self.c}"
