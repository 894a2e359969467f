"""Density functionals, family sweeps and the conjecture-verification
harness.

All densities use natural logarithms at high precision: the determinant
density of K is 2*pi*ln(det)/c, the volume density vol/c, the Jones
density 2*pi*ln(mu)/c, and the quantum density (2*pi/(N*c))*ln|<K>_N|.
Bound checks compare against voct = 4*Catalan at 128-bit-plus precision;
Aitken extrapolation is reported for sequence sweeps but never enters a
pass/fail decision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from ._numeric import DEFAULT_BITS, ln, two_pi, v_tet, voct
from .diagram import Diagram, is_alternating
from .errors import DomainError, MissingDataError, ResourceError
from .families import (Tangle, celtic_grid, connect_sum_power,
                       cycle_of_tangles, side_closure, twist_family_diagram,
                       weaving_knot)
from .polynomials import determinant, jones_polynomial

VOCT = voct()
V_TET = v_tet()


@dataclass
class DensityRecord:
    """Everything the density machinery knows about one knot."""

    name: str
    crossings: int
    det: int
    mu: Fraction = None
    kh_rank: int = None
    kashaev: list = field(default_factory=list)   # [(N, abs value)]
    volume: object = None                         # ingested, never computed
    alternating: bool = None
    flags: list = field(default_factory=list)

    def det_density(self, bits=DEFAULT_BITS):
        return det_density(self.crossings, self.det, bits)

    def jones_density(self, bits=DEFAULT_BITS):
        if self.mu is None:
            raise MissingDataError(f"{self.name}: no Jones data")
        return jones_density(self.crossings, self.mu, bits)

    def vol_density(self, bits=DEFAULT_BITS):
        if self.volume is None:
            raise MissingDataError(f"{self.name}: no ingested volume")
        return vol_density(self.crossings, self.volume, bits)

    def kh_density(self, bits=DEFAULT_BITS):
        if self.kh_rank is None:
            raise MissingDataError(f"{self.name}: no Khovanov rank")
        return two_pi(bits) * ln(self.kh_rank, bits) / self.crossings

    def quantum_densities(self, bits=DEFAULT_BITS):
        out = []
        for N, mag in self.kashaev:
            out.append((N, two_pi(bits) * ln(mag, bits) / (N * self.crossings)))
        return out


def det_density(crossings, det, bits=DEFAULT_BITS):
    """2*pi*ln(det)/c."""
    if crossings < 1:
        raise DomainError("density needs at least one crossing")
    if det < 1:
        raise DomainError("determinant density undefined for det < 1")
    return two_pi(bits) * ln(det, bits) / crossings


def jones_density(crossings, mu, bits=DEFAULT_BITS):
    """2*pi*ln(mu)/c for the mean absolute Jones coefficient mu."""
    if crossings < 1:
        raise DomainError("density needs at least one crossing")
    if mu <= 0:
        raise DomainError("Jones density undefined for mu <= 0")
    val = gmpy2.mpq(mu.numerator, mu.denominator) if isinstance(mu, Fraction) else mu
    return two_pi(bits) * ln(val, bits) / crossings


def vol_density(crossings, volume, bits=DEFAULT_BITS):
    """vol/c with the ingested volume."""
    if crossings < 1:
        raise DomainError("density needs at least one crossing")
    if volume is None:
        raise MissingDataError("volume missing")
    if volume <= 0:
        raise DomainError("volume density undefined for vol <= 0")
    with gmpy2.local_context(gmpy2.context(precision=bits)):
        return gmpy2.mpfr(volume) / crossings


# ---------------------------------------------------------------------------
# sequence sweeps


@dataclass
class SequenceReport:
    """Density sequence of a family plus Aitken/Richardson extrapolations."""

    family: str
    indices: list
    crossings: list
    determinants: list
    densities: list
    target: object = None
    extrapolated: object = None         # Aitken delta-squared
    richardson: object = None           # 3-point 1/n fit
    residuals: list = None

    def monotone_increasing(self):
        return all(b > a for a, b in zip(self.densities, self.densities[1:]))

    def monotone_decreasing(self):
        return all(b < a for a, b in zip(self.densities, self.densities[1:]))


def aitken_extrapolate(seq):
    """Aitken delta-squared on the last three terms; needs >= 4 terms."""
    if len(seq) < 4:
        return None
    a, b, c = seq[-3], seq[-2], seq[-1]
    denom = c - 2 * b + a
    if denom == 0:
        return c
    return c - (c - b) * (c - b) / denom


def richardson_extrapolate(indices, seq):
    """Three-point Richardson fit of A - B/n - C/n^2 through the last
    three (n, value) points; suits families whose finite-size deficit is a
    boundary-over-area effect.  Needs >= 4 terms like Aitken."""
    if len(seq) < 4:
        return None
    (n1, x1), (n2, x2), (n3, x3) = list(zip(indices, seq))[-3:]
    rows = [[1, -1.0 / n, -1.0 / (n * n)] for n in (n1, n2, n3)]
    vals = [x1, x2, x3]
    # solve the 3x3 system by elimination
    import copy
    m = [row[:] + [v] for row, v in zip(rows, vals)]
    for col in range(3):
        piv = max(range(col, 3), key=lambda r: abs(m[r][col]))
        m[col], m[piv] = m[piv], m[col]
        for r in range(3):
            if r != col and m[r][col]:
                f = m[r][col] / m[col][col]
                for k in range(col, 4):
                    m[r][k] -= f * m[col][k]
    return m[0][3] / m[0][0]


def _family_report(name, pairs, target, bits):
    indices = [i for i, _ in pairs]
    diagrams = [d for _, d in pairs]
    crossings = [d.crossing_number for d in diagrams]
    dets = [determinant(d) for d in diagrams]
    densities = [det_density(c, det, bits) for c, det in zip(crossings, dets)]
    extr = aitken_extrapolate(densities)
    rich = richardson_extrapolate(indices, [float(x) for x in densities])
    residuals = None
    if target is not None:
        residuals = [abs(x - target) for x in densities]
    return SequenceReport(name, indices, crossings, dets, densities,
                          target, extr, rich, residuals)


def maximality_sweep(family, start, stop, p=3, bits=DEFAULT_BITS):
    """Density sweep of a named family over an index range (inclusive).

    families: 'weaving' (W(p, q), q in range), 'celtic' (n x n grids),
    'twist' ((2, k+2) torus diagrams, limit 0).
    """
    if family == "weaving":
        pairs = [(q, weaving_knot(p, q)) for q in range(start, stop + 1)]
        target = VOCT
    elif family == "celtic":
        pairs = [(n, celtic_grid(n, n)) for n in range(start, stop + 1)]
        target = VOCT
    elif family == "twist":
        pairs = [(k, twist_family_diagram(k)) for k in range(start, stop + 1)]
        target = gmpy2.mpfr(0)
    else:
        raise DomainError(f"unknown family {family!r}")
    return _family_report(family, pairs, target, bits)


def cycle_density_convergence(tangle, n_max, bits=DEFAULT_BITS):
    """Densities of the tangle n-cycles K^n, their convergence target (the
    determinant density of the tangle's side closure K), and the exact
    connect-sum law det(L^n) = det(K)^n verified en route."""
    anchor = side_closure(tangle)
    det_k = determinant(anchor)
    c_k = anchor.crossing_number
    if det_k < 2:
        raise DomainError("cycle convergence needs a closure with det >= 2")
    if not is_alternating(anchor):
        raise DomainError("cycle convergence needs an alternating closure")
    target = det_density(c_k, det_k, bits)
    pairs = []
    for n in range(1, n_max + 1):
        pairs.append((n, cycle_of_tangles(tangle, n)))
    report = _family_report("tangle-cycle", pairs, target, bits)
    # exact multiplicativity of the connect-sum powers, checked on the way
    for n in (2, 3):
        if n <= n_max:
            ln_det = determinant(connect_sum_power(anchor, n))
            if ln_det != det_k ** n:
                raise AssertionError(
                    f"connect-sum multiplicativity failed at n={n}")
    return report


# ---------------------------------------------------------------------------
# verification sweeps over census-style tables


@dataclass
class VerifyReport:
    check: str
    total: int
    passed: int
    failed: int
    skipped: int
    min_margin: object = None
    violations: list = field(default_factory=list)
    skipped_names: list = field(default_factory=list)
    rows: list = field(default_factory=list)      # per-row dicts for CSV

    @property
    def ok(self):
        return self.failed == 0


def verify_det_density_bound(records, bits=DEFAULT_BITS):
    """2*pi*ln(det)/c <= voct for every record; any violation fails."""
    vo = voct(bits)
    rep = VerifyReport("det-density", 0, 0, 0, 0)
    for r in records:
        rep.total += 1
        if r.det < 1:
            rep.skipped += 1
            rep.skipped_names.append(r.name)
            continue
        dens = det_density(r.crossings, r.det, bits)
        margin = vo - dens
        row = {"name": r.name, "crossings": r.crossings, "det": r.det,
               "density": dens, "margin": margin}
        rep.rows.append(row)
        if margin >= 0:
            rep.passed += 1
        else:
            rep.failed += 1
            rep.violations.append(r.name)
        if rep.min_margin is None or margin < rep.min_margin:
            rep.min_margin = margin
    return rep


def verify_jones_density_bound(records, bits=DEFAULT_BITS):
    """2*pi*ln(mu)/c <= voct, and mu-density <= det-density per record."""
    vo = voct(bits)
    rep = VerifyReport("jones-density", 0, 0, 0, 0)
    for r in records:
        rep.total += 1
        if r.mu is None or r.mu <= 0:
            rep.skipped += 1
            rep.skipped_names.append(r.name)
            continue
        dens = jones_density(r.crossings, r.mu, bits)
        ddens = det_density(r.crossings, r.det, bits) if r.det >= 1 else None
        margin = vo - dens
        ok = margin >= 0 and (ddens is None or dens <= ddens)
        rep.rows.append({"name": r.name, "crossings": r.crossings,
                         "mu": r.mu, "density": dens, "margin": margin})
        if ok:
            rep.passed += 1
        else:
            rep.failed += 1
            rep.violations.append(r.name)
        if rep.min_margin is None or margin < rep.min_margin:
            rep.min_margin = margin
    return rep


def verify_vol_det(records, bits=DEFAULT_BITS):
    """vol(K) < 2*pi*ln(det(K)) for hyperbolic alternating records; also
    reports the sharpness statistic min(vol / ln det)."""
    rep = VerifyReport("vol-det", 0, 0, 0, 0)
    sharpness = None
    for r in records:
        rep.total += 1
        if r.volume is None or r.volume <= 0 or not r.alternating:
            rep.skipped += 1
            rep.skipped_names.append(r.name)
            continue
        if r.det < 2:
            rep.skipped += 1
            rep.skipped_names.append(r.name)
            continue
        with gmpy2.local_context(gmpy2.context(precision=bits)):
            bound = two_pi(bits) * ln(r.det, bits)
            vol = gmpy2.mpfr(r.volume)
            slack = bound - vol
            ratio = vol / ln(r.det, bits)
        rep.rows.append({"name": r.name, "vol": r.volume, "det": r.det,
                         "slack": slack})
        if slack > 0:
            rep.passed += 1
        else:
            rep.failed += 1
            rep.violations.append(r.name)
        if rep.min_margin is None or slack < rep.min_margin:
            rep.min_margin = slack
        if sharpness is None or ratio < sharpness:
            sharpness = ratio
    rep.rows.append({"name": "_sharpness_min_vol_over_ln_det",
                     "vol": sharpness, "det": "", "slack": ""})
    return rep


def verify_kh_vol(records, rank_of, bits=DEFAULT_BITS, max_crossings=14):
    """vol(K) < 2*pi*ln(rank of reduced Khovanov homology) for hyperbolic
    non-alternating records.

    ``rank_of(record)`` supplies the rank; it may use the certified Euler
    lower bound (sum of |Jones coefficients| <= rank) and fall back to the
    full cube when the bound is inconclusive.
    """
    rep = VerifyReport("kh-vol", 0, 0, 0, 0)
    for r in records:
        rep.total += 1
        if r.volume is None or r.volume <= 0:
            rep.skipped += 1
            rep.skipped_names.append(r.name)
            continue
        if r.crossings > max_crossings:
            rep.skipped += 1
            rep.skipped_names.append(r.name)
            continue
        rank, method = rank_of(r)
        with gmpy2.local_context(gmpy2.context(precision=bits)):
            bound = two_pi(bits) * ln(rank, bits) if rank >= 1 else None
            vol = gmpy2.mpfr(r.volume)
        slack = None if bound is None else bound - vol
        rep.rows.append({"name": r.name, "vol": r.volume, "rank": rank,
                         "method": method, "slack": slack})
        if slack is not None and slack > 0:
            rep.passed += 1
        else:
            rep.failed += 1
            rep.violations.append(r.name)
        if slack is not None and (rep.min_margin is None or slack < rep.min_margin):
            rep.min_margin = slack
    return rep


def crossing_change_det_drop(diagram, size_cap=None):
    """Exhaustive strict-drop check: for a reduced alternating diagram,
    changing any proper nonempty crossing subset strictly decreases det."""
    from .diagram import change_crossings, is_reduced
    if not is_alternating(diagram):
        raise DomainError("crossing-change drop applies to alternating diagrams")
    if not is_reduced(diagram):
        raise DomainError("crossing-change drop applies to reduced diagrams")
    n = diagram.crossing_number
    base = determinant(diagram)
    rep = VerifyReport("crossing-drop", 0, 0, 0, 0)
    limit = n if size_cap is None else min(size_cap, n)
    import itertools
    for size in range(1, limit):
        for subset in itertools.combinations(range(n), size):
            rep.total += 1
            changed = change_crossings(diagram, subset)
            d = determinant(changed)
            if d < base:
                rep.passed += 1
            else:
                rep.failed += 1
                rep.violations.append(f"subset {subset}: det {d} >= {base}")
    return rep
