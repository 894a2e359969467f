"""Kashaev invariant <K>_N: the N-colored Jones value at exp(2*pi*i/N),
normalized so the unknot gives 1.

Evaluation contracts the diagram, cut at its lowest-labeled arc, as a
planar tensor network.  Crossings carry the braiding of the N-dimensional
representation of quantum sl2 at s = exp(i*pi/N); turnbacks preserve the
strand index and carry a weight from the enhancement mu = K, which
satisfies the Markov axiom tr_2((1 (x) mu) Rhat^{+-1}) = a^{+-1} Id with
|a| = 1, so the contraction is invariant under planar isotopy and the
framing anomaly is a pure writhe power removed by kink units computed by
the same engine.  The normalization is pinned by two independent anchors
in the tests: |<K>_2| = det(K) for every census knot and the figure-eight
closed form for N up to 16.

All arithmetic is gmpy2 complex at a configurable precision with a crude
a-posteriori forward error bound; PrecisionError signals an unattainable
request instead of degrading silently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpc

from ._numeric import ln, two_pi
from .errors import DomainError, PrecisionError, ResourceError

DEFAULT_BITS = 128
DEFAULT_N_CAP = 16
DEFAULT_STATE_CAP = 1 << 21    # max tensor entries per step

# Which strand direction carries the turn weight at each bend site
# (up-left, up-right, down-left, down-right, closing cap); pinned by
# the unknot/determinant/figure-eight anchors.
BEND_BITS = (1, 1, 0, 0, 1)


def _ctx(bits):
    return gmpy2.context(precision=bits)


class _SweepStuck(Exception):
    """Internal: a sweep attempt hit a dead end; another phase is tried."""


def _qfact(qint, m):
    out = mpc(1)
    for t in range(1, m + 1):
        out *= qint(t)
    return out


class _QData:
    """Per-(N, bits) quantum data: braiding entries, mu weights, kink units."""

    _cache = {}

    @classmethod
    def get(cls, N, bits):
        key = (N, bits)
        inst = cls._cache.get(key)
        if inst is None:
            inst = cls(N, bits)
            cls._cache[key] = inst
        return inst

    def __init__(self, N, bits):
        self.N = N
        self.bits = bits
        self.kinks = {}
        with gmpy2.local_context(_ctx(bits)):
            s = gmpy2.exp(mpc(0, 1) * gmpy2.const_pi() / N)
            self.s = s
            lam = [N - 1 - 2 * i for i in range(N)]

            def qint(k):
                return (s ** k - s ** -k) / (s - 1 / s)

            def spow(num):
                # s ** (num/2), principal branch
                return gmpy2.exp(mpc(0, 1) * gmpy2.const_pi() * num / (2 * N))

            plus = {}
            minus = {}
            for i in range(N):
                for j in range(N):
                    entries = []
                    for m in range(0, min(i, N - 1 - j) + 1):
                        c = (s - 1 / s) ** m * spow(m * (m - 1)) / _qfact(qint, m)
                        c *= spow(lam[i - m] * lam[j + m])
                        for t in range(m):
                            c *= qint(N - i + t)
                        for t in range(j + 1, j + m + 1):
                            c *= qint(t)
                        entries.append((j + m, i - m, c))
                    plus[(i, j)] = entries
                    inv = []
                    for m in range(0, min(j, N - 1 - i) + 1):
                        c = (-1) ** m * (s - 1 / s) ** m * spow(-m * (m - 1)) \
                            / _qfact(qint, m)
                        c *= spow(-lam[i] * lam[j])
                        for t in range(m):
                            c *= qint(N - j + t)
                        for t in range(i + 1, i + m + 1):
                            c *= qint(t)
                        inv.append((j - m, i + m, c))
                    minus[(i, j)] = inv
            self.r_plus = plus
            self.r_minus = minus
            # enhancement mu = K; its Markov property with the braiding is
            # asserted here, which is the backbone of isotopy invariance
            self.mu = [spow(2 * lam[i]) for i in range(N)]
            self.mu_inv = [1 / m for m in self.mu]
            self._check_inverse()
            self._check_markov()

    def _check_inverse(self):
        err = 0.0
        N = self.N
        for i in range(N):
            for j in range(N):
                acc = {}
                for (k, l, c) in self.r_plus[(i, j)]:
                    for (p, q, d2) in self.r_minus[(k, l)]:
                        acc[(p, q)] = acc.get((p, q), mpc(0)) + c * d2
                for key, val in acc.items():
                    want = 1 if key == (i, j) else 0
                    err = max(err, float(abs(val - want)))
        if err > 2.0 ** (-self.bits // 2):
            raise AssertionError(f"braiding inverse check failed: err={err}")

    def _check_markov(self):
        N = self.N
        for src in (self.r_plus, self.r_minus):
            diag = [mpc(0)] * N
            off = 0.0
            for (i, j), entries in src.items():
                for (k, l, c) in entries:
                    if l == j:
                        if k == i:
                            diag[i] += self.mu[j] * c
                        else:
                            off = max(off, float(abs(self.mu[j] * c)))
            dev = max(float(abs(x - diag[0])) for x in diag)
            if max(dev, off) > 2.0 ** (-self.bits // 2):
                raise AssertionError("Markov axiom failed for mu = K")


@dataclass
class KashaevValue:
    """One evaluation of <K>_N."""

    crossings: int
    N: int
    value: object            # gmpy2 mpc
    abs: object              # gmpy2 mpfr
    error_bound: float
    precision_bits: int


class _Sweep:
    """Planar contraction of a diagram cut at its lowest arc."""

    def __init__(self, diagram, qdata, state_cap=DEFAULT_STATE_CAP):
        self.d = diagram
        self.q = qdata
        self.state_cap = state_cap
        self.ops = 0
        self.max_mag = 1.0
        self.tuples = diagram.pd_tuples()
        self.cut_arc = min(diagram.arcs)
        darts = {}
        for ci, t in enumerate(self.tuples):
            for k, a in enumerate(t):
                darts.setdefault(a, []).append((ci, k))
        self.partner = {}
        for dl in darts.values():
            d1, d2 = dl
            self.partner[d1] = d2
            self.partner[d2] = d1
        self._variants = {}

    # ---- crossing tensors -------------------------------------------------

    def _base(self, sign):
        """(downs, ups, table): bottom/top slot lists left-to-right and the
        coefficient table keyed by (down indices + up indices)."""
        table = {}
        if sign > 0:
            downs, ups = (3, 0), (2, 1)
            src = self.q.r_plus
        else:
            downs, ups = (0, 1), (3, 2)
            src = self.q.r_minus
        # the braiding maps (left-bottom i, right-bottom j) to
        # (left-top k, right-top l)
        for (i, j), entries in src.items():
            for (k, l, c) in entries:
                table[(i, j, k, l)] = c
        return list(downs), list(ups), table

    def _slot_is_strand_in(self, sign, slot):
        return slot in ((0, 3) if sign > 0 else (0, 1))

    # Turn weights: minima moving leftward carry mu, maxima moving leftward
    # carry mu^-1, rightward turns carry 1.  Bends preserve the index.

    def _bend_up_left(self, sign, downs, ups, table):
        """Leftmost bottom leg up around the left side: inserts a minimum."""
        moved = downs[0]
        into_box = self._slot_is_strand_in(sign, moved)
        weight = self.q.mu if into_box ^ BEND_BITS[0] else None
        out = {}
        nd = len(downs)
        for idxs, c in table.items():
            x = idxs[0]
            w = c * weight[x] if weight else c
            key = idxs[1:nd] + (x,) + idxs[nd:]
            out[key] = out.get(key, mpc(0)) + w
            self.ops += 1
        return downs[1:], [moved] + ups, out

    def _bend_up_right(self, sign, downs, ups, table):
        """Rightmost bottom leg up around the right side: a minimum."""
        moved = downs[-1]
        into_box = self._slot_is_strand_in(sign, moved)
        weight = self.q.mu if (not into_box) ^ BEND_BITS[1] else None
        out = {}
        nd = len(downs)
        for idxs, c in table.items():
            x = idxs[nd - 1]
            w = c * weight[x] if weight else c
            key = idxs[:nd - 1] + idxs[nd:] + (x,)
            out[key] = out.get(key, mpc(0)) + w
            self.ops += 1
        return downs[:-1], ups + [moved], out

    def _bend_down_left(self, sign, downs, ups, table):
        """Leftmost top leg down around the left side: a maximum."""
        moved = ups[0]
        into_box = self._slot_is_strand_in(sign, moved)
        weight = self.q.mu_inv if (not into_box) ^ BEND_BITS[2] else None
        out = {}
        nd = len(downs)
        for idxs, c in table.items():
            x = idxs[nd]
            w = c * weight[x] if weight else c
            key = (x,) + idxs[:nd] + idxs[nd + 1:]
            out[key] = out.get(key, mpc(0)) + w
            self.ops += 1
        return [moved] + downs, ups[1:], out

    def _bend_down_right(self, sign, downs, ups, table):
        """Rightmost top leg down around the right side: a maximum."""
        moved = ups[-1]
        into_box = self._slot_is_strand_in(sign, moved)
        weight = self.q.mu_inv if into_box ^ BEND_BITS[3] else None
        out = {}
        nd = len(downs)
        for idxs, c in table.items():
            x = idxs[-1]
            w = c * weight[x] if weight else c
            key = idxs[:nd] + (x,) + idxs[nd:-1]
            out[key] = out.get(key, mpc(0)) + w
            self.ops += 1
        return downs + [moved], ups[:-1], out

    def variant(self, sign, consumed_slots, produced_order=None):
        """Crossing tensor whose bottom legs are exactly ``consumed_slots``
        left to right; returns (produced_slots_left_to_right, table).
        ``produced_order`` pins the top legs for the first crossing, whose
        rotational phase is free."""
        key = (sign, tuple(consumed_slots),
               tuple(produced_order) if produced_order else None)
        hit = self._variants.get(key)
        if hit is not None:
            return hit
        start = self._base(sign)
        seen = {(tuple(start[0]), tuple(start[1]))}
        queue = deque([start])
        up_ops = (self._bend_up_left, self._bend_up_right)
        down_ops = (self._bend_down_left, self._bend_down_right)
        while queue:
            downs, ups, table = queue.popleft()
            if list(consumed_slots) == downs and \
                    (produced_order is None or list(produced_order) == ups):
                result = (tuple(ups), table)
                self._variants[key] = result
                return result
            for op in up_ops + down_ops:
                if op in up_ops and not downs:
                    continue
                if op in down_ops and not ups:
                    continue
                nd, nu, nt = op(sign, downs, ups, table)
                sig = (tuple(nd), tuple(nu))
                if sig not in seen:
                    seen.add(sig)
                    queue.append((nd, nu, nt))
        raise AssertionError(
            f"no bend sequence reaches slot arrangement {consumed_slots}")

    # ---- the sweep --------------------------------------------------------

    def run(self):
        """Returns (lambda, profile_error)."""
        n = len(self.tuples)
        N = self.q.N
        phases = [(start, rot) for start in range(n) for rot in range(4)]
        last_exc = None
        for start_ci, rot in phases:
            try:
                state = self._run_once(start_ci, rot)
            except _SweepStuck as exc:
                last_exc = exc
                continue
            # both cut ends point up: the tangle operator lambda * Id shows
            # up with one leg bent, i.e. diagonal with a unimodular mu power
            best = None
            for e in (-2, -1, 0, 1, 2):
                prof = [self.q.mu[a] ** e for a in range(N)]
                lam = state.get((0, 0), mpc(0)) / prof[0]
                err = 0.0
                for a in range(N):
                    for b in range(N):
                        got = state.get((a, b), mpc(0))
                        want = lam * prof[a] if a == b else mpc(0)
                        err = max(err, float(abs(got - want)))
                if best is None or err < best[1]:
                    best = (lam, err)
            return best
        raise AssertionError(f"sweep failed for all phases: {last_exc}")

    def _run_once(self, start_ci, rot):
        n = len(self.tuples)
        frontier = []      # items: ("leg", dart) | ("cut", dart)
        state = {(): mpc(1)}
        swept = set()
        for step in range(n):
            if not swept:
                ci, positions = start_ci, []
                sign = self.d.crossings[ci].sign
                base_cyclic = (0, 1, 2, 3)
                order = [base_cyclic[(rot - t) % 4] for t in range(4)]
                produced_slots, table = self.variant(sign, (), order)
            else:
                ci, positions = self._next(frontier, swept)
                consumed_slots = [frontier[p][1][1] for p in positions]
                produced_slots, table = self.variant(
                    self.d.crossings[ci].sign, consumed_slots)
            state, frontier = self._attach(
                state, frontier, positions, ci, produced_slots, table)
            swept.add(ci)
            state, frontier = self._close(state, frontier)
            if len(state) > self.state_cap:
                raise ResourceError(
                    "tensor state exceeded the configured cap; "
                    "the diagram's sweep width is too large for this N")
        if len(frontier) != 2 or {it[0] for it in frontier} != {"cut"}:
            raise _SweepStuck(f"bad final frontier: {frontier}")
        return state

    def _next(self, frontier, swept):
        contact = {}
        for p, item in enumerate(frontier):
            if item[0] != "leg":
                continue
            ci = item[1][0]
            contact.setdefault(ci, []).append(p)
        best = None
        for ci, ps in sorted(contact.items()):
            if ps != list(range(ps[0], ps[0] + len(ps))):
                continue
            key = (-len(ps), ci)
            if best is None or key < best[0]:
                best = (key, ci, ps)
        if best is None:
            raise _SweepStuck("no contiguous crossing available")
        return best[1], best[2]

    def _attach(self, state, frontier, positions, ci, produced_slots, table):
        k = len(positions)
        start = positions[0] if positions else len(frontier)
        new_items = []
        for slot in produced_slots:
            arc = self.tuples[ci][slot]
            if arc == self.cut_arc:
                new_items.append(("cut", (ci, slot)))
            else:
                new_items.append(("leg", self.partner[(ci, slot)]))
        by_cons = {}
        for idxs, c in table.items():
            by_cons.setdefault(idxs[:k], []).append((idxs[k:], c))
        new_state = {}
        for body, coeff in state.items():
            seg = body[start:start + k]
            hits = by_cons.get(seg)
            if not hits:
                continue
            pre = body[:start]
            post = body[start + k:]
            for prod, c in hits:
                nk = pre + prod + post
                val = new_state.get(nk, mpc(0)) + coeff * c
                if val:
                    new_state[nk] = val
                else:
                    new_state.pop(nk, None)
                self.ops += 1
                m = abs(val)
                if m > self.max_mag:
                    self.max_mag = float(m)
        frontier = frontier[:start] + new_items + frontier[start + k:]
        return new_state, frontier

    def _close(self, state, frontier):
        """Cap adjacent leg pairs carrying the same arc.  The maximum keeps
        the index; leftward-moving maxima weigh mu^-1."""
        changed = True
        while changed:
            changed = False
            for p in range(len(frontier) - 1):
                a, b = frontier[p], frontier[p + 1]
                if a[0] != "leg" or b[0] != "leg":
                    continue
                arc_a = self.tuples[a[1][0]][a[1][1]]
                arc_b = self.tuples[b[1][0]][b[1][1]]
                if arc_a != arc_b:
                    continue
                head = self.d.arc_head[arc_a]
                rightward = head == b[1]
                weight = self.q.mu_inv if (not rightward) ^ BEND_BITS[4] else None
                new_state = {}
                for body, coeff in state.items():
                    i, j = body[p], body[p + 1]
                    if i != j:
                        continue
                    w = coeff * weight[i] if weight else coeff
                    nk = body[:p] + body[p + 2:]
                    val = new_state.get(nk, mpc(0)) + w
                    if val:
                        new_state[nk] = val
                    else:
                        new_state.pop(nk, None)
                    self.ops += 1
                state = new_state
                frontier = frontier[:p] + frontier[p + 2:]
                changed = True
                break
        return state, frontier


def _kink_unit(qdata, sign, state_cap):
    unit = qdata.kinks.get(sign)
    if unit is None:
        from .diagram import Diagram
        for tuples in ([(1, 1, 2, 2)], [(1, 2, 2, 1)]):
            kd = Diagram(tuples)
            if kd.crossings[0].sign == sign:
                lam, err = _Sweep(kd, qdata, state_cap).run()
                unit = lam
                break
        else:
            raise AssertionError("no kink of requested sign")
        qdata.kinks[sign] = unit
    return unit


def kashaev_invariant(diagram, N, precision_bits=DEFAULT_BITS,
                      n_cap=DEFAULT_N_CAP, tolerance=None,
                      state_cap=DEFAULT_STATE_CAP):
    """<K>_N for a knot diagram.

    ``tolerance``, when given, bounds the acceptable a-posteriori error
    on the complex value; PrecisionError reports failure to meet it (the
    caller can retry with doubled ``precision_bits``).
    """
    if diagram.components != 1:
        raise DomainError("the Kashaev invariant is evaluated on knot diagrams")
    if N < 2:
        raise DomainError("N must be at least 2")
    if N > n_cap:
        raise ResourceError(f"N={N} exceeds the configured cap {n_cap}")
    if diagram.crossing_number == 0:
        with gmpy2.local_context(_ctx(precision_bits)):
            return KashaevValue(0, N, mpc(1), gmpy2.mpfr(1), 0.0,
                                precision_bits)
    q = _QData.get(N, precision_bits)
    with gmpy2.local_context(_ctx(precision_bits)):
        sweep = _Sweep(diagram, q, state_cap)
        lam, id_err = sweep.run()
        a_plus = _kink_unit(q, +1, state_cap)
        a_minus = _kink_unit(q, -1, state_cap)
        unit_err = float(abs(a_plus * a_minus - 1))
        w = diagram.writhe
        if w >= 0:
            value = lam * a_minus ** w
        else:
            value = lam * a_plus ** (-w)
        mag = abs(value)
        err_bound = (sweep.ops + 16) * max(sweep.max_mag, 1.0) \
            * 2.0 ** (2 - precision_bits)
        err_bound = max(err_bound, id_err, unit_err)
        if tolerance is not None and err_bound > tolerance:
            raise PrecisionError(
                f"error bound {err_bound:.3e} exceeds tolerance {tolerance:.3e};"
                f" retry with more precision bits")
        return KashaevValue(diagram.crossing_number, N, value, mag,
                            err_bound, precision_bits)


def figure_eight_kashaev(N, precision_bits=DEFAULT_BITS):
    """Closed-form oracle for the figure-eight knot:
    sum_{j=0}^{N-1} prod_{k=1}^{j} 4 sin^2(pi k / N).  Linear in N."""
    if N < 2:
        raise DomainError("N must be at least 2")
    with gmpy2.local_context(_ctx(precision_bits)):
        pi = gmpy2.const_pi()
        total = gmpy2.mpfr(0)
        prod = gmpy2.mpfr(1)
        for j in range(N):
            if j:
                sk = gmpy2.sin(pi * j / N)
                prod *= 4 * sk * sk
            total += prod
        return total


def quantum_density(value, crossings=None, bits=None):
    """2*pi*ln|<K>_N|^{1/N} / c(K) = (2*pi / (N*c)) * ln|value|."""
    bits = bits or value.precision_bits
    c = crossings if crossings is not None else value.crossings
    if c == 0:
        raise DomainError("density needs at least one crossing")
    mag = value.abs
    if mag <= value.error_bound:
        raise DomainError("zero Kashaev invariant: density undefined")
    return two_pi(bits) * ln(mag, bits) / (value.N * c)


def figure_eight_density(N, precision_bits=DEFAULT_BITS):
    """Quantum density of the figure-eight oracle value at level N
    (the figure-eight diagram has 4 crossings)."""
    val = figure_eight_kashaev(N, precision_bits)
    return two_pi(precision_bits) * ln(val, precision_bits) / (N * 4)
