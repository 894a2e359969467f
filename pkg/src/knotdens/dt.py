"""Dowker-Thistlethwaite codes for knots: parsing (with planar
realization) and export.

Convention: entry ``a_i`` pairs visit ``2i-1`` with visit ``|a_i|``;
``a_i > 0`` means the odd visit is the under-pass.  All-positive codes
therefore realize alternating diagrams.

Realization walks the knot once, maintaining the planar map of the
partially drawn diagram as faces (cyclic corner lists).  A first visit
plants a pendant crossing in the current face; a second visit must land
in a stub gap of the current face, splitting it.  The only freedom is
which of the two transversal slots the second strand enters, so the
search branches at most once per crossing and prunes hard; a 2^n
rotation-system oracle backs it in the tests.
"""

from __future__ import annotations

from functools import lru_cache

from .diagram import Diagram
from .errors import ValidationError


def _pairing(code):
    n = len(code)
    if n == 0:
        raise ValidationError("empty DT code")
    evens = []
    for a in code:
        if a == 0 or a % 2:
            raise ValidationError(f"DT entries must be nonzero even integers: {a}")
        evens.append(abs(a))
    if sorted(evens) != list(range(2, 2 * n + 1, 2)):
        raise ValidationError("DT entries must cover 2..2n exactly once")
    # 0-based visit -> crossing id, plus under/over flag per visit
    visit_crossing = {}
    odd_is_under = {}
    for i, a in enumerate(code):
        odd = 2 * i          # 0-based position of visit 2i+1
        even = abs(a) - 1
        visit_crossing[odd] = i
        visit_crossing[even] = i
        odd_is_under[i] = a > 0
    return visit_crossing, odd_is_under


class _Realizer:
    """DFS planar insertion; returns slot->arc assignments per crossing."""

    def __init__(self, visit_crossing, n):
        self.visit_crossing = visit_crossing
        self.n = n

    def run(self):
        n = self.n
        c0 = self.visit_crossing[0]
        faces = {0: [(c0, 0), (c0, 1), (c0, 2), (c0, 3)]}
        slots = {c0: [2 * n - 1, None, 0, None]}
        cursor = (0, 2)          # gap before corner (c0, 2)
        result = self._dfs(1, faces, slots, cursor, 1)
        if result is None:
            raise ValidationError("DT code is not realizable in the plane")
        return result

    def _dfs(self, t, faces, slots, cursor, next_face):
        if t == 2 * self.n:
            return self._close(faces, slots, cursor)
        c = self.visit_crossing[t]
        arc_in, arc_out = t - 1, t
        if c not in slots:
            # first visit: plant a pendant crossing at the cursor gap
            fid, idx = cursor
            face = faces[fid]
            new_face = face[:idx] + [(c, 0), (c, 1), (c, 2), (c, 3)] + face[idx:]
            faces = dict(faces)
            faces[fid] = new_face
            slots = dict(slots)
            slots[c] = [arc_in, None, arc_out, None]
            cursor = (fid, idx + 2)      # gap before corner (c, 2)
            return self._dfs(t + 1, faces, slots, cursor, next_face)
        # second visit: try entering slot 1 then slot 3
        for entry in (1, 3):
            attempt = self._enter(faces, slots, cursor, next_face,
                                  c, entry, arc_in, arc_out)
            if attempt is None:
                continue
            res = self._dfs(t + 1, *attempt)
            if res is not None:
                return res
        return None

    def _enter(self, faces, slots, cursor, next_face, c, entry, arc_in, arc_out):
        fid, idx = cursor
        face = faces[fid]
        target = self._stub_gap(face, c, entry)
        if target is None:
            return None
        f1, f2 = self._split(face, idx, target)
        faces = dict(faces)
        faces[fid] = f1
        faces[next_face] = f2
        slots = dict(slots)
        sl = list(slots[c])
        sl[entry] = arc_in
        exit_slot = (entry + 2) % 4
        sl[exit_slot] = arc_out
        slots[c] = sl
        # the exit strand dangles into whichever face holds the stub gap
        # of the exit slot; that gap exists in exactly one face
        new_cursor = self._find_stub(faces, list(faces), c, exit_slot)
        if new_cursor is None:
            return None
        return faces, slots, new_cursor, next_face + 1

    def _close(self, faces, slots, cursor):
        c0 = self.visit_crossing[0]
        fid, idx = cursor
        face = faces[fid]
        target = self._stub_gap(face, c0, 0)
        if target is None:
            return None
        return slots

    @staticmethod
    def _stub_gap(face, c, slot):
        """Gap index of the free stub at (c, slot): the position of corner
        (c, slot) when its cyclic predecessor is (c, slot - 1)."""
        m = len(face)
        want_pred = (c, (slot - 1) % 4)
        want = (c, slot)
        for i, corner in enumerate(face):
            if corner == want and face[(i - 1) % m] == want_pred:
                return i
        return None

    @staticmethod
    def _split(face, i, j):
        """Split a cyclic corner list at gaps i and j (gap k = before
        index k); returns the two resulting cyclic lists."""
        m = len(face)
        if i == j:
            raise AssertionError("degenerate split")
        if i < j:
            return face[i:j], face[j:] + face[:i]
        return face[i:] + face[:j], face[j:i]

    @staticmethod
    def _find_stub(faces, candidates, c, slot):
        for fid in candidates:
            gap = _Realizer._stub_gap(faces[fid], c, slot)
            if gap is not None:
                return (fid, gap)
        return None


def parse_dt(code):
    """Realize a knot DT code as a Diagram."""
    code = tuple(int(a) for a in code)
    return _parse_dt_cached(code)


@lru_cache(maxsize=4096)
def _parse_dt_cached(code):
    visit_crossing, odd_is_under = _pairing(code)
    n = len(code)
    slots = _Realizer(visit_crossing, n).run()
    # identify each crossing's second-visit entry slot (1 or 3): it holds
    # the arc preceding the second visit
    first_visit = {}
    second_visit = {}
    for t in range(2 * n):
        c = visit_crossing[t]
        if c in first_visit:
            second_visit[c] = t
        else:
            first_visit[c] = t
    tuples = []
    for c in range(n):
        sl = slots[c]
        odd_first = first_visit[c] % 2 == 0
        under_is_first = odd_is_under[c] == odd_first
        if under_is_first:
            rot = 0
        else:
            arc_in_second = (second_visit[c] - 1) % (2 * n)
            rot = 1 if sl[1] == arc_in_second else 3
            if sl[rot] != arc_in_second:
                raise AssertionError("second-visit entry slot not found")
        tuples.append(tuple(sl[(rot + k) % 4] + 1 for k in range(4)))
    diagram = Diagram(tuples)
    if diagram.components != 1:
        raise ValidationError("DT code did not close into a single component")
    return diagram


def realize_dt_oracle(code):
    """Independent realizer: enumerate the 2^n transversal rotation
    systems and keep the first with spherical Euler count.  Test oracle
    for the insertion realizer."""
    code = tuple(int(a) for a in code)
    visit_crossing, odd_is_under = _pairing(code)
    n = len(code)
    first_visit, second_visit = {}, {}
    for t in range(2 * n):
        c = visit_crossing[t]
        if c in first_visit:
            second_visit[c] = t
        else:
            first_visit[c] = t
    from .diagram import _dart_map  # noqa: F401 (documentation of shared convention)
    for mask in range(1 << n):
        slots = {}
        for c in range(n):
            entry = 1 if mask >> c & 1 else 3
            sl = [None] * 4
            sl[0] = (first_visit[c] - 1) % (2 * n)
            sl[2] = first_visit[c]
            sl[entry] = (second_visit[c] - 1) % (2 * n)
            sl[(entry + 2) % 4] = second_visit[c]
            slots[c] = sl
        if _spherical(slots, n):
            tuples = []
            for c in range(n):
                sl = slots[c]
                odd_first = first_visit[c] % 2 == 0
                under_is_first = odd_is_under[c] == odd_first
                if under_is_first:
                    rot = 0
                else:
                    arc_in_second = (second_visit[c] - 1) % (2 * n)
                    rot = 1 if sl[1] == arc_in_second else 3
                tuples.append(tuple(sl[(rot + k) % 4] + 1 for k in range(4)))
            return Diagram(tuples)
    raise ValidationError("DT code is not realizable in the plane")


def _spherical(slots, n):
    darts = {}
    for c, sl in slots.items():
        for k, a in enumerate(sl):
            darts.setdefault(a, []).append((c, k))
    partner = {}
    for dlist in darts.values():
        if len(dlist) != 2:
            return False
        d1, d2 = dlist
        partner[d1] = d2
        partner[d2] = d1
    seen = set()
    faces = 0
    for c in range(n):
        for k in range(4):
            d = (c, k)
            if d in seen:
                continue
            faces += 1
            while d not in seen:
                seen.add(d)
                c2, k2 = partner[d]
                d = (c2, (k2 + 1) % 4)
    return faces == n + 2


def dt_code(diagram):
    """Canonical DT code of a knot diagram: lexicographically smallest
    over all starting arcs and directions."""
    if diagram.components != 1:
        raise ValidationError("DT codes are defined here for knots only")
    n = diagram.crossing_number
    if n == 0:
        raise ValidationError("the zero-crossing unknot has no DT code")
    tuples = diagram.pd_tuples()
    darts = {}
    for ci, t in enumerate(tuples):
        for k, a in enumerate(t):
            darts.setdefault(a, []).append((ci, k))
    best = None
    best_key = None
    for start_arc in sorted(darts):
        for direction in (0, 1):
            code = _walk_code(tuples, darts, start_arc, direction, n)
            if code is None:
                continue
            # prefer all-positive (table-style) codes, then smallest pattern
            key = (tuple(a < 0 for a in code), tuple(abs(a) for a in code))
            if best is None or key < best_key:
                best, best_key = code, key
    if best is None:
        raise ValidationError("diagram does not admit an odd/even DT pairing")
    return list(best)


def _walk_code(tuples, darts, start_arc, direction, n):
    d1, d2 = sorted(darts[start_arc])
    head = d2 if direction == 0 else d1
    visits = []
    arc = start_arc
    for _ in range(2 * n):
        ci, k = head
        visits.append((ci, k in (0, 2)))
        exit_slot = (k + 2) % 4
        arc = tuples[ci][exit_slot]
        da, db = darts[arc]
        head = db if da == (ci, exit_slot) else da
    positions = {}
    for pos, (ci, under) in enumerate(visits):
        positions.setdefault(ci, []).append((pos, under))
    code = []
    for i in range(n):
        odd = 2 * i
        ci, under = visits[odd]
        (p1, u1), (p2, u2) = positions[ci]
        other = p2 if p1 == odd else p1
        if other % 2 == 0:
            return None          # both visits odd: pairing impossible
        entry = other + 1
        code.append(entry if under else -entry)
    return tuple(code)
