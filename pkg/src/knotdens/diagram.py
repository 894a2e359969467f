"""Combinatorial link diagrams in PD (planar diagram) form.

A crossing is a 4-tuple of arc labels listed counterclockwise starting
from the incoming under-strand, the convention used by the standard knot
atlases.  Arc labels are positive integers; every label occurs exactly
twice across the diagram.  The tuple order *is* the planar rotation
system, so faces, checkerboard colorings and Tait graphs are all derived
from it without extra embedding data.

Diagrams are immutable after construction.  Construction validates the
arc pairing, connectivity (split diagrams are rejected) and sphericality
(the rotation system must have Euler characteristic 2), then derives the
strand orientation, rotates each crossing so that slot 0 really is the
incoming under-strand, and computes crossing signs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, ValidationError

# A dart is a pair (crossing_index, slot) with slot in 0..3.  The strand
# entering slot k leaves through slot (k + 2) % 4; slots {0, 2} carry the
# under-strand and {1, 3} the over-strand.


@dataclass(frozen=True)
class Crossing:
    """One crossing: arcs counterclockwise from the incoming under-strand,
    sign derived from the strand orientation."""

    arcs: tuple[int, int, int, int]
    sign: int


class Diagram:
    """Validated, canonically oriented link diagram."""

    __slots__ = ("crossings", "components", "arc_head", "arc_tail", "_faces")

    def __init__(self, pd_tuples, allow_unknot=False):
        tuples = [tuple(int(a) for a in t) for t in pd_tuples]
        if not tuples:
            if not allow_unknot:
                raise ValidationError("empty crossing list (use Diagram.unknot())")
            self.crossings = ()
            self.components = 1
            self.arc_head = {}
            self.arc_tail = {}
            self._faces = None
            return
        _validate_pairing(tuples)
        _validate_connected(tuples)
        heads = _orient(tuples)
        tuples, heads = _canonicalize(tuples, heads)
        signs = _signs(tuples, heads)
        self.crossings = tuple(
            Crossing(t, s) for t, s in zip(tuples, signs))
        self.components = _count_components(tuples)
        self.arc_head = heads
        self.arc_tail = _tails(tuples, heads)
        self._faces = None
        _validate_spherical(tuples)

    # -- constructors ---------------------------------------------------

    @classmethod
    def unknot(cls):
        """The zero-crossing unknot."""
        return cls([], allow_unknot=True)

    # -- basic data -----------------------------------------------------

    @property
    def crossing_number(self):
        return len(self.crossings)

    @property
    def arcs(self):
        out = set()
        for c in self.crossings:
            out.update(c.arcs)
        return sorted(out)

    @property
    def writhe(self):
        return sum(c.sign for c in self.crossings)

    def pd_tuples(self):
        return [c.arcs for c in self.crossings]

    def dart_map(self):
        """arc label -> list of (crossing index, slot) darts."""
        return _dart_map(self.pd_tuples())

    def __eq__(self, other):
        return (isinstance(other, Diagram)
                and self.pd_tuples() == other.pd_tuples())

    def __hash__(self):
        return hash(tuple(self.pd_tuples()))

    def __repr__(self):
        return f"Diagram({self.crossing_number} crossings, {self.components} components)"


# ---------------------------------------------------------------------------
# construction helpers


def _dart_map(tuples):
    darts = {}
    for ci, t in enumerate(tuples):
        for k, a in enumerate(t):
            darts.setdefault(a, []).append((ci, k))
    return darts


def _validate_pairing(tuples):
    darts = _dart_map(tuples)
    bad = {a: len(d) for a, d in darts.items() if len(d) != 2}
    if bad:
        raise ValidationError(f"arc labels not paired exactly twice: {bad}")
    if any(a <= 0 for a in darts):
        raise ValidationError("arc labels must be positive integers")
    for ci, t in enumerate(tuples):
        if t[0] == t[2] or t[1] == t[3]:
            raise ValidationError(
                f"crossing {ci}: a strand may not close onto its own pass")


def _validate_connected(tuples):
    n = len(tuples)
    adj = [set() for _ in range(n)]
    for dlist in _dart_map(tuples).values():
        (c1, _), (c2, _) = dlist
        adj[c1].add(c2)
        adj[c2].add(c1)
    seen = {0}
    stack = [0]
    while stack:
        c = stack.pop()
        for d in adj[c]:
            if d not in seen:
                seen.add(d)
                stack.append(d)
    if len(seen) != n:
        raise ValidationError("split (disconnected) diagram rejected")


def _validate_spherical(tuples):
    # Faces of the rotation system must satisfy V - E + F = 2, otherwise
    # the PD data does not describe a diagram on the sphere.
    n = len(tuples)
    faces = _count_rotation_faces(tuples)
    if faces != n + 2:
        raise ValidationError(
            f"rotation system has genus > 0: {faces} faces for {n} crossings")


def _count_rotation_faces(tuples):
    darts = _dart_map(tuples)
    partner = {}
    for dlist in darts.values():
        d1, d2 = dlist
        partner[d1] = d2
        partner[d2] = d1
    seen = set()
    faces = 0
    for ci in range(len(tuples)):
        for k in range(4):
            d = (ci, k)
            if d in seen:
                continue
            faces += 1
            while d not in seen:
                seen.add(d)
                c2, k2 = partner[(d[0], d[1])]
                d = (c2, (k2 + 1) % 4)
    return faces


def _orient(tuples):
    """Assign a direction to each arc; returns arc -> head dart.

    Each link component is traversed once, starting from its lowest arc
    label, in the direction of that arc's lexicographically smaller dart.
    """
    darts = _dart_map(tuples)
    heads = {}
    for start in sorted(darts):
        if start in heads:
            continue
        d1, d2 = sorted(darts[start])
        arc, head = start, d2
        while arc not in heads:
            heads[arc] = head
            ci, k = head
            exit_slot = (k + 2) % 4
            arc = tuples[ci][exit_slot]
            da, db = darts[arc]
            head = db if da == (ci, exit_slot) else da
    return heads


def _count_components(tuples):
    darts = _dart_map(tuples)
    seen = set()
    comps = 0
    for start in sorted(darts):
        if start in seen:
            continue
        comps += 1
        d1, d2 = sorted(darts[start])
        arc, head = start, d2
        while arc not in seen:
            seen.add(arc)
            ci, k = head
            exit_slot = (k + 2) % 4
            arc = tuples[ci][exit_slot]
            da, db = darts[arc]
            head = db if da == (ci, exit_slot) else da
    return comps


def _canonicalize(tuples, heads):
    """Rotate crossings so slot 0 holds the incoming under-strand."""
    out = []
    new_heads = dict(heads)
    rotations = []
    for ci, t in enumerate(tuples):
        if heads[t[0]] == (ci, 0):
            rot = 0
        elif heads[t[2]] == (ci, 2):
            rot = 2
        else:
            raise ValidationError(f"crossing {ci}: inconsistent orientation")
        rotations.append(rot)
        out.append(tuple(t[(k + rot) % 4] for k in range(4)))
    if any(rotations):
        new_heads = {}
        dm = _dart_map(out)
        for arc, (ci, k) in heads.items():
            rot = rotations[ci]
            new_heads[arc] = (ci, (k - rot) % 4)
        for arc, h in new_heads.items():
            if h not in dm[arc]:
                raise AssertionError("dart remap failed")
    return out, new_heads


def _tails(tuples, heads):
    darts = _dart_map(tuples)
    tails = {}
    for arc, (d1, d2) in ((a, tuple(d)) for a, d in darts.items()):
        tails[arc] = d2 if heads[arc] == d1 else d1
    return tails


def _signs(tuples, heads):
    signs = []
    for ci, t in enumerate(tuples):
        if heads[t[1]] == (ci, 1):
            over_entry = 1
        elif heads[t[3]] == (ci, 3):
            over_entry = 3
        else:
            raise ValidationError(f"crossing {ci}: over-strand orientation broken")
        signs.append(1 if over_entry == 3 else -1)
    return signs


# ---------------------------------------------------------------------------
# PD text codec

_PD_TERM = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_pd(text):
    """Parse whitespace-separated ``X(a,b,c,d)`` terms into a Diagram."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty PD text")
    tuples = []
    pos = 0
    while pos < len(stripped):
        m = _PD_TERM.match(stripped, pos)
        if not m:
            raise ParseError(f"bad PD syntax at: {stripped[pos:pos + 30]!r}")
        tuples.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
        while pos < len(stripped) and stripped[pos].isspace():
            pos += 1
    return Diagram(tuples)


def pd_text(diagram):
    """Serialize a diagram back to PD text."""
    return " ".join("X({},{},{},{})".format(*c.arcs)
                    for c in diagram.crossings)


# ---------------------------------------------------------------------------
# braid words

@dataclass(frozen=True)
class BraidWord:
    """Braid on ``strands`` strands; letters are nonzero generator indices,
    sign encoding the inverse."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 2:
            raise ValidationError("a braid needs at least 2 strands")
        for l in self.letters:
            if l == 0 or abs(l) >= self.strands:
                raise ValidationError(f"generator index {l} out of range")


_BRAID_RE = re.compile(r"^\s*(\d+)\s*:\s*(.*)$")


def parse_braid(text):
    """Parse ``n: s1 -s2 s1 ...`` braid notation."""
    m = _BRAID_RE.match(text)
    if not m:
        raise ParseError("braid text must look like 'n: 1 -2 1'")
    strands = int(m.group(1))
    body = m.group(2).split()
    if not body:
        raise ParseError("empty braid word")
    try:
        letters = tuple(int(tok) for tok in body)
    except ValueError as exc:
        raise ParseError(f"bad braid letter: {exc}") from None
    return BraidWord(strands, letters)


def from_braid(word):
    """Diagram of the braid closure.  Every strand must be used by some
    letter, otherwise the closure has a split unknotted component."""
    n, letters = word.strands, word.letters
    used = {abs(l) for l in letters} | {abs(l) + 1 for l in letters}
    if used != set(range(1, n + 1)):
        raise ValidationError("closure of a braid with idle strands is split")
    cur = list(range(1, n + 1))          # arc label currently on each strand
    next_label = n + 1
    tuples = []
    for l in letters:
        i = abs(l)
        u, v = cur[i - 1], cur[i]        # NW, NE incoming arcs
        sw, se = next_label, next_label + 1
        next_label += 2
        if l > 0:
            # right strand passes under: incoming under-strand at NE
            tuples.append((v, u, sw, se))
        else:
            tuples.append((u, sw, se, v))
        cur[i - 1], cur[i] = sw, se
    # close up: identify the bottom arc of each strand with its top arc
    rename = {cur[j]: j + 1 for j in range(n)}
    closed = [tuple(rename.get(a, a) for a in t) for t in tuples]
    return Diagram(_compact_labels(closed))


def _compact_labels(tuples):
    labels = sorted({a for t in tuples for a in t})
    rename = {a: i + 1 for i, a in enumerate(labels)}
    return [tuple(rename[a] for a in t) for t in tuples]


# ---------------------------------------------------------------------------
# structural predicates and surgeries


def crossing_number(diagram):
    return diagram.crossing_number


def is_alternating(diagram):
    """True when every strand alternates over/under along its course,
    wrap-around included."""
    if not diagram.crossings:
        return True
    tuples = diagram.pd_tuples()
    darts = _dart_map(tuples)
    seen = set()
    for start in sorted(darts):
        if start in seen:
            continue
        d1, d2 = sorted(darts[start])
        arc, head = start, d2
        parities = []
        while arc not in seen:
            seen.add(arc)
            ci, k = head
            parities.append(k in (0, 2))
            exit_slot = (k + 2) % 4
            arc = tuples[ci][exit_slot]
            da, db = darts[arc]
            head = db if da == (ci, exit_slot) else da
        for p, q in zip(parities, parities[1:] + parities[:1]):
            if p == q:
                return False
    return True


def is_reduced(diagram):
    """True when no crossing is nugatory (no face meets a crossing at two
    opposite corners)."""
    from .embed import has_nugatory_crossing
    if not diagram.crossings:
        return True
    return not has_nugatory_crossing(diagram)


def change_crossings(diagram, subset):
    """Swap over/under at each crossing index in ``subset``; the projection
    graph is untouched."""
    subset = set(subset)
    bad = [i for i in subset if not 0 <= i < diagram.crossing_number]
    if bad:
        raise ValidationError(f"crossing indices out of range: {bad}")
    tuples = []
    for ci, c in enumerate(diagram.crossings):
        t = c.arcs
        if ci in subset:
            t = (t[1], t[2], t[3], t[0])
        tuples.append(t)
    return Diagram(tuples)


def mirror(diagram):
    """Mirror image: every crossing switched, projection unchanged."""
    if not diagram.crossings:
        return Diagram.unknot()
    return change_crossings(diagram, range(diagram.crossing_number))


def connect_sum(d1, d2, arc1=None, arc2=None):
    """Connect sum along marked arcs (defaults: lowest labels).

    The strands are cut and re-joined respecting orientation, so the
    result is a valid oriented diagram with c(D1) + c(D2) crossings.
    """
    if not d1.crossings:
        return d2
    if not d2.crossings:
        return d1
    if arc1 is None:
        arc1 = min(d1.arcs)
    if arc2 is None:
        arc2 = min(d2.arcs)
    offset = max(d1.arcs)
    t1 = d1.pd_tuples()
    t2 = [tuple(a + offset for a in t) for t in d2.pd_tuples()]
    arc2 += offset

    fresh1 = offset + max(d2.arcs) + 1
    fresh2 = fresh1 + 1
    # cut arc1 (tail -> head) and arc2, rejoin tail1->head2 and tail2->head1
    tail1, head1 = d1.arc_tail[arc1], d1.arc_head[arc1]
    tail2 = d2.arc_tail[arc2 - offset]
    head2 = d2.arc_head[arc2 - offset]

    def set_slot(tuples, dart, label):
        ci, k = dart
        t = list(tuples[ci])
        t[k] = label
        tuples[ci] = tuple(t)

    set_slot(t1, tail1, fresh1)   # tail side of arc1 feeds ...
    set_slot(t2, head2, fresh1)   # ... the head side of arc2
    set_slot(t2, tail2, fresh2)
    set_slot(t1, head1, fresh2)
    return Diagram(_compact_labels(t1 + t2))
