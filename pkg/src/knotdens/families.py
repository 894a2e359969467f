"""Link-family constructors: weaving knots, Celtic grids, tangle cycles,
connect-sum rows and twist insertions.

Tangles are 2-string: four open arc ends tagged NW, NE, SW, SE.  An
n-cycle joins NE->NW and SE->SW of consecutive copies around a circle
(closing the last to the first); the row closure chains copies in a line
and closes the outer ends, which realizes the n-fold connect sum of the
tangle closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .diagram import BraidWord, Diagram, from_braid, _compact_labels
from .embed import common_faces_of_arcs, face_data, make_alternating
from .errors import DomainError, ValidationError


def weaving_knot(p, q):
    """W(p, q): alternating closure of (s1 s2^-1 s3 ...)^q on p strands."""
    if p < 3:
        raise DomainError("weaving needs p >= 3 strands")
    if q < 2:
        raise DomainError("weaving needs q >= 2 repeats")
    letters = []
    for _ in range(q):
        for i in range(1, p):
            letters.append(i if i % 2 else -i)
    return from_braid(BraidWord(p, tuple(letters)))


# ---------------------------------------------------------------------------
# Celtic grids


def celtic_grid(m, n):
    """Reduced alternating diagram on an m x n grid of crossings.

    The projection graph is the full m x n square grid with the boundary
    closed off by nested non-crossing arcs in the outer region, so it
    contains an (m-1) x (n-1) grid subgraph and has exactly m*n crossings.
    Over/under data comes from the checkerboard shading of the closed-up
    projection, which makes the diagram alternating by construction.

    The closure is the densest of the nested ("lid plus rainbow")
    matchings of the boundary darts: a small fully-nested block absorbs
    the corner conflicts and one large rainbow nests everything else.
    Maximizing the spanning-tree count over the lid size keeps the grid
    density sequence monotone.
    """
    if m < 2 or n < 2:
        raise DomainError("celtic grids need m, n >= 2")
    return _celtic_cached(m, n)


@lru_cache(maxsize=256)
def _celtic_cached(m, n):
    from .graphs import spanning_tree_count, tait_graph
    best = None
    best_tau = -1
    for lid in range(0, min(m, n) + 2):
        rotation = _celtic_rotation(m, n, lid)
        if rotation is None:
            continue
        try:
            diagram = Diagram(make_alternating(rotation))
        except ValidationError:
            continue
        tau = spanning_tree_count(tait_graph(diagram))
        if tau > best_tau:
            best_tau = tau
            best = diagram
    if best is None:
        raise ValidationError("no planar closure for this grid boundary")
    return best


def _celtic_rotation(m, n, lid=1):
    """Rotation tuples (arcs CCW per crossing) of the closed-up grid,
    using the nested closure with a lid block of the given size."""
    # vertex (i, j), 0-based; slots per vertex in CCW order: E, N, W, S
    def vid(i, j):
        return j * m + i

    arc = [0]
    labels = {}

    def lab(key):
        if key not in labels:
            arc[0] += 1
            labels[key] = arc[0]
        return labels[key]

    slots = [[None] * 4 for _ in range(m * n)]
    E, N, W, S = 0, 1, 2, 3
    for j in range(n):
        for i in range(m):
            v = vid(i, j)
            if i + 1 < m:
                slots[v][E] = lab(("h", i, j))
                slots[vid(i + 1, j)][W] = lab(("h", i, j))
            if j + 1 < n:
                slots[v][N] = lab(("v", i, j))
                slots[vid(i, j + 1)][S] = lab(("v", i, j))
    # boundary darts in cyclic order around the rectangle (counterclockwise:
    # south row left->right, east column bottom->top, north row right->left,
    # west column top->bottom)
    cyc = []
    cyc += [(vid(i, 0), S) for i in range(m)]
    cyc += [(vid(m - 1, j), E) for j in range(n)]
    cyc += [(vid(i, n - 1), N) for i in range(m - 1, -1, -1)]
    cyc += [(vid(0, j), W) for j in range(n - 1, -1, -1)]
    matching = _nested_closure(cyc, lid)
    if matching is None:
        return None
    for (v1, s1), (v2, s2) in matching:
        a = lab(("c", v1, s1, v2, s2))
        slots[v1][s1] = a
        slots[v2][s2] = a
    return [tuple(sl) for sl in slots]


def _nested_closure(cyc, lid):
    """Lid-plus-rainbow matching: positions 0..2*lid-1 pair as a nested
    block ((i, 2*lid-1-i)), the rest as one big rainbow ((k, L-1-k+2*lid)
    pattern).  Returns None when a pair would join two darts of the same
    vertex (a kink)."""
    L = len(cyc)
    if 2 * lid > L:
        return None
    pairs = []
    for i in range(lid):
        pairs.append((i, 2 * lid - 1 - i))
    lo, hi = 2 * lid, L - 1
    while lo < hi:
        pairs.append((lo, hi))
        lo += 1
        hi -= 1
    if lo == hi:
        return None
    out = []
    for i, j in pairs:
        d1, d2 = cyc[i], cyc[j]
        if d1[0] == d2[0]:
            return None
        out.append((d1, d2))
    return out


# ---------------------------------------------------------------------------
# tangles


@dataclass(frozen=True)
class Tangle:
    """2-string tangle: PD-style crossings plus four open arc ends."""

    crossings: tuple               # tuples of arc labels (rotation order CCW)
    nw: int
    ne: int
    sw: int
    se: int

    def __post_init__(self):
        counts = {}
        for t in self.crossings:
            for a in t:
                counts[a] = counts.get(a, 0) + 1
        open_ends = [self.nw, self.ne, self.sw, self.se]
        if len(set(open_ends)) != 4:
            raise ValidationError("tangle boundary labels must be distinct")
        for a in open_ends:
            if counts.get(a, 0) != 1:
                raise ValidationError(f"boundary arc {a} must have one loose end")
        for a, k in counts.items():
            if a not in open_ends and k != 2:
                raise ValidationError(f"internal arc {a} not paired: {k} ends")

    @property
    def crossing_count(self):
        return len(self.crossings)

    @classmethod
    def vertical_twists(cls, k, sign=1):
        """k half-twists of two vertical strands (sigma_1^k as a tangle);
        closure is the (2, k) torus diagram."""
        if k < 1:
            raise DomainError("need at least one crossing")
        crossings = []
        left, right = 1, 2
        nxt = 3
        for _ in range(k):
            sw, se = nxt, nxt + 1
            nxt += 2
            if sign > 0:
                crossings.append((right, left, sw, se))
            else:
                crossings.append((left, sw, se, right))
            left, right = sw, se
        return cls(tuple(crossings), nw=1, ne=2, sw=left, se=right)

    def shifted(self, offset):
        cr = tuple(tuple(a + offset for a in t) for t in self.crossings)
        return Tangle(cr, self.nw + offset, self.ne + offset,
                      self.sw + offset, self.se + offset)


def _merge_labels(crossings, identifications):
    """Union-find relabeling for gluing tangle ends."""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in identifications:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    out = [tuple(find(a) for a in t) for t in crossings]
    return _compact_labels(out)


def tangle_closure(tangle):
    """K^1: close NE->NW and SE->SW on a single copy (the annular
    closure, identical to cycle_of_tangles(tangle, 1))."""
    return Diagram(_merge_labels(
        tangle.crossings, [(tangle.ne, tangle.nw), (tangle.se, tangle.sw)]))


def side_closure(tangle):
    """Close NW->SW and NE->SE (caps left and right of the tangle box).

    For an n-cycle of copies of a tangle, the determinant grows like
    det(side_closure)^n up to a polynomial factor, so this closure is the
    density anchor of the cycle family: vertical twist tangles close to
    (2, k) torus diagrams and their cycles are the pretzel links
    P(k, ..., k) whose densities tend to the torus knot's density.
    """
    return Diagram(_merge_labels(
        tangle.crossings, [(tangle.nw, tangle.sw), (tangle.ne, tangle.se)]))


def cycle_of_tangles(tangle, n):
    """K^n: n copies joined in an n-cycle (NE_i->NW_{i+1}, SE_i->SW_{i+1},
    indices mod n)."""
    if n < 1:
        raise DomainError("cycle needs n >= 1 copies")
    if n == 1:
        return tangle_closure(tangle)
    span = max(a for t in tangle.crossings for a in t) + 1
    copies = [tangle.shifted(i * span) for i in range(n)]
    crossings = [t for c in copies for t in c.crossings]
    idents = []
    for i in range(n):
        j = (i + 1) % n
        idents.append((copies[i].ne, copies[j].nw))
        idents.append((copies[i].se, copies[j].sw))
    return Diagram(_merge_labels(crossings, idents))


def connect_sum_power(diagram, n):
    """L^n: the n-fold connect sum of a diagram with itself."""
    from .diagram import connect_sum
    if n < 1:
        raise DomainError("connect-sum power needs n >= 1")
    out = diagram
    for _ in range(n - 1):
        out = connect_sum(out, diagram)
    return out


def default_cut_site(diagram):
    """Deterministic pair of distinct arcs bordering a common region,
    suitable for cutting a 2-string tangle out of the diagram."""
    fd = face_data(diagram)
    dm = diagram.dart_map()
    for face in fd.faces:
        arcs_here = []
        for ci, k in face:
            arcs_here.append(diagram.crossings[ci].arcs[k])
        counts = {}
        for a in arcs_here:
            counts[a] = counts.get(a, 0) + 1
        simple = sorted(a for a, c in counts.items() if c == 1)
        if len(simple) >= 2:
            return simple[0], simple[1]
    raise DomainError("no face with two cuttable arcs")


def cut_tangle(diagram, arc_a=None, arc_b=None):
    """Cut two arcs of a diagram, yielding a 2-string tangle T with
    cycle_of_tangles(T, 1) == the original diagram.

    The arcs should border a common region so that the n-cycles are
    planar; construction of the cycles validates this.
    """
    if arc_a is None or arc_b is None:
        arc_a, arc_b = default_cut_site(diagram)
    if arc_a == arc_b:
        raise DomainError("cut needs two distinct arcs")
    labels = set(diagram.arcs)
    if arc_a not in labels or arc_b not in labels:
        raise DomainError("cut arcs not present in the diagram")

    # the cut runs along a chord of a region both arcs border; the face's
    # boundary walk fixes which halves lie on the outgoing side, which is
    # what keeps the n-cycles planar
    fd = face_data(diagram)
    dm = diagram.dart_map()
    chord_face = None
    for face in fd.faces:
        arcs_once = {}
        for ci, k in face:
            arc = diagram.crossings[ci].arcs[k]
            arcs_once[arc] = arcs_once.get(arc, 0) + 1
        if arcs_once.get(arc_a) == 1 and arcs_once.get(arc_b) == 1:
            chord_face = face
            break
    if chord_face is None:
        raise DomainError(
            f"arcs {arc_a}, {arc_b} do not border a common region cleanly")

    def face_dart(arc):
        for d in chord_face:
            if diagram.crossings[d[0]].arcs[d[1]] == arc:
                return d
        raise AssertionError

    d_a = face_dart(arc_a)
    d_b = face_dart(arc_b)
    pa = next(d for d in dm[arc_a] if d != d_a)
    pb = next(d for d in dm[arc_b] if d != d_b)

    base = max(labels)
    tuples = [list(t) for t in diagram.pd_tuples()]

    def set_dart(dart, label):
        ci, k = dart
        tuples[ci][k] = label

    set_dart(pa, base + 2)     # ne: half of a past the chord
    set_dart(d_a, base + 1)    # nw
    set_dart(d_b, base + 4)    # se: half of b before the chord
    set_dart(pb, base + 3)     # sw
    tangle = Tangle(tuple(tuple(t) for t in tuples),
                    nw=base + 1, ne=base + 2, sw=base + 3, se=base + 4)
    cycle_of_tangles(tangle, 3)   # validates planar coherence
    return tangle


# ---------------------------------------------------------------------------
# twisting on two strands


def twist_on_two_strands(diagram, site, k):
    """Insert k extra crossings twisting the two arcs of ``site`` across a
    region they both border.

    The insertion preserves planarity (validated on construction); when
    the input is alternating the inserted twists are oriented to keep it
    alternating.
    """
    if k < 0:
        raise DomainError("twist count must be nonnegative")
    if k == 0:
        return diagram
    arc_u, arc_v = site
    if arc_u == arc_v:
        raise DomainError("twist site needs two distinct arcs")
    labels = set(diagram.arcs)
    if arc_u not in labels or arc_v not in labels:
        raise DomainError("twist site arcs not present in the diagram")
    if not common_faces_of_arcs(diagram, arc_u, arc_v):
        raise DomainError("twist site arcs do not border a common region")

    base = max(labels)
    was_alternating = None
    candidates = []
    # two ways to thread each strand through the twist column
    for orient_u in (0, 1):
        for orient_v in (0, 1):
            cand = _spliced_twist(diagram, arc_u, arc_v, k, orient_u, orient_v, base)
            if cand is not None:
                candidates.append(cand)
    if not candidates:
        raise DomainError("no planar twist insertion at this site")
    from .diagram import is_alternating
    if is_alternating(diagram):
        for cand in candidates:
            if is_alternating(cand):
                return cand
    return candidates[0]


def _spliced_twist(diagram, arc_u, arc_v, k, orient_u, orient_v, base):
    """One candidate splice; returns None when the rotation system fails
    validation (non-planar gluing)."""
    tuples = [list(t) for t in diagram.pd_tuples()]
    dm = diagram.dart_map()

    u_d1, u_d2 = dm[arc_u]
    v_d1, v_d2 = dm[arc_v]
    if orient_u:
        u_d1, u_d2 = u_d2, u_d1
    if orient_v:
        v_d1, v_d2 = v_d2, v_d1

    # strand u: u_d1 --[base+1]--> twist column left --[base+2]--> u_d2
    # strand v: v_d1 --[base+3]--> twist column right --[base+4]--> v_d2
    u_in, u_out = base + 1, base + 2
    v_in, v_out = base + 3, base + 4
    tuples[u_d1[0]][u_d1[1]] = u_in
    tuples[u_d2[0]][u_d2[1]] = u_out
    tuples[v_d1[0]][v_d1[1]] = v_in
    tuples[v_d2[0]][v_d2[1]] = v_out

    left, right = u_in, v_in
    nxt = base + 5
    new_crossings = []
    for step in range(k):
        out_l = u_out if step == k - 1 else nxt
        out_r = v_out if step == k - 1 else nxt + 1
        nxt += 2
        # alternate the over-strand so alternating inputs stay alternating
        if step % 2 == 0:
            new_crossings.append((right, left, out_l, out_r))
        else:
            new_crossings.append((left, out_l, out_r, right))
        left, right = out_l, out_r
    try:
        return Diagram([tuple(t) for t in tuples] + new_crossings)
    except ValidationError:
        return None


def twist_family_diagram(k):
    """The (2, k+2) torus diagram: the 2-crossing clasp with k extra
    alternating twists, the family whose densities tend to 0."""
    if k < 0:
        raise DomainError("twist count must be nonnegative")
    return from_braid(BraidWord(2, (1,) * (k + 2)))
