"""Planar-map structure derived from PD rotation data.

Faces are the orbits of ``d -> turn(partner(d))`` on darts, where
``partner`` crosses an arc and ``turn`` steps one slot counterclockwise.
Corners are indexed so that corner ``(c, k)`` sits between slots ``k``
and ``k + 1``; it belongs to the face whose boundary walk turns there,
which is the face containing dart ``(c, k + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import _dart_map
from .errors import DomainError, ValidationError


@dataclass
class FaceData:
    faces: list              # list of tuples of darts, one per face
    dart_face: dict          # dart -> face index
    colors: list             # face index -> 0/1 checkerboard class

    def face_of_corner(self, ci, k):
        return self.dart_face[(ci, (k + 1) % 4)]

    def corner_color(self, ci, k):
        return self.colors[self.face_of_corner(ci, k)]


def _partner_map(tuples):
    partner = {}
    for dlist in _dart_map(tuples).values():
        d1, d2 = dlist
        partner[d1] = d2
        partner[d2] = d1
    return partner


def trace_faces(tuples):
    """Face orbits of the rotation system plus a checkerboard 2-coloring."""
    partner = _partner_map(tuples)
    dart_face = {}
    faces = []
    for ci in range(len(tuples)):
        for k in range(4):
            d = (ci, k)
            if d in dart_face:
                continue
            idx = len(faces)
            orbit = []
            while d not in dart_face:
                dart_face[d] = idx
                orbit.append(d)
                c2, k2 = partner[d]
                d = (c2, (k2 + 1) % 4)
            faces.append(tuple(orbit))
    colors = _two_color(tuples, faces, dart_face, partner)
    return FaceData(faces, dart_face, colors)


def _two_color(tuples, faces, dart_face, partner):
    adj = [set() for _ in faces]
    for d1, d2 in partner.items():
        f1, f2 = dart_face[d1], dart_face[d2]
        adj[f1].add(f2)
        adj[f2].add(f1)
    colors = [None] * len(faces)
    for seed in range(len(faces)):
        if colors[seed] is not None:
            continue
        colors[seed] = 0
        stack = [seed]
        while stack:
            f = stack.pop()
            for g in adj[f]:
                if colors[g] is None:
                    colors[g] = 1 - colors[f]
                    stack.append(g)
                elif colors[g] == colors[f]:
                    raise ValidationError("diagram faces are not 2-colorable")
    return colors


def face_data(diagram):
    """Cached FaceData for a Diagram."""
    if not diagram.crossings:
        raise DomainError("the zero-crossing unknot has no crossing faces")
    if diagram._faces is None:
        diagram._faces = trace_faces(diagram.pd_tuples())
    return diagram._faces


def has_nugatory_crossing(diagram):
    """A crossing is nugatory when one face meets it at two opposite
    corners (equivalently, the crossing is a cut vertex of the projection
    graph)."""
    fd = face_data(diagram)
    for ci in range(diagram.crossing_number):
        if fd.face_of_corner(ci, 0) == fd.face_of_corner(ci, 2):
            return True
        if fd.face_of_corner(ci, 1) == fd.face_of_corner(ci, 3):
            return True
    return False


def make_alternating(rotation_tuples):
    """Rotate each crossing of a 4-valent rotation system so the result is
    the alternating diagram of that projection (one of the two mirror
    choices, picked deterministically).

    Only the rotation (cyclic order) of the input tuples is used; the
    over/under information they carry is discarded.
    """
    fd = trace_faces(rotation_tuples)
    out = []
    for ci, t in enumerate(rotation_tuples):
        start = None
        for a in range(4):
            if fd.corner_color(ci, a) == 0:
                start = a
                break
        if start is None:
            raise ValidationError("corner coloring degenerate")
        out.append(tuple(t[(start + k) % 4] for k in range(4)))
    return out


def common_faces_of_arcs(diagram, arc_a, arc_b):
    """Face indices bordered by both arcs (used to validate twist sites)."""
    fd = face_data(diagram)
    dm = diagram.dart_map()

    def sides(arc):
        return {fd.dart_face[d] for d in dm[arc]}

    return sides(arc_a) & sides(arc_b)
