"""Finite balls of Cayley graphs as coloured multigraphs.

A ball stores the portion of a Cayley graph within a given distance of a
center vertex.  Edges carry a generator colour; edges of non-involution
generators are directed (u -> v means v = u * g), involution edges are
stored once, undirected.  Parallel edges are permitted (they occur for the
finite degenerate family where two involution colours coincide).

Vertex ids are assigned canonically: breadth-first from the center, letters
explored in declared generator order (positive direction first), which makes
vertex ``i``'s word label the shortlex-minimal representative.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import CubicCayleyError
from .presentation import Presentation, Word

Slot = Tuple[str, Optional[str]]  # (colour, "out"/"in"/None)


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    colour: str
    directed: bool

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


class CayleyBall:
    def __init__(self, presentation: Optional[Presentation], center: int,
                 radius: int, edges: List[Edge], words: List[str],
                 interior: frozenset, distances: List[int]):
        self.presentation = presentation
        self.center = center
        self.radius = radius
        self.edges = edges
        self.words = words
        self.interior = interior
        self.distances = distances
        self._slots = self._build_slots()

    # -- structure ---------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.words)

    def vertices(self):
        return range(len(self.words))

    def _build_slots(self) -> List[Dict[Slot, Tuple[int, int]]]:
        slots: List[Dict[Slot, Tuple[int, int]]] = [dict() for _ in self.words]
        for i, e in enumerate(self.edges):
            if e.directed:
                a, b = (e.colour, "out"), (e.colour, "in")
            else:
                a = b = (e.colour, None)
            for end, slot, other in ((e.u, a, e.v), (e.v, b, e.u)):
                if slot in slots[end]:
                    raise CubicCayleyError(
                        f"duplicate {slot} slot at vertex {end}")
                slots[end][slot] = (i, other)
        return slots

    def slots(self, v: int) -> Dict[Slot, Tuple[int, int]]:
        return self._slots[v]

    def degree(self, v: int) -> int:
        return len(self._slots[v])

    def neighbours(self, v: int):
        return [other for _, other in self._slots[v].values()]

    def incident_edges(self, v: int):
        return [eid for eid, _ in self._slots[v].values()]

    def step(self, v: int, letter) -> Optional[int]:
        """Follow one letter (gen, sign) from v; None if the edge is absent."""
        hit = self.step_edge(v, letter)
        return hit[1] if hit else None

    def step_edge(self, v: int, letter):
        g, s = letter
        # involution edges sit in the (g, None) slot; directedness is a
        # property of the stored edges, not of the attached presentation
        hit = self._slots[v].get((g, None))
        if hit is None:
            hit = self._slots[v].get((g, "out" if s > 0 else "in"))
        return hit

    def trace_word(self, v: int, word: Word) -> Optional[int]:
        for letter in word:
            v = self.step(v, letter)
            if v is None:
                return None
        return v

    def trace_walk(self, v: int, word: Word):
        """Vertex/edge sequence of the walk, or None if it leaves the ball."""
        verts, eids = [v], []
        for letter in word:
            hit = self.step_edge(v, letter)
            if hit is None:
                return None
            eid, v = hit
            eids.append(eid)
            verts.append(v)
        return verts, eids

    # -- serialisation -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "presentation": self.presentation.pretty() if self.presentation else None,
            "center": self.center,
            "radius": self.radius,
            "vertices": [{"id": i, "word": w} for i, w in enumerate(self.words)],
            "edges": [{"u": e.u, "v": e.v, "colour": e.colour,
                       "directed": e.directed} for e in self.edges],
            "interior": sorted(self.interior),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "CayleyBall":
        from .presentation import parse_presentation
        pres = parse_presentation(data["presentation"]) if data.get("presentation") else None
        words = [None] * len(data["vertices"])
        for item in data["vertices"]:
            words[item["id"]] = item["word"]
        edges = [Edge(e["u"], e["v"], e["colour"], e["directed"])
                 for e in data["edges"]]
        ball = cls.__new__(cls)
        ball.presentation = pres
        ball.center = data["center"]
        ball.radius = data["radius"]
        ball.edges = edges
        ball.words = words
        ball.interior = frozenset(data["interior"])
        ball.distances = _bfs_distances(len(words), edges, data["center"])
        ball._slots = ball._build_slots()
        return ball

    @classmethod
    def from_json(cls, text: str) -> "CayleyBall":
        return cls.from_dict(json.loads(text))

    def canonical_form(self) -> tuple:
        """Rooted canonical encoding; equal forms <=> rooted colour-isomorphic."""
        edge_keys = sorted(
            (min(e.u, e.v), max(e.u, e.v), e.colour, e.directed,
             e.u if e.directed else min(e.u, e.v))
            for e in self.edges)
        return (len(self.words), self.center, tuple(edge_keys))


def _bfs_distances(n: int, edges: List[Edge], root: int) -> List[int]:
    adj: List[List[int]] = [[] for _ in range(n)]
    for e in edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    dist = [-1] * n
    dist[root] = 0
    queue = [root]
    for v in queue:
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def make_ball(presentation: Optional[Presentation], root,
              edges: List[Tuple[object, object, str, bool]],
              radius: int) -> CayleyBall:
    """Truncate a raw edge list to the radius-``radius`` ball around ``root``
    and renumber vertices canonically (shortlex BFS order).

    Raw vertices may be arbitrary hashable objects.  Directed edges are given
    as (u, v, colour, True) with v = u * colour.
    """
    inv = presentation.involutions if presentation else frozenset()
    gens = presentation.generator_names if presentation else \
        sorted({c for _, _, c, _ in edges})

    # adjacency by slot on the raw vertices
    slot_map: Dict[object, Dict[Slot, object]] = {}
    raw_parallel = []  # involution-pair colours sharing endpoints are fine
    for u, v, colour, directed in edges:
        if directed:
            su, sv = (colour, "out"), (colour, "in")
        else:
            su = sv = (colour, None)
        slot_map.setdefault(u, {})
        slot_map.setdefault(v, {})
        if su in slot_map[u] or sv in slot_map[v]:
            raise CubicCayleyError(f"duplicate slot while assembling ball")
        slot_map[u][su] = v
        slot_map[v][sv] = u

    # letters in shortlex alphabet order
    letters = []
    for g in gens:
        if g in inv:
            letters.append(((g, None), (g, 1)))
        else:
            letters.append((((g, "out")), (g, 1)))
            letters.append((((g, "in")), (g, -1)))

    order: Dict[object, int] = {root: 0}
    words = {root: ""}
    dist = {root: 0}
    queue = [root]
    for v in queue:
        if dist[v] >= radius:
            continue
        for slot, (g, s) in letters:
            w = slot_map.get(v, {}).get(slot)
            if w is not None and w not in order:
                order[w] = len(order)
                dist[w] = dist[v] + 1
                piece = g if s > 0 else f"{g}^-1"
                if len(g) == 1:
                    words[w] = words[v] + piece
                else:
                    words[w] = (words[v] + " " + piece).strip()
                queue.append(w)

    kept_edges = []
    for u, v, colour, directed in edges:
        if u in order and v in order:
            kept_edges.append(Edge(order[u], order[v], colour, directed))
    kept_edges.sort(key=lambda e: (min(e.u, e.v), max(e.u, e.v), e.colour,
                                   not e.directed, e.u))

    word_list = [""] * len(order)
    dist_list = [0] * len(order)
    for rv, i in order.items():
        word_list[i] = words[rv] or "1"
        dist_list[i] = dist[rv]
    interior = frozenset(i for i in range(len(order))
                         if dist_list[i] <= radius - 1)
    return CayleyBall(presentation, 0, radius, kept_edges, word_list,
                      interior, dist_list)


def certify_ball(ball: CayleyBall, p: Presentation) -> List[tuple]:
    """Check the local Cayley-graph axioms on the ball.

    Returns a list of violations (vertex, subject, kind); empty means the
    ball is certified: interior vertices carry a full complement of edge
    slots, every relator trace that stays inside the ball closes, and no
    trace identifies two distinct vertices mid-relator.
    """
    violations = []
    inv = p.involutions
    expected: List[Slot] = []
    for g in p.generator_names:
        if g in inv:
            expected.append((g, None))
        else:
            expected.append((g, "out"))
            expected.append((g, "in"))

    for v in sorted(ball.interior):
        for slot in expected:
            if slot not in ball.slots(v):
                violations.append((v, slot, "missing-slot"))

    for v in ball.vertices():
        for rel in p.relators:
            walk = ball.trace_walk(v, rel)
            if walk is None:
                continue  # trace leaves the ball; nothing to check
            verts, _ = walk
            if verts[-1] != v:
                violations.append((v, rel.pretty(), "open-trace"))
                continue
            seen = set()
            for x in verts[:-1]:
                if x in seen:
                    violations.append((v, rel.pretty(), "trace-revisit"))
                    break
                seen.add(x)
    return violations


def rooted_isomorphic(a: CayleyBall, b: CayleyBall) -> bool:
    return a.canonical_form() == b.canonical_form()
