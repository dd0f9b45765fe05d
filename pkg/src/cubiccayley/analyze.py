"""Structural diagnostics on certified balls.

Separators, hinges, colour-pair orders, independent paths and GF(2)
cycle-space checks.  All separation results follow a boundary discipline:
the separating objects and the separated witnesses must be interior
vertices, because finite balls of infinite graphs develop spurious cuts
near their truncation boundary.

The searches are deliberately brute force (pair enumeration plus BFS);
balls at desk scale have at most a few hundred vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .ball import CayleyBall, Edge
from .errors import BallTooSmall, InvalidParams, NoSeparatorFound
from .presentation import Presentation, Word


@dataclass(frozen=True)
class SeparationCertificate:
    x: int
    y: int
    components: Tuple[Tuple[int, ...], ...]
    path: Tuple[int, ...]
    z: Word
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def path_colours(self) -> Tuple[str, ...]:
        return tuple(sorted({g for g, _ in self.z}))

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "z_word": self.z.pretty(),
                "path_len": len(self.path) - 1, "checks": dict(self.checks)}


@dataclass(frozen=True)
class ColourPairOrder:
    pair: Tuple[str, str]
    order: Optional[int]  # None means no closure within the bound
    bound: int

    @property
    def infinite(self) -> bool:
        return self.order is None

    def to_dict(self) -> dict:
        return {"pair": list(self.pair),
                "order": self.order if self.order is not None else f"Infinite({self.bound})"}


# ---------------------------------------------------------------------------
# reachability helpers
# ---------------------------------------------------------------------------

def _adjacency(ball: CayleyBall) -> List[List[Tuple[int, int]]]:
    adj: List[List[Tuple[int, int]]] = [[] for _ in ball.vertices()]
    for eid, e in enumerate(ball.edges):
        adj[e.u].append((e.v, eid))
        adj[e.v].append((e.u, eid))
    return adj


def _components(ball, adj, removed_vertices=frozenset(), removed_edges=frozenset()):
    seen = set(removed_vertices)
    comps = []
    for start in ball.vertices():
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        for v in comp:
            for w, eid in adj[v]:
                if eid in removed_edges or w in seen:
                    continue
                seen.add(w)
                comp.append(w)
        comps.append(comp)
    return comps


def _separates(ball, adj, witnesses, removed_vertices=frozenset(),
               removed_edges=frozenset()) -> bool:
    """True iff two witnesses (outside the removed set) end up in
    different components."""
    live = [w for w in witnesses if w not in removed_vertices]
    if len(live) < 2:
        return False
    comps = _components(ball, adj, removed_vertices, removed_edges)
    hit = 0
    for comp in comps:
        if any(v in witnesses for v in comp):
            hit += 1
            if hit > 1:
                return True
    return False


def _shortest_path(ball, adj, x: int, y: int) -> Tuple[int, ...]:
    prev = {x: None}
    queue = [x]
    for v in queue:
        if v == y:
            break
        for w, _ in adj[v]:
            if w not in prev:
                prev[w] = v
                queue.append(w)
    if y not in prev:
        raise NoSeparatorFound(f"no path between {x} and {y} inside the ball")
    path = [y]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return tuple(reversed(path))


def _path_word(ball: CayleyBall, path: Sequence[int]) -> Word:
    p = ball.presentation
    letters = []
    for u, v in zip(path, path[1:]):
        for g in p.generator_names:
            signs = (1,) if g in p.involutions else (1, -1)
            found = next((s for s in signs if ball.step(u, (g, s)) == v), None)
            if found is not None:
                letters.append((g, found))
                break
        else:
            raise InvalidParams(f"no edge between {u} and {v}")
    return Word(tuple(letters))


def _certificate(ball, adj, x: int, y: int) -> SeparationCertificate:
    comps = _components(ball, adj, frozenset((x, y)))
    path = _shortest_path(ball, adj, x, y)
    z = _path_word(ball, path)
    cert = SeparationCertificate(
        x, y, tuple(tuple(sorted(c)) for c in comps), path, z)
    twice = Word(z.letters + z.letters)
    cert.checks["z_squared_closes"] = ball.trace_word(x, twice) == x
    colours = {g for g, _ in z}
    cert.checks["monochromatic"] = len(colours) == 1
    cert.checks["two_coloured"] = len(colours) == 2
    return cert


# ---------------------------------------------------------------------------
# separators and hinges
# ---------------------------------------------------------------------------

def sound_margin(p: Presentation) -> int:
    """Boundary margin at which every relator-polygon detour around a
    candidate separator fits inside the ball, so an apparent separation
    cannot be refuted by a path the truncation cut off."""
    longest = max(len(r) for r in p.relators)
    return max(2, longest // 2 - 1)


def _deep_vertices(ball: CayleyBall, margin: int) -> List[int]:
    """Vertices eligible as separating objects and witnesses.

    For a finite graph held in full there is no truncation, so every
    vertex qualifies.  Otherwise the margin pushes the eligible region
    away from the boundary.
    """
    if len(ball.interior) == ball.n_vertices:
        return list(ball.vertices())
    if ball.radius < margin + 2:
        raise BallTooSmall(
            f"radius {ball.radius} < margin {margin} + 2: no room for "
            "interior separation evidence")
    limit = ball.radius - 1 - margin
    return [v for v in ball.vertices() if ball.distances[v] <= limit]


def connectivity_diagnostics(ball: CayleyBall, margin: int = 1) -> dict:
    """Enumerate deep cut vertices and deep 2-separators.

    Witnesses as well as separating vertices must sit ``margin`` layers
    inside the interior; anything closer to the boundary is dropped as a
    possible truncation artifact.  The default margin is the minimal
    discipline; ``sound_margin`` gives the relator-aware one.
    """
    adj = _adjacency(ball)
    deep = sorted(_deep_vertices(ball, margin))
    witnesses = set(deep)
    cut = any(_separates(ball, adj, witnesses, frozenset((v,)))
              for v in deep)
    separators = []
    for x, y in itertools.combinations(deep, 2):
        if _separates(ball, adj, witnesses, frozenset((x, y))):
            separators.append(_certificate(ball, adj, x, y))
    return {"has_interior_cutvertex": cut, "two_separators": separators}


def find_hinges(ball: CayleyBall, margin: int = 1,
                center_only: bool = False) -> List[Edge]:
    """Deep edges whose endpoint pair separates deep vertices.

    ``center_only`` restricts to the edges at the center vertex: by
    vertex-transitivity of Cayley graphs every edge is a translate of a
    center edge, and the center enjoys the best truncation margin.
    """
    adj = _adjacency(ball)
    deep = set(_deep_vertices(ball, margin))
    hinges = []
    for e in ball.edges:
        if center_only and ball.center not in (e.u, e.v):
            continue
        if e.u in deep and e.v in deep and \
                _separates(ball, adj, deep, frozenset((e.u, e.v))):
            hinges.append(e)
    return hinges


def shortest_separating_path(ball: CayleyBall, margin: int = 1,
                             center_only: bool = False) -> SeparationCertificate:
    """The certificate of a shortest path between deep separating
    endpoints, ties broken towards the center and then lexically.

    With ``center_only`` the first endpoint is pinned to the center
    (sound by vertex-transitivity) and candidates are scanned in
    distance order, so the first hit is minimal.
    """
    adj = _adjacency(ball)
    deep = sorted(_deep_vertices(ball, margin))
    witnesses = set(deep)
    if center_only:
        for y in sorted(deep, key=lambda v: (ball.distances[v], v)):
            if y != ball.center and \
                    _separates(ball, adj, witnesses, frozenset((ball.center, y))):
                return _certificate(ball, adj, ball.center, y)
        raise NoSeparatorFound(
            "no separating pair at the center at this radius")
    best = None
    best_key = None
    for x, y in itertools.combinations(deep, 2):
        if not _separates(ball, adj, witnesses, frozenset((x, y))):
            continue
        path = _shortest_path(ball, adj, x, y)
        key = (len(path), ball.distances[x] + ball.distances[y], x, y)
        if best_key is None or key < best_key:
            best_key = key
            best = (x, y, path)
    if best is None:
        raise NoSeparatorFound(
            "no interior separating pair at this radius; report, do not guess")
    x, y, _ = best
    return _certificate(ball, adj, x, y)


# ---------------------------------------------------------------------------
# colour-pair orders
# ---------------------------------------------------------------------------

def colour_pair_orders(ball: CayleyBall, bound: int) -> List[ColourPairOrder]:
    """Closure length of the alternating two-colour walk from the center,
    for each pair of colours; ``bound`` caps the number of edge steps."""
    p = ball.presentation
    if len(p.generator_names) != 3 or len(p.involutions) != 3:
        raise InvalidParams("colour_pair_orders expects a 3-involution ball")
    if bound < 2 * ball.radius:
        raise InvalidParams("bound must be at least twice the radius")
    out = []
    for g1, g2 in itertools.combinations(p.generator_names, 2):
        v = ball.center
        order = None
        for step in range(bound):
            v = ball.step(v, (g1 if step % 2 == 0 else g2, 1))
            if v is None:
                break
            if v == ball.center and step % 2 == 1:
                order = (step + 1) // 2
                break
        out.append(ColourPairOrder((g1, g2), order, bound))
    return out


# ---------------------------------------------------------------------------
# independent paths (Menger via vertex-split max-flow)
# ---------------------------------------------------------------------------

def independent_paths(ball: CayleyBall, x: int, y: int) -> int:
    """Maximum number of internally vertex-disjoint x-y paths in the ball."""
    if x == y:
        raise InvalidParams("endpoints must differ")
    if x not in ball.interior or y not in ball.interior:
        raise InvalidParams("endpoints must be interior")
    big = len(ball.edges) + 3
    g = nx.DiGraph()
    for v in ball.vertices():
        g.add_edge(("in", v), ("out", v),
                   capacity=big if v in (x, y) else 1)
    for e in ball.edges:
        for a, b in ((e.u, e.v), (e.v, e.u)):
            u, w = ("out", a), ("in", b)
            if g.has_edge(u, w):
                g[u][w]["capacity"] += 1  # parallel edges add capacity
            else:
                g.add_edge(u, w, capacity=1)
    return int(nx.maximum_flow_value(g, ("out", x), ("in", y)))


# ---------------------------------------------------------------------------
# GF(2) cycle space
# ---------------------------------------------------------------------------

def _closed_trace_mask(ball: CayleyBall, v: int, rel: Word,
                       interior_only: bool) -> Optional[int]:
    walk = ball.trace_walk(v, rel)
    if walk is None:
        return None
    verts, eids = walk
    if verts[-1] != v:
        return None
    if interior_only and any(u not in ball.interior for u in verts):
        return None
    mask = 0
    for eid in eids:
        mask ^= 1 << eid
    return mask


def _relator_circuit_masks(ball: CayleyBall, p: Presentation,
                           interior_only: bool) -> List[int]:
    masks = []
    seen = set()
    base = sorted(ball.interior) if interior_only else list(ball.vertices())
    for v in base:
        for rel in p.relators:
            mask = _closed_trace_mask(ball, v, rel, interior_only)
            if mask and mask not in seen:
                seen.add(mask)
                masks.append(mask)
    return masks


def _gf2_reduce(basis: Dict[int, int], mask: int) -> int:
    while mask:
        pivot = mask & -mask
        row = basis.get(pivot)
        if row is None:
            return mask
        mask ^= row
    return 0


def _gf2_insert(basis: Dict[int, int], mask: int) -> bool:
    mask = _gf2_reduce(basis, mask)
    if mask:
        basis[mask & -mask] = mask
        return True
    return False


def cycle_space_span_check(ball: CayleyBall, p: Presentation) -> bool:
    """True iff relator-induced circuits based at interior vertices span
    every fundamental cycle of the interior subgraph."""
    if ball.radius < 2 and len(ball.interior) != ball.n_vertices:
        raise BallTooSmall("radius >= 2 required")
    interior_eids = [i for i, e in enumerate(ball.edges)
                     if e.u in ball.interior and e.v in ball.interior]
    basis: Dict[int, int] = {}
    for mask in _relator_circuit_masks(ball, p, interior_only=True):
        _gf2_insert(basis, mask)

    # spanning forest of the interior subgraph; non-tree edges give
    # fundamental cycles
    parent = {v: v for v in ball.interior}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    tree_adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in ball.interior}
    non_tree = []
    for eid in interior_eids:
        e = ball.edges[eid]
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            non_tree.append(eid)
        else:
            parent[ru] = rv
            tree_adj[e.u].append((e.v, eid))
            tree_adj[e.v].append((e.u, eid))

    for eid in non_tree:
        e = ball.edges[eid]
        prev = {e.u: (None, None)}
        queue = [e.u]
        for v in queue:
            if v == e.v:
                break
            for w, teid in tree_adj[v]:
                if w not in prev:
                    prev[w] = (v, teid)
                    queue.append(w)
        mask = 1 << eid
        v = e.v
        while prev[v][0] is not None:
            v, teid = prev[v]
            mask ^= 1 << teid
        if _gf2_reduce(basis, mask):
            return False
    return True


def two_basis_check(ball: CayleyBall, p: Presentation) -> dict:
    """Count, per interior edge, the distinct relator-induced circuits
    through it; MacLane's criterion needs multiplicity at most 2."""
    masks = _relator_circuit_masks(ball, p, interior_only=False)
    counts: Dict[int, int] = {}
    for i, e in enumerate(ball.edges):
        if e.u in ball.interior and e.v in ball.interior:
            counts[i] = sum(1 for m in masks if m >> i & 1)
    if not counts:
        return {"ok": True, "max_multiplicity": 0, "witness_edge": None,
                "per_colour": {}}
    max_mult = max(counts.values())
    witness = min(i for i, c in counts.items() if c == max_mult)
    per_colour: Dict[str, set] = {}
    for i, c in counts.items():
        per_colour.setdefault(ball.edges[i].colour, set()).add(c)
    return {"ok": max_mult <= 2, "max_multiplicity": max_mult,
            "witness_edge": ball.edges[witness],
            "per_colour": {g: sorted(v) for g, v in per_colour.items()}}


# ---------------------------------------------------------------------------
# the five structural properties of the hinge-free d-spiral family (type V)
# ---------------------------------------------------------------------------

def _relator_cycles(ball: CayleyBall, rel: Word):
    """Interior cycles induced by ``rel``: (vertex tuple, eid frozenset)."""
    cycles = []
    seen = set()
    for v in sorted(ball.interior):
        walk = ball.trace_walk(v, rel)
        if walk is None:
            continue
        verts, eids = walk
        if verts[-1] != v or any(u not in ball.interior for u in verts):
            continue
        key = frozenset(eids)
        if key in seen or len(key) != len(eids):
            continue
        seen.add(key)
        cycles.append((tuple(verts[:-1]), key))
    return cycles


def _reachable(ball, adj, sources, targets, removed_vertices) -> bool:
    seen = set(removed_vertices)
    queue = [s for s in sources if s not in seen]
    seen.update(queue)
    for v in queue:
        if v in targets:
            return True
        for w, _ in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


def nos_properties_check(ball: CayleyBall) -> dict:
    """Verify the five separation properties of the type V graphs on
    interior witnesses; returns per-property pass/fail with witnesses."""
    p = ball.presentation
    rel = next((r for r in p.relators if any(g == "d" for g, _ in r)
                and len(r) > 2), None)
    if rel is None:
        raise InvalidParams("ball does not carry a d-relator")
    if ball.radius < len(rel) // 2 + 2:
        raise BallTooSmall(
            f"radius {ball.radius} < {len(rel) // 2 + 2}: no full relator "
            "cycle with margin fits in the interior")
    adj = _adjacency(ball)
    margin = sound_margin(p)
    deep = set(_deep_vertices(ball, margin))
    deep_eids = [i for i, e in enumerate(ball.edges)
                 if e.u in deep and e.v in deep]
    report: Dict[str, dict] = {}

    # (nosii): no deep 2-edge-cut unless both edges are d edges, and no
    # mixed vertex-plus-edge cut unless the edge is a d edge
    violations = []
    for i, j in itertools.combinations(deep_eids, 2):
        ei, ej = ball.edges[i], ball.edges[j]
        if ei.colour == "d" and ej.colour == "d":
            continue
        if _separates(ball, adj, deep, removed_edges=frozenset((i, j))):
            violations.append(("edges", ei, ej))
    for v in sorted(deep):
        for i in deep_eids:
            e = ball.edges[i]
            if e.colour == "d" or v in (e.u, e.v):
                continue
            if _separates(ball, adj, deep, frozenset((v,)),
                          frozenset((i,))):
                violations.append(("vertex+edge", v, e))
    report["nosii"] = {"ok": not violations, "violations": violations}

    cycles = _relator_cycles(ball, rel)
    sep_pairs = [(c.x, c.y) for c in
                 connectivity_diagnostics(ball, margin)["two_separators"]]

    # (nosiii): separating pairs on a relator cycle sit on its d edges
    violations = []
    for verts, eids in cycles:
        d_touch = set()
        for eid in eids:
            if ball.edges[eid].colour == "d":
                d_touch.update((ball.edges[eid].u, ball.edges[eid].v))
        vset = set(verts)
        for s, t in sep_pairs:
            if s in vset and t in vset and not (s in d_touch and t in d_touch):
                violations.append((s, t, verts))
    report["nosiii"] = {"ok": not violations, "violations": violations}

    # (nosiv): no hinge
    hinges = find_hinges(ball, margin)
    report["nosiv"] = {"ok": not hinges, "violations": hinges}

    # (nosvi): b edges of a relator cycle have a detour avoiding the cycle;
    # only deep b edges are judged, a missing detour nearer the boundary
    # may have been cut off by the truncation
    violations = []
    for verts, eids in cycles:
        vset = set(verts)
        for eid in eids:
            e = ball.edges[eid]
            if e.colour != "b" or e.u not in deep or e.v not in deep:
                continue
            removed = frozenset(vset - {e.u, e.v})
            prev = {e.u}
            queue = [e.u]
            found = False
            for v in queue:
                for w, weid in adj[v]:
                    if weid == eid and v == e.u and w == e.v:
                        continue  # the b edge itself is not a detour
                    if w in removed or w in prev:
                        continue
                    if w == e.v:
                        found = True
                        break
                    prev.add(w)
                    queue.append(w)
                if found:
                    break
            if not found:
                violations.append((e, verts))
    report["nosvi"] = {"ok": not violations, "violations": violations}

    # (nosv): relator cycles sharing an edge stay linked off that edge
    violations = []
    for (va, ea), (vb, eb) in itertools.combinations(cycles, 2):
        shared = ea & eb
        for eid in shared:
            e = ball.edges[eid]
            if e.u not in deep or e.v not in deep:
                continue
            removed = frozenset((e.u, e.v))
            src = [v for v in va if v not in removed]
            dst = {v for v in vb if v not in removed}
            if not _reachable(ball, adj, src, dst, removed):
                violations.append((e, va, vb))
    report["nosv"] = {"ok": not violations, "violations": violations}

    report["ok"] = all(item["ok"] for item in report.values())
    return report


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def diagnostic_report(ball: CayleyBall, bound: Optional[int] = None,
                      margin: int = 1) -> dict:
    """The diagnostic JSON bundle for one ball."""
    p = ball.presentation
    diag = connectivity_diagnostics(ball, margin)
    hinges = find_hinges(ball, margin)
    report = {
        "cutvertex": diag["has_interior_cutvertex"],
        "separators": [c.to_dict() for c in diag["two_separators"]],
        "hinges": [[e.u, e.v, e.colour] for e in hinges],
        "two_basis": {k: v for k, v in two_basis_check(ball, p).items()
                      if k in ("ok", "max_multiplicity")},
        "cycle_space": {"spanned": cycle_space_span_check(ball, p)},
    }
    if len(p.involutions) == 3:
        b = bound if bound is not None else max(2 * ball.radius, 64)
        report["colour_orders"] = [o.to_dict()
                                   for o in colour_pair_orders(ball, b)]
    return report
