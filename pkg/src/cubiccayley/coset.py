"""Todd-Coxeter coset enumeration with a coset cap.

A deliberately plain HLT-style enumerator: scan-and-fill over all relators,
a deduction-free fixpoint loop, and textbook coincidence merging via
union-find.  Every table entry is a consequence of a relator trace or
involution symmetry, so a truncated (overflowed) table is still sound and
can be cut into a ball around the identity coset.

The cap bounds the number of cosets ever created (live or dead).  Hitting
it is reported as ``complete = False`` on the returned table, not as an
error: the partial table is a legitimate result.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, List, Optional, Tuple

from .ball import CayleyBall, make_ball
from .errors import OracleInconclusive, UndefinedInterior
from .presentation import Presentation, Word

Column = Tuple[str, int]  # (generator, +1/-1); involutions use +1 only


class CosetTable:
    """Partial map (coset, signed generator) -> coset, closed under inverse
    symmetry, plus union-find bookkeeping for coincidences."""

    def __init__(self, presentation: Presentation, max_cosets: int):
        self.presentation = presentation
        self.max_cosets = max_cosets
        inv = presentation.involutions
        self.columns: List[Column] = []
        for g in presentation.generator_names:
            self.columns.append((g, 1))
            if g not in inv:
                self.columns.append((g, -1))
        self._inv_col = {}
        for g in presentation.generator_names:
            if g in inv:
                self._inv_col[(g, 1)] = (g, 1)
            else:
                self._inv_col[(g, 1)] = (g, -1)
                self._inv_col[(g, -1)] = (g, 1)
        self.rows: List[Dict[Column, int]] = [dict()]
        self.parent: List[int] = [0]
        self.ops = 0
        self.complete = False
        self.overflowed = False
        self._relator_cols = [
            [self.column(letter) for letter in rel]
            for rel in presentation.relators]

    def column(self, letter) -> Column:
        g, s = letter
        if g in self.presentation.involutions:
            return (g, 1)
        return (g, s)

    def inv_column(self, col: Column) -> Column:
        return self._inv_col[col]

    # -- union-find --------------------------------------------------------

    def rep(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def is_live(self, a: int) -> bool:
        return self.parent[a] == a

    def live_cosets(self) -> List[int]:
        return [i for i in range(len(self.rows)) if self.parent[i] == i]

    # -- elementary operations --------------------------------------------

    def get(self, a: int, col: Column) -> Optional[int]:
        hit = self.rows[a].get(col)
        return self.rep(hit) if hit is not None else None

    def _set(self, a: int, col: Column, b: int):
        self.ops += 1
        self.rows[a][col] = b
        self.rows[b][self.inv_column(col)] = a

    def define(self, a: int, col: Column) -> Optional[int]:
        if len(self.rows) >= self.max_cosets:
            self.overflowed = True
            return None
        b = len(self.rows)
        self.rows.append(dict())
        self.parent.append(b)
        self._set(a, col, b)
        return b

    # -- coincidence handling ---------------------------------------------

    def _merge(self, a: int, b: int, queue: deque):
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if b < a:
            a, b = b, a
        self.ops += 1
        self.parent[b] = a
        queue.append(b)

    def coincidence(self, a: int, b: int):
        queue: deque = deque()
        self._merge(a, b, queue)
        while queue:
            dead = queue.popleft()
            row, self.rows[dead] = self.rows[dead], dict()
            for col, delta in row.items():
                # drop the back-reference before re-homing the entry
                back = self.inv_column(col)
                if self.rows[delta].get(back) == dead:
                    del self.rows[delta][back]
                mu, nu = self.rep(dead), self.rep(delta)
                existing = self.get(mu, col)
                if existing is not None:
                    self._merge(nu, existing, queue)
                    continue
                existing_back = self.get(nu, back)
                if existing_back is not None:
                    self._merge(mu, existing_back, queue)
                    continue
                self._set(mu, col, nu)

    # -- scanning ----------------------------------------------------------

    def scan(self, alpha: int, cols: List[Column], fill: bool):
        f, i = alpha, 0
        b, j = alpha, len(cols) - 1
        while True:
            while i <= j:
                nxt = self.get(f, cols[i])
                if nxt is None:
                    break
                f, i = nxt, i + 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                prv = self.get(b, self.inv_column(cols[j]))
                if prv is None:
                    break
                b, j = prv, j - 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                self._set(f, cols[i], b)
                return
            if not fill:
                return
            made = self.define(f, cols[i])
            if made is None:
                return  # cap hit; leave the gap


def enumerate_cosets(p: Presentation, max_cosets: int) -> CosetTable:
    """Run the enumeration; ``table.complete`` tells whether it closed.

    An overflowed table is sound but partial (``complete`` False).
    """
    table = CosetTable(p, max_cosets)
    idx = 0
    while idx < len(table.rows):
        alpha = idx
        idx += 1
        if not table.is_live(alpha):
            continue
        for cols in table._relator_cols:
            if not table.is_live(alpha):
                break
            table.scan(table.rep(alpha), cols, fill=True)
        if not table.is_live(alpha):
            continue
        for col in table.columns:
            if table.get(table.rep(alpha), col) is None:
                table.define(table.rep(alpha), col)

    if not table.overflowed:
        # fixpoint pass: coincidences may have opened rescans
        changed = True
        while changed:
            before = table.ops
            for alpha in table.live_cosets():
                if not table.is_live(alpha):
                    continue
                for cols in table._relator_cols:
                    table.scan(table.rep(alpha), cols, fill=True)
            if table.overflowed:
                break
            changed = table.ops != before
        if not table.overflowed:
            table.complete = all(
                table.get(a, col) is not None
                for a in table.live_cosets() for col in table.columns)
    return table


def _ball_distances(table: CosetTable, radius: int) -> Dict[int, int]:
    root = table.rep(0)
    dist = {root: 0}
    queue = [root]
    for v in queue:
        if dist[v] >= radius:
            continue
        for col in table.columns:
            w = table.get(v, col)
            if w is not None and w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def complete_ball_region(table: CosetTable, radius: int, hard_cap: int):
    """Extend a truncated table until every coset within ``radius`` of the
    identity coset has a full row and all relator scans there are closed.

    The plain HLT loop fills rows in definition order, which wanders far from
    the identity; a capped run can leave gaps right next to it.  This pass
    is the same sound machinery (definitions plus relator scans) restricted
    to the ball.  Raises OracleInconclusive if ``hard_cap`` is reached.
    """
    table.max_cosets = max(table.max_cosets, hard_cap)
    while True:
        dist = _ball_distances(table, radius)
        todo = [a for a in dist
                if any(table.get(table.rep(a), col) is None
                       for col in table.columns)]
        if not todo:
            return
        for a in todo:
            for col in table.columns:
                alpha = table.rep(a)
                if table.get(alpha, col) is None:
                    if table.define(alpha, col) is None:
                        raise OracleInconclusive(
                            "coset cap exhausted while completing the ball")
        while True:
            before = table.ops
            for a in list(dist):
                if not table.is_live(a):
                    continue
                for cols in table._relator_cols:
                    table.scan(table.rep(a), cols, fill=True)
            if table.ops == before:
                break


def ball_from_table(table: CosetTable, radius: int,
                    clamp: bool = True) -> CayleyBall:
    """Cut the radius-r ball around the identity coset out of the table.

    Raises UndefinedInterior if a vertex within radius-1 is missing a
    generator image (the table cannot certify the requested radius).
    For complete tables the radius is clamped to the eccentricity of the
    identity coset.
    """
    p = table.presentation
    root = table.rep(0)
    dist = {root: 0}
    queue = [root]
    for v in queue:
        if dist[v] >= radius:
            continue
        for col in table.columns:
            w = table.get(v, col)
            if w is None:
                if dist[v] <= radius - 1:
                    raise UndefinedInterior(
                        f"coset at distance {dist[v]} lacks image under {col}")
                continue
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)

    if table.complete and clamp:
        radius = min(radius, max(dist.values(), default=0))

    inv = p.involutions
    raw_edges = []
    for v in dist:
        for g in p.generator_names:
            w = table.get(v, (g, 1))
            if w is None or w not in dist:
                continue
            if g in inv:
                if (v < w) or (v == w):
                    raw_edges.append((v, w, g, False))
            else:
                raw_edges.append((v, w, g, True))
    ball = make_ball(p, root, raw_edges, radius)
    if table.complete:
        # whole graph: no truncation boundary
        ball.interior = frozenset(ball.vertices())
    return ball
