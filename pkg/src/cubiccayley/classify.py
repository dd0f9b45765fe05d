"""Type decisions for presentations and for bare balls.

``classify_presentation`` matches the relator multiset against the nine
catalogue families up to generator renaming, rotation and inversion.
``classify_ball`` works blind: it probes the ball's structure (parallel
edges, colour-pair orders, word closures at the center) and never looks
at the relators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import analyze
from .ball import CayleyBall
from .coset import ball_from_table, enumerate_cosets
from .construct import TYPE_IDS, TypeParams, construct_presentation_ball
from .errors import (BallTooSmall, Inconclusive, InvalidParams, NoSeparatorFound,
                     NotCubic, NotInCatalogue, Overflow)
from .presentation import (GeneratorSymbol, Presentation, Word,
                           relator_multiset_normal_form)

_HINGE = {"I": True, "II": True, "III": False, "IV": False, "V": False,
          "VI": True, "VII": False, "VIII": True, "IX": False}
# 2-coloured cycle attribute of the 3-generator table; 2-generator
# families are out of that table's scope
_TWO_COLOURED = {"IV": True, "V": True, "VI": True, "VII": False,
                 "VIII": False, "IX": True}


@dataclass(frozen=True)
class ClassificationReport:
    type_id: str
    params: Dict[str, int]
    generator_count: int
    a_order: Optional[int]  # None: infinite (or no directed generator)
    hinge: bool
    two_coloured_cycle: Optional[bool]
    vap_free: bool
    colour_spin: Dict[str, str]
    presentation_canonical: str
    kappa_claim: int = 2
    evidence_level: str = "table-lookup"
    renaming: Optional[Dict[str, str]] = None
    evidence: dict = field(default_factory=dict, compare=False)

    @property
    def type_params(self) -> TypeParams:
        return TypeParams(self.type_id, **self.params)

    def to_dict(self) -> dict:
        return {
            "type": self.type_id,
            "params": dict(self.params),
            "flags": {"hinge": self.hinge,
                      "two_coloured": self.two_coloured_cycle,
                      "vap_free": self.vap_free},
            "colour_spin": dict(self.colour_spin),
            "a_order": self.a_order,
            "kappa": {"claim": self.kappa_claim,
                      "evidence": self.evidence_level},
            "presentation_canonical": self.presentation_canonical,
            "renaming": self.renaming,
            "evidence": self.evidence,
        }


def _report(tp: TypeParams, generator_count: int,
            renaming: Optional[Dict[str, str]] = None,
            evidence_level: str = "table-lookup",
            evidence: Optional[dict] = None) -> ClassificationReport:
    from .embed import spin_table, vap_free  # deferred: embed imports construct
    params = {}
    if tp.n is not None:
        params["n"] = tp.n
    if tp.m is not None:
        params["m"] = tp.m
    a_order = 4 if tp.type_id == "III" else None
    return ClassificationReport(
        type_id=tp.type_id,
        params=params,
        generator_count=generator_count,
        a_order=a_order,
        hinge=_HINGE[tp.type_id],
        two_coloured_cycle=_TWO_COLOURED.get(tp.type_id),
        vap_free=vap_free(tp),
        colour_spin=spin_table(tp),
        presentation_canonical=tp.presentation_text(),
        evidence_level=evidence_level,
        renaming=renaming,
        evidence=evidence or {},
    )


# ---------------------------------------------------------------------------
# presentation classification
# ---------------------------------------------------------------------------

def _renamings(p: Presentation):
    """Maps from p's generator names onto the canonical a,b / b,c,d."""
    names = p.generator_names
    inv = p.involutions
    if len(names) == 2:
        a = next(g for g in names if g not in inv)
        b = next(g for g in names if g in inv)
        yield {a: "a", b: "b"}
    else:
        for perm in itertools.permutations(names):
            yield dict(zip(perm, ("b", "c", "d")))


def _rename(p: Presentation, sigma: Dict[str, str]) -> Presentation:
    order = sorted(sigma.values())
    by_new = {sigma[g.name]: g for g in p.generators}
    gens = tuple(GeneratorSymbol(new, by_new[new].involution) for new in order)
    relators = tuple(Word(tuple((sigma[g], s) for g, s in w))
                     for w in p.relators)
    return Presentation(gens, relators)


def _essentials(p: Presentation) -> List[Word]:
    """Relators other than the involution markers g^2."""
    out = []
    for w in p.relators:
        if len(w) == 2 and w.letters[0] == w.letters[1] \
                and w.letters[0][0] in p.involutions:
            continue
        out.append(w)
    return out


def _candidate_params(type_id: str, q: Presentation):
    """Cheap parameter guesses from relator lengths; each guess is
    verified against the canonical presentation afterwards."""
    es = _essentials(q)
    lens = sorted(len(w) for w in es)

    def letters(w):
        return {g for g, _ in w}

    if type_id in ("I", "II", "VIII") and len(es) == 1:
        L = lens[0]
        div = {"I": 2, "II": 4, "VIII": 4}[type_id]
        if L % div == 0:
            yield {"n" if type_id != "VIII" else "m": L // div}
    elif type_id in ("III", "IV") and len(es) == 2:
        key = "n" if type_id == "III" else "m"
        for w in es:
            if len(w) % 3 == 0:
                yield {key: len(w) // 3}
    elif type_id == "V" and len(es) == 2:
        with_d = [w for w in es if "d" in letters(w)]
        without = [w for w in es if "d" not in letters(w)]
        if len(with_d) == 1 and len(without) == 1 \
                and len(without[0]) % 4 == 0 and len(with_d[0]) % 4 == 0:
            yield {"n": len(without[0]) // 4, "m": len(with_d[0]) // 4}
    elif type_id == "VI" and len(es) == 2:
        for w1, w2 in itertools.permutations(es):
            if len(w1) % 2 == 0 and len(w2) % 2 == 0:
                yield {"n": len(w1) // 2, "m": len(w2) // 2}
    elif type_id == "VII" and len(es) == 1:
        w = es[0]
        m = sum(1 for g, _ in w if g == "d")
        if m and len(w) % (2 * m) == 0:
            yield {"n": len(w) // (2 * m) - 1, "m": m}
    elif type_id == "IX" and len(es) == 2:
        for w1, w2 in itertools.permutations(es):
            if len(w2) == 2 and len(w1) % 2 == 0:
                yield {"n": len(w1) // 2}


def _catalogue_hint(p: Presentation) -> str:
    inv = p.involutions
    if len(p.generator_names) == 2:
        for w in _essentials(p):
            gens = {g for g, _ in w}
            if len(gens) == 1 and next(iter(gens)) not in inv and len(w) > 2:
                return (f"case-1 pattern: pure power {w.pretty()} of the "
                        "non-involution generator without the matching "
                        "(a^2 b)^n completion")
        return "2-generator relator multiset matches no catalogue family"
    for w in _essentials(p):
        gens = sorted({g for g, _ in w})
        if len(gens) == 2 and len(w) >= 6 and len(w) % 2 == 0:
            seq = [g for g, _ in w]
            if all(seq[i] != seq[i + 1] for i in range(len(seq) - 1)):
                k = len(w) // 2
                if k % 2 == 1:
                    return (f"case-2 pattern: 2-coloured exponent {k} is odd "
                            "(non-planar for odd exponents)")
    return "3-generator relator multiset matches no catalogue family"


def classify_presentation(p: Presentation) -> ClassificationReport:
    """Match against the nine families up to generator renaming."""
    if not p.cubic_eligible:
        raise NotCubic(
            "need two generators with one involution, or three involutions")
    matches = []
    for sigma in _renamings(p):
        q = _rename(p, sigma)
        nf = relator_multiset_normal_form(q)
        for type_id in TYPE_IDS:
            for guess in _candidate_params(type_id, q):
                try:
                    tp = TypeParams(type_id, **guess)
                except InvalidParams:
                    continue
                if relator_multiset_normal_form(tp.presentation()) == nf:
                    if type_id == "VI" and tp.n > tp.m:
                        # VI is symmetric in (n, m) under swapping c and d
                        continue
                    matches.append((tp, sigma))
    if not matches:
        raise NotInCatalogue(_catalogue_hint(p))
    distinct = {(tp.type_id, tp.n, tp.m) for tp, _ in matches}
    if len(distinct) > 1:
        raise NotInCatalogue(
            f"ambiguous match {sorted(distinct)}; catalogue families are "
            "mutually exclusive, so the input is malformed")
    tp, sigma = matches[0]
    identity = all(k == v for k, v in sigma.items())
    return _report(tp, len(p.generator_names),
                   renaming=None if identity else sigma)


# ---------------------------------------------------------------------------
# blind ball classification
# ---------------------------------------------------------------------------

def _closes(ball: CayleyBall, letters, repeats: int) -> bool:
    v = ball.center
    for _ in range(repeats):
        for letter in letters:
            v = ball.step(v, letter)
            if v is None:
                return False
    return v == ball.center


def _smallest_closure(ball: CayleyBall, letters, lo: int, bound: int):
    for k in range(lo, bound + 1):
        if len(letters) * k > 2 * ball.radius:
            return None
        if _closes(ball, letters, k):
            return k
    return None


def classify_ball(ball: CayleyBall, bound: int = 12) -> ClassificationReport:
    """Infer the type from ball structure alone.

    Probes: parallel edges, a-order, colour-pair orders, and closure of
    candidate polygon words at the center.  The relators of the attached
    presentation are never consulted (they are only used afterwards for
    an agreement cross-check when present).
    """
    if ball.radius < 3 and len(ball.interior) != ball.n_vertices:
        raise Inconclusive("hinge")
    colours = sorted({e.colour for e in ball.edges})
    directed = sorted({e.colour for e in ball.edges if e.directed})
    tp = None
    renaming = None

    if len(colours) == 2 and len(directed) == 1:
        a = directed[0]
        b = next(g for g in colours if g != a)
        a_order = _smallest_closure(ball, [(a, 1)], 2, bound)
        if a_order == 4:
            n = _smallest_closure(ball, [(a, 1), (a, 1), (b, 1)], 2, bound)
            if n is None:
                raise Inconclusive("(a^2 b)-closure")
            tp = TypeParams("III", n=n)
        elif a_order is None:
            n = _smallest_closure(ball, [(a, 1), (b, 1)], 2, bound)
            if n is not None:
                tp = TypeParams("I", n=n)
            else:
                n = _smallest_closure(
                    ball, [(a, 1), (b, 1), (a, -1), (b, 1)], 1, bound)
                if n is None:
                    raise Inconclusive("polygon-closure")
                tp = TypeParams("II", n=n)
        else:
            raise NotInCatalogue(
                f"directed generator of order {a_order} matches no family")
        if (a, b) != ("a", "b"):
            renaming = {a: "a", b: "b"}
    elif len(colours) == 3 and not directed:
        pair_edges = {}
        for e in ball.edges:
            pair_edges.setdefault(frozenset((e.u, e.v)), set()).add(e.colour)
        parallel = sorted({frozenset(cs) for cs in pair_edges.values()
                           if len(cs) > 1})
        if parallel:
            if len(ball.interior) != ball.n_vertices:
                raise Inconclusive("finite-order (ball is truncated but "
                                   "parallel edges demand a finite graph)")
            tp = TypeParams("IX", n=ball.n_vertices // 2)
            # with n = 1 all three colours coincide; any assignment works
            pc = sorted(parallel[0])[:2]
            third = next(g for g in colours if g not in pc)
            renaming = {third: "b", pc[0]: "c", pc[1]: "d"}
        else:
            orders = {
                (g1, g2): _smallest_closure(ball, [(g1, 1), (g2, 1)], 1, bound)
                for g1, g2 in itertools.combinations(colours, 2)}
            finite = {pair: k for pair, k in orders.items() if k is not None}
            if len(finite) == 2:
                shared = set.intersection(*(set(pr) for pr in finite))
                if len(shared) != 1:
                    raise NotInCatalogue(
                        "two finite colour pairs without a shared colour")
                b = shared.pop()
                (p1, k1), (p2, k2) = sorted(
                    finite.items(), key=lambda it: (it[1], it[0]))
                c = next(g for g in p1 if g != b)
                d = next(g for g in p2 if g != b)
                tp = TypeParams("VI", n=k1, m=k2)
                renaming = {b: "b", c: "c", d: "d"}
            elif len(finite) == 1:
                (pair, k), = finite.items()
                c1, c2 = sorted(pair)
                d = next(g for g in colours if g not in pair)
                if k == 2:
                    m = None
                    pick = None
                    for b, c in ((c1, c2), (c2, c1)):
                        m = _smallest_closure(
                            ball, [(b, 1), (c, 1), (d, 1)], 2, bound)
                        if m is not None:
                            pick = (b, c)
                            break
                    if m is None:
                        raise Inconclusive("(bcd)-closure")
                    tp = TypeParams("IV", m=m)
                    renaming = {pick[0]: "b", pick[1]: "c", d: "d"}
                elif k % 2 == 0:
                    m = None
                    pick = None
                    for c, b in ((c1, c2), (c2, c1)):
                        m = _smallest_closure(
                            ball, [(c, 1), (b, 1), (c, 1), (d, 1)], 2, bound)
                        if m is not None:
                            pick = (b, c)
                            break
                    if m is None:
                        raise Inconclusive("(cbcd)-closure")
                    tp = TypeParams("V", n=k // 2, m=m)
                    renaming = {pick[0]: "b", pick[1]: "c", d: "d"}
                else:
                    raise NotInCatalogue(
                        f"odd 2-coloured order {k}: case-2 pattern, "
                        "non-planar for odd exponents")
            elif not finite:
                tp, renaming = _classify_no_finite_pair(ball, colours, bound)
            else:
                raise NotInCatalogue("three finite colour pairs")
    else:
        raise NotCubic("colour scheme is not a cubic Cayley pattern")

    identity = renaming is None or all(k == v for k, v in renaming.items())
    evidence, level = _ball_evidence(ball)
    report = _report(tp, 2 if len(colours) == 2 else 3,
                     renaming=None if identity else renaming,
                     evidence_level=level, evidence=evidence)
    if ball.presentation is not None:
        try:
            from_pres = classify_presentation(ball.presentation)
            report.evidence["presentation_agrees"] = (
                from_pres.type_id == report.type_id and
                from_pres.params == report.params)
        except (NotCubic, NotInCatalogue):
            report.evidence["presentation_agrees"] = None
    return report


def _classify_no_finite_pair(ball, colours, bound):
    # VIII first: its polygon is the n=1 instance of the VII pattern
    for b, c, d in itertools.permutations(colours):
        m = _smallest_closure(ball, [(b, 1), (c, 1), (b, 1), (d, 1)], 1, bound)
        if m is not None:
            return TypeParams("VIII", m=m), {b: "b", c: "c", d: "d"}
    for b, c, d in itertools.permutations(colours):
        for n in range(2, bound + 1):
            word = [(b, 1)] + [(c, 1), (b, 1)] * n + [(d, 1)]
            if len(word) * 2 > 2 * ball.radius:
                break
            m = _smallest_closure(ball, word, 2, bound)
            if m is not None:
                return TypeParams("VII", n=n, m=m), {b: "b", c: "c", d: "d"}
    raise Inconclusive("polygon-closure (no candidate word closes in the ball)")


def _ball_evidence(ball: CayleyBall):
    """Separator and hinge evidence at the soundest margin the radius
    affords; the evidence level records whether a genuine separator was
    ball-verified."""
    evidence: dict = {}
    level = "table-lookup"
    if ball.presentation is None:
        return evidence, level
    margin = analyze.sound_margin(ball.presentation)
    try:
        cert = analyze.shortest_separating_path(ball, margin, center_only=True)
        evidence["separator"] = cert.to_dict()
        level = "ball-verified"
        hinges = analyze.find_hinges(ball, margin, center_only=True)
        evidence["hinge_edges"] = [[e.u, e.v, e.colour] for e in hinges]
    except (BallTooSmall, NoSeparatorFound) as exc:
        evidence["separator"] = f"inconclusive (truncation): {exc}"
    if len(ball.presentation.involutions) == 3:
        evidence["colour_orders"] = [
            o.to_dict() for o in
            analyze.colour_pair_orders(ball, max(2 * ball.radius, 48))]
    return evidence, level


# ---------------------------------------------------------------------------
# screens and finite reports
# ---------------------------------------------------------------------------

def nonplanar_screen(p: Presentation, cap: int = 20000) -> dict:
    """Syntactic non-planarity screen for cubic presentations outside the
    catalogue, with ball-level planarity evidence when obtainable."""
    from .embed import planarity_check, suppress_degree_two, Planar
    if not p.cubic_eligible:
        raise NotCubic("screen needs a cubic-eligible presentation")
    try:
        hit = classify_presentation(p)
        return {"in_catalogue": True, "type": hit.type_id, "case": None}
    except NotInCatalogue as exc:
        hint = str(exc)
    case = 1 if "case-1" in hint else 2 if "case-2" in hint else None
    report = {"in_catalogue": False, "case": case, "hint": hint}
    try:
        ball = construct_presentation_ball(p, radius=4, cap=cap)
        verdict = planarity_check(ball)
        report["ball_planarity"] = ("planar" if isinstance(verdict, Planar)
                                    else verdict.kind)
        import networkx as nx
        suppressed = suppress_degree_two(ball)
        ok, _ = nx.check_planarity(nx.Graph(suppressed))
        report["suppressed_planarity"] = "planar" if ok else "non-planar"
    except Exception as exc:  # evidence is optional, never fatal
        report["ball_planarity"] = f"unavailable: {exc}"
    return report


def finite_case_report(p: Presentation, cap: int = 100000) -> dict:
    """Order, parallel-edge and connectivity facts for a finite group."""
    table = enumerate_cosets(p, cap)
    if not table.complete:
        raise Overflow(f"enumeration did not close within {cap} cosets")
    order = len(table.live_cosets())
    ball = ball_from_table(table, max(order, 1))
    pair_seen = set()
    parallel = False
    for e in ball.edges:
        key = frozenset((e.u, e.v))
        if key in pair_seen:
            parallel = True
        pair_seen.add(key)
    diag = analyze.connectivity_diagnostics(ball, margin=0) \
        if order >= 4 else {"has_interior_cutvertex": False,
                            "two_separators": []}
    report = {
        "order": order,
        "parallel_edges": parallel,
        "cutvertex": diag["has_interior_cutvertex"],
        "two_separator": bool(diag["two_separators"]),
        "three_connected_evidence": not diag["two_separators"]
        and not diag["has_interior_cutvertex"],
    }
    try:
        hit = classify_presentation(p)
        report["type"] = hit.type_id
        report["params"] = hit.params
    except (NotCubic, NotInCatalogue):
        report["type"] = None
    return report
