"""Pushouts of presentations and the object-level pushout-product check."""
from __future__ import annotations

from ..core import Morphism, Profile, order_key
from ..errors import IncompatibleMaps, NotCofibration, NotSymmetric
from ..functors import OperadFunctor, is_cofibration
from .presentation import ColoredCollection, Presentation, PresentationMap
from .terms import Leaf, Node, Perm, corolla


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller representative wins, so results do not depend on order
            if order_key(rb) < order_key(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self) -> dict:
        return {x: self.find(x) for x in self.parent}


def set_pushout(R, A, B, f: dict, g: dict) -> dict:
    """Pushout of finite sets along ``f: R -> A`` and ``g: R -> B``.

    Elements are tagged ``("A", a)`` / ``("B", b)``; the result maps each
    tagged element to its class representative.
    """
    uf = _UnionFind([("A", a) for a in A] + [("B", b) for b in B])
    for r in R:
        uf.union(("A", f[r]), ("B", g[r]))
    return uf.classes()


def _relabel(t, colors, gens):
    """Rename colors and generators of a term."""
    if isinstance(t, Leaf):
        return Leaf(colors[t.color])
    if isinstance(t, Perm):
        return Perm(t.perm, _relabel(t.term, colors, gens))
    return Node(gens[t.gen], tuple(_relabel(k, colors, gens) for k in t.children))


def pushout(f: PresentationMap, g: PresentationMap):
    """Pushout of ``A <-f- R -g-> B``.

    Colors are the set pushout; generators are the disjoint union of those of
    ``A`` and ``B`` (tagged by side); relations are the images of all three
    relation sets plus ``f(r) = g(r)`` for every generator ``r`` of ``R``.
    Returns the presentation and the two injections.
    """
    if f.source is not g.source and (
        f.source.colors != g.source.colors or f.source.generators != g.source.generators
    ):
        raise IncompatibleMaps("maps do not share a source")
    f.check()
    g.check()
    R, A, B = f.source, f.target, g.target
    if A.symmetric != B.symmetric:
        raise IncompatibleMaps("cannot glue symmetric and non-symmetric presentations")
    cls = set_pushout(R.colors, A.colors, B.colors, f.colors, g.colors)
    ca = {a: cls[("A", a)] for a in A.colors}
    cb = {b: cls[("B", b)] for b in B.colors}

    def retag(side, colors, m):
        return Morphism(
            (side, m.name), Profile(tuple(colors[c] for c in m.inputs), colors[m.output])
        )

    ga = {m: retag("A", ca, m) for m in A.generators}
    gb = {m: retag("B", cb, m) for m in B.generators}
    rels, labels = [], []
    for lhs, rhs in A.relations:
        rels.append((_relabel(lhs, ca, ga), _relabel(rhs, ca, ga)))
        labels.append("A")
    for lhs, rhs in B.relations:
        rels.append((_relabel(lhs, cb, gb), _relabel(rhs, cb, gb)))
        labels.append("B")
    for lhs, rhs in R.relations:
        rels.append((_relabel(f.apply(lhs), ca, ga), _relabel(f.apply(rhs), ca, ga)))
        labels.append("R")
    for r in R.generators:
        rels.append((_relabel(f.generators[r], ca, ga), _relabel(g.generators[r], cb, gb)))
        labels.append("glue")
    po = Presentation(
        ColoredCollection(set(cls.values()), list(ga.values()) + list(gb.values())),
        tuple(rels),
        A.symmetric,
        tuple(labels),
    )
    inj_a = PresentationMap(A, po, ca, {m: corolla(ga[m]) for m in A.generators})
    inj_b = PresentationMap(B, po, cb, {m: corolla(gb[m]) for m in B.generators})
    return po, inj_a, inj_b


def corner_map_objects(F: OperadFunctor, G: OperadFunctor):
    """Object-level pushout ``K`` of the tensor square and the corner map.

    Returns ``(classes, corner)``: ``classes`` sends every tagged element of
    ``ob(P)×ob(Q')`` (tag ``"A"``) and ``ob(Q)×ob(P')`` (tag ``"B"``) to its
    class, ``corner`` sends each class to ``ob(Q)×ob(Q')``.
    """
    P, Q = F.source, F.target
    Pp, Qp = G.source, G.target
    R = [(p, pp) for p in P.colors for pp in Pp.colors]
    A = [(p, qp) for p in P.colors for qp in Qp.colors]
    B = [(q, pp) for q in Q.colors for pp in Pp.colors]
    cls = set_pushout(
        R, A, B,
        {(p, pp): (p, G.obj(pp)) for p, pp in R},
        {(p, pp): (F.obj(p), pp) for p, pp in R},
    )
    corner: dict = {}
    for (side, (x, y)), c in cls.items():
        img = (F.obj(x), y) if side == "A" else (x, G.obj(y))
        if corner.setdefault(c, img) != img:
            raise AssertionError("corner map is not well defined")
    return cls, corner


def corner_map_object_check(F: OperadFunctor, G: OperadFunctor) -> bool:
    """Whether the pushout-product corner map is injective on objects."""
    for H in (F, G):
        if not (H.source.symmetric and H.target.symmetric):
            raise NotSymmetric("the tensor product needs symmetric operads")
        if not is_cofibration(H):
            raise NotCofibration("corner map check needs two cofibrations")
    _, corner = corner_map_objects(F, G)
    return len(set(corner.values())) == len(corner)


def corner_map_essentially_surjective(F: OperadFunctor, G: OperadFunctor) -> bool:
    """Object-level half of the trivial clause.

    Every object of ``ob(Q)×ob(Q')`` outside the image of the corner map must
    be isomorphic, through a factor isomorphism, to one inside it.  For a
    trivial cofibration ``F`` a missed ``(q, q')`` has ``q ≅ F(p)``, and
    ``(F(p), q')`` is hit.
    """
    _, corner = corner_map_objects(F, G)
    hit = set(corner.values())
    Q, Qp = F.target, G.target
    for q in Q.colors:
        for qp in Qp.colors:
            if (q, qp) in hit:
                continue
            reach = any((x, qp) in hit for x in Q.class_of[q]) or any(
                (q, y) in hit for y in Qp.class_of[qp]
            )
            if not reach:
                return False
    return True
