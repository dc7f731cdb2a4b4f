"""Finite categories, the folk model structure on them, and the comparison
with unary operads (``j_lower`` / ``j_upper`` and the slice over ``*``)."""
from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Hashable, NamedTuple

from .core import FiniteOperad, Morphism, Profile, Violation, ValidationReport, order_key
from .errors import InvalidFunctor, NotOverStar
from . import functors as fn


class Arrow(NamedTuple):
    name: Hashable
    source: Hashable
    target: Hashable

    def __str__(self):
        return f"{self.name}:{self.source}->{self.target}"


class FiniteCategory:
    """Objects, arrows grouped by ``(source, target)``, identities and a
    binary composition table ``(g, f) -> g∘f``."""

    def __init__(self, objects, arrows, identities, composition):
        self.objects = tuple(sorted(set(objects), key=order_key))
        self.arrows = tuple(sorted(set(arrows), key=order_key))
        self.identities = dict(identities)
        self.composition = dict(composition)

    @classmethod
    def from_rules(cls, objects, arrows, identities, compose):
        arrows = list(arrows) + [e for e in identities.values() if e not in arrows]
        out = {}
        for g in arrows:
            for f in arrows:
                if f.target == g.source:
                    out[(g, f)] = compose(g, f)
        return cls(objects, arrows, identities, out)

    @cached_property
    def hom(self) -> dict:
        out: dict = {}
        for a in self.arrows:
            out.setdefault((a.source, a.target), []).append(a)
        return {k: tuple(v) for k, v in out.items()}

    def homset(self, a, b) -> tuple:
        return self.hom.get((a, b), ())

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        return self.composition[(g, f)]

    @cached_property
    def _key(self):
        return (
            self.objects,
            self.arrows,
            frozenset(self.identities.items()),
            frozenset(self.composition.items()),
        )

    def __eq__(self, other):
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash((self.objects, self.arrows))

    def __repr__(self):
        return f"<FiniteCategory objects={len(self.objects)} arrows={len(self.arrows)}>"

    @cached_property
    def inverse_of(self) -> dict:
        out = {}
        for f in self.arrows:
            for g in self.homset(f.target, f.source):
                if (
                    self.composition.get((g, f)) == self.identities[f.source]
                    and self.composition.get((f, g)) == self.identities[f.target]
                ):
                    out[f] = g
                    break
        return out

    def isos_out_of(self, a) -> list:
        return [f for f in self.arrows if f.source == a and f in self.inverse_of]

    @cached_property
    def iso_classes(self) -> tuple:
        parent = {o: o for o in self.objects}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for f in self.inverse_of:
            a, b = find(f.source), find(f.target)
            if a != b:
                parent[b] = a
        groups: dict = {}
        for o in self.objects:
            groups.setdefault(find(o), []).append(o)
        return tuple(sorted((tuple(g) for g in groups.values()), key=order_key))

    def validate(self) -> ValidationReport:
        out = []
        objs = set(self.objects)
        arrows = set(self.arrows)
        for a in self.arrows:
            if a.source not in objs or a.target not in objs:
                out.append(Violation("arrow-objects", (a,)))
        for o in self.objects:
            e = self.identities.get(o)
            if e is None or e not in arrows or e.source != o or e.target != o:
                out.append(Violation("identity", (o,)))
        if out:
            return ValidationReport(tuple(out))
        for g in self.arrows:
            for f in self.homs_into(g.source):
                h = self.composition.get((g, f))
                if h is None:
                    out.append(Violation("totality", (g, f)))
                elif h not in arrows or (h.source, h.target) != (f.source, g.target):
                    out.append(Violation("closure", (g, f, h)))
        if out:
            return ValidationReport(tuple(out))
        for f in self.arrows:
            if self.composition[(self.identities[f.target], f)] != f:
                out.append(Violation("left-unit", (f,)))
            if self.composition[(f, self.identities[f.source])] != f:
                out.append(Violation("right-unit", (f,)))
        for h in self.arrows:
            for g in self.homs_into(h.source):
                for f in self.homs_into(g.source):
                    c = self.composition
                    if c[(c[(h, g)], f)] != c[(h, c[(g, f)])]:
                        out.append(Violation("associativity", (h, g, f)))
        return ValidationReport(tuple(out))

    def homs_into(self, b) -> list:
        return [a for a in self.arrows if a.target == b]


class CategoryFunctor:
    def __init__(self, source: FiniteCategory, target: FiniteCategory, object_map, arrow_map):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.arrow_map = dict(arrow_map)

    def obj(self, o):
        return self.object_map[o]

    def __call__(self, a):
        return self.arrow_map[a]

    def __eq__(self, other):
        if not isinstance(other, CategoryFunctor):
            return NotImplemented
        return (self.object_map, self.arrow_map, self.source, self.target) == (
            other.object_map, other.arrow_map, other.source, other.target)

    def __hash__(self):
        return hash(frozenset(self.object_map.items()))

    def validate(self) -> ValidationReport:
        C, D = self.source, self.target
        out = []
        for o in C.objects:
            if self.object_map.get(o) not in D.objects:
                out.append(Violation("object-map", (o,)))
        if out:
            return ValidationReport(tuple(out))
        darrows = set(D.arrows)
        for a in C.arrows:
            b = self.arrow_map.get(a)
            if b not in darrows or (b.source, b.target) != (self.obj(a.source), self.obj(a.target)):
                out.append(Violation("arrow-map", (a, b)))
        if out:
            return ValidationReport(tuple(out))
        for o in C.objects:
            if self(C.identities[o]) != D.identities[self.obj(o)]:
                out.append(Violation("identity", (o,)))
        for (g, f), h in C.composition.items():
            if D.composition[(self(g), self(f))] != self(h):
                out.append(Violation("composition", (g, f)))
        return ValidationReport(tuple(out))


# Rezk classes on categories; deliberately independent of the operad code.


def cat_is_cofibration(F: CategoryFunctor) -> bool:
    return len(set(F.object_map.values())) == len(F.object_map)


def cat_is_fibration(F: CategoryFunctor) -> bool:
    for c in F.source.objects:
        lifts = {F(f) for f in F.source.isos_out_of(c)}
        if any(g not in lifts for g in F.target.isos_out_of(F.obj(c))):
            return False
    return True


def cat_is_fully_faithful(F: CategoryFunctor) -> bool:
    C, D = F.source, F.target
    for a, b in product(C.objects, repeat=2):
        src = C.homset(a, b)
        tgt = D.homset(F.obj(a), F.obj(b))
        if len(src) != len(tgt) or {F(f) for f in src} != set(tgt):
            return False
    return True


def cat_is_essentially_surjective(F: CategoryFunctor) -> bool:
    img = set(F.object_map.values())
    return all(img.intersection(cls) for cls in F.target.iso_classes)


def cat_is_equivalence(F: CategoryFunctor) -> bool:
    return cat_is_fully_faithful(F) and cat_is_essentially_surjective(F)


def cat_classify(F: CategoryFunctor) -> dict:
    return {
        "cofibration": cat_is_cofibration(F),
        "fibration": cat_is_fibration(F),
        "weak_equivalence": cat_is_equivalence(F),
    }


def is_isomorphism(F: CategoryFunctor) -> bool:
    return (
        F.validate().ok
        and len(F.source.objects) == len(F.target.objects)
        and set(F.object_map.values()) == set(F.target.objects)
        and len(F.source.arrows) == len(F.target.arrows)
        and set(F.arrow_map.values()) == set(F.target.arrows)
    )


# small categories ------------------------------------------------------------


def thin_category(objects, named: dict) -> FiniteCategory:
    """Category with at most one arrow per ordered pair; ``named`` maps
    ``(a, b)`` to an arrow name and must be transitively closed."""
    ids = {o: Arrow("id", o, o) for o in objects}
    unique = {(a, b): Arrow(n, a, b) for (a, b), n in named.items()}
    for o, e in ids.items():
        unique.setdefault((o, o), e)

    def comp(g, f):
        return unique.get((f.source, g.target))

    return FiniteCategory.from_rules(objects, unique.values(), ids, comp)


def terminal_category() -> FiniteCategory:
    return thin_category(["pt"], {})


def walking_arrow() -> FiniteCategory:
    return thin_category(["0", "1"], {("0", "1"): "f"})


def walking_iso_category() -> FiniteCategory:
    return thin_category(["a", "b"], {("a", "b"): "u", ("b", "a"): "u_inv"})


def monoid_category(elements, table, obj="pt") -> FiniteCategory:
    """One-object category from a monoid; ``elements[0]`` is the unit."""
    arrows = {x: Arrow(x, obj, obj) for x in elements}
    ids = {obj: arrows[elements[0]]}
    return FiniteCategory.from_rules(
        [obj], arrows.values(), ids, lambda g, f: arrows[table[(g.name, f.name)]]
    )


def product_category(C: FiniteCategory, D: FiniteCategory) -> FiniteCategory:
    objs = [(a, b) for a in C.objects for b in D.objects]
    arrows = {}
    for f in C.arrows:
        for g in D.arrows:
            arrows[(f, g)] = Arrow((f.name, g.name), (f.source, g.source), (f.target, g.target))
    ids = {(a, b): arrows[(C.identities[a], D.identities[b])] for a, b in objs}
    back = {v: k for k, v in arrows.items()}

    def comp(h2, h1):
        (f2, g2), (f1, g1) = back[h2], back[h1]
        return arrows[(C.compose(f2, f1), D.compose(g2, g1))]

    return FiniteCategory.from_rules(objs, arrows.values(), ids, comp)


# j_lower / j_upper -------------------------------------------------------------


def j_lower(C: FiniteCategory, symmetric: bool = False) -> FiniteOperad:
    """The operad with only unary morphisms, copying ``C``."""
    m = {a: Morphism(a.name, Profile((a.source,), a.target)) for a in C.arrows}
    homs: dict = {}
    for a, x in m.items():
        homs.setdefault(x.profile, []).append(x)
    ids = {o: m[e] for o, e in C.identities.items()}
    comp = {(m[g], (m[f],)): m[h] for (g, f), h in C.composition.items()}
    return FiniteOperad(C.objects, homs, ids, comp, symmetric=symmetric)


def j_upper(P: FiniteOperad) -> FiniteCategory:
    """The underlying category: the unary part of ``P``."""
    arrows = {m: Arrow(m.name, m.inputs[0], m.output) for m in P.morphisms if m.arity == 1}
    ids = {c: arrows[e] for c, e in P.identities.items()}
    comp = {}
    for (outer, inners), r in P.composition.items():
        if outer.arity == 1 and inners[0].arity == 1:
            comp[(arrows[outer], arrows[inners[0]])] = arrows[r]
    return FiniteCategory(P.colors, arrows.values(), ids, comp)


def j_upper_functor(F: fn.OperadFunctor) -> CategoryFunctor:
    C, D = j_upper(F.source), j_upper(F.target)

    def arr(m):
        return Arrow(m.name, m.inputs[0], m.output)

    return CategoryFunctor(
        C, D, F.object_map, {arr(m): arr(F(m)) for m in F.source.morphisms if m.arity == 1}
    )


def j_lower_functor(G: CategoryFunctor, symmetric: bool = False) -> fn.OperadFunctor:
    P, Q = j_lower(G.source, symmetric), j_lower(G.target, symmetric)

    def mor(a):
        return Morphism(a.name, Profile((a.source,), a.target))

    return fn.OperadFunctor(P, Q, G.object_map, {mor(a): mor(G(a)) for a in G.source.arrows})


def preserves_classes(F) -> dict:
    """Compare class membership of a functor and its image across j*/j!.

    For an operad functor the comparison is against ``j_upper(F)``; for a
    category functor, against ``j_lower(F)``.  Each class reports both
    memberships plus whether membership is preserved (left implies right)
    and reflected (right implies left).
    """
    if isinstance(F, fn.OperadFunctor):
        left = {
            "cofibration": fn.is_cofibration(F),
            "fibration": fn.is_fibration(F),
            "weak_equivalence": fn.is_weak_equivalence(F),
        }
        right = cat_classify(j_upper_functor(F))
    else:
        left = cat_classify(F)
        G = j_lower_functor(F)
        right = {
            "cofibration": fn.is_cofibration(G),
            "fibration": fn.is_fibration(G),
            "weak_equivalence": fn.is_weak_equivalence(G),
        }
    return {
        k: {
            "source_level": left[k],
            "image_level": right[k],
            "preserved": (not left[k]) or right[k],
            "reflected": (not right[k]) or left[k],
        }
        for k in left
    }


# slice over * ------------------------------------------------------------------


def _is_star(P: FiniteOperad) -> bool:
    return len(P.colors) == 1 and len(P.morphisms) == 1


def slice_to_cat(F: fn.OperadFunctor) -> FiniteCategory:
    """An object of ``Ope/*`` as a category: the source's unary part."""
    if not _is_star(F.target):
        raise InvalidFunctor("slice_to_cat needs a functor into the one-morphism operad")
    bad = [m for m in F.source.morphisms if m.arity != 1]
    if bad:
        raise NotOverStar(f"{bad[0]} has arity {bad[0].arity}; a functor to * preserves arities")
    fn.check_functor(F)
    return j_upper(F.source)


def slice_from_cat(C: FiniteCategory, symmetric: bool = False) -> fn.OperadFunctor:
    from .generators import star  # local: generators imports functors

    P, S = j_lower(C, symmetric), star(symmetric)
    (pt,) = S.colors
    e = S.identity(pt)
    return fn.OperadFunctor(P, S, {c: pt for c in P.colors}, {m: e for m in P.morphisms})
