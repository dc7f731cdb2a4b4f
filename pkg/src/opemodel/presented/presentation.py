"""Presentations by generators and relations, their models and maps."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from .. import perms
from ..core import FiniteOperad, Morphism, Profile, apply_symmetry, compose, order_key
from ..errors import ColorMismatch, IncompatibleMaps, ModelError, OperadError
from .terms import (
    Leaf,
    Node,
    Perm,
    TreeTerm,
    canonical,
    corolla,
    from_normal_form,
    generators_of,
    graft_nf,
    leaf_count,
    normal_form,
    planar_leaves,
    profile,
    root,
)


@dataclass(frozen=True)
class ColoredCollection:
    colors: tuple
    generators: tuple

    def __post_init__(self):
        cs = tuple(sorted(set(self.colors), key=order_key))
        gs = tuple(sorted(set(self.generators), key=order_key))
        object.__setattr__(self, "colors", cs)
        object.__setattr__(self, "generators", gs)
        known = set(cs)
        for g in gs:
            for c in (*g.inputs, g.output):
                if c not in known:
                    raise ColorMismatch(f"generator {g} uses undeclared color {c!r}")


@dataclass(frozen=True, eq=False)
class Presentation:
    """Colored generators plus relations, each a pair of terms with the same
    profile.  ``labels`` optionally tags every relation (e.g. its BV type)."""

    collection: ColoredCollection
    relations: tuple
    symmetric: bool = True
    labels: tuple = ()

    def __post_init__(self):
        rels = []
        gens = set(self.collection.generators)
        colors = set(self.collection.colors)
        for lhs, rhs in self.relations:
            lhs, rhs = canonical(lhs), canonical(rhs)
            if profile(lhs) != profile(rhs):
                raise ColorMismatch(
                    f"relation sides differ in profile: {profile(lhs)} vs {profile(rhs)}"
                )
            for side in (lhs, rhs):
                unknown = generators_of(side) - gens
                if unknown:
                    raise ColorMismatch(f"relation uses unknown generator {sorted(unknown, key=order_key)[0]}")
                if root(side) not in colors:
                    raise ColorMismatch(f"relation rooted at unknown color {root(side)!r}")
                if not self.symmetric and isinstance(side, Perm):
                    raise ColorMismatch("permutations in a non-symmetric presentation")
            rels.append((lhs, rhs))
        object.__setattr__(self, "relations", tuple(rels))
        if self.labels and len(self.labels) != len(rels):
            raise ValueError("labels must match relations one to one")

    @property
    def colors(self) -> tuple:
        return self.collection.colors

    @property
    def generators(self) -> tuple:
        return self.collection.generators

    def relations_labelled(self, label) -> list:
        return [r for r, l in zip(self.relations, self.labels) if l == label]

    @cached_property
    def rules(self):
        from .rewrite import build_rules

        return build_rules(self)


@dataclass(frozen=True, eq=False)
class Model:
    """An interpretation of a presentation's generators in a finite operad.

    Call :meth:`check` to confirm every relation holds; a checked model gives
    an operad map out of the presented operad, so it separates terms.
    """

    operad: FiniteOperad
    colors: dict
    generators: dict

    def evaluate(self, t: TreeTerm) -> Morphism:
        p, body = normal_form(t)

        def go(x):
            if isinstance(x, Leaf):
                return self.operad.identity(self.colors[x.color])
            return compose(self.operad, self.generators[x.gen], [go(k) for k in x.children])

        m = go(body)
        if not perms.is_identity(p):
            m = apply_symmetry(self.operad, m, p)
        return m

    def check(self, pres: Presentation) -> "Model":
        for g in pres.generators:
            img = self.generators.get(g)
            want = Profile(tuple(self.colors[c] for c in g.inputs), self.colors[g.output])
            if img is None or img.profile != want:
                raise ModelError(f"generator {g} is not sent to a morphism of profile {want}")
        for lhs, rhs in pres.relations:
            if self.evaluate(lhs) != self.evaluate(rhs):
                raise ModelError(f"relation {lhs} = {rhs} fails in the model")
        return self


@dataclass(frozen=True, eq=False)
class PresentationMap:
    """Colors to colors and generators to terms of the target."""

    source: Presentation
    target: Presentation
    colors: dict
    generators: dict

    def apply(self, t: TreeTerm) -> TreeTerm:
        return from_normal_form(self.apply_nf(normal_form(t)))

    def apply_nf(self, nf):
        p, body = nf

        def go(x):
            if isinstance(x, Leaf):
                return (0,), Leaf(self.colors[x.color])
            return graft_nf(normal_form(self.generators[x.gen]), [go(k) for k in x.children])

        q, out = go(body)
        return perms.compose(q, p), out

    def check(self) -> "PresentationMap":
        tcolors = set(self.target.colors)
        tgens = set(self.target.generators)
        for c in self.source.colors:
            if self.colors.get(c) not in tcolors:
                raise IncompatibleMaps(f"color {c!r} has no image in the target")
        for g in self.source.generators:
            img = self.generators.get(g)
            if img is None:
                raise IncompatibleMaps(f"generator {g} has no image")
            want = Profile(tuple(self.colors[c] for c in g.inputs), self.colors[g.output])
            if profile(img) != want:
                raise IncompatibleMaps(f"image of {g} has profile {profile(img)}, expected {want}")
            if generators_of(img) - tgens:
                raise IncompatibleMaps(f"image of {g} uses generators outside the target")
        return self


def presentation_of(P: FiniteOperad) -> Presentation:
    """Every morphism is a generator; composition and symmetry tables become
    relations, identities are equated with bare leaves."""
    gens = P.morphisms
    rels, labels = [], []
    for c in P.colors:
        rels.append((corolla(P.identity(c)), Leaf(c)))
        labels.append("unit")
    for (outer, inners), r in P.composition.items():
        lhs = Node(outer, tuple(corolla(m) for m in inners))
        rels.append((lhs, corolla(r)))
        labels.append("composition")
    for (m, i), r in P.symmetry.items():
        rels.append((Perm(perms.transposition(m.arity, i), corolla(m)), corolla(r)))
        labels.append("symmetry")
    return Presentation(ColoredCollection(P.colors, gens), tuple(rels), P.symmetric, tuple(labels))


def tautological_model(P: FiniteOperad) -> Model:
    return Model(P, {c: c for c in P.colors}, {m: m for m in P.morphisms})


# free operads on finite acyclic collections --------------------------------------


def _planar_trees(collection: ColoredCollection, max_size: int) -> dict:
    """Planar trees by root color, up to ``max_size`` nodes."""
    by_root = {c: [Leaf(c)] for c in collection.colors}
    sizes = {Leaf(c): 0 for c in collection.colors}
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        if rounds > max_size + 1:
            break
        for g in collection.generators:
            pools = [list(by_root[c]) for c in g.inputs]
            for kids in product(*pools):
                s = 1 + sum(sizes[k] for k in kids)
                if s > max_size:
                    continue
                t = Node(g, kids)
                if t not in sizes:
                    sizes[t] = s
                    by_root[g.output].append(t)
                    changed = True
    return by_root, sizes


def term_name(nf) -> str:
    p, body = nf
    if isinstance(body, Leaf) and perms.is_identity(p):
        return "id"
    return str(from_normal_form(nf))


def free_finite_operad(collection: ColoredCollection, symmetric: bool = False, max_size: int = 8) -> FiniteOperad:
    """The free operad on ``collection`` when it is finite.

    Morphisms are normal-form trees (planar tree plus a leaf permutation in
    the symmetric case), named by their rendering; composition is grafting.
    Raises :class:`OperadError` if trees keep growing past ``max_size``.
    """
    by_root, sizes = _planar_trees(collection, max_size + 1)
    if any(s > max_size for s in sizes.values()):
        raise OperadError("collection generates an infinite (or too large) free operad")
    elems = {}
    for c, trees in by_root.items():
        for t in trees:
            n = leaf_count(t)
            ps = perms.all_permutations(n) if symmetric else [perms.identity(n)]
            for p in ps:
                nf = (p, t)
                prof = Profile(perms.act(planar_leaves(t), p), c)
                elems[nf] = Morphism(term_name(nf), prof)
    back = {m: nf for nf, m in elems.items()}
    ids = {c: elems[((0,), Leaf(c))] for c in collection.colors}

    def comp(outer, inners):
        return elems.get(graft_nf(back[outer], [back[m] for m in inners]))

    def act(m, i):
        p, t = back[m]
        return elems[(perms.compose(p, perms.transposition(len(p), i)), t)]

    return FiniteOperad.from_rules(collection.colors, elems.values(), ids, comp, symmetric, act)


def presentation_map_of(F) -> PresentationMap:
    """The map ``presentation_of(source) -> presentation_of(target)`` of a functor."""
    return PresentationMap(
        presentation_of(F.source),
        presentation_of(F.target),
        dict(F.object_map),
        {m: corolla(F(m)) for m in F.source.morphisms},
    ).check()
