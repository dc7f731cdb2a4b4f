"""The Boardman-Vogt tensor product as a presentation, and realization of
presentations with only unary generators as finite categories."""
from __future__ import annotations

from .. import perms
from ..categories import Arrow, FiniteCategory
from ..core import FiniteOperad, Morphism, Profile, apply_symmetry
from ..errors import NotSymmetric, Unstable
from ..functors import OperadFunctor
from .presentation import ColoredCollection, Model, Presentation, PresentationMap
from .rewrite import Verdict, decide_equal, neighbors
from .terms import Leaf, Node, Perm, corolla, nf_key, size


def left_gen(psi: Morphism, q) -> Morphism:
    """``psi ⊗ q``: acts on the first coordinate."""
    return Morphism(("L", psi.name, q), Profile(tuple((p, q) for p in psi.inputs), (psi.output, q)))


def right_gen(p, phi: Morphism) -> Morphism:
    """``p ⊗ phi``: acts on the second coordinate."""
    return Morphism(("R", p, phi.name), Profile(tuple((p, q) for q in phi.inputs), (p, phi.output)))


def bv_presentation(P: FiniteOperad, Q: FiniteOperad) -> Presentation:
    """Generators ``psi ⊗ q`` and ``p ⊗ phi`` with relations of types 1-5 and
    the two unit relations ``id_p ⊗ q = id`` and ``p ⊗ id_q = id``.

    Relation labels are ``"unit-left"``, ``"unit-right"`` and ``"1"``..``"5"``.
    """
    if not (P.symmetric and Q.symmetric):
        raise NotSymmetric("the Boardman-Vogt tensor product needs symmetric operads")
    colors = [(p, q) for p in P.colors for q in Q.colors]
    gens = [left_gen(psi, q) for psi in P.morphisms for q in Q.colors]
    gens += [right_gen(p, phi) for p in P.colors for phi in Q.morphisms]
    rels, labels = [], []

    def add(label, lhs, rhs):
        rels.append((lhs, rhs))
        labels.append(label)

    for p in P.colors:
        for q in Q.colors:
            add("unit-left", corolla(left_gen(P.identity(p), q)), Leaf((p, q)))
            add("unit-right", corolla(right_gen(p, Q.identity(q))), Leaf((p, q)))

    # 1 / 3: each factor embeds as an operad map
    for q in Q.colors:
        for (psi, inners), r in P.composition.items():
            lhs = Node(left_gen(psi, q), tuple(corolla(left_gen(m, q)) for m in inners))
            add("1", lhs, corolla(left_gen(r, q)))
    for p in P.colors:
        for (phi, inners), r in Q.composition.items():
            lhs = Node(right_gen(p, phi), tuple(corolla(right_gen(p, m)) for m in inners))
            add("3", lhs, corolla(right_gen(p, r)))

    # 2 / 4: the embeddings are equivariant
    for psi in P.morphisms:
        for s in perms.all_permutations(psi.arity)[1:]:
            moved = apply_symmetry(P, psi, s)
            for q in Q.colors:
                add("2", Perm(s, corolla(left_gen(psi, q))), corolla(left_gen(moved, q)))
    for phi in Q.morphisms:
        for s in perms.all_permutations(phi.arity)[1:]:
            moved = apply_symmetry(Q, phi, s)
            for p in P.colors:
                add("4", Perm(s, corolla(right_gen(p, phi))), corolla(right_gen(p, moved)))

    # 5: interchange
    for psi in P.morphisms:
        n = psi.arity
        for phi in Q.morphisms:
            m = phi.arity
            q = phi.output
            lhs = Node(
                left_gen(psi, q),
                tuple(corolla(right_gen(pi, phi)) for pi in psi.inputs),
            )
            rhs = Node(
                right_gen(psi.output, phi),
                tuple(corolla(left_gen(psi, qj)) for qj in phi.inputs),
            )
            add("5", lhs, Perm(perms.interchange(m, n), rhs))

    return Presentation(ColoredCollection(colors, gens), tuple(rels), True, tuple(labels))


def bv_map(F: OperadFunctor, G: OperadFunctor) -> PresentationMap:
    """``F ⊗ G`` between BV presentations, generator by generator."""
    src = bv_presentation(F.source, G.source)
    tgt = bv_presentation(F.target, G.target)
    colors = {(p, q): (F.obj(p), G.obj(q)) for p, q in src.colors}
    gens = {}
    for psi in F.source.morphisms:
        for q in G.source.colors:
            gens[left_gen(psi, q)] = corolla(left_gen(F(psi), G.obj(q)))
    for p in F.source.colors:
        for phi in G.source.morphisms:
            gens[right_gen(p, phi)] = corolla(right_gen(F.obj(p), G(phi)))
    return PresentationMap(src, tgt, colors, gens).check()


# realization of unary presentations --------------------------------------------------


def _chains(pres: Presentation, bound: int) -> list:
    by_input: dict = {}
    for g in pres.generators:
        by_input.setdefault(g.inputs[0], []).append(g)
    layer = [Leaf(c) for c in pres.colors]
    out = list(layer)
    for _ in range(bound):
        layer = [Node(g, (t,)) for t in layer for g in by_input.get(_root(t), ())]
        out.extend(layer)
    return out


def _root(t):
    return t.color if isinstance(t, Leaf) else t.gen.output


def _source(t):
    while isinstance(t, Node):
        t = t.children[0]
    return t.color


def _classes(pres: Presentation, terms: list) -> dict:
    parent = {t: t for t in terms}

    def find(x):
        while parent[x] is not x and parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ident = (0,)
    for t in terms:
        for _, u in neighbors(pres, (ident, t)):
            if u in parent:
                a, b = find(t), find(u)
                if a != b:
                    parent[b] = a
    groups: dict = {}
    for t in terms:
        groups.setdefault(find(t), []).append(t)
    return {t: min(g, key=lambda x: nf_key((ident, x))) for g in groups.values() for t in g}


def realize_unary(pres: Presentation, bound: int) -> FiniteCategory:
    """The category presented by ``pres`` (all generators unary).

    Arrows are equivalence classes of generator chains with at most ``bound``
    nodes, where chains are identified through single relation applications
    that stay within the bound.  Raises :class:`Unstable` when the class
    count at ``bound`` differs from ``bound - 1`` or a composite of
    representatives falls outside the bound.
    """
    if any(g.arity != 1 for g in pres.generators):
        raise ValueError("realize_unary needs unary generators only")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    terms = _chains(pres, bound)
    rep = _classes(pres, terms)
    smaller = _classes(pres, [t for t in terms if size(t) <= bound - 1])
    n_big, n_small = len(set(rep.values())), len(set(smaller.values()))
    if n_big != n_small:
        raise Unstable(f"{n_small} classes at bound {bound - 1} but {n_big} at bound {bound}")

    def name(t):
        if isinstance(t, Leaf):
            return "id"
        chain = []
        while isinstance(t, Node):
            chain.append(t.gen.name)
            t = t.children[0]
        return tuple(reversed(chain))

    reps = sorted(set(rep.values()), key=lambda x: nf_key(((0,), x)))
    arrow = {r: Arrow(name(r), _source(r), _root(r)) for r in reps}
    ids = {c: arrow[rep[Leaf(c)]] for c in pres.colors}

    def graft_chain(g, f):
        # g after f: put f's chain under g's
        if isinstance(g, Leaf):
            return f
        return Node(g.gen, (graft_chain(g.children[0], f),))

    comp = {}
    for g in reps:
        for f in reps:
            if _root(f) != _source(g):
                continue
            t = graft_chain(g, f)
            if t not in rep:
                raise Unstable(f"composite of {arrow[g]} and {arrow[f]} exceeds bound {bound}")
            comp[(arrow[g], arrow[f])] = arrow[rep[t]]
    return FiniteCategory(pres.colors, arrow.values(), ids, comp)


# certificates ----------------------------------------------------------------------


def unit_model(P: FiniteOperad) -> Model:
    """``⋆ ⊗ P -> P`` sending ``• ⊗ phi`` to ``phi`` and ``id ⊗ q`` to ``id_q``."""
    from ..generators import star

    S = star(True)
    (pt,) = S.colors
    e = S.identity(pt)
    colors = {(pt, q): q for q in P.colors}
    gens = {left_gen(e, q): P.identity(q) for q in P.colors}
    gens.update({right_gen(pt, phi): phi for phi in P.morphisms})
    return Model(P, colors, gens)


def certify_unit(P: FiniteOperad, bound: int = 4) -> dict:
    """Certify ``⋆ ⊗ P ≅ P`` by rewriting.

    The interpretation ``M: ⋆ ⊗ P -> P`` is checked against every relation.
    The section ``S(phi) = • ⊗ phi`` must preserve identities, composition
    and the symmetric action, and every generator ``g`` must equal
    ``S(M(g))``; each of these is a :func:`decide_equal` query at ``bound``.
    Together they make ``M`` and ``S`` mutually inverse.
    """
    from ..generators import star

    S = star(True)
    (pt,) = S.colors
    pres = bv_presentation(S, P)
    model = unit_model(P).check(pres)

    def sec(phi):
        return corolla(right_gen(pt, phi))

    queries = []
    for q in P.colors:
        queries.append(("identity", sec(P.identity(q)), Leaf((pt, q))))
    for g in pres.generators:
        queries.append(("generator", corolla(g), sec(model.evaluate(corolla(g)))))
    for (outer, inners), r in P.composition.items():
        queries.append(("composition", Node(right_gen(pt, outer), tuple(sec(m) for m in inners)), sec(r)))
    for (m, i), r in P.symmetry.items():
        queries.append(("symmetry", Perm(perms.transposition(m.arity, i), sec(m)), sec(r)))
    failures = []
    worst = 0
    for kind, a, b in queries:
        d = decide_equal(pres, a, b, bound, models=(model,))
        if d.verdict is not Verdict.EQUAL:
            failures.append((kind, str(a), str(b), d.verdict.value))
        else:
            worst = max(worst, d.steps)
    return {
        "certified": not failures,
        "queries": len(queries),
        "max_steps": worst,
        "failures": failures,
    }


def product_comparison(C: FiniteCategory, D: FiniteCategory, R: FiniteCategory):
    """The functor from ``R = realize_unary(bv(j!C, j!D))`` to ``C × D`` that
    evaluates each chain of generators factorwise."""
    from ..categories import CategoryFunctor, product_category

    CD = product_category(C, D)
    cby = {(a.name, a.source): a for a in C.arrows}
    dby = {(a.name, a.source): a for a in D.arrows}
    arrow_of = {(a.source, a.target, a.name): a for a in CD.arrows}

    def evaluate(arrow):
        p, q = arrow.source
        f, g = C.identities[p], D.identities[q]
        chain = () if arrow.name == "id" else arrow.name
        for tag, x, y in chain:
            if tag == "L":
                f = C.compose(cby[(x, f.target)], f)
            else:
                g = D.compose(dby[(y, g.target)], g)
        return arrow_of[((f.source, g.source), (f.target, g.target), (f.name, g.name))]

    return CategoryFunctor(R, CD, {o: o for o in R.objects}, {a: evaluate(a) for a in R.arrows})
