import random
from collections import deque

import pytest
from hypothesis import given, settings, strategies as st

from opemodel import generators as gen
from opemodel import perms
from opemodel.categories import (
    CategoryFunctor,
    is_isomorphism,
    j_lower,
    walking_arrow,
    walking_iso_category,
)
from opemodel.core import Morphism, Profile
from opemodel.errors import NotCofibration, NotSymmetric, ProfileMismatch, Unstable
from opemodel.functors import identity_functor, is_cofibration
from opemodel.presented import (
    ColoredCollection,
    Presentation,
    Verdict,
    bv_map,
    bv_presentation,
    corner_map_object_check,
    corner_map_objects,
    decide_equal,
    left_gen,
    presentation_map_of,
    presentation_of,
    pushout,
    realize_unary,
    right_gen,
    tautological_model,
)
from opemodel.presented.terms import Leaf, Node, Perm, corolla, profile

W = j_lower(walking_arrow(), True)
I = j_lower(walking_iso_category(), True)


def mor(P, name, profile=None):
    (m,) = [m for m in P.morphisms if m.name == name and (profile is None or m.profile == profile)]
    return m


def chain(*gens):
    t = Leaf(gens[0].inputs[0])
    for g in gens:
        t = Node(g, (t,))
    return t


# BV presentation ----------------------------------------------------------------


def test_bv_star_star():
    S = gen.star(True)
    pres = bv_presentation(S, S)
    assert len(pres.generators) == 2
    pt = (gen.STAR_COLOR, gen.STAR_COLOR)
    for g in pres.generators:
        assert decide_equal(pres, corolla(g), Leaf(pt), 2).verdict is Verdict.EQUAL
    R = realize_unary(pres, 2)
    assert len(R.objects) == 1 and len(R.arrows) == 1 and R.validate().ok


@pytest.mark.parametrize("P,Q", [
    (gen.star(True), W), (W, I), (gen.ar(2, True), gen.par(1, True)), (gen.walking_iso(True), gen.ar(2, True)),
])
def test_bv_generator_count(P, Q):
    pres = bv_presentation(P, Q)
    assert len(pres.generators) == len(P.morphisms) * len(Q.colors) + len(P.colors) * len(Q.morphisms)
    assert set(pres.colors) == {(p, q) for p in P.colors for q in Q.colors}


def test_bv_needs_symmetric():
    with pytest.raises(NotSymmetric):
        bv_presentation(gen.star(), gen.star())


def test_relations_share_profiles():
    for P, Q in [(gen.ar(2, True), gen.ar(2, True)), (gen.par(2, True), W), (gen.ar(0, True), gen.ar(2, True))]:
        pres = bv_presentation(P, Q)
        assert pres.relations
        for lhs, rhs in pres.relations:
            assert profile(lhs) == profile(rhs)


def test_interchange_permutation_is_needed():
    # without sigma_{m,n} the two sides of relation 5 have different inputs
    A = gen.ar(2, True)
    f = mor(A, "f")
    lhs = Node(left_gen(f, "0"), tuple(corolla(right_gen(p, f)) for p in f.inputs))
    rhs = Node(right_gen("0", f), tuple(corolla(left_gen(f, q)) for q in f.inputs))
    assert profile(lhs) != profile(rhs)
    assert profile(lhs) == profile(Perm(perms.interchange(2, 2), rhs))


def test_unary_interchange_instance():
    pres = bv_presentation(W, W)
    f = mor(W, "f")
    lhs = chain(right_gen("0", f), left_gen(f, "1"))   # (f⊗1)∘(0⊗f)
    rhs = chain(left_gen(f, "0"), right_gen("1", f))   # (1⊗f)∘(f⊗0)
    assert (lhs, rhs) in pres.relations_labelled("5") or (rhs, lhs) in pres.relations_labelled("5")
    d = decide_equal(pres, lhs, rhs, 1)
    assert d.verdict is Verdict.EQUAL and d.steps == 1


def test_decide_equal_basic():
    pres = bv_presentation(W, W)
    f = mor(W, "f")
    t = chain(left_gen(f, "0"))
    assert decide_equal(pres, t, t, 0).verdict is Verdict.EQUAL
    with pytest.raises(ProfileMismatch):
        decide_equal(pres, corolla(left_gen(f, "0")), corolla(right_gen("0", f)), 3)


def test_decide_equal_distinct_by_model():
    P = gen.par(1, True)
    pres = presentation_of(P)
    a, b = corolla(mor(P, "f1")), corolla(mor(P, "f2"))
    d = decide_equal(pres, a, b, 3, models=(tautological_model(P),))
    assert d.verdict is Verdict.DISTINCT
    # without the model the class of f1 is still explored completely
    assert decide_equal(pres, a, b, 5).verdict is Verdict.DISTINCT


def test_decide_equal_unknown_on_infinite_class():
    loop = Morphism("g", Profile(("x",), "x"))
    pres = Presentation(ColoredCollection(["x"], [loop]), ((chain(loop, loop), chain(loop, loop, loop, loop)),))
    d = decide_equal(pres, chain(loop, loop), chain(loop, loop, loop), 3)
    # counts are no obstruction over the rationals and the class is infinite
    assert d.verdict is Verdict.UNKNOWN
    d = decide_equal(pres, chain(loop, loop), chain(loop, loop, loop, loop, loop, loop), 2)
    assert d.verdict is Verdict.EQUAL


def test_decide_equal_distinct_by_counts():
    a = Morphism("a", Profile(("x",), "x"))
    b = Morphism("b", Profile(("x",), "x"))
    pres = Presentation(ColoredCollection(["x"], [a, b]), ((chain(a, b), chain(b, a)),))
    d = decide_equal(pres, chain(a, a, b), chain(a, b, b), 10)
    assert d.verdict is Verdict.DISTINCT and "count" in d.reason


def _unary_terms(pres, length):
    by_input = {}
    for g in pres.generators:
        by_input.setdefault(g.inputs[0], []).append(g)
    out = [Leaf(c) for c in pres.colors]
    layer = list(out)
    for _ in range(length):
        layer = [Node(g, (t,)) for t in layer for g in by_input.get(profile(t).output, ())]
        out += layer
    return out


BVW = bv_presentation(W, I)
POOL = _unary_terms(BVW, 3)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(POOL), st.sampled_from(POOL), st.integers(0, 3))
def test_decide_equal_symmetric_and_monotone(a, b, bound):
    if profile(a) != profile(b):
        return
    d1 = decide_equal(BVW, a, b, bound)
    d2 = decide_equal(BVW, b, a, bound)
    assert d1.verdict == d2.verdict
    later = decide_equal(BVW, a, b, bound + 2)
    if d1.verdict is Verdict.EQUAL:
        assert later.verdict is Verdict.EQUAL
    if d1.verdict is Verdict.DISTINCT:
        assert later.verdict is Verdict.DISTINCT


# realization ----------------------------------------------------------------------


def _eval_functor(R, C):
    """Chains of generators of presentation_of(j_lower(C)) evaluated in C."""
    by = {(a.name, a.source): a for a in C.arrows}
    amap = {}
    for x in R.arrows:
        f = C.identities[x.source]
        for name in (() if x.name == "id" else x.name):
            f = C.compose(by[(name, f.target)], f)
        amap[x] = f
    return CategoryFunctor(R, C, {o: o for o in R.objects}, amap)


def test_realize_presentation_of_categories(corpus):
    for name, C in corpus.categories.items():
        R = realize_unary(presentation_of(j_lower(C, True)), 3)
        F = _eval_functor(R, C)
        assert F.validate().ok and is_isomorphism(F), name


def test_realize_loop_is_unstable():
    loop = Morphism("g", Profile(("x",), "x"))
    pres = Presentation(ColoredCollection(["x"], [loop]), ())
    with pytest.raises(Unstable):
        realize_unary(pres, 3)


def test_realize_walking_arrow_squared():
    R = realize_unary(bv_presentation(W, W), 4)
    assert len(R.objects) == 4 and len(R.arrows) == 9


# pushouts ---------------------------------------------------------------------------


def _set_pushout_oracle(R, A, B, f, g):
    """Connected components of the graph A ⊔ B with an edge f(r) - g(r)."""
    nodes = [("A", a) for a in A] + [("B", b) for b in B]
    adj = {n: set() for n in nodes}
    for r in R:
        adj[("A", f[r])].add(("B", g[r]))
        adj[("B", g[r])].add(("A", f[r]))
    comp = {}
    for n in nodes:
        if n in comp:
            continue
        comp[n] = n
        todo = deque([n])
        while todo:
            x = todo.popleft()
            for y in adj[x]:
                if y not in comp:
                    comp[y] = n
                    todo.append(y)
    return comp


def _corner_oracle(F, G):
    P, Q, Pp, Qp = F.source, F.target, G.source, G.target
    R = [(p, x) for p in P.colors for x in Pp.colors]
    A = [(p, y) for p in P.colors for y in Qp.colors]
    B = [(q, x) for q in Q.colors for x in Pp.colors]
    comp = _set_pushout_oracle(R, A, B, {r: (r[0], G.obj(r[1])) for r in R}, {r: (F.obj(r[0]), r[1]) for r in R})
    image = {}
    for (side, (u, v)), c in comp.items():
        image.setdefault(c, set()).add((F.obj(u), v) if side == "A" else (u, G.obj(v)))
    assert all(len(s) == 1 for s in image.values())
    targets = [next(iter(s)) for s in image.values()]
    return len(targets) == len(set(targets)), len(image)


def test_corner_examples():
    e = gen.empty_to_star(True)
    assert corner_map_object_check(e, e)
    F, G = gen.star_to_h("a", True), gen.boundary_inclusion(1, True)
    assert corner_map_object_check(F, G)
    _, corner = corner_map_objects(F, G)
    assert len(corner) == 4 and len(set(corner.values())) == 4


def test_corner_rejects_non_cofibrations():
    h = gen.h_to_star(True)
    with pytest.raises(NotCofibration):
        corner_map_object_check(h, gen.empty_to_star(True))
    with pytest.raises(NotSymmetric):
        corner_map_object_check(gen.empty_to_star(), gen.empty_to_star())


def test_corner_matches_oracle(corpus):
    cofs = [F for F in corpus.functors if F.source.symmetric and is_cofibration(F)]
    rng = random.Random(11)
    pairs = [(rng.choice(cofs), rng.choice(cofs)) for _ in range(300)]
    for F, G in pairs:
        ok, size = _corner_oracle(F, G)
        assert corner_map_object_check(F, G) == ok
        assert len(corner_map_objects(F, G)[1]) == size


def test_pushout_along_identity():
    F = gen.star_to_h("a", True)
    f = presentation_map_of(identity_functor(F.source))
    g = presentation_map_of(F)
    po, ia, ib = pushout(f, g)
    assert len(po.colors) == len(g.target.colors)
    for m in f.target.generators:
        d = decide_equal(po, ia.apply(corolla(m)), ib.apply(g.generators[m]), 1)
        assert d.verdict is Verdict.EQUAL


def test_pushout_of_empty_to_star_with_itself():
    e = presentation_map_of(gen.empty_to_star(True))
    po, _, _ = pushout(e, e)
    assert len(po.colors) == 2


def test_corner_pushout_colors():
    F, G = gen.star_to_h("a", True), gen.boundary_inclusion(1, True)
    P, Pp = F.source, G.source
    po, _, _ = pushout(bv_map(identity_functor(P), G), bv_map(F, identity_functor(Pp)))
    assert len(po.colors) == 4
