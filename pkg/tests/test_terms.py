import pytest
from hypothesis import given, settings, strategies as st

from opemodel import perms
from opemodel.core import Morphism, Profile
from opemodel.errors import ColorMismatch
from opemodel.presented.terms import (
    Leaf,
    Node,
    Perm,
    canonical,
    corolla,
    from_normal_form,
    graft,
    inputs,
    leaf_count,
    normal_form,
    profile,
    size,
)

X = "x"
g2 = Morphism("g", Profile((X, X), X))
h1 = Morphism("h", Profile((X,), X))
k0 = Morphism("k", Profile((), X))
c2 = Morphism("c", Profile(("y", X), X))


def test_graft_units():
    t = corolla(g2)
    assert graft(Leaf(X), [t]) == t
    assert graft(t, [Leaf(X), Leaf(X)]) == t


def test_graft_color_mismatch():
    with pytest.raises(ColorMismatch):
        graft(corolla(c2), [Leaf(X), Leaf(X)])
    with pytest.raises(ColorMismatch):
        Node(c2, (Leaf(X), Leaf(X)))


def test_nested_graft_three_levels():
    a = corolla(g2)
    b = graft(a, [corolla(h1), corolla(g2)])
    nested = graft(b, [corolla(k0), Leaf(X), corolla(h1)])
    flat = graft(a, [graft(corolla(h1), [corolla(k0)]), graft(corolla(g2), [Leaf(X), corolla(h1)])])
    assert nested == flat
    assert size(nested) == 5 and leaf_count(nested) == 2


def test_perm_root_normal_form():
    t = Perm((1, 0), corolla(c2))
    assert inputs(t) == (X, "y")
    p, body = normal_form(t)
    assert p == (1, 0) and body == corolla(c2)
    # a permutation below a node moves to the root
    u = Node(g2, (Perm((1, 0), corolla(g2)), Leaf(X)))
    p, body = normal_form(u)
    assert p == (1, 0, 2)
    assert body == Node(g2, (corolla(g2), Leaf(X)))


def _trees(depth):
    leaf = st.just(Leaf(X))
    if depth == 0:
        return leaf
    sub = _trees(depth - 1)
    return st.one_of(
        leaf,
        st.just(corolla(k0)),
        sub.map(lambda t: Node(h1, (t,))),
        st.tuples(sub, sub).map(lambda ts: Node(g2, ts)),
        sub.flatmap(lambda t: st.permutations(list(range(leaf_count(t)))).map(lambda p: Perm(tuple(p), t))),
    )


terms = _trees(3)


@settings(max_examples=150, deadline=None)
@given(terms, st.data())
def test_graft_associative(t, data):
    n = leaf_count(t)
    inner = [data.draw(terms) for _ in range(n)]
    inner_inner = [[data.draw(terms) for _ in range(leaf_count(s))] for s in inner]
    flat = [x for xs in inner_inner for x in xs]
    lhs = graft(graft(t, inner), flat)
    rhs = graft(t, [graft(s, xs) for s, xs in zip(inner, inner_inner)])
    assert normal_form(lhs) == normal_form(rhs)


@settings(max_examples=150, deadline=None)
@given(terms)
def test_normal_form_idempotent(t):
    c = canonical(t)
    assert canonical(c) == c
    assert profile(c) == profile(t)
    assert from_normal_form(normal_form(t)) == c


@settings(max_examples=100, deadline=None)
@given(terms, st.data())
def test_perm_acts_on_inputs(t, data):
    n = leaf_count(t)
    s = tuple(data.draw(st.permutations(list(range(n)))))
    assert inputs(Perm(s, t)) == perms.act(inputs(t), s)
    # acting twice composes
    r = tuple(data.draw(st.permutations(list(range(n)))))
    assert normal_form(Perm(r, Perm(s, t))) == normal_form(Perm(perms.compose(s, r), t))
