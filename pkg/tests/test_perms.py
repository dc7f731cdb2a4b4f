from hypothesis import given, strategies as st

from opemodel import perms


def perm_of(n):
    return st.permutations(list(range(n))).map(tuple)


sized = st.integers(0, 5).flatmap(lambda n: st.tuples(perm_of(n), perm_of(n), perm_of(n)))


@given(sized)
def test_compose_is_associative(ps):
    a, b, c = ps
    assert perms.compose(perms.compose(a, b), c) == perms.compose(a, perms.compose(b, c))


@given(sized)
def test_inverse_and_identity(ps):
    a = ps[0]
    e = perms.identity(len(a))
    assert perms.compose(a, perms.inverse(a)) == e
    assert perms.compose(perms.inverse(a), a) == e
    assert perms.compose(a, e) == a


@given(sized)
def test_action_is_contravariant(ps):
    s, t, _ = ps
    items = tuple("abcde"[: len(s)])
    # acting by s then by t is acting by s∘t
    assert perms.act(perms.act(items, s), t) == perms.act(items, perms.compose(s, t))


@given(st.integers(1, 5).flatmap(perm_of))
def test_adjacent_word_multiplies_back(p):
    q = perms.identity(len(p))
    for i in perms.adjacent_word(p):
        q = perms.compose(q, perms.transposition(len(p), i))
    assert q == p


@given(st.integers(1, 4), st.integers(1, 4))
def test_interchange_inverse_pair(m, n):
    s, t = perms.interchange(m, n), perms.interchange(n, m)
    assert perms.compose(s, t) == perms.identity(m * n)
    assert perms.inverse(s) == t


def test_interchange_small():
    # blocks of size 3 read in the other order
    assert perms.interchange(3, 2) == (0, 2, 4, 1, 3, 5)
    assert perms.interchange(1, 4) == (0, 1, 2, 3)


def test_transposition_bounds():
    import pytest

    assert perms.transposition(3, 2) == (0, 2, 1)
    with pytest.raises(ValueError):
        perms.transposition(3, 3)


def test_all_words_match_length_parity():
    p = (2, 0, 1)
    words = perms.all_words(p, 5)
    assert words and all(len(w) % 2 == 0 for w in words)
    assert min(len(w) for w in words) == len(perms.adjacent_word(p))
