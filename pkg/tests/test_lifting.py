import random

import pytest

from opemodel import generators as gen
from opemodel.errors import NotApplicable, SearchBudgetExceeded, SquareNotCommutative
from opemodel.functors import (
    OperadFunctor,
    identity_functor,
    is_cofibration,
    is_fibration,
    is_surjective_on_objects,
    is_trivial_cofibration,
    is_trivial_fibration,
)
from opemodel.lifting import LiftingSquare, has_rlp, iter_squares, solve_lift_trivcof, solve_lift_trivfib


def test_identity_left_gives_top():
    R = gen.h_to_star()
    P = R.source
    sq = LiftingSquare(identity_functor(P), R, identity_functor(P), R)
    assert solve_lift_trivfib(sq) == identity_functor(P)


def test_empty_left_picks_first_object():
    e2s, h2s = gen.empty_to_star(), gen.h_to_star()
    top = OperadFunctor(e2s.source, h2s.source, {}, {})
    sq = LiftingSquare(e2s, h2s, top, identity_functor(gen.star()))
    H = solve_lift_trivfib(sq)
    assert H.obj(gen.STAR_COLOR) == "a"


def test_trivcof_identity_square():
    S = gen.star()
    i = identity_functor(S)
    assert solve_lift_trivcof(LiftingSquare(i, i, i, i)) == i


def test_star_to_h_against_h_to_star():
    s2h, h2s = gen.star_to_h(), gen.h_to_star()
    sq = LiftingSquare(s2h, h2s, s2h, h2s)
    H = solve_lift_trivcof(sq)
    assert sq.is_lift(H)
    # beta_b is the first iso out of a lifting id, which is id_a, not u
    assert H.object_map == {"a": "a", "b": "a"}
    assert sq.is_lift(identity_functor(s2h.target))


def test_preconditions_checked():
    s2h = gen.star_to_h()
    sq = LiftingSquare(s2h, s2h, identity_functor(s2h.source), identity_functor(s2h.target))
    assert sq.commutes()
    with pytest.raises(NotApplicable):
        solve_lift_trivfib(sq)
    with pytest.raises(NotApplicable):
        solve_lift_trivcof(sq)


def test_non_commuting_square():
    s2h_a, s2h_b = gen.star_to_h("a"), gen.star_to_h("b")
    i = identity_functor(gen.star())
    sq = LiftingSquare(i, s2h_a, i, s2h_b)
    assert not sq.commutes()
    with pytest.raises(SquareNotCommutative):
        sq.check()


def test_rlp_examples():
    assert has_rlp(gen.star_to_h(), gen.h_to_star())
    assert has_rlp(gen.star_to_h("b"), gen.h_to_star())
    pc = gen.par_collapse(1)
    assert not has_rlp(pc, pc)
    assert not has_rlp(gen.star_to_h(), gen.star_to_h())


def test_rlp_empty_to_star_is_surjectivity(corpus):
    for F in corpus.functors:
        e = gen.empty_to_star(F.source.symmetric)
        assert has_rlp(e, F) == is_surjective_on_objects(F)


def test_budget_is_enforced():
    with pytest.raises(SearchBudgetExceeded):
        has_rlp(gen.par_collapse(2), gen.par_collapse(2), budget=3)


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("OPEMODEL_BUDGET", "2")
    with pytest.raises(SearchBudgetExceeded):
        has_rlp(gen.par_collapse(2), gen.par_collapse(2))


def _squares(left, right, limit, rng):
    pairs = [(a, b) for a in left for b in right if a.source.symmetric == b.source.symmetric]
    for a, b in rng.sample(pairs, min(limit, len(pairs))):
        yield from iter_squares(a, b)


def test_corpus_lifts(corpus):
    rng = random.Random(5)
    fs = corpus.functors
    n = 0
    cof = [F for F in fs if is_cofibration(F)]
    tf = [F for F in fs if is_trivial_fibration(F)]
    for sq in _squares(cof, tf, 200, rng):
        H = solve_lift_trivfib(sq)
        assert sq.is_lift(H) and solve_lift_trivfib(sq) == H
        n += 1
    tc = [F for F in fs if is_trivial_cofibration(F)]
    fb = [F for F in fs if is_fibration(F)]
    for sq in _squares(tc, fb, 200, rng):
        H = solve_lift_trivcof(sq)
        assert sq.is_lift(H) and solve_lift_trivcof(sq) == H
        n += 1
    assert n > 200
