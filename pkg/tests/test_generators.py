import pytest

from opemodel import generators as gen
from opemodel.core import validate
from opemodel.functors import classify, is_cofibration, is_fibration, is_trivial_cofibration, is_weak_equivalence


@pytest.mark.parametrize("symmetric", [False, True])
def test_standard_operads_validate(symmetric):
    for name, P in gen.standard_operads(symmetric, 3).items():
        assert validate(P).ok, name


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_generating_profile_cardinalities(n):
    colors = tuple(str(i) for i in range(n + 1))
    prof = (colors[1:], "0")
    A, B, P = gen.ar(n), gen.boundary_ar(n), gen.par(n)
    assert A.colors == B.colors == P.colors == colors
    assert len(A.hom(*prof)) == 1
    assert len(B.hom(*prof)) == 0
    assert len(P.hom(*prof)) == 2
    for X in (A, B, P):
        non_id = [m for m in X.morphisms if m not in X.identity_set]
        assert len(X.morphisms) == len(colors) + len(non_id)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_only_unit_law_compositions(n):
    for X in (gen.ar(n), gen.par(n), gen.ar(n, True), gen.par(n, True)):
        for (outer, inners), r in X.composition.items():
            ids = X.identity_set
            assert outer in ids or all(m in ids for m in inners)
            assert r == (inners[0] if outer in ids else outer)


def test_symmetric_variants_carry_free_orbits():
    A = gen.ar(2, True)
    assert len([m for m in A.morphisms if m.arity == 2]) == 2
    assert len([m for m in gen.par(3, True).morphisms if m.arity == 3]) == 12


def test_small_operads():
    assert len(gen.star().morphisms) == 1
    assert len(gen.empty().morphisms) == 0 and gen.empty().colors == ()
    assert len(gen.walking_iso().morphisms) == 4


def test_generating_trivial_cofibrations():
    (F,) = gen.generating_trivial_cofibrations()
    assert F.object_map == {gen.STAR_COLOR: "a"}
    assert is_trivial_cofibration(F) and not is_fibration(F)


def test_generating_cofibrations_arity_zero():
    fs = gen.generating_cofibrations(0)
    assert len(fs) == 3
    assert [len(F.source.colors) for F in fs] == [0, 1, 1]
    assert fs[2].target.hom((), "0")


@pytest.mark.parametrize("symmetric", [False, True])
def test_generating_cofibrations_are_cofibrations(symmetric):
    fs = gen.generating_cofibrations(3, symmetric)
    assert len(fs) == 9
    assert all(is_cofibration(F) for F in fs)
    b2 = gen.boundary_inclusion(2, symmetric)
    assert not is_weak_equivalence(b2)
    assert classify(gen.par_collapse(2, symmetric))["essentially_surjective"]


def test_negative_arity_rejected():
    with pytest.raises(ValueError):
        gen.generating_cofibrations(-1)
