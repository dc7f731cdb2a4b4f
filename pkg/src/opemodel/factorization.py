"""The two explicit factorizations of an operad functor."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import perms
from .core import FiniteOperad, Morphism, Profile, compose, validate
from .errors import InvalidFunctor
from .functors import (
    OperadFunctor,
    check_functor,
    compose_functors,
    is_cofibration,
    is_fibration,
    is_trivial_cofibration,
    is_trivial_fibration,
)


@dataclass(frozen=True)
class Factorization:
    first: OperadFunctor
    second: OperadFunctor
    middle: FiniteOperad


def _relabelled_operad(colors, label, base: FiniteOperad, symmetric):
    """Pull ``base`` back along ``label: colors -> base.colors``.

    The hom-set at ``(x1..xn; x)`` is a copy of ``base(label x1, ..., label xn;
    label x)``; composition and symmetry are computed in ``base``.
    Returns the operad and a function sending a new morphism to its base.
    """
    fibers: dict = {}
    for x in colors:
        fibers.setdefault(label[x], []).append(x)

    def down(m: Morphism) -> Morphism:
        return Morphism(m.name, Profile(tuple(label[c] for c in m.inputs), label[m.output]))

    def up(m: Morphism, prof: Profile) -> Morphism:
        return Morphism(m.name, prof)

    morphisms = []
    for bprof, ms in base.homs.items():
        pools = [fibers.get(c, ()) for c in (*bprof.inputs, bprof.output)]
        for choice in product(*pools):
            prof = Profile(tuple(choice[:-1]), choice[-1])
            morphisms.extend(up(m, prof) for m in ms)
    ids = {x: up(base.identity(label[x]), Profile((x,), x)) for x in colors}

    def comp(outer, inners):
        r = base.composition.get((down(outer), tuple(down(m) for m in inners)))
        if r is None:
            return None
        return up(r, Profile(tuple(c for m in inners for c in m.inputs), outer.output))

    def act(m, i):
        r = base.symmetry[(down(m), i)]
        return up(r, Profile(perms.act(m.inputs, perms.transposition(m.arity, i)), m.output))

    op = FiniteOperad.from_rules(colors, morphisms, ids, comp, symmetric, act if symmetric else None)
    return op, down


def pullback_operad(base: FiniteOperad, label: dict) -> FiniteOperad:
    """Operad on ``label``'s keys with hom-sets copied from ``base``."""
    op, _ = _relabelled_operad(list(label), label, base, base.symmetric)
    return op


def _require_valid(F):
    try:
        check_functor(F)
    except InvalidFunctor:
        raise
    except Exception as exc:  # malformed maps surface as lookups
        raise InvalidFunctor(str(exc)) from exc


def factor_trivcof_fib(F: OperadFunctor, verify: bool = True) -> Factorization:
    """``F = H ∘ G`` with ``G`` a trivial cofibration and ``H`` a fibration.

    The middle operad has colors ``(p, phi, q)`` for ``phi: F(p) -> q`` an
    isomorphism (stored by name), and hom-sets copied from ``P``.
    """
    _require_valid(F)
    P, Q = F.source, F.target
    colors = []
    label = {}
    iso = {}
    for p in P.colors:
        for phi in Q.isos_out_of(F.obj(p)):
            x = (p, phi.name, phi.output)
            colors.append(x)
            label[x] = p
            iso[x] = phi
    mid, down = _relabelled_operad(colors, label, P, P.symmetric)

    def g_obj(p):
        fp = F.obj(p)
        return (p, Q.identity(fp).name, fp)

    G = OperadFunctor(
        P,
        mid,
        {p: g_obj(p) for p in P.colors},
        {
            m: Morphism(m.name, Profile(tuple(g_obj(c) for c in m.inputs), g_obj(m.output)))
            for m in P.morphisms
        },
    )
    inv = Q.inverse_of
    hm = {}
    for m in mid.morphisms:
        body = compose(Q, F(down(m)), [inv[iso[x]] for x in m.inputs])
        hm[m] = compose(Q, iso[m.output], [body])
    H = OperadFunctor(mid, Q, {x: x[2] for x in colors}, hm)
    result = Factorization(G, H, mid)
    if verify:
        _verify(result, F, is_trivial_cofibration, is_fibration, "trivial cofibration", "fibration")
    return result


def factor_cof_trivfib(F: OperadFunctor, verify: bool = True) -> Factorization:
    """``F = H ∘ G`` with ``G`` a cofibration and ``H`` a trivial fibration.

    The middle operad has colors ``("P", p)`` and ``("Q", q)``, labelled by
    ``F(p)`` and ``q``, with hom-sets copied from ``Q`` along the labels.
    """
    _require_valid(F)
    P, Q = F.source, F.target
    label = {("P", p): F.obj(p) for p in P.colors}
    label.update({("Q", q): q for q in Q.colors})
    colors = list(label)
    mid, down = _relabelled_operad(colors, label, Q, Q.symmetric)

    def tag(p):
        return ("P", p)

    G = OperadFunctor(
        P,
        mid,
        {p: tag(p) for p in P.colors},
        {
            m: Morphism(F(m).name, Profile(tuple(tag(c) for c in m.inputs), tag(m.output)))
            for m in P.morphisms
        },
    )
    H = OperadFunctor(mid, Q, label, {m: down(m) for m in mid.morphisms})
    result = Factorization(G, H, mid)
    if verify:
        _verify(result, F, is_cofibration, is_trivial_fibration, "cofibration", "trivial fibration")
    return result


def _verify(fac: Factorization, F, first_ok, second_ok, first_name, second_name):
    rep = validate(fac.middle)
    if not rep.ok:
        raise AssertionError(f"middle operad invalid: {rep.violations[:3]}")
    check_functor(fac.first)
    check_functor(fac.second)
    if not first_ok(fac.first):
        raise AssertionError(f"first factor is not a {first_name}")
    if not second_ok(fac.second):
        raise AssertionError(f"second factor is not a {second_name}")
    if compose_functors(fac.second, fac.first) != F:
        raise AssertionError("factors do not compose to the input functor")
