"""Functors between finite operads and the three model-structure classes."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .core import (
    FiniteOperad,
    Morphism,
    Profile,
    Violation,
    ValidationReport,
    compose,
)
from .errors import InvalidFunctor, NotTrivialCofibration


class OperadFunctor:
    """Object map plus morphism map between two finite operads.

    Construction does not validate; use :func:`check_functor` or
    :meth:`validate`.
    """

    def __init__(self, source: FiniteOperad, target: FiniteOperad, object_map, morphism_map):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.morphism_map = dict(morphism_map)

    def obj(self, c):
        return self.object_map[c]

    def __call__(self, m: Morphism) -> Morphism:
        return self.morphism_map[m]

    def map_profile(self, p: Profile) -> Profile:
        return Profile(tuple(self.object_map[c] for c in p.inputs), self.object_map[p.output])

    def __eq__(self, other):
        if not isinstance(other, OperadFunctor):
            return NotImplemented
        return (
            self.object_map == other.object_map
            and self.morphism_map == other.morphism_map
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash((frozenset(self.object_map.items()), len(self.morphism_map)))

    def __repr__(self):
        return f"<OperadFunctor {self.source!r} -> {self.target!r}>"

    def validate(self) -> ValidationReport:
        return validate_functor(self)

    @cached_property
    def image_colors(self) -> frozenset:
        return frozenset(self.object_map.values())


def validate_functor(F: OperadFunctor) -> ValidationReport:
    P, Q = F.source, F.target
    out = []
    tcolors = set(Q.colors)
    for c in P.colors:
        if c not in F.object_map:
            out.append(Violation("object-map-total", (c,)))
        elif F.object_map[c] not in tcolors:
            out.append(Violation("object-map-target", (c, F.object_map[c])))
    if out:
        return ValidationReport(tuple(out))
    known = Q.morphism_set
    for m in P.morphisms:
        n = F.morphism_map.get(m)
        if n is None:
            out.append(Violation("morphism-map-total", (m,)))
        elif n not in known:
            out.append(Violation("morphism-map-target", (m, n)))
        elif n.profile != F.map_profile(m.profile):
            out.append(Violation("profile", (m, n)))
    if out:
        return ValidationReport(tuple(out))
    for c in P.colors:
        if F(P.identity(c)) != Q.identity(F.obj(c)):
            out.append(Violation("identity", (c,)))
    for (outer, inners), r in P.composition.items():
        img = Q.composition.get((F(outer), tuple(F(m) for m in inners)))
        if img != F(r):
            out.append(Violation("composition", (outer, inners)))
            if len(out) > 20:
                break
    if P.symmetric:
        if not Q.symmetric:
            out.append(Violation("symmetric", (), "symmetric source, planar target"))
        else:
            for (m, i), r in P.symmetry.items():
                if Q.symmetry.get((F(m), i)) != F(r):
                    out.append(Violation("symmetry", (m, i)))
    return ValidationReport(tuple(out))


def check_functor(F: OperadFunctor) -> OperadFunctor:
    rep = validate_functor(F)
    if not rep.ok:
        raise InvalidFunctor("; ".join(map(str, rep.violations[:5])))
    return F


def identity_functor(P: FiniteOperad) -> OperadFunctor:
    return OperadFunctor(P, P, {c: c for c in P.colors}, {m: m for m in P.morphisms})


def compose_functors(G: OperadFunctor, F: OperadFunctor) -> OperadFunctor:
    """``G ∘ F``."""
    if F.target != G.source:
        raise InvalidFunctor("functors are not composable")
    return OperadFunctor(
        F.source,
        G.target,
        {c: G.obj(F.obj(c)) for c in F.source.colors},
        {m: G(F(m)) for m in F.source.morphisms},
    )


# classes -------------------------------------------------------------------


def is_cofibration(F: OperadFunctor) -> bool:
    return len(set(F.object_map.values())) == len(F.object_map)


def is_surjective_on_objects(F: OperadFunctor) -> bool:
    return set(F.object_map.values()) == set(F.target.colors)


def is_fibration(F: OperadFunctor) -> bool:
    """Every isomorphism out of an image color lifts to one out of the source."""
    P, Q = F.source, F.target
    for p in P.colors:
        lifted = {F(m) for m in P.isos_out_of(p)}
        for psi in Q.isos_out_of(F.obj(p)):
            if psi not in lifted:
                return False
    return True


def fibration_witness(F: OperadFunctor, p, psi) -> Morphism | None:
    """First isomorphism out of ``p`` mapping to ``psi`` (canonical order)."""
    for m in F.source.isos_out_of(p):
        if F(m) == psi:
            return m
    return None


def _fibers(F: OperadFunctor) -> dict:
    out: dict = {}
    for c in F.source.colors:
        out.setdefault(F.obj(c), []).append(c)
    return out


def is_fully_faithful(F: OperadFunctor) -> bool:
    """Every component ``P(p1..pn; p) -> Q(Fp1..Fpn; Fp)`` is a bijection.

    Source profiles with an empty hom-set count too: they must sit over an
    empty target hom-set.
    """
    P, Q = F.source, F.target
    fib = _fibers(F)
    for prof, targets in Q.homs.items():
        pools = [fib.get(c, ()) for c in (*prof.inputs, prof.output)]
        if any(not pool for pool in pools):
            continue
        tset = set(targets)
        for choice in product(*pools):
            sprof = Profile(tuple(choice[:-1]), choice[-1])
            src = P.homs.get(sprof, ())
            if len(src) != len(targets):
                return False
            if {F(m) for m in src} != tset:
                return False
    return True


def is_essentially_surjective(F: OperadFunctor) -> bool:
    img = F.image_colors
    return all(any(c in img for c in cls) for cls in F.target.color_classes)


def is_weak_equivalence(F: OperadFunctor) -> bool:
    return is_fully_faithful(F) and is_essentially_surjective(F)


def is_trivial_fibration(F: OperadFunctor) -> bool:
    return is_surjective_on_objects(F) and is_fully_faithful(F)


def is_trivial_cofibration(F: OperadFunctor) -> bool:
    return is_cofibration(F) and is_weak_equivalence(F)


def classify(F: OperadFunctor) -> dict:
    ff = is_fully_faithful(F)
    es = is_essentially_surjective(F)
    cof = is_cofibration(F)
    return {
        "cofibration": cof,
        "fibration": is_fibration(F),
        "weak_equivalence": ff and es,
        "fully_faithful": ff,
        "essentially_surjective": es,
        "trivial_fibration": ff and is_surjective_on_objects(F),
        "trivial_cofibration": cof and ff and es,
    }


# natural isomorphisms ------------------------------------------------------


@dataclass(frozen=True)
class NaturalIso:
    """Components ``alpha_c : F(c) -> G(c)`` for parallel functors F, G."""

    source: OperadFunctor
    target: OperadFunctor
    components: dict

    def validate(self) -> ValidationReport:
        F, G = self.source, self.target
        Q = F.target
        out = []
        if F.source != G.source or F.target != G.target:
            return ValidationReport((Violation("parallel", ()),))
        inv = Q.inverse_of
        for c in F.source.colors:
            a = self.components.get(c)
            if a is None or a.profile != Profile((F.obj(c),), G.obj(c)):
                out.append(Violation("component-profile", (c, a)))
            elif a not in inv:
                out.append(Violation("component-invertible", (c, a)))
        if out:
            return ValidationReport(tuple(out))
        for psi in F.source.morphisms:
            lhs = compose(Q, self.components[psi.output], [F(psi)])
            rhs = compose(Q, G(psi), [self.components[c] for c in psi.inputs])
            if lhs != rhs:
                out.append(Violation("naturality", (psi,)))
        return ValidationReport(tuple(out))


def quasi_inverse(F: OperadFunctor) -> tuple:
    """``(F', alpha)`` with ``F'∘F = id`` and ``alpha: F∘F' => id``.

    ``alpha`` is the identity on image colors.  Elsewhere the representative
    and the isomorphism are the first ones in canonical order.
    """
    if not is_trivial_cofibration(F):
        raise NotTrivialCofibration("quasi_inverse needs a trivial cofibration")
    P, Q = F.source, F.target
    back = {F.obj(p): p for p in P.colors}
    obj = {}
    alpha = {}
    for q in Q.colors:
        if q in back:
            obj[q] = back[q]
            alpha[q] = Q.identity(q)
            continue
        best = None
        for p in P.colors:
            for m in Q.isos_out_of(F.obj(p)):
                if m.output == q:
                    best = (p, m)
                    break
            if best:
                break
        assert best is not None, "essential surjectivity guarantees a representative"
        obj[q], alpha[q] = best
    # hom bijections of F, inverted
    preimage = {F(m): m for m in P.morphisms}
    inv = Q.inverse_of
    mm = {}
    for psi in Q.morphisms:
        conj = compose(Q, psi, [alpha[c] for c in psi.inputs])
        conj = compose(Q, inv[alpha[psi.output]], [conj])
        mm[psi] = preimage[conj]
    Fp = OperadFunctor(Q, P, obj, mm)
    FFp = compose_functors(F, Fp)
    nat = NaturalIso(FFp, identity_functor(Q), alpha)
    return Fp, nat
