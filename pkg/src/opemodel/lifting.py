"""Lifting problems: the two constructive solutions and exhaustive RLP."""
from __future__ import annotations

from dataclasses import dataclass

from .core import compose
from .errors import NotApplicable, SquareNotCommutative
from .functors import (
    OperadFunctor,
    check_functor,
    compose_functors,
    is_cofibration,
    is_fibration,
    is_trivial_cofibration,
    is_trivial_fibration,
    quasi_inverse,
    validate_functor,
)
from .search import Budget, iter_functors


@dataclass(frozen=True)
class LiftingSquare:
    """``right ∘ top == bottom ∘ left``::

        P --top--> R
        |          |
       left      right
        v          v
        Q -bottom-> S
    """

    left: OperadFunctor
    right: OperadFunctor
    top: OperadFunctor
    bottom: OperadFunctor

    def commutes(self) -> bool:
        if self.left.source != self.top.source or self.left.target != self.bottom.source:
            return False
        if self.right.source != self.top.target or self.right.target != self.bottom.target:
            return False
        return compose_functors(self.right, self.top) == compose_functors(self.bottom, self.left)

    def check(self):
        for f in (self.left, self.right, self.top, self.bottom):
            check_functor(f)
        if not self.commutes():
            raise SquareNotCommutative("right∘top differs from bottom∘left")
        return self

    def is_lift(self, H: OperadFunctor) -> bool:
        return (
            H.source == self.left.target
            and H.target == self.right.source
            and validate_functor(H).ok
            and compose_functors(H, self.left) == self.top
            and compose_functors(self.right, H) == self.bottom
        )


def _verified(sq: LiftingSquare, H: OperadFunctor) -> OperadFunctor:
    if not sq.is_lift(H):
        raise AssertionError("constructed lift does not make both triangles commute")
    return H


def solve_lift_trivfib(sq: LiftingSquare) -> OperadFunctor:
    """Lift against a trivial fibration: objects through the surjection,
    morphisms through the inverse hom-bijection."""
    sq.check()
    F, G, U, V = sq.left, sq.right, sq.top, sq.bottom
    if not is_cofibration(F) or not is_trivial_fibration(G):
        raise NotApplicable("needs a cofibration on the left and a trivial fibration on the right")
    Q, R = F.target, G.source
    back = {F.obj(p): p for p in F.source.colors}
    obj = {}
    for q in Q.colors:
        if q in back:
            obj[q] = U.obj(back[q])
        else:
            obj[q] = next(r for r in R.colors if G.obj(r) == V.obj(q))
    mm = {}
    for psi in Q.morphisms:
        pool = R.hom(tuple(obj[c] for c in psi.inputs), obj[psi.output])
        target = V(psi)
        mm[psi] = next(m for m in pool if G(m) == target)
    return _verified(sq, OperadFunctor(Q, R, obj, mm))


def solve_lift_trivcof(sq: LiftingSquare) -> OperadFunctor:
    """Lift a trivial cofibration against a fibration via a quasi-inverse of
    the left map and lifted isomorphisms ``beta_q : U F'(q) -> H(q)``."""
    sq.check()
    F, G, U, V = sq.left, sq.right, sq.top, sq.bottom
    if not is_trivial_cofibration(F) or not is_fibration(G):
        raise NotApplicable("needs a trivial cofibration on the left and a fibration on the right")
    Fp, alpha = quasi_inverse(F)
    Q, R = F.target, G.source
    back = {F.obj(p): p for p in F.source.colors}
    obj = {}
    beta = {}
    for q in Q.colors:
        if q in back:
            obj[q] = U.obj(back[q])
            beta[q] = R.identity(obj[q])
            continue
        want = V(alpha.components[q])
        start = U.obj(Fp.obj(q))
        b = next(m for m in R.isos_out_of(start) if G(m) == want)
        beta[q] = b
        obj[q] = b.output
    inv = R.inverse_of
    mm = {}
    for psi in Q.morphisms:
        body = compose(R, U(Fp(psi)), [inv[beta[c]] for c in psi.inputs])
        mm[psi] = compose(R, beta[psi.output], [body])
    return _verified(sq, OperadFunctor(Q, R, obj, mm))


# exhaustive search -----------------------------------------------------------------


def iter_squares(left: OperadFunctor, right: OperadFunctor, budget: Budget | None = None):
    """Every commutative square with the given vertical sides."""
    if budget is None:
        budget = Budget()
    P, Q = left.source, left.target
    R, S = right.source, right.target
    for bottom in iter_functors(Q, S, budget=budget):
        def obj_ok(a, r, bottom=bottom):
            return right.obj(r) == bottom.obj(left.obj(a))

        def mor_ok(m, n, bottom=bottom):
            return right(n) == bottom(left(m))

        for top in iter_functors(P, R, obj_ok, mor_ok, budget):
            yield LiftingSquare(left, right, top, bottom)


def find_lift(sq: LiftingSquare, budget: Budget | None = None) -> OperadFunctor | None:
    """First diagonal filler in canonical order, or ``None``."""
    F, G, U, V = sq.left, sq.right, sq.top, sq.bottom
    fixed_obj: dict = {}
    for a in F.source.colors:
        fixed_obj.setdefault(F.obj(a), set()).add(U.obj(a))
    fixed_mor: dict = {}
    for m in F.source.morphisms:
        fixed_mor.setdefault(F(m), set()).add(U(m))

    def obj_ok(q, r):
        return G.obj(r) == V.obj(q) and (q not in fixed_obj or fixed_obj[q] == {r})

    def mor_ok(psi, n):
        return G(n) == V(psi) and (psi not in fixed_mor or fixed_mor[psi] == {n})

    for H in iter_functors(F.target, G.source, obj_ok, mor_ok, budget):
        # identities are forced by the search, so check them against the top map
        if compose_functors(H, F) == U:
            return H
    return None


def rlp_counterexample(G: OperadFunctor, F: OperadFunctor, budget: int | None = None):
    """First square (left ``G``, right ``F``) with no lift, or ``None``."""
    b = Budget(budget)
    for sq in iter_squares(G, F, b):
        if find_lift(sq, b) is None:
            return sq
    return None


def has_rlp(G: OperadFunctor, F: OperadFunctor, budget: int | None = None) -> bool:
    """Whether ``F`` has the right lifting property against ``G``."""
    return rlp_counterexample(G, F, budget) is None
