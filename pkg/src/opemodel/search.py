"""Backtracking enumeration of functors between finite operads."""
from __future__ import annotations

import os
from typing import Callable, Iterator

from .core import FiniteOperad
from .errors import SearchBudgetExceeded
from .functors import OperadFunctor

DEFAULT_BUDGET = 1_000_000


def default_budget() -> int:
    raw = os.environ.get("OPEMODEL_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


class Budget:
    """Counts candidate assignments tried; raises once the limit is passed."""

    def __init__(self, limit: int | None = None):
        self.limit = default_budget() if limit is None else int(limit)
        self.used = 0

    def spend(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise SearchBudgetExceeded(
                f"search exceeded its budget of {self.limit} candidate maps"
            )


def iter_functors(
    source: FiniteOperad,
    target: FiniteOperad,
    object_ok: Callable | None = None,
    morphism_ok: Callable | None = None,
    budget: Budget | None = None,
) -> Iterator[OperadFunctor]:
    """Yield every functor ``source -> target`` accepted by the filters.

    ``object_ok(c, d)`` and ``morphism_ok(m, n)`` restrict the image of each
    color and non-identity morphism.  Functors come out in a canonical order.
    """
    if budget is None:
        budget = Budget()
    if source.symmetric and not target.symmetric:
        return
    colors = list(source.colors)
    cidx = {c: i for i, c in enumerate(colors)}
    ids = source.identity_set
    movers = [m for m in source.morphisms if m not in ids]
    midx = {m: i for i, m in enumerate(movers)}

    # morphisms become checkable once their last color is placed
    by_last_color: dict = {}
    for m in movers:
        last = max(cidx[c] for c in (*m.inputs, m.output))
        by_last_color.setdefault(last, []).append(m)

    # table entries become checkable once their last mover is placed
    checks: dict = {}
    for (outer, inners), r in source.composition.items():
        involved = [x for x in (outer, *inners, r) if x in midx]
        if not involved:
            continue
        checks.setdefault(max(midx[x] for x in involved), []).append(("c", outer, inners, r))
    if source.symmetric:
        for (m, i), r in source.symmetry.items():
            involved = [x for x in (m, r) if x in midx]
            if involved:
                checks.setdefault(max(midx[x] for x in involved), []).append(("s", m, i, r))

    tcolors = target.colors
    obj: dict = {}
    mor: dict = {}

    def candidates(m):
        prof = (tuple(obj[c] for c in m.inputs), obj[m.output])
        pool = target.hom(*prof)
        if morphism_ok is not None:
            pool = [n for n in pool if morphism_ok(m, n)]
        return pool

    def value(x):
        return mor[x] if x in midx else target.identities[obj[x.output]]

    def entry_ok(e):
        if e[0] == "c":
            _, outer, inners, r = e
            got = target.composition.get((value(outer), tuple(value(x) for x in inners)))
        else:
            _, m, i, r = e
            got = target.symmetry.get((value(m), i))
        return got == value(r)

    pools: list = [None] * len(movers)

    def assign_morphisms(k):
        if k == len(movers):
            mm = {m: value(m) for m in source.morphisms}
            yield OperadFunctor(source, target, dict(obj), mm)
            return
        m = movers[k]
        for n in pools[k]:
            budget.spend()
            mor[m] = n
            if all(entry_ok(e) for e in checks.get(k, ())):
                yield from assign_morphisms(k + 1)
        mor.pop(m, None)

    def assign_objects(k):
        if k == len(colors):
            for i, m in enumerate(movers):
                pools[i] = candidates(m)
            yield from assign_morphisms(0)
            return
        c = colors[k]
        for d in tcolors:
            if object_ok is not None and not object_ok(c, d):
                continue
            budget.spend()
            obj[c] = d
            if all(candidates(m) for m in by_last_color.get(k, ())):
                yield from assign_objects(k + 1)
        obj.pop(c, None)

    yield from assign_objects(0)


def first_functor(source, target, object_ok=None, morphism_ok=None, budget=None):
    for F in iter_functors(source, target, object_ok, morphism_ok, budget):
        return F
    return None
