"""Bidirectional relation rewriting on normal-form terms.

Relations are ground, so a rewrite step finds one side of a relation inside
a term (its leaves act as holes that match whole subtrees) and replaces it
by the other side.  Permutations carried by relation sides are folded into
the root permutation of the rewritten term.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .. import perms
from ..core import order_key
from ..errors import ProfileMismatch
from .terms import (
    Leaf,
    Node,
    generator_counts,
    leaf_count,
    nf_inputs,
    nf_key,
    normal_form,
    root,
)


class Rule(NamedTuple):
    """``lhs -> rhs`` where hole ``i`` of ``lhs`` becomes hole ``rho[i]`` of ``rhs``."""

    lhs: object
    rhs: object
    rho: tuple


def build_rules(pres) -> dict:
    """Rules indexed by the root generator of their pattern (``None`` for
    bare-leaf patterns, which match any subtree of the right color)."""
    index: dict = {}
    for lhs, rhs in pres.relations:
        a, ta = normal_form(lhs)
        b, tb = normal_form(rhs)
        rho = perms.compose(b, perms.inverse(a))
        for pat, rep, r in ((ta, tb, rho), (tb, ta, perms.inverse(rho))):
            key = pat.gen if isinstance(pat, Node) else None
            index.setdefault(key, []).append(Rule(pat, rep, r))
    for v in index.values():
        v.sort(key=lambda r: (nf_key((perms.identity(leaf_count(r.lhs)), r.lhs)), nf_key((r.rho, r.rhs))))
    return index


def _subtrees(t, path=(), offset=0):
    yield path, offset, t
    if isinstance(t, Node):
        o = offset
        for i, k in enumerate(t.children):
            yield from _subtrees(k, path + (i,), o)
            o += leaf_count(k)


def _match(pat, t, binds) -> bool:
    if isinstance(pat, Leaf):
        if root(t) != pat.color:
            return False
        binds.append(t)
        return True
    if not isinstance(t, Node) or t.gen != pat.gen:
        return False
    return all(_match(p, k, binds) for p, k in zip(pat.children, t.children))


def _replace(t, path, new):
    if not path:
        return new
    i = path[0]
    kids = list(t.children)
    kids[i] = _replace(kids[i], path[1:], new)
    return Node(t.gen, tuple(kids))


def _fill(rep, placed):
    it = iter(placed)

    def go(x):
        if isinstance(x, Leaf):
            return next(it)
        return Node(x.gen, tuple(go(k) for k in x.children))

    return go(rep)


def neighbors(pres, nf):
    """Every term one relation application away from ``nf``."""
    rules = pres.rules
    p, body = nf
    leaf_rules = rules.get(None, ())
    for path, offset, sub in _subtrees(body):
        candidates = list(leaf_rules)
        if isinstance(sub, Node):
            candidates = list(rules.get(sub.gen, ())) + candidates
        for rule in candidates:
            binds: list = []
            if not _match(rule.lhs, sub, binds):
                continue
            h = len(binds)
            sizes = [leaf_count(b) for b in binds]
            old_off = []
            acc = 0
            for s in sizes:
                old_off.append(acc)
                acc += s
            at_hole = perms.inverse(rule.rho)  # rhs hole -> bound subtree
            placed = [binds[at_hole[k]] for k in range(h)]
            new_off = [0] * h
            acc = 0
            for k in range(h):
                new_off[at_hole[k]] = acc
                acc += sizes[at_hole[k]]
            remap = {}
            for i in range(h):
                for r in range(sizes[i]):
                    remap[offset + old_off[i] + r] = offset + new_off[i] + r
            new_body = _replace(body, path, _fill(rule.rhs, placed))
            new_p = tuple(remap.get(x, x) for x in p)
            yield new_p, new_body


# invariants --------------------------------------------------------------------


class _Span:
    """Row-reduced rational span of relation count differences."""

    def __init__(self, gens, relations):
        self.index = {g: i for i, g in enumerate(gens)}
        self.pivots: list = []  # (column, row) with row[column] == 1
        for lhs, rhs in relations:
            self._add(self.vector(lhs), self.vector(rhs))

    def vector(self, t):
        v = [Fraction(0)] * len(self.index)
        for g, n in generator_counts(t).items():
            v[self.index[g]] += n
        return v

    def _reduce(self, v):
        v = list(v)
        for col, row in self.pivots:
            if v[col]:
                f = v[col]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def _add(self, a, b):
        v = self._reduce([x - y for x, y in zip(a, b)])
        for col, x in enumerate(v):
            if x:
                row = [y / x for y in v]
                # keep existing pivot rows reduced in the new column
                self.pivots = [
                    (c, [p - r[col] * q for p, q in zip(r, row)]) if r[col] else (c, r)
                    for c, r in self.pivots
                ]
                self.pivots.append((col, row))
                return

    def contains(self, v) -> bool:
        return not any(self._reduce(v))


def count_span(pres) -> _Span:
    span = pres.__dict__.get("_count_span")
    if span is None:
        span = _Span(pres.generators, pres.relations)
        pres.__dict__["_count_span"] = span
    return span


# decision ----------------------------------------------------------------------


class Verdict(enum.Enum):
    EQUAL = "Equal"
    DISTINCT = "Distinct"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    bound: int
    steps: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.verdict is Verdict.EQUAL

    def __str__(self):
        return self.verdict.value


def decide_equal(pres, t1, t2, bound: int, models=(), max_terms: int = 200_000) -> Decision:
    """Semi-decide equality of two terms in the presented operad.

    ``Equal`` when at most ``bound`` relation applications connect them,
    ``Distinct`` when an invariant separates them (hom-set, a checked model,
    generator counts outside the span of the relations, or a fully explored
    class), ``Unknown`` otherwise.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    a, b = normal_form(t1), normal_form(t2)
    ia, ib = nf_inputs(a), nf_inputs(b)
    if root(a[1]) != root(b[1]) or sorted(ia, key=order_key) != sorted(ib, key=order_key):
        raise ProfileMismatch(
            f"({', '.join(map(str, ia))}; {root(a[1])}) vs ({', '.join(map(str, ib))}; {root(b[1])})"
        )
    if a == b:
        return Decision(Verdict.EQUAL, bound, 0, "identical normal forms")
    if ia != ib:
        return Decision(Verdict.DISTINCT, bound, None, "different hom-sets")
    for m in models:
        if m.evaluate(t1) != m.evaluate(t2):
            return Decision(Verdict.DISTINCT, bound, None, "separated by a model")
    span = count_span(pres)
    va, vb = span.vector(a[1]), span.vector(b[1])
    if not span.contains([x - y for x, y in zip(va, vb)]):
        return Decision(Verdict.DISTINCT, bound, None, "generator counts")

    seen = [{a: 0}, {b: 0}]
    frontier = [[a], [b]]
    depth = [0, 0]
    total = 2
    while depth[0] + depth[1] < bound:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        other = seen[1 - side]
        nxt = []
        for t in frontier[side]:
            for u in neighbors(pres, t):
                if u in seen[side]:
                    continue
                seen[side][u] = depth[side] + 1
                if u in other:
                    steps = depth[side] + 1 + other[u]
                    return Decision(Verdict.EQUAL, bound, steps, "rewrite path")
                nxt.append(u)
                total += 1
                if total > max_terms:
                    return Decision(Verdict.UNKNOWN, bound, None, "term budget exhausted")
        depth[side] += 1
        if not nxt:
            return Decision(Verdict.DISTINCT, bound, None, "equivalence class fully explored")
        frontier[side] = sorted(nxt, key=nf_key)
    return Decision(Verdict.UNKNOWN, bound, None, "no rewrite path within bound")
