"""A fixed, seeded corpus of small operads, functors and categories.

Random operads have at most 3 colors, arities at most 2 and at most 3
morphisms per nonempty hom-set.  They come in two flavours: thin operads
(one morphism per profile, profiles closed under composition) and free
operads on acyclic collections.  On top of these the corpus adds the
standard operads, unary operads copied from small categories and
"inflations" that duplicate colors of an operad.  Functors are enumerated
exhaustively between pairs of corpus operads with a per-pair cap.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from . import generators as gen
from .categories import (
    j_lower,
    monoid_category,
    terminal_category,
    thin_category,
    walking_arrow,
    walking_iso_category,
)
from .core import FiniteOperad, Morphism, Profile, validate
from .errors import OperadError, SearchBudgetExceeded
from .factorization import _relabelled_operad
from .functors import OperadFunctor, compose_functors, validate_functor
from .presented.presentation import ColoredCollection, free_finite_operad
from .search import Budget, iter_functors

SEED = 1729
COLORS = ("x", "y", "z")
MAX_ARITY = 2
MAX_HOM = 3


@dataclass
class Corpus:
    operads: dict = field(default_factory=dict)
    functors: list = field(default_factory=list)
    categories: dict = field(default_factory=dict)

    def symmetric_operads(self) -> dict:
        return {k: P for k, P in self.operads.items() if P.symmetric}

    def unary_operads(self) -> dict:
        return {k: P for k, P in self.operads.items() if P.is_unary_only()}


def _admissible(P: FiniteOperad) -> bool:
    return P.max_arity <= MAX_ARITY and all(len(ms) <= MAX_HOM for ms in P.homs.values())


# random thin operads ----------------------------------------------------------


def _close_profiles(colors, profiles, symmetric):
    """Close a set of ``(inputs, output)`` profiles under composition (and
    permutation); ``None`` if the closure leaves arity 2."""
    have = set(profiles) | {((c,), c) for c in colors}
    while True:
        new = set()
        for ins, out in have:
            pools = [[p for p in have if p[1] == c] for c in ins]
            for inner in product(*pools):
                got = (tuple(c for p in inner for c in p[0]), out)
                if got not in have:
                    new.add(got)
            if symmetric and len(ins) == 2:
                flip = ((ins[1], ins[0]), out)
                if flip not in have:
                    new.add(flip)
        if not new:
            return have
        if any(len(p[0]) > MAX_ARITY for p in new):
            return None
        have |= new


def random_thin_operad(rng: random.Random, symmetric=False):
    colors = list(COLORS[: rng.randint(1, 3)])
    k = rng.randint(1, 4)
    profiles = set()
    for _ in range(k):
        n = rng.choice((0, 1, 1, 2))
        profiles.add((tuple(rng.choice(colors) for _ in range(n)), rng.choice(colors)))
    closed = _close_profiles(colors, profiles, symmetric)
    if closed is None:
        return None
    named = {}
    for i, p in enumerate(sorted(p for p in closed if p != ((p[1],), p[1]))):
        named[p] = f"t{i}"
    P = gen.thin_operad(colors, named, symmetric)
    return P if validate(P).ok and _admissible(P) else None


# random free operads ------------------------------------------------------------


def random_free_operad(rng: random.Random, symmetric=False):
    """Free operad on a random collection whose inputs sit strictly below
    their output in color order, so the free operad is finite."""
    colors = list(COLORS[: rng.randint(1, 3)])
    gens = []
    for i in range(rng.randint(1, 3)):
        out = rng.randrange(len(colors))
        below = colors[:out]
        n = rng.choice((0, 1, 2)) if below else 0
        ins = tuple(rng.choice(below) for _ in range(n))
        gens.append(Morphism(f"g{i}", Profile(ins, colors[out])))
    try:
        P = free_finite_operad(ColoredCollection(colors, gens), symmetric, max_size=4)
    except OperadError:
        return None
    return P if _admissible(P) else None


# categories and inflations ---------------------------------------------------


def category_corpus() -> dict:
    z2 = monoid_category(["e", "s"], {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"})
    idem = monoid_category(["e", "p"], {("e", "e"): "e", ("e", "p"): "p", ("p", "e"): "p", ("p", "p"): "p"})
    return {
        "terminal": terminal_category(),
        "walking_arrow": walking_arrow(),
        "walking_iso": walking_iso_category(),
        "z2": z2,
        "idempotent": idem,
        "chain3": thin_category(["0", "1", "2"], {("0", "1"): "a", ("1", "2"): "b", ("0", "2"): "c"}),
        "discrete2": thin_category(["0", "1"], {}),
        "cospan": thin_category(["0", "1", "2"], {("0", "2"): "l", ("1", "2"): "r"}),
        "iso_plus": thin_category(
            ["0", "1", "2"],
            {("0", "1"): "u", ("1", "0"): "v", ("0", "2"): "p", ("1", "2"): "q"},
        ),
    }


def inflation(P: FiniteOperad, copies: dict):
    """Duplicate colors of ``P``: ``copies[c]`` is the number of copies of
    ``c`` (default 1).  Returns the inflated operad and its projection,
    a trivial fibration."""
    label = {}
    for c in P.colors:
        for i in range(copies.get(c, 1)):
            label[c if i == 0 else f"{c}_{i}"] = c
    Q, down = _relabelled_operad(list(label), label, P, P.symmetric)
    F = OperadFunctor(Q, P, label, {m: down(m) for m in Q.morphisms})
    return Q, F


# assembly --------------------------------------------------------------------------


def _operads(rng: random.Random, symmetric: bool, n_thin: int, n_free: int) -> dict:
    tag = "s" if symmetric else "n"
    out = {}
    for name, P in gen.standard_operads(symmetric, MAX_ARITY).items():
        out[f"{tag}:{name}"] = P
    for name, C in category_corpus().items():
        out[f"{tag}:cat_{name}"] = j_lower(C, symmetric)
    seen = set()
    i = 0
    while i < n_thin:
        P = random_thin_operad(rng, symmetric)
        if P is not None and P._key not in seen:
            seen.add(P._key)
            out[f"{tag}:thin{i}"] = P
            i += 1
    i = 0
    while i < n_free:
        P = random_free_operad(rng, symmetric)
        if P is not None and P._key not in seen:
            seen.add(P._key)
            out[f"{tag}:free{i}"] = P
            i += 1
    return out


def _structural(symmetric: bool, ops: dict, tag: str) -> list:
    """Hand-picked functors: generating maps, inflations, their composites."""
    fs = [gen.star_to_h("a", symmetric), gen.star_to_h("b", symmetric), gen.h_to_star(symmetric)]
    fs += gen.generating_cofibrations(MAX_ARITY, symmetric)
    for name in (f"{tag}:walking_iso", f"{tag}:ar1", f"{tag}:ar2", f"{tag}:cat_z2", f"{tag}:cat_walking_arrow"):
        P = ops[name]
        first = P.colors[0]
        _, F = inflation(P, {first: 2})
        fs.append(F)
        if name.endswith("walking_iso"):
            fs.append(compose_functors(gen.h_to_star(symmetric), F))
    return fs


@lru_cache(maxsize=None)
def build_corpus(seed: int = SEED, per_pair: int = 3, n_thin: int = 8, n_free: int = 8) -> Corpus:
    """The deterministic corpus used by the tests and the acceptance suite."""
    rng = random.Random(seed)
    corpus = Corpus(categories=category_corpus())
    seen = set()

    def add(F):
        key = (F.source._key, F.target._key, tuple(sorted(F.object_map.items(), key=repr)),
               tuple(sorted(((m, F(m)) for m in F.source.morphisms), key=repr)))
        if key not in seen:
            seen.add(key)
            corpus.functors.append(F)

    for symmetric in (False, True):
        tag = "s" if symmetric else "n"
        ops = _operads(rng, symmetric, n_thin, n_free)
        corpus.operads.update(ops)
        for F in _structural(symmetric, ops, tag):
            add(F)
        names = sorted(ops)
        pairs = [(a, b) for a in names for b in names]
        for a, b in pairs:
            try:
                found = []
                for F in iter_functors(ops[a], ops[b], budget=Budget(20_000)):
                    found.append(F)
                    if len(found) >= 50:
                        break
            except SearchBudgetExceeded:
                pass
            if found:
                picks = found if len(found) <= per_pair else rng.sample(found, per_pair)
                for F in picks:
                    add(F)
    corpus.functors = [F for F in corpus.functors if validate_functor(F).ok]
    return corpus


def composable_pairs(functors: list, limit: int | None = None, seed: int = SEED) -> list:
    """Pairs ``(F, G)`` with ``F.target`` equal to ``G.source``."""
    by_source: dict = {}
    for G in functors:
        by_source.setdefault(G.source._key, []).append(G)
    pairs = [(F, G) for F in functors for G in by_source.get(F.target._key, ())]
    if limit is not None and len(pairs) > limit:
        pairs = random.Random(seed).sample(pairs, limit)
    return pairs
