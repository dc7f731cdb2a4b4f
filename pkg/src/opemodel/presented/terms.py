"""Rooted-tree terms over a colored collection.

A term is a :class:`Leaf` (the identity on a color), a :class:`Node` (a
generator applied to one subterm per input) or, for symmetric operads, a
:class:`Perm` acting on a subterm.  Every term has a normal form
``(perm, planar)`` with all permutations pushed to the root: input ``i`` of
the term is planar leaf ``perm[i]``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Union

from .. import perms
from ..core import Morphism, Profile, order_key
from ..errors import ColorMismatch


@dataclass(frozen=True)
class Leaf:
    color: Hashable

    def __str__(self):
        return f"{self.color}"


@dataclass(frozen=True)
class Node:
    gen: Morphism
    children: tuple

    def __post_init__(self):
        kids = tuple(self.children)
        object.__setattr__(self, "children", kids)
        if len(kids) != self.gen.arity:
            raise ColorMismatch(
                f"{self.gen} takes {self.gen.arity} children, got {len(kids)}"
            )
        for i, (c, k) in enumerate(zip(self.gen.inputs, kids)):
            if root(k) != c:
                raise ColorMismatch(
                    f"child {i + 1} of {self.gen.name} has root {root(k)!r}, expected {c!r}"
                )

    def __str__(self):
        return f"{_name(self.gen.name)}({', '.join(map(str, self.children))})"


@dataclass(frozen=True)
class Perm:
    perm: tuple
    term: "TreeTerm"

    def __post_init__(self):
        p = tuple(self.perm)
        object.__setattr__(self, "perm", p)
        if len(p) != leaf_count(self.term) or not perms.is_permutation(p):
            raise ColorMismatch(f"{p} is not a permutation of the {leaf_count(self.term)} leaves")

    def __str__(self):
        return "[" + " ".join(str(i + 1) for i in self.perm) + "]" + str(self.term)


TreeTerm = Union[Leaf, Node, Perm]


def _name(n) -> str:
    if isinstance(n, tuple):
        return "⊗".join(_name(x) for x in n[1:]) if n and n[0] in ("L", "R") else ".".join(map(_name, n))
    return str(n)


def root(t: TreeTerm):
    while isinstance(t, Perm):
        t = t.term
    return t.color if isinstance(t, Leaf) else t.gen.output


def leaf_count(t: TreeTerm) -> int:
    if isinstance(t, Leaf):
        return 1
    if isinstance(t, Perm):
        return leaf_count(t.term)
    return sum(leaf_count(k) for k in t.children)


def planar_leaves(t: TreeTerm) -> tuple:
    if isinstance(t, Leaf):
        return (t.color,)
    if isinstance(t, Perm):
        return planar_leaves(t.term)
    out = ()
    for k in t.children:
        out += planar_leaves(k)
    return out


def size(t: TreeTerm) -> int:
    """Number of generator nodes."""
    if isinstance(t, Leaf):
        return 0
    if isinstance(t, Perm):
        return size(t.term)
    return 1 + sum(size(k) for k in t.children)


def generator_counts(t: TreeTerm) -> Counter:
    out: Counter = Counter()
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, Perm):
            stack.append(x.term)
        elif isinstance(x, Node):
            out[x.gen] += 1
            stack.extend(x.children)
    return out


def generators_of(t: TreeTerm) -> set:
    return set(generator_counts(t))


def is_planar(t: TreeTerm) -> bool:
    if isinstance(t, Perm):
        return False
    if isinstance(t, Leaf):
        return True
    return all(is_planar(k) for k in t.children)


# normal forms ----------------------------------------------------------------


def normal_form(t: TreeTerm) -> tuple:
    """``(perm, planar)`` denoting the same morphism as ``t``."""
    if isinstance(t, Leaf):
        return (0,), t
    if isinstance(t, Perm):
        p, body = normal_form(t.term)
        return perms.compose(p, t.perm), body
    kids = [normal_form(k) for k in t.children]
    out = []
    offset = 0
    for p, body in kids:
        out.extend(offset + x for x in p)
        offset += leaf_count(body)
    return tuple(out), Node(t.gen, tuple(body for _, body in kids))


def from_normal_form(nf) -> TreeTerm:
    p, body = nf
    return body if perms.is_identity(p) else Perm(p, body)


def canonical(t: TreeTerm) -> TreeTerm:
    return from_normal_form(normal_form(t))


def nf_inputs(nf) -> tuple:
    p, body = nf
    return perms.act(planar_leaves(body), p)


def inputs(t: TreeTerm) -> tuple:
    return nf_inputs(normal_form(t))


def profile(t: TreeTerm) -> Profile:
    return Profile(inputs(t), root(t))


def nf_key(nf):
    """Sort key for normal forms: smaller trees first, then lexicographic."""
    p, body = nf
    return (size(body), _tree_key(body), p)


def _tree_key(t):
    if isinstance(t, Leaf):
        return (0, order_key(t.color))
    return (1, order_key(t.gen), tuple(_tree_key(k) for k in t.children))


# grafting --------------------------------------------------------------------


def substitute_leaves(body: TreeTerm, replacements) -> TreeTerm:
    """Replace planar leaf ``i`` of ``body`` by ``replacements[i]``."""
    it = iter(replacements)

    def go(t):
        if isinstance(t, Leaf):
            return next(it)
        return Node(t.gen, tuple(go(k) for k in t.children))

    return go(body)


def graft_nf(outer, inners) -> tuple:
    p0, t0 = outer
    n = len(p0)
    if len(inners) != n:
        raise ColorMismatch(f"grafting {len(inners)} terms into {n} inputs")
    ins = perms.act(planar_leaves(t0), p0)
    for j, (c, (pj, tj)) in enumerate(zip(ins, inners)):
        if root(tj) != c:
            raise ColorMismatch(f"input {j + 1} has color {c!r} but the term has root {root(tj)!r}")
    at_leaf = perms.inverse(p0)  # planar leaf -> inner index
    placed = [inners[at_leaf[l]][1] for l in range(n)]
    offsets = []
    acc = 0
    for body in placed:
        offsets.append(acc)
        acc += leaf_count(body)
    perm = []
    for j, (pj, _) in enumerate(inners):
        base = offsets[p0[j]]
        perm.extend(base + x for x in pj)
    return tuple(perm), substitute_leaves(t0, placed)


def graft(outer: TreeTerm, inners) -> TreeTerm:
    """Plug ``inners[j]`` into input ``j`` of ``outer`` (free operad composition)."""
    nf = graft_nf(normal_form(outer), [normal_form(t) for t in inners])
    return from_normal_form(nf)


def corolla(gen: Morphism) -> Node:
    """A single generator with bare leaves."""
    return Node(gen, tuple(Leaf(c) for c in gen.inputs))
