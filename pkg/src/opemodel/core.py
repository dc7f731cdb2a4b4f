"""Finite colored operads stored as total composition tables."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple

from . import perms
from .errors import MalformedTable, NotComposable, NotSymmetric

Color = Hashable


def order_key(x):
    """Total order on the mixed values used as colors and names."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, tuple):
        return (3, tuple(order_key(y) for y in x))
    if x is None:
        return (-1,)
    return (4, repr(x))


class Profile(NamedTuple):
    inputs: tuple
    output: Color

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def __str__(self):
        return f"({', '.join(map(str, self.inputs))}; {self.output})"


class Morphism(NamedTuple):
    """A morphism is identified by its name together with its profile."""

    name: Hashable
    profile: Profile

    @property
    def arity(self) -> int:
        return len(self.profile.inputs)

    @property
    def inputs(self) -> tuple:
        return self.profile.inputs

    @property
    def output(self) -> Color:
        return self.profile.output

    def __str__(self):
        return f"{self.name}:{self.profile}"


def composite_profile(outer: Morphism, inners: Iterable[Morphism]) -> Profile:
    ins = []
    for m in inners:
        ins.extend(m.inputs)
    return Profile(tuple(ins), outer.output)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        w = ", ".join(str(x) for x in self.witness)
        return f"{self.axiom}: {w}" + (f" ({self.detail})" if self.detail else "")


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def axioms(self) -> set:
        return {v.axiom for v in self.violations}


class FiniteOperad:
    """A finite colored operad, symmetric or not.

    ``homs`` maps profiles to their morphisms (absent profiles are empty),
    ``composition`` maps ``(outer, inners)`` to the composite and, for a
    symmetric operad, ``symmetry`` maps ``(m, i)`` to ``t_i* m`` where ``t_i``
    swaps the 1-based inputs ``i`` and ``i+1``.  Instances are treated as
    immutable; call :func:`validate` before relying on the axioms.
    """

    def __init__(
        self,
        colors: Iterable[Color],
        homs: Mapping[Profile, Iterable[Morphism]],
        identities: Mapping[Color, Morphism],
        composition: Mapping[tuple, Morphism],
        symmetric: bool = False,
        symmetry: Mapping[tuple, Morphism] | None = None,
    ):
        self.symmetric = bool(symmetric)
        self.colors = tuple(sorted(set(colors), key=order_key))
        hs = {}
        for prof, ms in homs.items():
            prof = Profile(tuple(prof[0]), prof[1])
            ms = tuple(sorted(set(ms), key=order_key))
            if ms:
                hs[prof] = ms
        self.homs = {p: hs[p] for p in sorted(hs, key=order_key)}
        self.identities = dict(identities)
        self.composition = dict(composition)
        self.symmetry = dict(symmetry or {})
        if not self.symmetric and self.symmetry:
            raise NotSymmetric("non-symmetric operad given a symmetry table")

    # construction ---------------------------------------------------------

    @classmethod
    def from_rules(cls, colors, morphisms, identities, compose, symmetric=False, act=None):
        """Build the tables by evaluating ``compose(outer, inners)`` on every
        composable tuple and ``act(m, i)`` on every adjacent transposition.

        ``compose`` may return ``None`` to leave an entry out (the result then
        fails validation).
        """
        homs: dict = {}
        for m in morphisms:
            homs.setdefault(m.profile, []).append(m)
        for c, e in identities.items():
            homs.setdefault(e.profile, [])
            if e not in homs[e.profile]:
                homs[e.profile].append(e)
        draft = cls(colors, homs, identities, {}, symmetric=symmetric)
        table = {}
        for outer, inners in draft.composable_tuples():
            r = compose(outer, inners)
            if r is not None:
                table[(outer, inners)] = r
        sym = {}
        if symmetric and act is not None:
            for m in draft.morphisms:
                for i in range(1, m.arity):
                    sym[(m, i)] = act(m, i)
        return cls(colors, homs, identities, table, symmetric=symmetric, symmetry=sym)

    # views ----------------------------------------------------------------

    @cached_property
    def morphisms(self) -> tuple:
        return tuple(m for ms in self.homs.values() for m in ms)

    @cached_property
    def morphism_set(self) -> frozenset:
        return frozenset(self.morphisms)

    @cached_property
    def by_output(self) -> dict:
        out = {c: [] for c in self.colors}
        for m in self.morphisms:
            out.setdefault(m.output, []).append(m)
        return {c: tuple(ms) for c, ms in out.items()}

    @cached_property
    def identity_set(self) -> frozenset:
        return frozenset(self.identities.values())

    @cached_property
    def max_arity(self) -> int:
        return max((p.arity for p in self.homs), default=0)

    def hom(self, inputs, output) -> tuple:
        return self.homs.get(Profile(tuple(inputs), output), ())

    def identity(self, c: Color) -> Morphism:
        return self.identities[c]

    def is_unary_only(self) -> bool:
        return all(p.arity == 1 for p in self.homs)

    def composable_tuples(self) -> Iterator[tuple]:
        """Every ``(outer, inners)`` with matching colors, in canonical order."""
        for outer in self.morphisms:
            pools = [self.by_output.get(c, ()) for c in outer.inputs]
            for inners in product(*pools):
                yield outer, inners

    # equality -------------------------------------------------------------

    @cached_property
    def _key(self):
        return (
            self.symmetric,
            self.colors,
            tuple(self.homs.items()),
            frozenset(self.identities.items()),
            frozenset(self.composition.items()),
            frozenset(self.symmetry.items()),
        )

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteOperad):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash((self.symmetric, self.colors, tuple(self.homs)))

    def __repr__(self):
        kind = "symmetric" if self.symmetric else "planar"
        return f"<FiniteOperad {kind} colors={len(self.colors)} morphisms={len(self.morphisms)}>"

    # structure ------------------------------------------------------------

    @cached_property
    def isomorphism_pairs(self) -> tuple:
        return isomorphisms(self)

    @cached_property
    def inverse_of(self) -> dict:
        return dict(self.isomorphism_pairs)

    @cached_property
    def color_classes(self) -> tuple:
        return iso_classes(self)

    @cached_property
    def class_of(self) -> dict:
        return {c: cls for cls in self.color_classes for c in cls}

    def isos_out_of(self, c: Color) -> tuple:
        """Isomorphisms with source ``c``, canonically ordered."""
        return self._isos_by_source.get(c, ())

    @cached_property
    def _isos_by_source(self) -> dict:
        out: dict = {}
        for m, _ in self.isomorphism_pairs:
            out.setdefault(m.inputs[0], []).append(m)
        return {c: tuple(ms) for c, ms in out.items()}


# operations ---------------------------------------------------------------


def compose(op: FiniteOperad, outer: Morphism, inners) -> Morphism:
    """``outer ∘ (inners)`` looked up in the composition table."""
    inners = tuple(inners)
    if len(inners) != outer.arity:
        raise NotComposable(
            f"{outer} has arity {outer.arity} but got {len(inners)} inners", position=None
        )
    for i, (c, m) in enumerate(zip(outer.inputs, inners)):
        if m.output != c:
            raise NotComposable(
                f"inner {i + 1} has output {m.output!r}, expected {c!r}", position=i + 1
            )
    try:
        return op.composition[(outer, inners)]
    except KeyError:
        raise MalformedTable(
            f"no composition entry for {outer} ∘ ({', '.join(map(str, inners))})"
        ) from None


def partial_compose(op: FiniteOperad, outer: Morphism, i: int, inner: Morphism) -> Morphism:
    """``outer ∘_i inner`` with identities in the other slots (0-based ``i``)."""
    inners = tuple(
        inner if k == i else op.identities[c] for k, c in enumerate(outer.inputs)
    )
    return compose(op, outer, inners)


def apply_symmetry(op: FiniteOperad, m: Morphism, sigma) -> Morphism:
    """``sigma* m`` computed along the bubble-sort word of ``sigma``."""
    if not op.symmetric:
        raise NotSymmetric("apply_symmetry on a non-symmetric operad")
    sigma = tuple(sigma)
    if len(sigma) != m.arity or not perms.is_permutation(sigma):
        raise ValueError(f"{sigma} is not a permutation of the {m.arity} inputs of {m}")
    return apply_word(op, m, perms.adjacent_word(sigma))


def apply_word(op: FiniteOperad, m: Morphism, word) -> Morphism:
    for i in word:
        try:
            m = op.symmetry[(m, i)]
        except KeyError:
            raise MalformedTable(f"no symmetry entry for ({m}, {i})") from None
    return m


def isomorphisms(op: FiniteOperad) -> tuple:
    """All ``(m, m_inverse)`` pairs of mutually inverse unary morphisms."""
    pairs = []
    for m in op.morphisms:
        if m.arity != 1:
            continue
        a, b = m.inputs[0], m.output
        for n in op.hom((b,), a):
            if (
                op.composition.get((n, (m,))) == op.identities.get(a)
                and op.composition.get((m, (n,))) == op.identities.get(b)
            ):
                pairs.append((m, n))
                break
    return tuple(pairs)


def iso_classes(op: FiniteOperad) -> tuple:
    """Partition of the colors into isomorphism classes, canonically ordered."""
    parent = {c: c for c in op.colors}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m, _ in op.isomorphism_pairs:
        a, b = find(m.inputs[0]), find(m.output)
        if a != b:
            parent[b] = a
    groups: dict = {}
    for c in op.colors:
        groups.setdefault(find(c), []).append(c)
    classes = [tuple(sorted(g, key=order_key)) for g in groups.values()]
    return tuple(sorted(classes, key=order_key))


# validation ---------------------------------------------------------------


def validate(op: FiniteOperad, limit: int = 50) -> ValidationReport:
    """Check the operad axioms; each failure names the axiom and a witness.

    Associativity is checked through the partial compositions (sequential and
    parallel laws plus agreement of the full composition with iterated partial
    ones), which together are equivalent to associativity of the full
    composition.  Raises :class:`MalformedTable` if a table entry refers to a
    morphism that is not in any hom-set.
    """
    out: list[Violation] = []

    def bad(axiom, *witness, detail=""):
        out.append(Violation(axiom, witness, detail))
        return len(out) >= limit

    known = op.morphism_set
    colors = set(op.colors)

    for prof, ms in op.homs.items():
        for c in (*prof.inputs, prof.output):
            if c not in colors:
                if bad("profile-colors", prof, detail=f"unknown color {c!r}"):
                    return ValidationReport(tuple(out))
        for m in ms:
            if m.profile != prof:
                if bad("hom-profile", m, detail=f"stored under {prof}"):
                    return ValidationReport(tuple(out))
    for c in op.colors:
        e = op.identities.get(c)
        if e is None:
            if bad("identity-missing", c):
                return ValidationReport(tuple(out))
        elif e.profile != Profile((c,), c) or e not in known:
            if bad("identity-profile", c, e):
                return ValidationReport(tuple(out))
    for key, r in op.composition.items():
        outer, inners = key
        for m in (outer, *inners, r):
            if m not in known:
                raise MalformedTable(f"composition entry {key} refers to unknown morphism {m}")
        if len(inners) != outer.arity or any(
            m.output != c for m, c in zip(inners, outer.inputs)
        ):
            if bad("composability", outer, inners):
                return ValidationReport(tuple(out))
        elif r.profile != composite_profile(outer, inners):
            if bad("closure", outer, inners, r):
                return ValidationReport(tuple(out))
    if out:
        return ValidationReport(tuple(out))

    for outer, inners in op.composable_tuples():
        if (outer, inners) not in op.composition:
            if bad("totality", outer, inners, detail="partial composition"):
                return ValidationReport(tuple(out))
    if out:
        return ValidationReport(tuple(out))

    ids = op.identities
    comp = op.composition

    # unit laws
    for m in op.morphisms:
        if comp[(m, tuple(ids[c] for c in m.inputs))] != m:
            if bad("right-unit", m):
                return ValidationReport(tuple(out))
        if comp[(ids[m.output], (m,))] != m:
            if bad("left-unit", m):
                return ValidationReport(tuple(out))

    def pc(outer, i, inner):
        return comp[(outer, tuple(inner if k == i else ids[c] for k, c in enumerate(outer.inputs)))]

    # full composition agrees with iterated partial compositions
    for outer, inners in op.composable_tuples():
        acc = outer
        for i in range(outer.arity - 1, -1, -1):
            acc = pc(acc, i, inners[i])
        if acc != comp[(outer, inners)]:
            if bad("associativity", outer, inners, detail="full vs partial composition"):
                return ValidationReport(tuple(out))

    for psi in op.morphisms:
        for i, ci in enumerate(psi.inputs):
            for phi in op.by_output.get(ci, ()):
                left_inner = pc(psi, i, phi)
                # sequential
                for j, cj in enumerate(phi.inputs):
                    for chi in op.by_output.get(cj, ()):
                        a = pc(left_inner, i + j, chi)
                        b = pc(psi, i, pc(phi, j, chi))
                        if a != b:
                            if bad("associativity", psi, phi, chi, detail=f"sequential at {i + 1},{j + 1}"):
                                return ValidationReport(tuple(out))
                # parallel
                for k in range(i + 1, psi.arity):
                    for chi in op.by_output.get(psi.inputs[k], ()):
                        a = pc(left_inner, k + phi.arity - 1, chi)
                        b = pc(pc(psi, k, chi), i, phi)
                        if a != b:
                            if bad("associativity", psi, phi, chi, detail=f"parallel at {i + 1},{k + 1}"):
                                return ValidationReport(tuple(out))

    if op.symmetric:
        out.extend(_validate_symmetry(op, limit - len(out)))
    return ValidationReport(tuple(out[:limit]))


def _validate_symmetry(op: FiniteOperad, limit: int) -> list:
    out: list[Violation] = []
    sym = op.symmetry
    known = op.morphism_set
    for (m, i), r in sym.items():
        if m not in known or r not in known:
            raise MalformedTable(f"symmetry entry ({m}, {i}) refers to an unknown morphism")
        if not 1 <= i < m.arity:
            out.append(Violation("symmetry-index", (m, i)))
        elif r.profile != Profile(perms.act(m.inputs, perms.transposition(m.arity, i)), m.output):
            out.append(Violation("symmetry-profile", (m, i, r)))
    if out:
        return out[:limit]
    for m in op.morphisms:
        for i in range(1, m.arity):
            if (m, i) not in sym:
                out.append(Violation("symmetry-totality", (m, i)))
    if out:
        return out[:limit]

    def t(m, i):
        return sym[(m, i)]

    for m in op.morphisms:
        n = m.arity
        for i in range(1, n):
            if t(t(m, i), i) != m:
                out.append(Violation("symmetry-involution", (m, i)))
            if i + 1 < n:
                a = t(t(t(m, i), i + 1), i)
                b = t(t(t(m, i + 1), i), i + 1)
                if a != b:
                    out.append(Violation("symmetry-braid", (m, i)))
            for j in range(i + 2, n):
                if t(t(m, i), j) != t(t(m, j), i):
                    out.append(Violation("symmetry-commutation", (m, i, j)))
        if len(out) >= limit:
            return out[:limit]

    comp = op.composition
    for outer, inners in op.composable_tuples():
        n = outer.arity
        base = comp[(outer, inners)]
        sizes = [x.arity for x in inners]
        for k in range(1, n):
            tk = perms.transposition(n, k)
            lhs = comp[(t(outer, k), perms.act(inners, tk))]
            beta = perms.block_permutation(tk, sizes)
            rhs = apply_word(op, base, perms.adjacent_word(beta))
            if lhs != rhs:
                out.append(Violation("equivariance-outer", (outer, inners, k)))
        for pos, inner in enumerate(inners):
            for k in range(1, inner.arity):
                swapped = inners[:pos] + (t(inner, k),) + inners[pos + 1:]
                lhs = comp[(outer, swapped)]
                local = [perms.identity(s) for s in sizes]
                local[pos] = perms.transposition(inner.arity, k)
                rhs = apply_word(op, base, perms.adjacent_word(perms.block_sum(local)))
                if lhs != rhs:
                    out.append(Violation("equivariance-inner", (outer, inners, pos + 1, k)))
        if len(out) >= limit:
            return out[:limit]
    return out
