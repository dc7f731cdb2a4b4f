"""Named test operads and the generating (trivial) cofibrations."""
from __future__ import annotations

from . import perms
from .core import FiniteOperad, Morphism, Profile, order_key
from .functors import OperadFunctor, check_functor

STAR_COLOR = "pt"
ID = "id"


def _identities(colors):
    return {c: Morphism(ID, Profile((c,), c)) for c in colors}


def thin_operad(colors, named_profiles, symmetric=False):
    """Operad with at most one morphism per profile.

    ``named_profiles`` maps each non-identity profile to the name of its unique
    morphism.  The profile set must already be closed under composition (and
    under permutation when ``symmetric``); otherwise validation reports it.
    """
    ids = _identities(colors)
    unique = {p: Morphism(name, Profile(tuple(p[0]), p[1])) for p, name in named_profiles.items()}
    for c, e in ids.items():
        unique.setdefault(e.profile, e)

    def comp(outer, inners):
        ins = tuple(c for m in inners for c in m.inputs)
        return unique.get(Profile(ins, outer.output))

    def act(m, i):
        return unique.get(Profile(perms.act(m.inputs, perms.transposition(m.arity, i)), m.output))

    return FiniteOperad.from_rules(colors, unique.values(), ids, comp, symmetric, act)


def orbit_name(base, sigma) -> str:
    if perms.is_identity(sigma):
        return base
    return f"{base}_" + "".join(str(x + 1) for x in sigma)


def _unit_only(colors, generators, symmetric):
    """Operad freely generated by morphisms that cannot compose with each other.

    ``generators`` are ``(name, inputs, output)``; in the symmetric case each
    contributes its free orbit ``sigma* g`` named by :func:`orbit_name`.
    """
    ids = _identities(colors)
    orbit = {}
    ms = []
    for name, ins, outc in generators:
        sigmas = perms.all_permutations(len(ins)) if symmetric else [perms.identity(len(ins))]
        for s in sigmas:
            m = Morphism(orbit_name(name, s), Profile(perms.act(tuple(ins), s), outc))
            orbit[(name, s)] = m
            orbit[m] = (name, s)
            ms.append(m)
    idset = set(ids.values())

    def comp(outer, inners):
        if outer in idset:
            return inners[0]
        if all(m in idset for m in inners):
            return outer
        return None

    def act(m, i):
        name, s = orbit[m]
        return orbit[(name, perms.compose(s, perms.transposition(len(s), i)))]

    return FiniteOperad.from_rules(colors, ms, ids, comp, symmetric, act)


def star(symmetric=False) -> FiniteOperad:
    """One color, one morphism (its identity)."""
    return _unit_only([STAR_COLOR], [], symmetric)


def empty(symmetric=False) -> FiniteOperad:
    return FiniteOperad([], {}, {}, {}, symmetric=symmetric)


def walking_iso(symmetric=False) -> FiniteOperad:
    """Colors ``a``, ``b`` and a single isomorphism ``u: a -> b`` with inverse ``u_inv``."""
    return thin_operad(
        ["a", "b"],
        {(("a",), "b"): "u", (("b",), "a"): "u_inv"},
        symmetric,
    )


def _ar_colors(n):
    return [str(i) for i in range(n + 1)]


def ar(n: int, symmetric=False) -> FiniteOperad:
    """Colors ``0..n`` and one generating arrow ``f: 1, ..., n -> 0``."""
    cs = _ar_colors(n)
    return _unit_only(cs, [("f", tuple(cs[1:]), "0")], symmetric)


def boundary_ar(n: int, symmetric=False) -> FiniteOperad:
    return _unit_only(_ar_colors(n), [], symmetric)


def par(n: int, symmetric=False) -> FiniteOperad:
    """Like :func:`ar` with two parallel generators ``f1`` and ``f2``."""
    cs = _ar_colors(n)
    ins = tuple(cs[1:])
    return _unit_only(cs, [("f1", ins, "0"), ("f2", ins, "0")], symmetric)


# generating maps ----------------------------------------------------------


def inclusion(source: FiniteOperad, target: FiniteOperad) -> OperadFunctor:
    """The functor that is the identity on colors and morphism names."""
    mm = {}
    for m in source.morphisms:
        mm[m] = m
    return OperadFunctor(source, target, {c: c for c in source.colors}, mm)


def star_to_h(at="a", symmetric=False) -> OperadFunctor:
    s, h = star(symmetric), walking_iso(symmetric)
    return OperadFunctor(s, h, {STAR_COLOR: at}, {s.identity(STAR_COLOR): h.identity(at)})


def h_to_star(symmetric=False) -> OperadFunctor:
    h, s = walking_iso(symmetric), star(symmetric)
    e = s.identity(STAR_COLOR)
    return OperadFunctor(h, s, {c: STAR_COLOR for c in h.colors}, {m: e for m in h.morphisms})


def empty_to_star(symmetric=False) -> OperadFunctor:
    return OperadFunctor(empty(symmetric), star(symmetric), {}, {})


def boundary_inclusion(n: int, symmetric=False) -> OperadFunctor:
    return inclusion(boundary_ar(n, symmetric), ar(n, symmetric))


def par_collapse(n: int, symmetric=False) -> OperadFunctor:
    """``PAr_n -> Ar_n`` identifying the two generators (orbit by orbit)."""
    src, tgt = par(n, symmetric), ar(n, symmetric)
    by_name = {m.name: m for m in tgt.morphisms if m.name != ID}
    mm = {}
    for m in src.morphisms:
        if m.name == ID:
            mm[m] = tgt.identity(m.output)
        else:
            # f1_213 -> f_213
            suffix = m.name[2:]
            mm[m] = by_name["f" + suffix]
    return OperadFunctor(src, tgt, {c: c for c in src.colors}, mm)


def generating_trivial_cofibrations(symmetric=False) -> list:
    """The single generating trivial cofibration ``* -> H`` (at color ``a``)."""
    return [check_functor(star_to_h("a", symmetric))]


def generating_cofibrations(max_arity: int = 2, symmetric=False) -> list:
    """Truncation of ``{∅ -> *} ∪ {∂Ar_n -> Ar_n} ∪ {PAr_n -> Ar_n}`` to ``n <= max_arity``."""
    if max_arity < 0:
        raise ValueError("max_arity must be non-negative")
    out = [empty_to_star(symmetric)]
    for n in range(max_arity + 1):
        out.append(boundary_inclusion(n, symmetric))
        out.append(par_collapse(n, symmetric))
    return [check_functor(f) for f in out]


def standard_operads(symmetric=False, max_arity=2) -> dict:
    ops = {
        "star": star(symmetric),
        "empty": empty(symmetric),
        "walking_iso": walking_iso(symmetric),
    }
    for n in range(max_arity + 1):
        ops[f"ar{n}"] = ar(n, symmetric)
        ops[f"boundary_ar{n}"] = boundary_ar(n, symmetric)
        ops[f"par{n}"] = par(n, symmetric)
    return dict(sorted(ops.items(), key=lambda kv: order_key(kv[0])))
