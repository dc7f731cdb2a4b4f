"""JSON documents for operads, functors, squares, categories and presentations.

Colors and morphism names are JSON strings, or nested arrays for the tuple
names produced by factorizations and tensor products.  Morphisms are
referenced as ``"i/name"`` where ``i`` indexes the document's ``homs`` array;
a non-string name makes the reference the array ``[i, name]``.  Maps whose
keys are not all strings are written as arrays of ``[key, value]`` pairs.
Output is normalized: colors, profiles and names come out in canonical order.
"""
from __future__ import annotations

import json
import os

from .categories import Arrow, FiniteCategory
from .core import FiniteOperad, Morphism, Profile, order_key, validate
from .errors import OperadError, ParseError, SemanticError
from .functors import OperadFunctor, validate_functor
from .lifting import LiftingSquare
from .presented.presentation import ColoredCollection, Presentation
from .presented.terms import Leaf, Node, Perm

KINDS = ("operad", "functor", "square", "category", "presentation")


# atoms -----------------------------------------------------------------------


def _enc(x):
    if isinstance(x, tuple):
        return [_enc(y) for y in x]
    return x


def _dec(x):
    if isinstance(x, list):
        return tuple(_dec(y) for y in x)
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return x
    raise SemanticError(f"expected a name, got {x!r}")


def _enc_map(pairs):
    pairs = sorted(pairs, key=lambda kv: order_key(kv[0]))
    if all(isinstance(k, str) for k, _ in pairs):
        return {k: v for k, v in pairs}
    return [[_enc(k), v] for k, v in pairs]


def _dec_map(x) -> list:
    if isinstance(x, dict):
        return list(x.items())
    if isinstance(x, list) and all(isinstance(p, list) and len(p) == 2 for p in x):
        return [(_dec(k), v) for k, v in x]
    raise SemanticError("expected an object or an array of [key, value] pairs")


def _field(obj, key, kind):
    if not isinstance(obj, dict):
        raise SemanticError(f"{kind} must be a JSON object")
    if key not in obj:
        raise SemanticError(f"{kind} is missing the key {key!r}")
    return obj[key]


# operads ---------------------------------------------------------------------


class _Refs:
    """Morphism <-> ``"i/name"`` references for one operad's hom array."""

    def __init__(self, profiles):
        self.index = {p: i for i, p in enumerate(profiles)}
        self.profiles = list(profiles)

    def enc(self, m: Morphism):
        i = self.index[m.profile]
        return f"{i}/{m.name}" if isinstance(m.name, str) else [i, _enc(m.name)]

    def dec(self, ref) -> Morphism:
        if isinstance(ref, str) and "/" in ref:
            i, name = ref.split("/", 1)
        elif isinstance(ref, list) and len(ref) == 2:
            i, name = ref[0], _dec(ref[1])
        else:
            raise SemanticError(f"bad morphism reference {ref!r}")
        try:
            prof = self.profiles[int(i)]
        except (ValueError, IndexError):
            raise SemanticError(f"morphism reference {ref!r} names no hom-set") from None
        return Morphism(name, prof)


def operad_to_json(P: FiniteOperad) -> dict:
    refs = _Refs(P.homs)
    out = {
        "kind": "operad",
        "symmetric": P.symmetric,
        "colors": [_enc(c) for c in P.colors],
        "homs": [
            {"inputs": [_enc(c) for c in p.inputs], "output": _enc(p.output),
             "morphisms": [_enc(m.name) for m in ms]}
            for p, ms in P.homs.items()
        ],
        "identities": _enc_map((c, _enc(P.identity(c).name)) for c in P.colors if c in P.identities),
        "composition": [
            {"outer": refs.enc(o), "inners": [refs.enc(m) for m in ins], "result": refs.enc(r)}
            for (o, ins), r in sorted(P.composition.items(), key=lambda kv: order_key(kv[0]))
        ],
    }
    if P.symmetric and any(p.arity >= 2 for p in P.homs):
        out["symmetry"] = [
            {"morphism": refs.enc(m), "transposition": i, "result": refs.enc(r)}
            for (m, i), r in sorted(P.symmetry.items(), key=lambda kv: order_key(kv[0]))
        ]
    return out


def operad_from_json(d: dict, check: bool = True) -> FiniteOperad:
    symmetric = _field(d, "symmetric", "operad")
    if not isinstance(symmetric, bool):
        raise SemanticError("'symmetric' must be a boolean")
    colors = [_dec(c) for c in _field(d, "colors", "operad")]
    known = set(colors)
    if len(known) != len(colors):
        raise SemanticError("duplicate colors")
    homs = {}
    for h in _field(d, "homs", "operad"):
        prof = Profile(tuple(_dec(c) for c in _field(h, "inputs", "hom")), _dec(_field(h, "output", "hom")))
        for c in (*prof.inputs, prof.output):
            if c not in known:
                raise SemanticError(f"hom-set uses undeclared color {c!r}", witness=c)
        if prof in homs:
            raise SemanticError(f"profile {prof} listed twice")
        names = [_dec(n) for n in _field(h, "morphisms", "hom")]
        if len(set(names)) != len(names):
            raise SemanticError(f"duplicate morphism names in hom-set {prof}")
        homs[prof] = [Morphism(n, prof) for n in names]
    refs = _Refs(homs)
    members = {m for ms in homs.values() for m in ms}

    def member(ref):
        m = refs.dec(ref)
        if m not in members:
            raise SemanticError(f"reference {ref!r} names an unknown morphism", witness=ref)
        return m

    idmap = dict(_dec_map(_field(d, "identities", "operad")))
    identities = {}
    for c in colors:
        if c not in idmap:
            raise SemanticError(f"color {c!r} has no identity morphism", witness=c)
        e = Morphism(_dec(idmap[c]), Profile((c,), c))
        if e not in members:
            # also accept a morphism reference
            try:
                e = refs.dec(idmap[c])
            except SemanticError:
                pass
        if e not in members or e.profile != Profile((c,), c):
            raise SemanticError(f"identity of {c!r} is not in the hom-set ({c}; {c})", witness=c)
        identities[c] = e
    comp = {}
    for entry in _field(d, "composition", "operad"):
        key = (member(_field(entry, "outer", "composition entry")),
               tuple(member(r) for r in _field(entry, "inners", "composition entry")))
        comp[key] = member(_field(entry, "result", "composition entry"))
    sym = {}
    if symmetric:
        if any(p.arity >= 2 for p in homs) and "symmetry" not in d:
            raise SemanticError("a symmetric operad with arity >= 2 needs a symmetry table")
        for entry in d.get("symmetry", ()):
            i = _field(entry, "transposition", "symmetry entry")
            if not isinstance(i, int) or isinstance(i, bool):
                raise SemanticError("transposition index must be an integer")
            sym[(member(_field(entry, "morphism", "symmetry entry")), i)] = member(
                _field(entry, "result", "symmetry entry")
            )
    elif d.get("symmetry"):
        raise SemanticError("a non-symmetric operad cannot carry a symmetry table")
    try:
        P = FiniteOperad(colors, homs, identities, comp, symmetric=symmetric, symmetry=sym)
    except OperadError as e:
        raise SemanticError(str(e)) from None
    if check:
        report = validate(P)
        if not report.ok:
            v = report.violations[0]
            raise SemanticError(f"operad violates {v}", witness=v.witness)
    return P


# functors ------------------------------------------------------------------------


def functor_to_json(F: OperadFunctor) -> dict:
    src, tgt = _Refs(F.source.homs), _Refs(F.target.homs)
    return {
        "kind": "functor",
        "source": operad_to_json(F.source),
        "target": operad_to_json(F.target),
        "objects": _enc_map((c, _enc(F.obj(c))) for c in F.source.colors),
        "morphisms": _enc_map((src.enc(m), tgt.enc(F(m))) for m in F.source.morphisms),
    }


def functor_from_json(d: dict, base_dir: str = ".", check: bool = True) -> OperadFunctor:
    P = _load_operad(_field(d, "source", "functor"), base_dir)
    Q = _load_operad(_field(d, "target", "functor"), base_dir)
    src, tgt = _Refs(P.homs), _Refs(Q.homs)
    objects = {}
    for k, v in _dec_map(_field(d, "objects", "functor")):
        objects[k] = _dec(v)
    morphisms = {}
    for k, v in _dec_map(_field(d, "morphisms", "functor")):
        if isinstance(k, tuple):  # array-of-pairs form decodes keys to tuples
            k = [k[0], _enc(k[1])]
        morphisms[src.dec(k)] = tgt.dec(v)
    # identities may be left implicit
    for c, e in P.identities.items():
        if c in objects and objects[c] in Q.identities:
            morphisms.setdefault(e, Q.identity(objects[c]))
    F = OperadFunctor(P, Q, objects, morphisms)
    if check:
        report = validate_functor(F)
        if not report.ok:
            v = report.violations[0]
            raise SemanticError(f"functor violates {v}", witness=v.witness)
    return F


def _load_operad(x, base_dir):
    if isinstance(x, dict) and set(x) == {"file"}:
        path = os.path.join(base_dir, x["file"])
        doc = load_path(path)
        if not isinstance(doc, FiniteOperad):
            raise SemanticError(f"{x['file']} does not hold an operad")
        return doc
    return operad_from_json(x)


def _load_functor(x, base_dir):
    if isinstance(x, dict) and set(x) == {"file"}:
        doc = load_path(os.path.join(base_dir, x["file"]))
        if not isinstance(doc, OperadFunctor):
            raise SemanticError(f"{x['file']} does not hold a functor")
        return doc
    return functor_from_json(x, base_dir)


# squares -------------------------------------------------------------------------


def square_to_json(sq: LiftingSquare) -> dict:
    return {
        "kind": "square",
        "left": functor_to_json(sq.left),
        "right": functor_to_json(sq.right),
        "top": functor_to_json(sq.top),
        "bottom": functor_to_json(sq.bottom),
    }


def square_from_json(d: dict, base_dir: str = ".") -> LiftingSquare:
    parts = {k: _load_functor(_field(d, k, "square"), base_dir) for k in ("left", "right", "top", "bottom")}
    return LiftingSquare(**parts)


# categories ------------------------------------------------------------------------


def category_to_json(C: FiniteCategory) -> dict:
    keys = list(C.hom)
    index = {k: i for i, k in enumerate(keys)}

    def ref(a):
        i = index[(a.source, a.target)]
        return f"{i}/{a.name}" if isinstance(a.name, str) else [i, _enc(a.name)]

    return {
        "kind": "category",
        "objects": [_enc(o) for o in C.objects],
        "homs": [
            {"source": _enc(s), "target": _enc(t), "arrows": [_enc(a.name) for a in C.hom[(s, t)]]}
            for s, t in keys
        ],
        "identities": _enc_map((o, _enc(C.identities[o].name)) for o in C.objects),
        "composition": [
            {"second": ref(g), "first": ref(f), "result": ref(h)}
            for (g, f), h in sorted(C.composition.items(), key=lambda kv: order_key(kv[0]))
        ],
    }


def category_from_json(d: dict, check: bool = True) -> FiniteCategory:
    objects = [_dec(o) for o in _field(d, "objects", "category")]
    known = set(objects)
    keys = []
    arrows = []
    for h in _field(d, "homs", "category"):
        s, t = _dec(_field(h, "source", "hom")), _dec(_field(h, "target", "hom"))
        if s not in known or t not in known:
            raise SemanticError(f"hom-set ({s}, {t}) uses an undeclared object")
        keys.append((s, t))
        arrows.extend(Arrow(_dec(n), s, t) for n in _field(h, "arrows", "hom"))
    aset = set(arrows)

    def deref(r):
        if isinstance(r, str) and "/" in r:
            i, name = r.split("/", 1)
        elif isinstance(r, list) and len(r) == 2:
            i, name = r[0], _dec(r[1])
        else:
            raise SemanticError(f"bad arrow reference {r!r}")
        try:
            s, t = keys[int(i)]
        except (ValueError, IndexError):
            raise SemanticError(f"arrow reference {r!r} names no hom-set") from None
        a = Arrow(name, s, t)
        if a not in aset:
            raise SemanticError(f"reference {r!r} names an unknown arrow", witness=r)
        return a

    idmap = dict(_dec_map(_field(d, "identities", "category")))
    ids = {}
    for o in objects:
        if o not in idmap:
            raise SemanticError(f"object {o!r} has no identity arrow", witness=o)
        e = Arrow(_dec(idmap[o]), o, o)
        if e not in aset:
            raise SemanticError(f"identity of {o!r} is not an arrow {o} -> {o}", witness=o)
        ids[o] = e
    comp = {}
    for entry in _field(d, "composition", "category"):
        comp[(deref(entry["second"]), deref(entry["first"]))] = deref(entry["result"])
    C = FiniteCategory(objects, arrows, ids, comp)
    if check:
        report = C.validate()
        if not report.ok:
            v = report.violations[0]
            raise SemanticError(f"category violates {v}", witness=v.witness)
    return C


# presentations ---------------------------------------------------------------------


def term_to_json(t, index: dict):
    """``index`` maps generators to their position in the document."""
    if isinstance(t, Leaf):
        return {"leaf": _enc(t.color)}
    if isinstance(t, Perm):
        return {"perm": [i + 1 for i in t.perm], "term": term_to_json(t.term, index)}
    return {
        "gen": index[t.gen],
        "name": _enc(t.gen.name),
        "children": [term_to_json(k, index) for k in t.children],
    }


def term_from_json(x, generators: list):
    if not isinstance(x, dict):
        raise SemanticError(f"a term must be an object, got {x!r}")
    if "leaf" in x:
        return Leaf(_dec(x["leaf"]))
    if "perm" in x:
        p = tuple(int(i) - 1 for i in x["perm"])
        return Perm(p, term_from_json(_field(x, "term", "term"), generators))
    i = _field(x, "gen", "term")
    if not isinstance(i, int) or not 0 <= i < len(generators):
        raise SemanticError(f"generator reference {i!r} out of range", witness=i)
    g = generators[i]
    if "name" in x and _dec(x["name"]) != g.name:
        raise SemanticError(f"generator {i} is {g.name!r}, not {x['name']!r}", witness=i)
    return Node(g, tuple(term_from_json(k, generators) for k in x.get("children", ())))


def presentation_to_json(pres: Presentation) -> dict:
    index = {g: i for i, g in enumerate(pres.generators)}
    out = {
        "kind": "presentation",
        "symmetric": pres.symmetric,
        "colors": [_enc(c) for c in pres.colors],
        "generators": [
            {"name": _enc(g.name), "inputs": [_enc(c) for c in g.inputs], "output": _enc(g.output)}
            for g in pres.generators
        ],
        "relations": [
            {"lhs": term_to_json(a, index), "rhs": term_to_json(b, index)} for a, b in pres.relations
        ],
    }
    if pres.labels:
        for r, l in zip(out["relations"], pres.labels):
            r["label"] = l
    return out


def presentation_from_json(d: dict) -> Presentation:
    colors = [_dec(c) for c in _field(d, "colors", "presentation")]
    gens = []
    for g in _field(d, "generators", "presentation"):
        ins = tuple(_dec(c) for c in g.get("inputs", ()))
        gens.append(Morphism(_dec(_field(g, "name", "generator")), Profile(ins, _dec(_field(g, "output", "generator")))))
    if len(set(gens)) != len(gens):
        raise SemanticError("a generator is listed twice")
    rels, labels = [], []
    for r in _field(d, "relations", "presentation"):
        rels.append((term_from_json(_field(r, "lhs", "relation"), gens),
                     term_from_json(_field(r, "rhs", "relation"), gens)))
        labels.append(r.get("label"))
    try:
        return Presentation(
            ColoredCollection(colors, gens),
            tuple(rels),
            bool(d.get("symmetric", True)),
            tuple(labels) if any(l is not None for l in labels) else (),
        )
    except OperadError as e:
        raise SemanticError(str(e)) from None


# documents ---------------------------------------------------------------------------


def loads_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None


def _infer_kind(d) -> str:
    if not isinstance(d, dict):
        raise SemanticError("a document must be a JSON object")
    kind = d.get("kind")
    if kind is None:
        if "homs" in d and "colors" in d:
            kind = "operad"
        elif "objects" in d and "morphisms" in d:
            kind = "functor"
        elif {"left", "right", "top", "bottom"} <= set(d):
            kind = "square"
        elif "generators" in d:
            kind = "presentation"
        elif "objects" in d:
            kind = "category"
    if kind not in KINDS:
        raise SemanticError(f"unknown document kind {kind!r}")
    return kind


def from_json(d, base_dir: str = "."):
    kind = _infer_kind(d)
    if kind == "operad":
        return operad_from_json(d)
    if kind == "functor":
        return functor_from_json(d, base_dir)
    if kind == "square":
        return square_from_json(d, base_dir)
    if kind == "category":
        return category_from_json(d)
    return presentation_from_json(d)


def to_json(obj) -> dict:
    if isinstance(obj, FiniteOperad):
        return operad_to_json(obj)
    if isinstance(obj, OperadFunctor):
        return functor_to_json(obj)
    if isinstance(obj, LiftingSquare):
        return square_to_json(obj)
    if isinstance(obj, FiniteCategory):
        return category_to_json(obj)
    if isinstance(obj, Presentation):
        return presentation_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def parse_document(text: str, base_dir: str = "."):
    """Text to a validated domain object."""
    return from_json(loads_json(text), base_dir)


def serialize_document(obj) -> str:
    """Domain object to normalized text."""
    return dumps(to_json(obj))


def normalize(text: str, base_dir: str = ".") -> str:
    return serialize_document(parse_document(text, base_dir))


def load_path(path: str):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_document(text, os.path.dirname(os.path.abspath(path)))
