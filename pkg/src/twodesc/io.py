"""JSON documents: one entity per document, tagged by ``kind``.

Serialization is canonical (sorted keys, two-space indent, flat integer
arrays on one line), so ``serialize(parse(text)) == text`` for every
document this module writes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .descent import DescendedGroupoid
from .descent_data import (CoverDescentDatum, DescentMorphism, GaloisDescentDatum,
                           descent_morphism_from_tables, galois_from_tables)
from .groupoid import FiniteGroupoid
from .groups import FiniteGroup
from .report import StructuralError
from .weak_action import WeakAction, action_from_tables

KINDS = ("groupoid", "group", "weak_action", "galois_datum", "cover_datum", "descent_morphism")


class ParseError(StructuralError):
    """The document is not well-formed or does not follow its schema."""


_SCHEMA = {
    "groupoid": ({"kind", "n_objects", "src", "tgt", "comp", "ident", "inv"}, {"provenance"}),
    "group": ({"kind", "table", "identity", "inverse"}, {"name"}),
    "weak_action": ({"kind", "gamma", "groupoid", "mu_obj", "mu_mor", "alpha", "beta"}, set()),
    "galois_datum": ({"kind", "gamma", "groupoid", "f_obj", "f_mor", "psi"}, set()),
    "cover_datum": ({"kind", "gamma", "groupoid", "phi_blocks", "psi_blocks"}, set()),
    "descent_morphism": ({"kind", "source", "target", "functor_obj", "functor_mor", "eta"}, set()),
}
_PROVENANCE = {"base", "phi", "under"}


# ---------------------------------------------------------------------------
# text layer


def _dump(v, level: int = 0) -> str:
    pad = "  " * level
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_dump(v[k], level + 1)}' for k in sorted(v)]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(v, list):
        if not v:
            return "[]"
        if all(not isinstance(x, (list, dict)) for x in v):
            return "[" + ", ".join(json.dumps(x) for x in v) + "]"
        return "[\n" + ",\n".join(f"{pad}  {_dump(x, level + 1)}" for x in v) + f"\n{pad}]"
    return json.dumps(v, ensure_ascii=False)


def dumps(doc: dict) -> str:
    return _dump(doc) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not a JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    _check_schema(doc)
    return doc


def _check_schema(doc: dict) -> None:
    kind = doc.get("kind")
    if kind not in _SCHEMA:
        raise ParseError(f"unknown or missing kind {kind!r}")
    required, optional = _SCHEMA[kind]
    keys = set(doc)
    if required - keys:
        raise ParseError(f"{kind}: missing fields {sorted(required - keys)}")
    if keys - required - optional:
        raise ParseError(f"{kind}: unknown fields {sorted(keys - required - optional)}")
    for key in ("gamma",):
        if key in doc:
            _expect_kind(doc[key], "group")
    if "groupoid" in doc:
        _expect_kind(doc["groupoid"], "groupoid")
    for key in ("source", "target"):
        if key in doc:
            _expect_kind(doc[key], "galois_datum")
    if kind == "groupoid" and "provenance" in doc:
        prov = doc["provenance"]
        if not isinstance(prov, dict) or set(prov) != _PROVENANCE:
            raise ParseError(f"provenance must have exactly the fields {sorted(_PROVENANCE)}")


def _expect_kind(sub, kind: str) -> None:
    if not isinstance(sub, dict) or sub.get("kind") != kind:
        raise ParseError(f"nested document must be of kind {kind!r}")
    _check_schema(sub)


def _ints(v, name: str, ndim: int) -> np.ndarray:
    def ok(x, d):
        if d == 0:
            return isinstance(x, int) and not isinstance(x, bool)
        return isinstance(x, list) and all(ok(y, d - 1) for y in x)

    if not ok(v, ndim):
        raise ParseError(f"{name} must be a {ndim}-d array of integers")
    arr = np.array(v, dtype=np.int64)
    if arr.ndim != ndim:
        if arr.size == 0:
            return arr.reshape((0,) * ndim)
        raise ParseError(f"{name} is ragged")
    return arr


def _int(v, name: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError(f"{name} must be an integer")
    return v


# ---------------------------------------------------------------------------
# entities <-> documents


def _l(a) -> list:
    return np.asarray(a).tolist()


def groupoid_doc(g: FiniteGroupoid, provenance: DescendedGroupoid | None = None) -> dict:
    doc = {"kind": "groupoid", "n_objects": g.n_objects, "src": _l(g.src), "tgt": _l(g.tgt),
           "comp": _l(g.comp), "ident": _l(g.ident), "inv": _l(g.inv)}
    if provenance is not None:
        doc["provenance"] = {"base": _l(provenance.base), "phi": _l(provenance.phi),
                             "under": _l(provenance.under)}
    return doc


def group_doc(G: FiniteGroup) -> dict:
    doc = {"kind": "group", "table": _l(G.table), "identity": G.identity, "inverse": _l(G.inverse)}
    if G.name:
        doc["name"] = G.name
    return doc


def weak_action_doc(w: WeakAction) -> dict:
    mu_obj, mu_mor, alpha, beta = w.tables()
    return {"kind": "weak_action", "gamma": group_doc(w.gamma), "groupoid": groupoid_doc(w.groupoid),
            "mu_obj": _l(mu_obj), "mu_mor": _l(mu_mor), "alpha": _l(alpha), "beta": _l(beta)}


def galois_doc(d: GaloisDescentDatum) -> dict:
    f_obj, f_mor, psi = d.tables()
    return {"kind": "galois_datum", "gamma": group_doc(d.gamma), "groupoid": groupoid_doc(d.groupoid),
            "f_obj": _l(f_obj), "f_mor": _l(f_mor), "psi": _l(psi)}


def cover_doc(c: CoverDescentDatum) -> dict:
    k = c.k
    phi = [{"sigma": s, "obj": _l(c.phi_obj[s]), "mor": _l(c.phi_mor[s])} for s in range(k)]
    psi = [{"tau": t, "sigma": s, "components": _l(c.psi[t * k + s])}
           for t in range(k) for s in range(k)]
    return {"kind": "cover_datum", "gamma": group_doc(c.gamma), "groupoid": groupoid_doc(c.groupoid),
            "phi_blocks": phi, "psi_blocks": psi}


def morphism_doc(m: DescentMorphism) -> dict:
    return {"kind": "descent_morphism", "source": galois_doc(m.source), "target": galois_doc(m.target),
            "functor_obj": _l(m.functor.obj), "functor_mor": _l(m.functor.mor),
            "eta": _l(m.eta_table())}


def to_document(entity, provenance: DescendedGroupoid | None = None) -> dict:
    if isinstance(entity, DescendedGroupoid):
        return groupoid_doc(entity.groupoid, entity)
    if isinstance(entity, FiniteGroupoid):
        return groupoid_doc(entity, provenance)
    if isinstance(entity, FiniteGroup):
        return group_doc(entity)
    if isinstance(entity, WeakAction):
        return weak_action_doc(entity)
    if isinstance(entity, GaloisDescentDatum):
        return galois_doc(entity)
    if isinstance(entity, CoverDescentDatum):
        return cover_doc(entity)
    if isinstance(entity, DescentMorphism):
        return morphism_doc(entity)
    raise TypeError(f"cannot serialize {type(entity).__name__}")


def _groupoid(doc) -> FiniteGroupoid:
    return FiniteGroupoid(_int(doc["n_objects"], "n_objects"), _ints(doc["src"], "src", 1),
                          _ints(doc["tgt"], "tgt", 1), _ints(doc["comp"], "comp", 2),
                          _ints(doc["ident"], "ident", 1), _ints(doc["inv"], "inv", 1))


def _group(doc) -> FiniteGroup:
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name must be a string")
    return FiniteGroup(_ints(doc["table"], "table", 2), _int(doc["identity"], "identity"),
                       _ints(doc["inverse"], "inverse", 1), name)


def _galois(doc) -> GaloisDescentDatum:
    return galois_from_tables(_group(doc["gamma"]), _groupoid(doc["groupoid"]),
                              _ints(doc["f_obj"], "f_obj", 2), _ints(doc["f_mor"], "f_mor", 2),
                              _ints(doc["psi"], "psi", 3))


def _cover(doc) -> CoverDescentDatum:
    G, g = _group(doc["gamma"]), _groupoid(doc["groupoid"])
    k = G.order
    phi = doc["phi_blocks"]
    psi = doc["psi_blocks"]
    if not isinstance(phi, list) or len(phi) != k:
        raise ParseError("phi_blocks needs one block per group element")
    if not isinstance(psi, list) or len(psi) != k * k:
        raise ParseError("psi_blocks needs one block per pair of group elements")
    obj, mor, comps = [], [], []
    for s, b in enumerate(phi):
        if not isinstance(b, dict) or set(b) != {"sigma", "obj", "mor"} or b["sigma"] != s:
            raise ParseError(f"phi block {s} is malformed or out of order")
        obj.append(_ints(b["obj"], "obj", 1))
        mor.append(_ints(b["mor"], "mor", 1))
    for i, b in enumerate(psi):
        t, s = divmod(i, k)
        if not isinstance(b, dict) or set(b) != {"tau", "sigma", "components"} \
                or b["tau"] != t or b["sigma"] != s:
            raise ParseError(f"psi block {i} is malformed or out of order")
        comps.append(_ints(b["components"], "components", 1))
    try:
        return CoverDescentDatum(G, g, np.stack(obj), np.stack(mor), np.stack(comps))
    except ValueError as exc:
        raise ParseError(f"cover blocks have inconsistent lengths: {exc}") from exc


def from_document(doc: dict):
    """Entity for a schema-checked document; a groupoid with provenance stays a groupoid."""
    kind = doc["kind"]
    if kind == "groupoid":
        return _groupoid(doc)
    if kind == "group":
        return _group(doc)
    if kind == "weak_action":
        return action_from_tables(_group(doc["gamma"]), _groupoid(doc["groupoid"]),
                                  _ints(doc["mu_obj"], "mu_obj", 2), _ints(doc["mu_mor"], "mu_mor", 2),
                                  _ints(doc["alpha"], "alpha", 3), _ints(doc["beta"], "beta", 1))
    if kind == "galois_datum":
        return _galois(doc)
    if kind == "cover_datum":
        return _cover(doc)
    d1, d2 = _galois(doc["source"]), _galois(doc["target"])
    return descent_morphism_from_tables(d1, d2, _ints(doc["functor_obj"], "functor_obj", 1),
                                        _ints(doc["functor_mor"], "functor_mor", 1),
                                        _ints(doc["eta"], "eta", 2))


def parse(text: str):
    return from_document(loads(text))


def serialize(entity) -> str:
    return dumps(to_document(entity))


def load(path) -> tuple[str, object]:
    """(kind, entity) read from ``path``."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    doc = loads(text)
    return doc["kind"], from_document(doc)


def save(entity, path) -> None:
    Path(path).write_text(serialize(entity), encoding="utf-8")
