"""Instance files: a JSON schema describing field, groupoid, algebra, action.

Layout:

    {
      "field": "Q" | "GF(p)" | {"prime": p},
      "groupoid": {
        "objects": ["e1", ...],
        "morphisms": [{"name": "g", "src": "e1", "tgt": "e2"}, ...],
        "compose": [["g", "h", "gh"], ...],      # non-identity products
        "inverse": [["g", "ginv"], ...]
      },
      "algebra": {"diagonal": n}
                 | {"structure": [[[...]]], "unit": [...], "basis_names": [...]},
      "action": {"id:e1": {"dom": [...]},        # identity maps may be omitted
                 "g": {"dom": [...], "map": [[...], ...]}, ...}
    }

Identity morphisms are implicit ("id:<object>") but their "dom" entries are
required, since they define the object ideals A_e.  Scalars are written as
strings ("3/4", "2") or plain integers.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .algebra import Algebra
from .groupoid import build_groupoid
from .linalg import Field, Matrix
from .partial_action import PartialAction


class InstanceFormatError(Exception):
    pass


@dataclass(frozen=True)
class Instance:
    action: PartialAction
    data: dict        # canonical form (scalars as strings, fixed key layout)
    digest: str


def parse_field(desc) -> Field:
    if desc == "Q":
        return Field.rationals()
    if isinstance(desc, str) and desc.startswith("GF(") and desc.endswith(")"):
        return Field.prime(int(desc[3:-1]))
    if isinstance(desc, dict) and "prime" in desc:
        return Field.prime(int(desc["prime"]))
    raise InstanceFormatError("unrecognised field descriptor %r" % (desc,))


def _parse_vector(field: Field, raw, dim: int) -> tuple:
    if len(raw) != dim:
        raise InstanceFormatError("vector of length %d, expected %d" % (len(raw), dim))
    return tuple(field.parse(x) for x in raw)


def _parse_matrix(field: Field, raw, dim: int) -> Matrix:
    if len(raw) != dim or any(len(r) != dim for r in raw):
        raise InstanceFormatError("matrix is not %d x %d" % (dim, dim))
    return Matrix(field, [[field.parse(x) for x in row] for row in raw])


def parse_instance(data: dict) -> Instance:
    try:
        field = parse_field(data["field"])
        gdata = data["groupoid"]
        arrows = [(m["name"], m["src"], m["tgt"]) for m in gdata.get("morphisms", [])]
        groupoid = build_groupoid(gdata["objects"], arrows,
                                  [tuple(t) for t in gdata.get("compose", [])],
                                  [tuple(p) for p in gdata.get("inverse", [])])
        adata = data["algebra"]
        if "diagonal" in adata:
            algebra = Algebra.diagonal(field, int(adata["diagonal"]),
                                       adata.get("basis_names"))
        else:
            structure = [[[field.parse(c) for c in row] for row in plane]
                         for plane in adata["structure"]]
            algebra = Algebra(field, structure,
                              _parse_vector(field, adata["unit"], len(structure)),
                              adata.get("basis_names"))
        act = data.get("action", {})
        idems = {}
        maps = {}
        for g in groupoid.morphisms:
            entry = act.get(g)
            if entry is None:
                raise InstanceFormatError("no action entry for morphism %r" % (g,))
            idems[g] = _parse_vector(field, entry["dom"], algebra.dim)
            if "map" in entry:
                maps[g] = _parse_matrix(field, entry["map"], algebra.dim)
            elif not groupoid.is_identity(g):
                raise InstanceFormatError("morphism %r needs an explicit map" % (g,))
        extra = set(act) - set(groupoid.morphisms)
        if extra:
            raise InstanceFormatError("action mentions unknown morphisms %r" % (sorted(extra),))
        action = PartialAction(groupoid, algebra, idems, maps)
    except InstanceFormatError:
        raise
    except KeyError as exc:
        raise InstanceFormatError("missing instance key: %s" % (exc,)) from exc
    except Exception as exc:
        raise InstanceFormatError(str(exc)) from exc
    canonical = canonical_dict(data["field"], action)
    return Instance(action, canonical, instance_digest(canonical))


def load_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError("not valid JSON: %s" % (exc,)) from exc
    return parse_instance(data)


def canonical_dict(field_desc, pa: PartialAction) -> dict:
    """Re-serialize a parsed instance deterministically (scalars as strings)."""
    g = pa.groupoid
    alg = pa.algebra
    non_id = [m for m in g.morphisms if not g.is_identity(m)]
    out = {
        "field": field_desc if isinstance(field_desc, str) else
                 "GF(%d)" % int(field_desc["prime"]),
        "groupoid": {
            "objects": list(g.objects),
            "morphisms": [{"name": m, "src": g.src[m], "tgt": g.tgt[m]}
                          for m in non_id],
            "compose": sorted([a, b, c] for (a, b), c in g.compose.items()
                              if not (g.is_identity(a) or g.is_identity(b))),
            "inverse": sorted([a, b] for a, b in g.inverse.items()
                              if a <= b and not g.is_identity(a)),
        },
        "algebra": {
            "basis_names": list(alg.basis_names),
            "structure": [[[str(c) for c in row] for row in plane]
                          for plane in alg.structure],
            "unit": [str(c) for c in alg.unit],
        },
        "action": {
            m: {"dom": [str(c) for c in pa.idem(m)],
                "map": [[str(c) for c in row] for row in pa.matrix(m).data]}
            for m in g.morphisms
        },
    }
    return out


def instance_digest(canonical: dict) -> str:
    blob = json.dumps(canonical, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()
