"""JSON encoding of tilesets and tiling descriptions.

Exact rationals travel as ``"p/q"`` strings (plain integers are also
accepted on input); points and vectors as two-element arrays.  A
document is an object with a ``tiling`` entry and, except for registered
family members, a ``tileset`` entry:

    {"tileset": [{"id": "white",
                  "vertices": [["-1/2","-1/2"], ["1/2","-1/2"], ...],
                  "center": ["0","0"],
                  "color": "white"}, ...],
     "tiling": {"kind": "periodic",
                "basis": [["1","0"], ["0","1"]],
                "tiles": [{"proto": "white", "offset": ["1/2","1/2"]}]}}

Tiling kinds and their fields:

* ``periodic``: ``basis`` (two vectors), ``tiles`` (fundamental tiles);
* ``periodic_with_defects``: ``base`` (a periodic tiling object),
  ``removed`` (tile references), ``added`` (tiles);
* ``half_plane_splice``: ``left``/``right`` (periodic tiling objects),
  ``line`` ([a, b, c] for the seam a x + b y = c);
* ``family``: ``family`` (registered name), ``n`` (integer or null for
  the limit); no tileset entry is needed.

Dumps are canonical: sorted keys, two-space indent, exact rationals,
so serializing the same description twice gives identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .descriptions import (
    FamilyMember,
    HalfPlaneSplice,
    Periodic,
    PeriodicWithDefects,
    TilingDescription,
    family_names,
)
from .tiles import Prototile, Tile, Tileset
from .vec import Vec, format_rational, parse_rational


def _fail(msg: str) -> ValueError:
    return ValueError(f"invalid tiling document: {msg}")


def _q(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise _fail(f"{where}: expected a rational as int or 'p/q' string")
    try:
        return Fraction(value) if isinstance(value, int) else parse_rational(value)
    except (ValueError, ZeroDivisionError) as e:
        raise _fail(f"{where}: {e}") from e


def _vec(obj: Any, where: str) -> Vec:
    if not isinstance(obj, list) or len(obj) != 2:
        raise _fail(f"{where}: expected [x, y]")
    return Vec(_q(obj[0], where), _q(obj[1], where))


def _vec_json(v: Vec) -> list[str]:
    return [format_rational(v.x), format_rational(v.y)]


def _obj(value: Any, where: str) -> dict:
    if not isinstance(value, dict):
        raise _fail(f"{where}: expected an object")
    return value


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise _fail(f"{where}: expected an array")
    return value


def _str_field(obj: dict, key: str, where: str) -> str:
    v = obj.get(key)
    if not isinstance(v, str):
        raise _fail(f"{where}: missing or non-string {key!r}")
    return v


# ---------------------------------------------------------------------------
# tilesets


def tileset_to_json(ts: Tileset) -> list[dict]:
    return [
        {
            "id": p.id,
            "vertices": [_vec_json(v) for v in p.vertices],
            "center": _vec_json(p.center),
            **({"color": p.color} if p.color is not None else {}),
        }
        for p in ts.prototiles
    ]


def tileset_from_json(obj: Any) -> Tileset:
    protos = []
    for i, entry in enumerate(_list(obj, "tileset")):
        where = f"tileset[{i}]"
        entry = _obj(entry, where)
        verts = [_vec(v, f"{where}.vertices") for v in _list(entry.get("vertices"), f"{where}.vertices")]
        color = entry.get("color")
        if color is not None and not isinstance(color, str):
            raise _fail(f"{where}: color must be a string")
        try:
            protos.append(
                Prototile(
                    _str_field(entry, "id", where),
                    tuple(verts),
                    _vec(entry.get("center"), f"{where}.center"),
                    color,
                )
            )
        except ValueError as e:
            raise _fail(f"{where}: {e}") from e
    try:
        return Tileset(tuple(protos))
    except ValueError as e:
        raise _fail(str(e)) from e


# ---------------------------------------------------------------------------
# tilings


def _tile_json(t: Tile) -> dict:
    return {"proto": t.proto.id, "offset": _vec_json(t.offset)}


def _tile(obj: Any, ts: Tileset, where: str) -> Tile:
    obj = _obj(obj, where)
    pid = _str_field(obj, "proto", where)
    if pid not in ts.by_id:
        raise _fail(f"{where}: unknown prototile {pid!r}")
    return Tile(ts.by_id[pid], _vec(obj.get("offset"), f"{where}.offset"))


def _periodic_json(d: Periodic) -> dict:
    return {
        "kind": "periodic",
        "basis": [_vec_json(b) for b in d.basis],
        "tiles": [_tile_json(t) for t in d.fundamental],
    }


def _periodic(obj: dict, ts: Tileset, where: str) -> Periodic:
    basis = _list(obj.get("basis"), f"{where}.basis")
    if len(basis) != 2:
        raise _fail(f"{where}.basis: expected two vectors")
    tiles = _list(obj.get("tiles"), f"{where}.tiles")
    try:
        return Periodic(
            ts,
            (_vec(basis[0], f"{where}.basis"), _vec(basis[1], f"{where}.basis")),
            tuple(_tile(t, ts, f"{where}.tiles[{i}]") for i, t in enumerate(tiles)),
        )
    except ValueError as e:
        raise _fail(f"{where}: {e}") from e


def tiling_to_json(desc: TilingDescription) -> dict:
    """Document for one description; includes the tileset when needed."""
    if isinstance(desc, FamilyMember):
        return {"tiling": {"kind": "family", "family": desc.family, "n": desc.n}}
    if isinstance(desc, Periodic):
        body = _periodic_json(desc)
    elif isinstance(desc, PeriodicWithDefects):
        body = {
            "kind": "periodic_with_defects",
            "base": _periodic_json(desc.base),
            "removed": [
                {"proto": pid, "offset": _vec_json(off)} for pid, off in desc.removed
            ],
            "added": [_tile_json(t) for t in desc.added],
        }
    elif isinstance(desc, HalfPlaneSplice):
        a, b, c = desc.line
        body = {
            "kind": "half_plane_splice",
            "left": _periodic_json(desc.left),
            "right": _periodic_json(desc.right),
            "line": [format_rational(a), format_rational(b), format_rational(c)],
        }
    else:
        raise ValueError(f"cannot serialize {type(desc).__name__}")
    return {"tileset": tileset_to_json(desc.tileset), "tiling": body}


def tiling_from_json(doc: Any) -> TilingDescription:
    doc = _obj(doc, "document")
    body = _obj(doc.get("tiling"), "tiling")
    kind = _str_field(body, "kind", "tiling")
    if kind == "family":
        name = _str_field(body, "family", "tiling")
        if name not in family_names():
            raise _fail(f"unknown family {name!r}; known: {', '.join(family_names())}")
        n = body.get("n")
        if n is not None and (isinstance(n, bool) or not isinstance(n, int)):
            raise _fail("tiling.n: expected an integer or null")
        try:
            return FamilyMember(name, n)
        except ValueError as e:
            raise _fail(str(e)) from e
    if kind not in ("periodic", "periodic_with_defects", "half_plane_splice"):
        raise _fail(f"unknown tiling kind {kind!r}")
    ts = tileset_from_json(doc.get("tileset"))
    if kind == "periodic":
        return _periodic(body, ts, "tiling")
    if kind == "periodic_with_defects":
        base = _periodic(_obj(body.get("base"), "tiling.base"), ts, "tiling.base")
        removed = tuple(
            (
                _str_field(_obj(r, f"tiling.removed[{i}]"), "proto", "tiling.removed"),
                _vec(_obj(r, f"tiling.removed[{i}]").get("offset"), "tiling.removed"),
            )
            for i, r in enumerate(_list(body.get("removed"), "tiling.removed"))
        )
        added = tuple(
            _tile(t, ts, f"tiling.added[{i}]")
            for i, t in enumerate(_list(body.get("added"), "tiling.added"))
        )
        try:
            return PeriodicWithDefects(base, removed, added)
        except ValueError as e:
            raise _fail(str(e)) from e
    if kind == "half_plane_splice":
        line = _list(body.get("line"), "tiling.line")
        if len(line) != 3:
            raise _fail("tiling.line: expected [a, b, c]")
        try:
            return HalfPlaneSplice(
                _periodic(_obj(body.get("left"), "tiling.left"), ts, "tiling.left"),
                _periodic(_obj(body.get("right"), "tiling.right"), ts, "tiling.right"),
                tuple(_q(v, "tiling.line") for v in line),
            )
        except ValueError as e:
            raise _fail(str(e)) from e
    raise AssertionError(kind)


# ---------------------------------------------------------------------------
# strings and files


def dumps(desc: TilingDescription) -> str:
    """Canonical document text: sorted keys, two-space indent."""
    return json.dumps(tiling_to_json(desc), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> TilingDescription:
    return tiling_from_json(json.loads(text))


def save_tiling(path: str, desc: TilingDescription) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(desc))


def load_tiling(path: str) -> TilingDescription:
    with open(path, "r", encoding="utf-8") as fh:
        return tiling_from_json(json.load(fh))


def load_tileset(path: str) -> Tileset:
    """Read a tileset from a document or a bare prototile array."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if isinstance(doc, dict) and "tileset" in doc:
        return tileset_from_json(doc["tileset"])
    return tileset_from_json(doc)


__all__ = [
    "dumps",
    "loads",
    "load_tiling",
    "load_tileset",
    "save_tiling",
    "tileset_from_json",
    "tileset_to_json",
    "tiling_from_json",
    "tiling_to_json",
]
