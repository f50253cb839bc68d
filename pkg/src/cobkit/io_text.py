"""Diagram documents and move scripts as canonical JSON text.

The wire format is a JSON tree with explicit ids and a ``format_version``
field.  Serialization is canonical (sorted keys, fixed separators, one
trailing newline) so that equal diagrams produce byte-identical text and
golden files stay stable.  Integers beyond 64 bits are written as
decimal strings; the parser accepts both forms.
"""

from __future__ import annotations

import json

from .diagram import (CenterSlot, Circle, Crossing, CrossingSlot, Diagram,
                      SURGERY, WEDGE, Wedge)
from .errors import ParseError
from .planarity import validate
from . import moves as _moves

FORMAT_VERSION = "1"
_INT64_MAX = 2 ** 63 - 1


def _int_out(n: int):
    return str(n) if abs(n) > _INT64_MAX else n


def _int_in(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"expected an integer at {where}", where)
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"bad integer {value!r} at {where}", where) from None


def _event_out(e):
    if isinstance(e, CrossingSlot):
        return ["x", e.crossing, e.role]
    return ["center", e.which]


def _event_in(raw, where):
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"bad event at {where}", where)
    if raw[0] == "x" and len(raw) == 3 and raw[2] in ("over", "under"):
        return CrossingSlot(str(raw[1]), raw[2])
    if raw[0] == "center" and len(raw) == 2 and raw[1] in ("depart", "return"):
        return CenterSlot(raw[1])
    raise ParseError(f"bad event {raw!r} at {where}", where)


def diagram_to_document(d: Diagram, metadata=None) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "diagram": {
            "circles": [
                {
                    "id": c.id,
                    "kind": c.kind,
                    **({"framing": _int_out(c.framing)} if c.is_surgery()
                       else {"wedge": c.wedge, "index": c.index}),
                    "events": [_event_out(e) for e in c.events],
                }
                for c in d.circles
            ],
            "crossings": [
                {"id": x.id, "over": [x.over[0], x.over[1]],
                 "under": [x.under[0], x.under[1]], "sign": x.sign}
                for x in d.crossings
            ],
            "wedges": [
                {"id": w.id, "color": w.color,
                 "circles": list(w.circle_ids)}
                for w in d.wedges
            ],
            "source_order": list(d.source_order),
            "target_order": list(d.target_order),
        },
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def serialize(d: Diagram, metadata=None) -> str:
    """Canonical text for a valid diagram; deterministic across runs."""
    return json.dumps(diagram_to_document(d, metadata), sort_keys=True,
                      separators=(",", ": "), indent=1) + "\n"


def document_to_diagram(doc, where="document") -> Diagram:
    if not isinstance(doc, dict):
        raise ParseError(f"{where} must be an object", where)
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ParseError(
            f"unsupported format_version {version!r} (expected "
            f"{FORMAT_VERSION!r})", "format_version")
    body = doc.get("diagram")
    if not isinstance(body, dict):
        raise ParseError("missing diagram object", "diagram")

    circles = []
    for i, raw in enumerate(body.get("circles", [])):
        loc = f"diagram.circles[{i}]"
        kind = raw.get("kind")
        events = tuple(_event_in(e, f"{loc}.events[{j}]")
                       for j, e in enumerate(raw.get("events", [])))
        if kind == SURGERY:
            circles.append(Circle(
                id=str(raw["id"]), kind=SURGERY, events=events,
                framing=_int_in(raw.get("framing", 0), f"{loc}.framing")))
        elif kind == WEDGE:
            circles.append(Circle(
                id=str(raw["id"]), kind=WEDGE, events=events,
                wedge=str(raw.get("wedge")),
                index=_int_in(raw.get("index", 0), f"{loc}.index")))
        else:
            raise ParseError(f"unknown circle kind {kind!r}", loc)

    crossings = []
    for i, raw in enumerate(body.get("crossings", [])):
        loc = f"diagram.crossings[{i}]"
        try:
            crossings.append(Crossing(
                id=str(raw["id"]),
                over=(str(raw["over"][0]),
                      _int_in(raw["over"][1], f"{loc}.over")),
                under=(str(raw["under"][0]),
                       _int_in(raw["under"][1], f"{loc}.under")),
                sign=_int_in(raw["sign"], f"{loc}.sign")))
        except (KeyError, IndexError, TypeError):
            raise ParseError(f"malformed crossing at {loc}", loc) from None

    wedges = []
    for i, raw in enumerate(body.get("wedges", [])):
        loc = f"diagram.wedges[{i}]"
        try:
            wedges.append(Wedge(id=str(raw["id"]), color=raw["color"],
                                circle_ids=tuple(map(str, raw["circles"]))))
        except (KeyError, TypeError):
            raise ParseError(f"malformed wedge at {loc}", loc) from None

    d = Diagram(
        circles=tuple(circles), crossings=tuple(crossings),
        wedges=tuple(wedges),
        source_order=tuple(map(str, body.get("source_order", []))),
        target_order=tuple(map(str, body.get("target_order", []))))
    report = validate(d)
    if not report.ok:
        first = report.violations[0]
        raise ParseError(
            f"diagram fails validation: {first.code}: {first.message}",
            first.location or "diagram")
    return d


def parse(text: str) -> Diagram:
    """Parse and validate a diagram document; raises ParseError with a
    location on both syntax and semantic failures."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}",
                         f"line {exc.lineno}, column {exc.colno}") from None
    return document_to_diagram(doc)


# -- move scripts -------------------------------------------------------------

def _move_to_obj(m):
    if isinstance(m, _moves.BlowUp):
        return {"kind": "blow_up", "sign": m.sign,
                **({"site": list(m.site)} if m.site else {})}
    if isinstance(m, _moves.BlowDown):
        return {"kind": "blow_down", "circle": m.circle}
    if isinstance(m, _moves.HandleSlide):
        obj = {"kind": "handle_slide", "moving": m.moving, "over": m.over}
        if m.site:
            obj["site"] = [list(m.site[0]), list(m.site[1])]
        return obj
    if isinstance(m, _moves.R1):
        if m.crossing is not None:
            return {"kind": "r1", "crossing": m.crossing}
        return {"kind": "r1", "site": list(m.site), "sign": m.sign}
    if isinstance(m, _moves.R2):
        if m.crossings is not None:
            return {"kind": "r2", "crossings": list(m.crossings)}
        return {"kind": "r2", "darts": [list(m.darts[0]), list(m.darts[1])],
                "over": m.over}
    if isinstance(m, _moves.R3):
        return {"kind": "r3", "site": list(m.site)}
    if isinstance(m, _moves.Twist):
        return {"kind": "twist", "incoming": m.incoming,
                "outgoing": m.outgoing}
    raise ParseError(f"unknown move {m!r}")


def _obj_to_move(obj, where):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError(f"bad move at {where}", where)
    kind = obj["kind"]
    try:
        if kind == "blow_up":
            site = tuple(obj["site"]) if "site" in obj else None
            return _moves.BlowUp(sign=int(obj["sign"]), site=site)
        if kind == "blow_down":
            return _moves.BlowDown(circle=str(obj["circle"]))
        if kind == "handle_slide":
            site = None
            if "site" in obj:
                site = (tuple(obj["site"][0]), tuple(obj["site"][1]))
            return _moves.HandleSlide(moving=str(obj["moving"]),
                                      over=str(obj["over"]), site=site)
        if kind == "r1":
            if "crossing" in obj:
                return _moves.R1(crossing=str(obj["crossing"]))
            return _moves.R1(site=tuple(obj["site"]),
                             sign=int(obj.get("sign", 1)))
        if kind == "r2":
            if "crossings" in obj:
                return _moves.R2(crossings=tuple(map(str, obj["crossings"])))
            return _moves.R2(darts=(tuple(obj["darts"][0]),
                                    tuple(obj["darts"][1])),
                             over=bool(obj.get("over", True)))
        if kind == "r3":
            return _moves.R3(site=tuple(obj["site"]))
        if kind == "twist":
            return _moves.Twist(incoming=str(obj["incoming"]),
                                outgoing=str(obj["outgoing"]))
    except (KeyError, IndexError, TypeError, ValueError):
        raise ParseError(f"malformed {kind} move at {where}", where) from None
    raise ParseError(f"unknown move kind {kind!r} at {where}", where)


def serialize_move_script(script) -> str:
    doc = {"format_version": FORMAT_VERSION,
           "moves": [_move_to_obj(m) for m in script]}
    return json.dumps(doc, sort_keys=True, separators=(",", ": "),
                      indent=1) + "\n"


def parse_move_script(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}",
                         f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, dict) or doc.get("format_version") != FORMAT_VERSION:
        raise ParseError("unsupported move script format_version",
                         "format_version")
    return _moves.MoveScript(tuple(
        _obj_to_move(obj, f"moves[{i}]")
        for i, obj in enumerate(doc.get("moves", []))))
