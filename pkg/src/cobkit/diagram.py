"""Core data model for cobordism diagrams.

A diagram is a purely combinatorial planar-diagram code:

* every circle carries a cyclic list of *events* -- the crossings it runs
  through, in traversal order (the traversal order is the orientation);
* a crossing records which (circle, slot) passes over and which under,
  plus a handedness sign;
* a wedge is a family of circles sharing a center vertex; the center's
  rotation is fixed by convention as (out_1, in_1, ..., out_g, in_g)
  counterclockwise, so it is implied by the order of ``circle_ids``.

Wedge circles store their center visit as two pseudo-events: the event
list always starts with ``CenterSlot("depart")`` and ends with
``CenterSlot("return")``.  This pins the cyclic rotation of wedge-circle
event lists and makes serialization canonical.

Crossing sign convention: +1 when the under strand crosses from right to
left as seen along the over strand's direction of travel (right-handed).
Together with the rotation data this determines the planar embedding up
to reflection-free isotopy; no coordinates are stored anywhere.

Framings are explicit integers on surgery circles.  They are *not*
derived from the writhe, so a Reidemeister-I kink never changes one.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

from .errors import MalformedDiagramError

INCOMING = "incoming"
OUTGOING = "outgoing"
OVER = "over"
UNDER = "under"
SURGERY = "surgery"
WEDGE = "wedge"


@dataclass(frozen=True)
class CrossingSlot:
    """One visit of a circle to a crossing, in role ``over`` or ``under``."""

    crossing: str
    role: str


@dataclass(frozen=True)
class CenterSlot:
    """A wedge circle leaving (``depart``) or re-entering (``return``)
    its wedge center."""

    which: str


@dataclass(frozen=True)
class Circle:
    """A circle of the diagram: either framed surgery data or one loop of
    a wedge (then ``wedge``/``index`` locate it and ``framing`` is unused)."""

    id: str
    kind: str
    events: tuple = ()
    framing: int = 0
    wedge: str | None = None
    index: int | None = None

    def is_surgery(self):
        return self.kind == SURGERY

    def is_wedge(self):
        return self.kind == WEDGE

    def crossing_events(self):
        """(slot, event) pairs for the crossing events only."""
        return [(i, e) for i, e in enumerate(self.events)
                if isinstance(e, CrossingSlot)]


@dataclass(frozen=True)
class Crossing:
    """A transverse double point; ``over``/``under`` are (circle id, slot)."""

    id: str
    over: tuple
    under: tuple
    sign: int

    def strand(self, role):
        return self.over if role == OVER else self.under

    def other_role(self, circle_id, slot):
        """Role of the strand that is *not* (circle_id, slot)."""
        if self.over == (circle_id, slot):
            return UNDER
        if self.under == (circle_id, slot):
            return OVER
        raise MalformedDiagramError(
            f"crossing {self.id} does not touch ({circle_id}, {slot})")


@dataclass(frozen=True)
class Wedge:
    """A wedge of ``genus`` circles with a colored center.

    The center rotation is the fixed cyclic order
    (out_1, in_1, ..., out_g, in_g) counterclockwise, where circle i is
    ``circle_ids[i-1]``.  Genus 0 wedges are bare ball markers.
    """

    id: str
    color: str
    circle_ids: tuple = ()

    @property
    def genus(self):
        return len(self.circle_ids)


@dataclass(frozen=True)
class Diagram:
    """An immutable cobordism diagram.

    ``source_order`` / ``target_order`` list the incoming / outgoing wedge
    ids in boundary order.  All query operations are pure; rewriting
    operations live in :mod:`cobkit.editing` and always build new values.
    """

    circles: tuple = ()
    crossings: tuple = ()
    wedges: tuple = ()
    source_order: tuple = ()
    target_order: tuple = ()

    @cached_property
    def circle_by_id(self):
        return {c.id: c for c in self.circles}

    @cached_property
    def crossing_by_id(self):
        return {x.id: x for x in self.crossings}

    @cached_property
    def wedge_by_id(self):
        return {w.id: w for w in self.wedges}

    def circle(self, cid) -> Circle:
        try:
            return self.circle_by_id[cid]
        except KeyError:
            raise MalformedDiagramError(f"unknown circle id {cid!r}") from None

    def crossing(self, xid) -> Crossing:
        try:
            return self.crossing_by_id[xid]
        except KeyError:
            raise MalformedDiagramError(f"unknown crossing id {xid!r}") from None

    def wedge(self, wid) -> Wedge:
        try:
            return self.wedge_by_id[wid]
        except KeyError:
            raise MalformedDiagramError(f"unknown wedge id {wid!r}") from None

    def surgery_circles(self):
        return [c for c in self.circles if c.is_surgery()]

    def wedge_circles(self):
        return [c for c in self.circles if c.is_wedge()]

    def role_of(self, xid, circle_id, slot):
        x = self.crossing(xid)
        if x.over == (circle_id, slot):
            return OVER
        if x.under == (circle_id, slot):
            return UNDER
        raise MalformedDiagramError(
            f"crossing {xid} does not reference ({circle_id}, {slot})")


def crossings_between(d: Diagram, a: str, b: str):
    """Crossings with one strand on circle ``a`` and the other on ``b``."""
    found = []
    for x in d.crossings:
        ids = {x.over[0], x.under[0]}
        if a == b:
            if ids == {a}:
                found.append(x)
        elif ids == {a, b}:
            found.append(x)
    return found


def linking_number(d: Diagram, a: str, b: str) -> int:
    """Half the signed count of crossings between two distinct circles."""
    if a == b:
        raise ValueError("linking number needs two distinct circles")
    d.circle(a), d.circle(b)
    total = sum(x.sign for x in crossings_between(d, a, b))
    if total % 2:
        raise MalformedDiagramError(
            f"odd signed crossing count between {a} and {b}")
    return total // 2


def linking_matrix(d: Diagram):
    """Symmetric matrix over the surgery circles: framings on the diagonal,
    linking numbers off it.  Returns an :class:`cobkit.invariants.IntMatrix`.
    """
    from .invariants import IntMatrix

    surg = d.surgery_circles()
    n = len(surg)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(surg[i].framing)
            else:
                row.append(linking_number(d, surg[i].id, surg[j].id))
        rows.append(tuple(row))
    return IntMatrix(tuple(rows))


def writhe(d: Diagram, a: str) -> int:
    """Signed count of self-crossings of one circle."""
    return sum(x.sign for x in crossings_between(d, a, a))


def resequence(events, start):
    """Rotate a cyclic event tuple so ``start`` comes first."""
    return tuple(events[start:]) + tuple(events[:start])


def relabel(d: Diagram, prefix: str) -> Diagram:
    """A structurally identical copy with every id prefixed.

    Used by the merge operations (tensor, sew) to keep ids collision-free
    and deterministic.
    """

    def r(i):
        return prefix + i

    circles = tuple(
        replace(
            c,
            id=r(c.id),
            wedge=None if c.wedge is None else r(c.wedge),
            events=tuple(
                CrossingSlot(r(e.crossing), e.role)
                if isinstance(e, CrossingSlot) else e
                for e in c.events),
        )
        for c in d.circles)
    crossings = tuple(
        replace(x, id=r(x.id),
                over=(r(x.over[0]), x.over[1]),
                under=(r(x.under[0]), x.under[1]))
        for x in d.crossings)
    wedges = tuple(
        replace(w, id=r(w.id), circle_ids=tuple(r(c) for c in w.circle_ids))
        for w in d.wedges)
    return Diagram(circles, crossings, wedges,
                   tuple(r(w) for w in d.source_order),
                   tuple(r(w) for w in d.target_order))
