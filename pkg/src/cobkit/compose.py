"""Composing cobordism diagrams: tensor, permutation, inside-out, sewing,
mending.

The composition machinery works entirely on the planar codes:

* ``inside_out`` reads a handlebody pattern off an outgoing wedge: the
  interior is the diagram with that wedge deleted, and each wedge
  circle's membrane traffic becomes a band record -- one ``traverse``
  per piercing, one ``over``/``under`` per excursion that sails across
  the membrane without piercing it.
* ``sew`` substitutes such a pattern for an incoming wedge of the other
  diagram.  Every band with n piercings turns the partner circle into n
  parallel cables, each inheriting all of the circle's crossings (signs
  flipped for backwards passes); the pattern's strands are spliced
  through the cables, and over/under band events cross the whole bundle
  at the cable neck.
* ``mend`` self-glues along an identity-linked outgoing/incoming pair by
  deleting the two wedge centers, turning their circles into 0-framed
  surgery data, and replacing each index-wise clasp with a Borromean
  motif threaded by one fresh 0-framed Brunnian circle.

Both ``sew`` and ``mend`` insist that the substitution region is
unobstructed (the spliced code must stay realizable in the sphere); a
diagram that tangles foreign strands through the work area is rejected
rather than silently mis-drawn, and should be cleaned up with moves
first.

Merges relabel their inputs deterministically: after ``tensor(a, b)`` or
``sew(dc, u, dd, v)`` the ids of the first argument carry the prefix
``c.`` and those of the second ``d.``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (CenterSlot, CrossingSlot, Diagram, INCOMING, OUTGOING,
                      OVER, UNDER, relabel)
from .editing import DiagramEditor, borromean_motif_events
from .errors import (CompositionError, GenusMismatchError,
                     NotStandardPositionError)
from .membranes import membrane_excursions
from .moves import install_identity_link
from .planarity import validate


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Disjoint union, boundary orders concatenated (``d1`` then ``d2``)."""
    a = relabel(d1, "c.")
    b = relabel(d2, "d.")
    return Diagram(
        circles=a.circles + b.circles,
        crossings=a.crossings + b.crossings,
        wedges=a.wedges + b.wedges,
        source_order=a.source_order + b.source_order,
        target_order=a.target_order + b.target_order,
    )


def permute(d: Diagram, pi, tau) -> Diagram:
    """Reindex the boundary orders: entry k of the new source is entry
    ``pi[k]`` of the old one, and likewise ``tau`` for the target."""
    if sorted(pi) != list(range(len(d.source_order))):
        raise ValueError("pi must be a permutation of the source positions")
    if sorted(tau) != list(range(len(d.target_order))):
        raise ValueError("tau must be a permutation of the target positions")
    return Diagram(
        circles=d.circles, crossings=d.crossings, wedges=d.wedges,
        source_order=tuple(d.source_order[k] for k in pi),
        target_order=tuple(d.target_order[k] for k in tau),
    )


@dataclass(frozen=True)
class BandEvent:
    """One passage of an interior strand through or across a band.

    ``kind`` is ``traverse`` (through the membrane, ``direction`` the
    piercing sign), ``over`` or ``under`` (across it).  ``gap``/``seq``
    anchor the passage in the interior strand's event list so sewing can
    splice cables back in; ``enter_sign`` remembers the handedness of the
    excursion's entering crossing.
    """

    kind: str
    strand: str
    direction: int = 0
    gap: int = 0
    seq: int = 0
    enter_sign: int = 0


@dataclass(frozen=True)
class HandlebodyPattern:
    """A diagram drawn inside a genus-g handlebody whose boundary is an
    outgoing surface: the ``interior`` diagram plus per-band traffic."""

    genus: int
    interior: Diagram
    bands: tuple            # per band, a tuple of BandEvent in membrane order
    target_label: int

    def band_events(self, i):
        return self.bands[i - 1]


def inside_out(d: Diagram, u: str) -> HandlebodyPattern:
    """Turn ``d`` into a pattern within a handlebody by deleting the
    outgoing wedge ``u`` and recording its membrane traffic.

    Precondition: every excursion into a membrane of ``u`` must be bare
    (no events strictly inside it); decompose tangled passes with moves
    first.
    """
    w = d.wedge_by_id.get(u)
    if w is None or w.color != OUTGOING:
        raise CompositionError(f"{u} is not an outgoing wedge")

    # Collect excursions per band before any surgery on the data.
    removed = {}      # strand id -> set of removed event slots
    raw_bands = []    # per band: [(pos, excursion)]
    for cid in w.circle_ids:
        excs = membrane_excursions(d, cid)
        for pos, e in excs:
            if e.interior:
                raise NotStandardPositionError(
                    f"excursion of {e.strand} into {cid} is not bare; "
                    "pull foreign events out of the membrane first")
            removed.setdefault(e.strand, set()).update(
                {e.enter_slot, e.leave_slot})
        raw_bands.append(excs)

    bands = []
    for excs in raw_bands:
        events = []
        for pos, e in excs:
            strand_events = d.circle(e.strand).events
            dead = removed[e.strand] | {
                s for s, ev in enumerate(strand_events)
                if isinstance(ev, CrossingSlot)
                and ev.crossing in _crossings_of_wedge(d, w)}
            gap = sum(1 for s in range(e.enter_slot)
                      if s not in dead
                      and not isinstance(strand_events[s], CenterSlot))
            if e.is_piercing:
                under = e.enter if e.enter_flag == UNDER else e.leave
                events.append(BandEvent(
                    kind="traverse", strand=e.strand,
                    direction=d.crossing(under).sign,
                    gap=gap, seq=e.enter_slot))
            else:
                events.append(BandEvent(
                    kind="over" if e.enter_flag == OVER else "under",
                    strand=e.strand, gap=gap, seq=e.enter_slot,
                    enter_sign=d.crossing(e.enter).sign))
        bands.append(tuple(events))

    ed = DiagramEditor(d)
    ed.remove_wedge(u)
    interior = ed.freeze()

    # Wedge circles keep their center slots, which do not count as gap
    # positions above; rebase gaps onto the surviving event lists.
    rebased = []
    for band in bands:
        out = []
        for e in band:
            evs = interior.circle(e.strand).events
            offset = 1 if (evs and isinstance(evs[0], CenterSlot)) else 0
            out.append(BandEvent(kind=e.kind, strand=e.strand,
                                 direction=e.direction, gap=e.gap + offset,
                                 seq=e.seq, enter_sign=e.enter_sign))
        rebased.append(tuple(out))

    return HandlebodyPattern(
        genus=w.genus, interior=interior, bands=tuple(rebased),
        target_label=list(d.target_order).index(u))


def _crossings_of_wedge(d: Diagram, w):
    dead = set()
    for cid in w.circle_ids:
        for e in d.circle(cid).events:
            if isinstance(e, CrossingSlot):
                dead.add(e.crossing)
    return dead


def delete_wedge(d: Diagram, wid: str) -> Diagram:
    """Remove a wedge, its circles, and every crossing they carried."""
    ed = DiagramEditor(d)
    ed.remove_wedge(wid)
    return ed.freeze()


def sew(dc: Diagram, u: str, dd: Diagram, v: str) -> Diagram:
    """Glue the cobordism of ``dc`` (along its outgoing wedge ``u``) to
    the one of ``dd`` (along its incoming wedge ``v``).

    Ids from ``dc`` come back prefixed ``c.``, those from ``dd``
    prefixed ``d.``; ``dd``'s remaining wedges keep their boundary
    positions and ``dc``'s are appended per color.
    """
    wv = dd.wedge_by_id.get(v)
    if wv is None or wv.color != INCOMING:
        raise CompositionError(f"{v} is not an incoming wedge")
    wu = dc.wedge_by_id.get(u)
    if wu is None or wu.color != OUTGOING:
        raise CompositionError(f"{u} is not an outgoing wedge")
    if wu.genus != wv.genus:
        raise GenusMismatchError(
            f"cannot sew genus {wu.genus} to genus {wv.genus}")

    pattern = inside_out(dc, u)
    plant = relabel(pattern.interior, "c.")
    host = relabel(dd, "d.")
    v_id = "d." + v
    ed = DiagramEditor(host)

    # Merge the planted interior.
    ed.circle_order.extend(c.id for c in plant.circles)
    for c in plant.circles:
        ed.events[c.id] = list(c.events)
        ed.kind[c.id] = c.kind
        if c.is_surgery():
            ed.framing[c.id] = c.framing
        else:
            ed.wedge_of[c.id] = (c.wedge, c.index)
    for w in plant.wedges:
        ed.wedges[w.id] = (w.color, list(w.circle_ids))
        ed.wedge_order.append(w.id)
    for x in plant.crossings:
        ed.signs[x.id] = x.sign
    ed.source_order.extend(plant.source_order)
    ed.target_order.extend(plant.target_order)

    # Splice blocks accumulate per interior strand: (gap, seq, events).
    splices = {}

    wv_host = host.wedge(v_id)
    for band_index, vcid in enumerate(wv_host.circle_ids):
        markers = [
            BandEvent(kind=e.kind, strand="c." + e.strand,
                      direction=e.direction, gap=e.gap, seq=e.seq,
                      enter_sign=e.enter_sign)
            for e in pattern.bands[band_index]]
        cables = [m for m in markers if m.kind == "traverse"]
        n = len(cables)
        vc = host.circle(vcid)
        inherited = [(slot, ev) for slot, ev in enumerate(vc.events)
                     if isinstance(ev, CrossingSlot)]

        # Fresh crossings: one copy of every inherited crossing per cable.
        copies = {}
        for j, (slot, ev) in enumerate(inherited):
            x = host.crossing(ev.crossing)
            if {x.over[0], x.under[0]} == {vcid}:
                raise NotStandardPositionError(
                    f"wedge circle {vcid} has self-crossings")
            for k, cable in enumerate(cables):
                xid = ed.new_crossing(x.sign * cable.direction, prefix="s")
                copies[(j, k)] = xid

        # Cable splice blocks along each traversing strand.
        for k, cable in enumerate(cables):
            block = []
            for j, (slot, ev) in enumerate(inherited):
                block.append(CrossingSlot(copies[(j, k)], ev.role))
            if cable.direction == -1:
                block.reverse()
            splices.setdefault(cable.strand, []).append(
                (cable.gap, cable.seq, block))

        # Host strands now cross the bundle where they crossed the circle.
        for j, (slot, ev) in enumerate(inherited):
            x = host.crossing(ev.crossing)
            other_role = UNDER if ev.role == OVER else OVER
            t_cid, t_slot = x.strand(other_role)
            rl = _crosses_right_to_left(host, ev.crossing, vcid)
            block = [CrossingSlot(copies[(j, k)], other_role)
                     for k in range(n)]
            if not rl:
                block.reverse()
            at = ed.events[t_cid].index(host.circle(t_cid).events[t_slot])
            ed.replace_event(t_cid, at, block)

        # Over/under band events cross the whole bundle at the neck.
        for m in markers:
            if m.kind == "traverse":
                continue
            role = OVER if m.kind == "over" else UNDER
            cable_role = UNDER if m.kind == "over" else OVER
            out_block = []
            in_block = []
            for k, cable in enumerate(cables):
                x_out = ed.new_crossing(m.enter_sign * cable.direction,
                                        prefix="s")
                x_in = ed.new_crossing(-m.enter_sign * cable.direction,
                                       prefix="s")
                out_block.append(CrossingSlot(x_out, role))
                in_block.append(CrossingSlot(x_in, role))
                head = CrossingSlot(x_out, cable_role)
                tail = CrossingSlot(x_in, cable_role)
                if cable.direction == -1:
                    head, tail = tail, head
                for entry in splices[cable.strand]:
                    if entry[:2] == (cable.gap, cable.seq):
                        entry[2].insert(0, head)
                        entry[2].append(tail)
            splices.setdefault(m.strand, []).append(
                (m.gap, m.seq, out_block + list(reversed(in_block))))

    ed.remove_wedge(v_id)
    for strand, blocks in splices.items():
        for gap, seq, block in sorted(blocks, key=lambda t: (-t[0], -t[1])):
            ed.insert_events(strand, gap, block)

    out = ed.freeze()
    rep = validate(out)
    if not rep.ok:
        raise CompositionError(
            f"sewing produced an unrealizable code ({rep.codes()}); the "
            "gluing region is obstructed, simplify the diagrams first")
    return out


def _crosses_right_to_left(d: Diagram, xid: str, of_circle: str) -> bool:
    x = d.crossing(xid)
    role_of_c = OVER if x.over[0] == of_circle else UNDER
    return (x.sign == 1) if role_of_c == OVER else (x.sign == -1)


def make_identity_link(d: Diagram, u: str, v: str) -> Diagram:
    """Link a clean outgoing/incoming wedge pair into the identity-link
    configuration (the Twist move)."""
    wu = d.wedge_by_id.get(u)
    wv = d.wedge_by_id.get(v)
    if wu is None or wu.color != OUTGOING:
        raise CompositionError(f"{u} is not an outgoing wedge")
    if wv is None or wv.color != INCOMING:
        raise CompositionError(f"{v} is not an incoming wedge")
    if wu.genus != wv.genus:
        raise GenusMismatchError("wedges must have equal genus")
    ed = DiagramEditor(d)
    from .errors import MoveError
    try:
        install_identity_link(ed, incoming=v, outgoing=u)
    except MoveError as exc:
        raise CompositionError(str(exc)) from exc
    out = ed.freeze()
    rep = validate(out)
    if not rep.ok:
        raise CompositionError(
            f"wedges {u} and {v} are not adjacent ({rep.codes()})")
    return out


def _find_clasp(d: Diagram, a: str, b: str):
    """The identity clasp between circles ``a`` (incoming role) and ``b``:
    returns (c1, c2, slot_a, slot_b) or raises."""
    ea = d.circle(a).events
    eb = d.circle(b).events
    between = [x for x in d.crossings
               if {x.over[0], x.under[0]} == {a, b}]
    if len(between) != 2:
        raise CompositionError(
            f"{a} and {b} cross {len(between)} times, not 2: not an "
            "identity link")
    for sa in range(len(ea) - 1):
        e1, e2 = ea[sa], ea[sa + 1]
        if not (isinstance(e1, CrossingSlot) and isinstance(e2, CrossingSlot)):
            continue
        if {e1.crossing, e2.crossing} != {x.id for x in between}:
            continue
        if not (e1.role == UNDER and e2.role == OVER):
            continue
        for sb in range(len(eb) - 1):
            f1, f2 = eb[sb], eb[sb + 1]
            if not (isinstance(f1, CrossingSlot)
                    and isinstance(f2, CrossingSlot)):
                continue
            if (f1.crossing == e2.crossing and f1.role == UNDER
                    and f2.crossing == e1.crossing and f2.role == OVER
                    and d.crossing(e1.crossing).sign == 1
                    and d.crossing(e2.crossing).sign == 1):
                return e1.crossing, e2.crossing, sa, sb
    raise CompositionError(
        f"{a} and {b} are not in the identity-link configuration")


def mend(d: Diagram, u: str, v: str, swap_roles: bool = False) -> Diagram:
    """Self-glue the outgoing boundary at ``u`` to the incoming boundary
    at ``v``.

    The pair must be in the identity-link configuration (index-wise
    clasps, nothing else touching the two wedges' circles besides their
    inherited surgery crossings).  Each clasp is excised and replaced by
    a Borromean motif threaded by one fresh 0-framed Brunnian circle; the
    wedge circles become 0-framed surgery circles (by default ``x`` from
    the incoming wedge, ``y`` from the outgoing one; ``swap_roles``
    exchanges the convention, which must not change any invariant).
    """
    wu = d.wedge_by_id.get(u)
    wv = d.wedge_by_id.get(v)
    if wu is None or wu.color != OUTGOING:
        raise CompositionError(f"{u} is not an outgoing wedge")
    if wv is None or wv.color != INCOMING:
        raise CompositionError(f"{v} is not an incoming wedge")
    if wu.genus != wv.genus:
        raise GenusMismatchError("mend needs wedges of equal genus")
    g = wu.genus

    pair_circles = set(wu.circle_ids) | set(wv.circle_ids)
    for x in d.crossings:
        sides = {x.over[0], x.under[0]}
        if sides & pair_circles:
            others = sides - pair_circles
            for cid in others:
                if d.circle(cid).is_wedge():
                    raise CompositionError(
                        "mend pair may not be linked with other wedges "
                        f"(crossing {x.id})")

    clasps = [_find_clasp(d, vc, uc)
              for vc, uc in zip(wv.circle_ids, wu.circle_ids)]
    for i, (vc, uc) in enumerate(zip(wv.circle_ids, wu.circle_ids)):
        for x in d.crossings:
            sides = {x.over[0], x.under[0]}
            if (sides <= pair_circles and sides != {vc, uc}
                    and (vc in sides or uc in sides)):
                raise CompositionError(
                    "mend pair must clasp index-wise only "
                    f"(crossing {x.id} joins {sides})")

    ed = DiagramEditor(d)
    x_sources = wu.circle_ids if swap_roles else wv.circle_ids
    y_sources = wv.circle_ids if swap_roles else wu.circle_ids
    ed.drop_wedge_keep_circles(u, framing=0)
    ed.drop_wedge_keep_circles(v, framing=0)

    bid = ed.fresh_id("mb")
    ed.add_surgery_circle(bid, 0)
    b_events = []
    for i in range(g):
        c1, c2, _, _ = clasps[i]
        ev_a, ev_b, ev_c = borromean_motif_events(ed, prefix=f"m{i + 1}s")
        b_events.extend(ev_a)
        for cid, motif in ((x_sources[i], ev_b), (y_sources[i], ev_c)):
            evs = ed.events[cid]
            at = next(k for k, e in enumerate(evs)
                      if isinstance(e, CrossingSlot)
                      and e.crossing in (c1, c2))
            ed.events[cid] = evs[:at] + motif + evs[at + 2:]
        del ed.signs[c1]
        del ed.signs[c2]
    ed.events[bid] = b_events

    out = ed.freeze()
    rep = validate(out)
    if not rep.ok:
        raise CompositionError(
            f"mending produced an unrealizable code ({rep.codes()}); the "
            "clasp chain is obstructed, clean the diagram with moves first")
    return out


def compose(dc: Diagram, dd: Diagram, pairing) -> Diagram:
    """Glue ``dc`` to ``dd`` along the outgoing/incoming wedge pairs of
    ``pairing``: one sewing followed by a mending per extra pair.

    Pairs after the first refer to wedges that now live in the merged
    diagram under the prefixes ``c.`` / ``d.``; this function tracks
    that.  A later pair that is not already identity-linked must be
    clean, in which case the Twist move links it first.
    """
    pairing = list(pairing)
    if not pairing:
        raise CompositionError("compose needs at least one wedge pair")
    u0, v0 = pairing[0]
    out = sew(dc, u0, dd, v0)
    for u, v in pairing[1:]:
        cu, dv = "c." + u, "d." + v
        try:
            _ = [_find_clasp(out, vc, uc) for vc, uc in
                 zip(out.wedge(dv).circle_ids, out.wedge(cu).circle_ids)]
        except CompositionError:
            out = make_identity_link(out, cu, dv)
        out = mend(out, cu, dv)
    return out
