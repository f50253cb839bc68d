"""The diagram calculus: local rewrites preserving the presented cobordism.

Implemented moves
-----------------

* ``R1``, ``R2``, ``R3`` -- planar isotopy moves.  Framings are explicit
  integers, so a kink never adjusts one.
* ``BlowUp(sign)`` -- add a disjoint (+-1)-framed unknot.  In this purely
  combinatorial encoding a split unknot carries no placement data, so the
  optional site is bookkeeping only.
* ``BlowDown(circle)`` -- remove a (+-1)-framed simple circle whose
  membrane region holds only parallel transverse passes, compensating
  with a full twist of the bundle; framings and linking numbers update by
  the usual quadratic rule, realized in the rewritten code.
* ``HandleSlide(moving, over)`` -- replace the moving circle by its band
  sum with a framing-parallel of the other one.  The companion must be
  free of self-crossings and the two circles must bound a common face for
  the band; slides over knotted parallels are a later extension.
* ``Twist(incoming, outgoing)`` -- link a clean red/blue wedge pair into
  the identity-link configuration.

The move vocabulary is deliberately extensible: ``apply`` dispatches on
the move class, so further local-move families can be registered without
touching the engine.  Sites are darts ``(circle, arc, dir)`` of the
target diagram.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canon import canonical_form
from .diagram import (CrossingSlot, Diagram, OVER, UNDER, crossings_between,
                      linking_number)
from .editing import DiagramEditor, clasp_events
from .errors import MoveError, NotStandardPositionError
from .membranes import circle_excursions
from .planarity import (CombinatorialMap, Dart, arc_endpoints,
                        validate)


@dataclass(frozen=True)
class Move:
    pass


@dataclass(frozen=True)
class BlowUp(Move):
    sign: int
    site: tuple | None = None


@dataclass(frozen=True)
class BlowDown(Move):
    circle: str


@dataclass(frozen=True)
class HandleSlide(Move):
    moving: str
    over: str
    site: tuple | None = None    # (dart on moving, dart on over)


@dataclass(frozen=True)
class R1(Move):
    """Insert a kink of the given sign on an arc (``crossing`` unset), or
    remove the kink at ``crossing``."""

    site: tuple | None = None    # (circle, arc)
    sign: int = 1
    crossing: str | None = None


@dataclass(frozen=True)
class R2(Move):
    """Push one arc across another (``darts`` set) or remove the clean
    bigon bounded by the two ``crossings``."""

    darts: tuple | None = None
    over: bool = True
    crossings: tuple | None = None


@dataclass(frozen=True)
class R3(Move):
    site: tuple = ()             # one dart on the triangle face


@dataclass(frozen=True)
class Twist(Move):
    incoming: str
    outgoing: str


@dataclass(frozen=True)
class MoveScript:
    moves: tuple = ()

    def __iter__(self):
        return iter(self.moves)

    def __len__(self):
        return len(self.moves)


def _as_dart(site) -> Dart:
    return Dart(site[0], site[1], site[2] if len(site) > 2 else 1)


def _check(d: Diagram, context: str) -> Diagram:
    rep = validate(d)
    if not rep.ok:
        raise MoveError(f"{context} produced an invalid diagram: "
                        f"{rep.codes()}")
    return d


# -- R1 ---------------------------------------------------------------------

def _apply_r1(d: Diagram, m: R1) -> Diagram:
    ed = DiagramEditor(d)
    if m.crossing is not None:
        x = d.crossing_by_id.get(m.crossing)
        if x is None or x.over[0] != x.under[0]:
            raise MoveError(f"no kink at crossing {m.crossing}", m.crossing)
        cid = x.over[0]
        c = d.circle(cid)
        s1, s2 = sorted((x.over[1], x.under[1]))
        n = len(c.events)
        adjacent = (s2 == s1 + 1) or (c.is_surgery() and s1 == 0 and s2 == n - 1)
        if not adjacent:
            raise MoveError(f"crossing {m.crossing} is not a removable kink",
                            m.crossing)
        ed.remove_events(cid, lambda e: isinstance(e, CrossingSlot)
                         and e.crossing == m.crossing)
        del ed.signs[m.crossing]
        return _check(ed.freeze(), "R1 remove")
    if m.site is None:
        raise MoveError("R1 needs a site or a crossing")
    cid, arc = m.site[0], m.site[1]
    c = d.circle(cid)
    k = ed.new_crossing(m.sign, prefix="r")
    first, second = (UNDER, OVER) if m.sign == 1 else (OVER, UNDER)
    ed.insert_events(cid, arc + 1 if c.events else 0,
                     [CrossingSlot(k, first), CrossingSlot(k, second)])
    return _check(ed.freeze(), "R1 insert")


# -- R2 ---------------------------------------------------------------------

def _face_of_darts(d: Diagram):
    m = CombinatorialMap(d)
    face_of = {}
    for i, face in enumerate(m.faces()):
        for dart in face:
            face_of[dart] = i
    return face_of


def _apply_r2(d: Diagram, m: R2) -> Diagram:
    ed = DiagramEditor(d)
    if m.crossings is not None:
        x1, x2 = m.crossings
        a = d.crossing(x1)
        b = d.crossing(x2)
        if {a.over[0], a.under[0]} != {b.over[0], b.under[0]}:
            raise MoveError("crossings do not bound a bigon", m.crossings)
        if a.over[0] != b.over[0]:
            raise MoveError("bigon is not removable: no strand is over at "
                            "both crossings", m.crossings)
        if a.sign + b.sign != 0:
            raise MoveError("bigon crossings must have opposite signs",
                            m.crossings)
        for cid in {a.over[0], a.under[0]}:
            c = d.circle(cid)
            slots = [i for i, e in c.crossing_events()
                     if e.crossing in (x1, x2)]
            if len(slots) != 2:
                raise MoveError("bigon strands must meet both crossings once",
                                m.crossings)
            s1, s2 = sorted(slots)
            n = len(c.events)
            if not ((s2 == s1 + 1) or (c.is_surgery() and s1 == 0
                                       and s2 == n - 1)):
                raise MoveError(f"bigon events are not adjacent on {cid}",
                                m.crossings)
        ed.remove_events(a.over[0], lambda e: isinstance(e, CrossingSlot)
                         and e.crossing in (x1, x2))
        ed.remove_events(a.under[0], lambda e: isinstance(e, CrossingSlot)
                         and e.crossing in (x1, x2))
        del ed.signs[x1]
        del ed.signs[x2]
        return _check(ed.freeze(), "R2 remove")

    if m.darts is None:
        raise MoveError("R2 needs darts or crossings")
    d1, d2 = _as_dart(m.darts[0]), _as_dart(m.darts[1])
    if (d1.circle, d1.arc) == (d2.circle, d2.arc):
        raise MoveError("R2 darts must lie on distinct arcs", m.darts)
    face_of = _face_of_darts(d)
    if face_of.get(d1) != face_of.get(d2):
        raise MoveError("R2 darts do not border a common face", m.darts)
    role1 = OVER if m.over else UNDER
    role2 = UNDER if m.over else OVER
    # The local picture has two free choices -- which way the finger
    # curls, and the handedness of the pair of crossings (set by which
    # side of each strand the shared face lies on).  All four are
    # legitimate pushes with cancelling signs; keep the first one the
    # site can actually realize in the sphere.
    for chirality in (1, -1):
        s = chirality if m.over else -chirality
        for flip in (False, True):
            trial = ed.copy()
            n1 = trial.new_crossing(s, prefix="r")
            n2 = trial.new_crossing(-s, prefix="r")
            block1 = [CrossingSlot(n1, role1), CrossingSlot(n2, role1)]
            block2 = [CrossingSlot(n2, role2), CrossingSlot(n1, role2)]
            if flip:
                block2.reverse()
            if d1.dir == -1:
                block1.reverse()
            if d2.dir == -1:
                block2.reverse()
            # Insert the deeper slot first when both land on one circle.
            inserts = sorted([(d1.circle, d1.arc + 1, block1),
                              (d2.circle, d2.arc + 1, block2)],
                             key=lambda t: -t[1])
            for cid, at, block in inserts:
                trial.insert_events(cid, at, block)
            out = trial.freeze()
            if validate(out).ok:
                return out
    raise MoveError("R2 darts admit no planar push across this face",
                    m.darts)


# -- R3 ---------------------------------------------------------------------

def _apply_r3(d: Diagram, m: R3) -> Diagram:
    start = _as_dart(m.site)
    cmap = CombinatorialMap(d)
    face = None
    for f in cmap.faces():
        if start in f:
            face = f
            break
    if face is None:
        raise MoveError(f"no face contains dart {start}", m.site)
    if len(face) != 3:
        raise MoveError("R3 needs a triangular face", m.site)
    heads = []
    for dart in face:
        cid, arc, dr = dart
        c = d.circle(cid)
        tail, head = arc_endpoints(d, c, arc)
        slot = head if dr == 1 else tail
        ev = c.events[slot]
        if not isinstance(ev, CrossingSlot):
            raise MoveError("triangle face touches a wedge center", m.site)
        heads.append(ev)
    if len({e.crossing for e in heads}) != 3:
        raise MoveError("triangle must have three distinct crossings", m.site)
    unders = sum(1 for e in heads if e.role == UNDER)
    if unders not in (1, 2):
        raise MoveError("triangle is not slideable (cyclic over/under "
                        "pattern)", m.site)
    ed = DiagramEditor(d)
    for dart in face:
        cid, arc, _ = dart
        c = d.circle(cid)
        tail, head = arc_endpoints(d, c, arc)
        evs = ed.events[cid]
        evs[tail], evs[head] = evs[head], evs[tail]
    return _check(ed.freeze(), "R3")


# -- blow moves --------------------------------------------------------------

def _apply_blow_up(d: Diagram, m: BlowUp) -> Diagram:
    if m.sign not in (1, -1):
        raise MoveError("blow-up sign must be +1 or -1")
    ed = DiagramEditor(d)
    ed.add_surgery_circle(ed.fresh_id("e"), m.sign)
    return _check(ed.freeze(), "BlowUp")


def _blowdown_passes(d: Diagram, cid: str):
    """The parallel bundle through the membrane of a blow-down circle:
    [(strand, enter_slot, direction)] in membrane order."""
    passes = []
    for pos, exc in circle_excursions(d, cid):
        if not exc.is_piercing:
            continue
        if exc.interior:
            raise MoveError(
                f"a strand segment inside {cid} is not bare: the bundle "
                "through a blow-down circle must be parallel", cid)
        under = exc.enter if exc.enter_flag == UNDER else exc.leave
        passes.append((exc.strand, exc.enter_slot, d.crossing(under).sign))
    return passes


def _apply_blow_down(d: Diagram, m: BlowDown) -> Diagram:
    c = d.circle_by_id.get(m.circle)
    if c is None or not c.is_surgery():
        raise MoveError(f"blow-down circle {m.circle} must be surgery data",
                        m.circle)
    eps = c.framing
    if eps not in (1, -1):
        raise MoveError(f"blow-down needs framing +1 or -1, found {eps}",
                        m.circle)
    try:
        passes = _blowdown_passes(d, m.circle)
    except NotStandardPositionError as exc:
        raise MoveError(f"blow-down circle is not clean: {exc}",
                        m.circle) from exc
    n = len(passes)

    # Record, per pass, where its two crossings with c sit, then drop c.
    ed = DiagramEditor(d)
    dead = {e.crossing for e in d.circle(m.circle).events
            if isinstance(e, CrossingSlot)}
    marks = []   # (strand, index of the event that starts the pass)
    for strand, enter_slot, p in passes:
        marks.append([strand, enter_slot, p])
    ed.remove_circle(m.circle)

    # Relocate marks after the event removals.
    for mark in marks:
        strand, slot, _ = mark
        old = d.circle(strand).events
        kept_before = sum(
            1 for e in old[:slot]
            if not (isinstance(e, CrossingSlot) and e.crossing in dead))
        mark[1] = kept_before

    # Full -eps twist on the bundle: braid word (s_1 ... s_{n-1})^n.
    if n > 1:
        order = list(range(n))           # braid position -> pass index
        events_for = {k: [] for k in range(n)}
        for _ in range(n):
            for q in range(n - 1):
                a, b = order[q], order[q + 1]
                pa, pb = marks[a][2], marks[b][2]
                sign = -eps * pa * pb
                xid = ed.new_crossing(sign, prefix="t")
                over_pass, under_pass = (b, a) if eps == 1 else (a, b)
                events_for[over_pass].append(CrossingSlot(xid, OVER))
                events_for[under_pass].append(CrossingSlot(xid, UNDER))
                order[q], order[q + 1] = order[q + 1], order[q]
        # Insert per pass, deepest-position first so indices stay valid.
        per_strand = {}
        for k, (strand, at, p) in enumerate(marks):
            evs = events_for[k]
            if p == -1:
                evs = list(reversed(evs))
            per_strand.setdefault(strand, []).append((at, evs))
        for strand, chunks in per_strand.items():
            for at, evs in sorted(chunks, key=lambda t: -t[0]):
                ed.insert_events(strand, at, evs)

    # Quadratic framing correction, from the signed pass counts.
    lk_c = {}
    for strand, _, p in marks:
        lk_c[strand] = lk_c.get(strand, 0) + p
    for strand, lk in lk_c.items():
        if ed.kind[strand] == "surgery":
            ed.framing[strand] -= eps * lk * lk
    return _check(ed.freeze(), "BlowDown")


# -- handle slide -------------------------------------------------------------

def _crosses_right_to_left(d: Diagram, xid: str, of_circle: str) -> bool:
    """Does the other strand cross ``of_circle`` from its right side to its
    left side at this crossing?"""
    x = d.crossing(xid)
    role_of_c = OVER if x.over[0] == of_circle else UNDER
    return (x.sign == 1) if role_of_c == OVER else (x.sign == -1)


def _band_sites(d: Diagram, moving: str, over: str):
    """Candidate band sites, best first: for every shared face, a dart of
    the moving circle paired with a forward dart of the companion.  The
    push-off must be traversed codirected with the companion, which needs
    the band to approach from its left, so only forward companion darts
    qualify."""
    face_of = _face_of_darts(d)
    by_face = {}
    for dart, f in sorted(face_of.items()):
        by_face.setdefault(f, []).append(dart)
    sites = []
    for f in sorted(by_face):
        darts = by_face[f]
        mine = [dt for dt in darts if dt.circle == moving]
        its = [dt for dt in darts if dt.circle == over and dt.dir == 1]
        for a in mine:
            for b in its:
                sites.append((a, b))
    return sites


def _apply_handle_slide(d: Diagram, m: HandleSlide) -> Diagram:
    for cid in (m.moving, m.over):
        c = d.circle_by_id.get(cid)
        if c is None or not c.is_surgery():
            raise MoveError(
                f"handle slide needs surgery circles, got {cid}", cid)
    if m.moving == m.over:
        raise MoveError("cannot slide a circle over itself")
    if crossings_between(d, m.over, m.over):
        raise MoveError(
            f"companion {m.over} has self-crossings; slides over knotted "
            "parallels are not implemented", m.over)
    if m.site is not None:
        site = (_as_dart(m.site[0]), _as_dart(m.site[1]))
        face_of = _face_of_darts(d)
        if face_of.get(site[0]) != face_of.get(site[1]):
            raise MoveError("band site darts do not border a common face",
                            m.site)
        if site[0].circle != m.moving or site[1].circle != m.over:
            raise MoveError("band site darts must lie on the sliding "
                            "circles", m.site)
        if site[1].dir != 1:
            raise MoveError("band site must approach the companion from "
                            "its left (forward dart)", m.site)
        sites = [site]
    else:
        sites = _band_sites(d, m.moving, m.over)
        if not sites:
            raise MoveError(
                f"{m.moving} and {m.over} do not border a common face on "
                "its left; isotope them together first", (m.moving, m.over))
    last = None
    for site in sites:
        try:
            return _slide_at_site(d, m, site)
        except MoveError as exc:
            last = exc
    raise last


def _slide_at_site(d: Diagram, m: HandleSlide, site) -> Diagram:
    dart_i, dart_j = site
    ci = d.circle(m.moving)
    cj = d.circle(m.over)
    f_i, f_j = ci.framing, cj.framing
    lk_ij = linking_number(d, m.moving, m.over)

    ed = DiagramEditor(d)
    side_left = dart_j.dir == 1     # push-off runs on the face side

    # Copies of the companion's crossings, in travel order starting just
    # after the banded arc.
    nj = len(cj.events)
    p_events = []
    inserts_on_others = []   # (circle, slot, before/after, new event)
    for k in range(nj):
        slot = (dart_j.arc + 1 + k) % nj
        ev = cj.events[slot]
        x = d.crossing(ev.crossing)
        other_cid, other_slot = x.strand(OVER if ev.role == UNDER else UNDER)
        xid = ed.new_crossing(x.sign, prefix="p")
        p_events.append(CrossingSlot(xid, ev.role))
        other_role = UNDER if ev.role == OVER else OVER
        rl = _crosses_right_to_left(d, ev.crossing, m.over)
        after = rl == side_left
        inserts_on_others.append(
            (other_cid, other_slot, after, CrossingSlot(xid, other_role)))

    # Framing twists between the push-off and the companion, placed in the
    # band corridor (inside the banded arc on both curves).  The strands
    # are codirected there, so both meet each twist's crossings in the
    # same order, with the over role alternating.
    twists = []
    for _ in range(abs(f_j)):
        s = 1 if f_j > 0 else -1
        t1 = ed.new_crossing(s, prefix="p")
        t2 = ed.new_crossing(s, prefix="p")
        first, second = (OVER, UNDER) if s == 1 else (UNDER, OVER)
        p_events.extend([CrossingSlot(t1, first), CrossingSlot(t2, second)])
        twists.extend([CrossingSlot(t1, second), CrossingSlot(t2, first)])

    for cid, slot, after, new_ev in sorted(inserts_on_others,
                                           key=lambda t: -t[1]):
        ed.insert_events(cid, slot + 1 if after else slot, [new_ev])
    if twists:
        ed.insert_events(m.over, dart_j.arc + 1 if nj else 0, twists)

    ed.framing[m.moving] = f_i + f_j + 2 * lk_ij

    # The band anchor must land on a stretch of the banded arc that faces
    # the push-off's left side; copies inserted into the arc may have
    # subdivided it, so try each gap and keep the first planar splice.
    current = ed.events[m.moving]
    if not ci.events:
        gaps = [0]
    else:
        tail_ev = ci.events[dart_i.arc]
        tail_idx = current.index(tail_ev)
        if ci.is_surgery() and dart_i.arc == len(ci.events) - 1:
            head_idx = len(current)
        else:
            head_ev = ci.events[(dart_i.arc + 1) % len(ci.events)]
            head_idx = current.index(head_ev)
        gaps = list(range(tail_idx + 1, head_idx + 1))
    for gap in gaps:
        trial = ed.copy()
        trial.insert_events(m.moving, gap, p_events)
        out = trial.freeze()
        if validate(out).ok:
            return out
    raise MoveError("no planar band anchor on the chosen arc; pick "
                    "another site", m.site)


# -- twist -------------------------------------------------------------------

def install_identity_link(ed: DiagramEditor, incoming: str, outgoing: str):
    """Clasp the circles of a clean incoming/outgoing wedge pair into the
    identity-link configuration (index-wise linking +1)."""
    _, in_circles = ed.wedges[incoming]
    _, out_circles = ed.wedges[outgoing]
    if len(in_circles) != len(out_circles):
        raise MoveError("twist needs wedges of equal genus")
    for cid in in_circles + out_circles:
        if any(isinstance(e, CrossingSlot) for e in ed.events[cid]):
            raise MoveError(
                f"wedge circle {cid} is not clean; remove its crossings "
                "with a move script first", cid)
    for a, b in zip(in_circles, out_circles):
        clasp_events(ed, a, 1, b, 1, prefix="tw")


def _apply_twist(d: Diagram, m: Twist) -> Diagram:
    win = d.wedge_by_id.get(m.incoming)
    wout = d.wedge_by_id.get(m.outgoing)
    if win is None or win.color != "incoming":
        raise MoveError(f"{m.incoming} is not an incoming wedge", m.incoming)
    if wout is None or wout.color != "outgoing":
        raise MoveError(f"{m.outgoing} is not an outgoing wedge", m.outgoing)
    ed = DiagramEditor(d)
    install_identity_link(ed, m.incoming, m.outgoing)
    out = ed.freeze()
    rep = validate(out)
    if not rep.ok:
        raise MoveError("twist site is not adjacent: the wedges do not "
                        f"share a region ({rep.codes()})")
    return out


_HANDLERS = {
    R1: _apply_r1,
    R2: _apply_r2,
    R3: _apply_r3,
    BlowUp: _apply_blow_up,
    BlowDown: _apply_blow_down,
    HandleSlide: _apply_handle_slide,
    Twist: _apply_twist,
}


def apply(d: Diagram, m: Move) -> Diagram:
    """Apply one move; raises :class:`MoveError` when its preconditions
    fail, always returns a valid diagram otherwise."""
    try:
        handler = _HANDLERS[type(m)]
    except KeyError:
        raise MoveError(f"unknown move kind {type(m).__name__}") from None
    return handler(d, m)


def replay(d: Diagram, script: MoveScript) -> Diagram:
    """Left fold of ``apply``; failures report the offending move index."""
    cur = d
    for i, m in enumerate(script):
        try:
            cur = apply(cur, m)
        except MoveError as exc:
            raise MoveError(f"move {i} ({type(m).__name__}) failed: {exc}",
                            getattr(exc, "site", None)) from exc
    return cur


# -- bounded equivalence search ----------------------------------------------

def _monogon_kinks(d: Diagram):
    out = []
    for x in d.crossings:
        if x.over[0] != x.under[0]:
            continue
        c = d.circle(x.over[0])
        s1, s2 = sorted((x.over[1], x.under[1]))
        n = len(c.events)
        if s2 == s1 + 1 or (c.is_surgery() and s1 == 0 and s2 == n - 1):
            out.append(x.id)
    return sorted(out)


def _candidate_moves(d: Diagram):
    moves = []
    for c in d.surgery_circles():
        if c.framing in (1, -1):
            moves.append(BlowDown(c.id))
    for xid in _monogon_kinks(d):
        moves.append(R1(crossing=xid))
    seen = set()
    for face in CombinatorialMap(d).faces():
        if len(face) == 2:
            ids = set()
            usable = True
            for dart in face:
                c = d.circle(dart.circle)
                tail, head = arc_endpoints(d, c, dart.arc)
                for s in (tail, head):
                    ev = c.events[s]
                    if isinstance(ev, CrossingSlot):
                        ids.add(ev.crossing)
                    else:
                        usable = False
            pair = tuple(sorted(ids))
            if usable and len(pair) == 2 and pair not in seen:
                seen.add(pair)
                a, b = (d.crossing(x) for x in pair)
                if (a.over[0] == b.over[0] and a.sign + b.sign == 0
                        and {a.over[0], a.under[0]}
                        == {b.over[0], b.under[0]}):
                    moves.append(R2(crossings=pair))
        elif len(face) == 3:
            moves.append(R3(site=tuple(face[0])))
    moves.append(BlowUp(1))
    moves.append(BlowUp(-1))
    return moves


def search_equivalent(d1: Diagram, d2: Diagram, budget: int = 200):
    """Breadth-first search for a move script relating two diagrams.

    Returns a :class:`MoveScript` with ``replay(d1, script)`` structurally
    isomorphic to ``d2``, or ``None`` when the budget is exhausted
    (inconclusive: the calculus is only semi-decidable).  Both diagrams
    must have equal boundary profiles over identical wedge sequences.
    """
    from .invariants import boundary_profile

    if boundary_profile(d1) != boundary_profile(d2):
        raise MoveError("search requires equal boundary profiles")
    target = canonical_form(d2)
    start = canonical_form(d1)
    if start == target:
        return MoveScript()
    seen = {start}
    frontier = [(d1, [])]
    expanded = 0
    while frontier and expanded < budget:
        new_frontier = []
        for diagram, script in frontier:
            for mv in _candidate_moves(diagram):
                if expanded >= budget:
                    break
                try:
                    nxt = apply(diagram, mv)
                except MoveError:
                    continue
                expanded += 1
                key = canonical_form(nxt)
                if key == target:
                    return MoveScript(tuple(script + [mv]))
                if key not in seen:
                    seen.add(key)
                    new_frontier.append((nxt, script + [mv]))
        frontier = new_frontier
    return None
