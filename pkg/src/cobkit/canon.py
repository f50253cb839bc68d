"""Canonical forms for diagrams, giving exact isomorphism tests.

Two diagrams are structurally isomorphic when some relabeling of circles,
crossings and wedges (plus a cyclic rotation of each surgery circle's
event list) carries one onto the other, preserving kinds, framings,
colors, boundary orders, wedge circle orders and rotation data.

The canonical form is the lexicographically smallest encoding of the
diagram over all admissible choices.  Wedge data admits no freedom:
wedges are pinned by their positions in the boundary orders, wedge
circles by their index, and their event lists are anchored at the depart
slot.  The only branching is over the order of surgery circles and the
cyclic rotation of each one's event list.

The search emits the encoding circle by circle, keeping every branch
that ties for the smallest next segment.  Since all live branches share
the emitted prefix, picking the minimal next segment at each step is
exactly lexicographic minimization.  Branches that agree on crossing
labels and the set of unplaced circles have identical futures and are
merged, which keeps symmetric diagrams cheap.
"""

from __future__ import annotations

from .diagram import CenterSlot, Diagram


def _segment(d: Diagram, c, rot, labels):
    """Encoding of one circle at one rotation given the labels assigned so
    far; returns (segment, updated labels)."""
    n = len(c.events)
    if c.is_surgery():
        head = (0, c.framing, n)
    else:
        orders = list(d.source_order) + list(d.target_order)
        head = (1, orders.index(c.wedge), c.index, n)
    seg = [head]
    new_labels = dict(labels)
    for k in range(n):
        e = c.events[(rot + k) % n]
        if isinstance(e, CenterSlot):
            seg.append((2, 0 if e.which == "depart" else 1))
        else:
            if e.crossing not in new_labels:
                new_labels[e.crossing] = len(new_labels)
            x = d.crossing(e.crossing)
            seg.append((3, new_labels[e.crossing],
                        0 if e.role == "over" else 1, x.sign))
    return tuple(seg), new_labels


def canonical_form(d: Diagram):
    """A hashable value equal for two diagrams iff they are isomorphic."""
    header = (
        tuple(d.wedge(w).genus for w in d.source_order),
        tuple(d.wedge(w).genus for w in d.target_order),
        len(d.circles), len(d.crossings),
    )

    index_of = {c.id: i for i, c in enumerate(d.circles)}
    forced = []
    for wid in list(d.source_order) + list(d.target_order):
        for cid in d.wedge(wid).circle_ids:
            forced.append(index_of[cid])
    free = frozenset(i for i, c in enumerate(d.circles) if c.is_surgery())

    stream = []
    labels = {}
    for pos in forced:
        seg, labels = _segment(d, d.circles[pos], 0, labels)
        stream.extend(seg)

    # states: set of (labels as sorted tuple, remaining frozenset)
    states = {(tuple(sorted(labels.items())), free)}
    while next(iter(states))[1]:
        candidates = {}
        best_seg = None
        for lab_items, remaining in states:
            lab = dict(lab_items)
            for pos in remaining:
                c = d.circles[pos]
                rots = range(len(c.events)) if c.events else (0,)
                for rot in rots:
                    seg, new_lab = _segment(d, c, rot, lab)
                    if best_seg is not None and seg > best_seg:
                        continue
                    key = (tuple(sorted(new_lab.items())),
                           remaining - {pos})
                    if best_seg is None or seg < best_seg:
                        best_seg = seg
                        candidates = {seg: {key}}
                    else:
                        candidates.setdefault(seg, set()).add(key)
        stream.extend(best_seg)
        states = candidates[best_seg]
    return header + (tuple(stream),)


def structural_iso(d1: Diagram, d2: Diagram) -> bool:
    """Exact isomorphism of diagrams by canonical-form comparison."""
    return canonical_form(d1) == canonical_form(d2)
