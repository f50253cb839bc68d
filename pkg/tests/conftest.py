"""Shared fixtures: the standard-position diagram corpus and a seeded
random diagram generator used by the property tests."""

from __future__ import annotations

import random

import pytest

from cobkit import (borromean, hopf, identity_diagram, overpass_circle,
                    sigma_g_s1_link, stacked_rings, tensor, thread_circle,
                    trefoil, unknot, validate, wedge_row)


def _decorated_wedge(color, g, threads=0, overpasses=0):
    """A wedge with surgery circles piercing / sweeping its first circles."""
    d = wedge_row([(color, g)])
    k = 0
    for t in range(threads):
        k += 1
        d = thread_circle(d, f"w1c{t % g + 1}", f"s{k}",
                          sign=1 if t % 2 == 0 else -1)
    for t in range(overpasses):
        k += 1
        d = overpass_circle(d, f"w1c{t % g + 1}", f"s{k}")
    return d


def corpus_with_wedge(color):
    """Standard-position diagrams that each contain a wedge of the given
    color with id ``w1``; at least 20 in total, assorted genera."""
    out = []
    for g in (1, 2, 3):
        out.append((g, wedge_row([(color, g)])))
        out.append((g, wedge_row([(color, g), ("outgoing", 1)])))
        out.append((g, wedge_row([(color, g), ("incoming", 2)])))
        out.append((g, _decorated_wedge(color, g, threads=1)))
        out.append((g, _decorated_wedge(color, g, threads=2)))
        out.append((g, _decorated_wedge(color, g, overpasses=1)))
        out.append((g, _decorated_wedge(color, g, threads=1, overpasses=1)))
    out.append((0, wedge_row([(color, 0)])))
    out.append((0, wedge_row([(color, 0), ("incoming", 1)])))
    for g, d in out:
        assert validate(d).ok
    return out


@pytest.fixture(scope="session")
def incoming_corpus():
    return corpus_with_wedge("incoming")


@pytest.fixture(scope="session")
def outgoing_corpus():
    return corpus_with_wedge("outgoing")


def random_diagram(rng: random.Random):
    """A small random valid diagram assembled from builder pieces and a
    few random moves."""
    from cobkit import BlowUp, R1, apply
    from cobkit.planarity import CombinatorialMap

    pieces = [
        lambda: unknot(rng.randint(-2, 2)),
        lambda: hopf(rng.randint(-1, 1), rng.randint(-1, 1)),
        lambda: borromean(0, 0, 0),
        lambda: trefoil(),
        lambda: stacked_rings(rng.randint(-1, 1), 0, 0),
        lambda: identity_diagram(rng.randint(1, 2)),
        lambda: sigma_g_s1_link(1),
        lambda: _decorated_wedge(rng.choice(["incoming", "outgoing"]),
                                 rng.randint(1, 2),
                                 threads=rng.randint(0, 1)),
    ]
    d = rng.choice(pieces)()
    if rng.random() < 0.5:
        d = tensor(d, rng.choice(pieces)())
    # sprinkle a couple of kinks and blow-ups for variety
    for _ in range(rng.randint(0, 2)):
        surg = [c for c in d.circles if c.is_surgery() and c.events]
        if surg and rng.random() < 0.7:
            c = rng.choice(surg)
            d = apply(d, R1(site=(c.id, rng.randrange(len(c.events))),
                            sign=rng.choice([1, -1])))
        else:
            d = apply(d, BlowUp(rng.choice([1, -1])))
    assert validate(d).ok
    return d


def random_valid_move(rng: random.Random, d):
    """A uniformly chosen applicable move for ``d``; None when the
    candidate pool is empty."""
    from cobkit import BlowUp, HandleSlide, R1, R2, Twist, apply
    from cobkit.errors import MoveError
    from cobkit.moves import _candidate_moves
    from cobkit.planarity import CombinatorialMap

    candidates = list(_candidate_moves(d))
    # add-moves with random sites
    surg = [c for c in d.circles if c.is_surgery()]
    for c in d.circles:
        if c.events:
            candidates.append(R1(site=(c.id, rng.randrange(len(c.events))),
                                 sign=rng.choice([1, -1])))
    faces = CombinatorialMap(d).faces()
    big = [f for f in faces if len({(dt.circle, dt.arc) for dt in f}) >= 2]
    if big:
        f = rng.choice(big)
        darts = sorted({(dt.circle, dt.arc, dt.dir) for dt in f})
        if len(darts) >= 2:
            d1, d2 = rng.sample(darts, 2)
            if (d1[0], d1[1]) != (d2[0], d2[1]):
                candidates.append(R2(darts=(d1, d2),
                                     over=rng.choice([True, False])))
    simple = [c.id for c in surg
              if not any(x.over[0] == x.under[0] == c.id
                         for x in d.crossings)]
    if len(surg) >= 2 and simple:
        moving = rng.choice([c.id for c in surg])
        over = rng.choice([s for s in simple if s != moving] or [None])
        if over:
            candidates.append(HandleSlide(moving, over))
    outs = [w.id for w in d.wedges if w.color == "outgoing"]
    ins = [w.id for w in d.wedges if w.color == "incoming"]
    for u in outs:
        for v in ins:
            if d.wedge(u).genus == d.wedge(v).genus:
                candidates.append(Twist(incoming=v, outgoing=u))
    rng.shuffle(candidates)
    for mv in candidates:
        try:
            return mv, apply(d, mv)
        except MoveError:
            continue
    return None
