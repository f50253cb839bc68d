"""Core model: linking numbers, matrices, relabeling."""

import itertools
import random

import pytest

from cobkit import (borromean, hopf, identity_diagram, linking_matrix,
                    linking_number, relabel, sigma_g_s1_link, structural_iso,
                    unknot)
from cobkit.diagram import crossings_between


def test_linking_positive_hopf_clasp():
    assert linking_number(hopf(0, 0), "k1", "k2") == 1


def test_linking_borromean_pairs_vanish():
    b = borromean(0, 0, 0)
    for a, c in itertools.combinations(["k1", "k2", "k3"], 2):
        assert linking_number(b, a, c) == 0


def test_linking_identity_wedge_pairs():
    d = identity_diagram(3)
    for i in range(1, 4):
        for j in range(1, 4):
            assert linking_number(d, f"u{i}", f"v{j}") == (1 if i == j else 0)


def test_linking_symmetry_and_even_sum():
    rng = random.Random(7)
    diagrams = [hopf(1, -2), borromean(0, 1, 0), identity_diagram(2),
                sigma_g_s1_link(2)]
    for d in diagrams:
        ids = [c.id for c in d.circles]
        for a, b in itertools.combinations(ids, 2):
            assert linking_number(d, a, b) == linking_number(d, b, a)
            total = sum(x.sign for x in crossings_between(d, a, b))
            assert total % 2 == 0


def test_linking_needs_distinct_circles():
    with pytest.raises(ValueError):
        linking_number(unknot(0), "k1", "k1")


def test_linking_matrix_examples():
    assert linking_matrix(borromean(0, 0, 0)).entries == (
        (0, 0, 0), (0, 0, 0), (0, 0, 0))
    assert linking_matrix(unknot(1)).entries == ((1,),)
    assert linking_matrix(hopf(0, 0)).entries == ((0, 1), (1, 0))
    assert linking_matrix(hopf(2, 3)).entries == ((2, 1), (1, 3))


def test_relabel_is_structure_preserving():
    d = sigma_g_s1_link(2)
    r = relabel(d, "zz.")
    assert structural_iso(d, r)
    assert all(c.id.startswith("zz.") for c in r.circles)
