import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from cellstrat.arrangements import (
    AffineForm,
    Arrangement,
    braid_arrangement,
    complement_subposet,
    enumerate_faces,
    enumerate_higher_faces,
    face_in_closure,
    face_leq,
    face_witness,
    feasible,
    find_witness,
    flat_dimension,
    higher_sign,
    parse_sign_label,
    salvetti,
    sign_label,
    sign_vector_at,
)
from cellstrat.complexes import chain_complex, deltaset_homology, rational_betti
from cellstrat.errors import InvalidStructure

from helpers import arrangements, complement_betti, ordered_set_partitions

F = AffineForm.of
POINT = Arrangement(1, (F([1]),))
TWO_LINES = Arrangement(2, (F([1, 0]), F([0, 1])))
THREE_LINES = Arrangement(2, (F([1, 0]), F([0, 1]), F([1, 1])))
PARALLEL = Arrangement(1, (F([1]), F([1], -1)))


# -- exact feasibility -------------------------------------------------------


@pytest.mark.parametrize(
    "eq, strict, nonneg, ok",
    [
        ([], [F([1, 0])], [], True),
        ([], [F([1, 0]), F([-1, 0])], [], False),
        ([], [F([1, 0])], [F([-1, 0])], False),
        ([], [], [F([1, 0]), F([-1, 0])], True),
        ([F([1, 1])], [F([1, 0]), F([0, 1])], [], False),
        ([F([1, 1], -2)], [F([1, 0]), F([0, 1])], [], True),
        ([F([1, 0]), F([1, 0], -1)], [], [], False),
        ([], [F([1, 0], -1), F([-1, 0], 2)], [], True),
        ([], [F([1, 0], -1), F([-1, 0], 1)], [], False),
    ],
)
def test_feasible_examples(eq, strict, nonneg, ok):
    assert feasible(eq, strict, nonneg, dim=2) is ok


def test_witness_satisfies_constraints():
    eq = [F([1, 1, 1], -1)]
    strict = [F([1, -1, 0]), F([0, 1, -1], Fraction(1, 3))]
    x = find_witness(eq, strict, dim=3, rng=random.Random(3))
    assert x is not None
    assert all(f(x) == 0 for f in eq)
    assert all(g(x) > 0 for g in strict)


@pytest.mark.parametrize("eq, n, d", [([], 3, 3), ([F([1, 0, 0])], 3, 2), ([F([1, 1]), F([2, 2])], 2, 1)])
def test_flat_dimension(eq, n, d):
    assert flat_dimension(eq, n) == d


def test_flat_dimension_empty():
    assert flat_dimension([F([1]), F([1], 1)], 1) == -1


# -- arrangement construction ------------------------------------------------


def test_duplicate_hyperplane_rejected():
    with pytest.raises(InvalidStructure):
        Arrangement(2, (F([1, 1]), F([2, 2])))


def test_zero_form_rejected():
    with pytest.raises(InvalidStructure):
        Arrangement(2, (F([0, 0], 1),))


def test_braid_arrangement_sizes():
    assert len(braid_arrangement(2)) == 1
    assert len(braid_arrangement(4)) == 6


@pytest.mark.parametrize("signs, level", [((1, 0, -1), 1), ((2, 0, -1, -3), 3)])
def test_sign_label_roundtrip(signs, level):
    assert parse_sign_label(sign_label(signs, level), level) == signs


# -- faces -------------------------------------------------------------------


def test_single_hyperplane_faces():
    fp = enumerate_faces(POINT)
    assert [f.label for f in fp.faces] == ["-", "0", "+"]
    assert fp.dim_counts() == {0: 1, 1: 2}


def test_two_parallel_hyperplanes():
    fp = enumerate_faces(PARALLEL)
    assert len(fp) == 5
    assert fp.dim_counts() == {0: 2, 1: 3}
    assert "-+" not in fp.by_label and "+-" in fp.by_label


def test_coordinate_lines():
    assert enumerate_faces(TWO_LINES).dim_counts() == {0: 1, 1: 4, 2: 4}


@pytest.mark.parametrize("k", [2, 3, 4])
def test_braid_faces_are_ordered_set_partitions(k):
    # a face with b blocks has dimension b (the diagonal line included)
    fp = enumerate_faces(braid_arrangement(k))
    assert fp.dim_counts() == dict(sorted(ordered_set_partitions(k).items()))


def test_braid3_chambers():
    fp = enumerate_faces(braid_arrangement(3))
    assert len(fp) == 13
    assert sum(1 for f in fp.faces if f.is_complement()) == 6


def test_braid4_chambers():
    assert sum(1 for f in enumerate_faces(braid_arrangement(4)).faces if f.is_complement()) == 24


@pytest.mark.parametrize("a", [POINT, TWO_LINES, THREE_LINES, PARALLEL])
def test_level_one_agrees(a):
    assert enumerate_higher_faces(a, 1).faces == enumerate_faces(a).faces


def test_point_level_two():
    fp = enumerate_higher_faces(POINT, 2)
    assert [(f.label, f.dim) for f in fp.faces] == [
        ("-e2", 2), ("-e1", 1), ("0", 0), ("+e1", 1), ("+e2", 2)
    ]
    cp = complement_subposet(fp)
    assert len(cp) == 4
    assert len(cp.poset.strict_pairs()) == 4


def test_braid3_level_two_complement_matches_chamber_incidences():
    a = braid_arrangement(3)
    faces = enumerate_faces(a).faces
    chambers = [c for c in faces if c.is_complement()]
    incidences = sum(1 for f in faces for c in chambers if face_leq(f, c))
    assert incidences == 24
    assert len(complement_subposet(enumerate_higher_faces(a, 2))) == 24


def test_higher_sign():
    assert higher_sign([Fraction(1), Fraction(-2)]) == -2
    assert higher_sign([Fraction(-1), Fraction(0)]) == -1
    assert higher_sign([Fraction(0), Fraction(0)]) == 0


def test_salvetti_needs_level_two():
    with pytest.raises(ValueError):
        salvetti(POINT, 1)


# -- Salvetti complexes against Poincare polynomials --------------------------


@pytest.mark.parametrize(
    "a, level",
    [
        (POINT, 2),
        (POINT, 3),
        (TWO_LINES, 2),
        (THREE_LINES, 2),
        (PARALLEL, 2),
        (braid_arrangement(3), 2),
    ],
)
def test_salvetti_homology(a, level):
    d = salvetti(a, level)
    h = deltaset_homology(d)
    central = all(f.const == 0 for f in a.forms)
    if central:
        assert h.betti_trimmed() == complement_betti([f.coeffs for f in a.forms], level)
    assert not any(h.torsion)
    assert h.betti == rational_betti(chain_complex(d))


def test_two_points_removed_from_plane():
    h = deltaset_homology(salvetti(PARALLEL, 2))
    assert h.betti_trimmed() == (1, 2)


# -- properties ------------------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(arrangements(dim=2, max_forms=3))
def test_witnesses_realize_their_faces(a):
    rng = random.Random(0)
    for level in (1, 2):
        for f in enumerate_higher_faces(a, level).faces:
            pts = face_witness(a, f, rng)
            assert pts is not None
            assert sign_vector_at(a, pts) == f.signs


@settings(max_examples=30, deadline=None)
@given(arrangements(dim=3, max_forms=4))
def test_face_dimensions_sum_faces(a):
    fp = enumerate_faces(a)
    assert fp.faces and all(0 <= f.dim <= a.dim for f in fp.faces)
    assert any(f.dim == a.dim for f in fp.faces)


@settings(max_examples=20, deadline=None)
@given(arrangements(dim=2, max_forms=3))
def test_sign_order_is_closure_order(a):
    for level in (1, 2):
        faces = enumerate_higher_faces(a, level).faces
        for f in faces:
            for g in faces:
                assert face_leq(f, g) == face_in_closure(a, f, g), (f.label, g.label)


@settings(max_examples=15, deadline=None)
@given(arrangements(dim=2, max_forms=3))
def test_salvetti_total_betti_counts_chambers(a):
    d = salvetti(a, 2)
    h = deltaset_homology(d)
    assert h.betti == rational_betti(chain_complex(d))
    assert not any(h.torsion)
    chambers = sum(1 for f in enumerate_faces(a).faces if f.is_complement())
    assert sum(h.betti) == chambers
