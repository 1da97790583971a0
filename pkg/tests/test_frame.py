import random

import pytest

from ns_sigma.algebra import TruncationError
from ns_sigma.curve import NSCurve
from ns_sigma.frame import build_frame, normalize_frame, plucker, plucker_many
from ns_sigma.schur import Partition, enumerate_superpartitions, partitions_up_to


@pytest.fixture(scope="module")
def frame_25():
    return build_frame(NSCurve.symbolic(2, 5), 12)


def test_pivot_structure(frame_25):
    g = frame_25.g
    sg = frame_25.curve.semigroup()
    assert frame_25.pivots == [g - 1 - sg.nongap(j) for j in range(1, frame_25.ncols + 1)]
    assert all(frame_25.entry(p - 1, j) == 0 for j, p in enumerate(frame_25.pivots, start=1))


def test_row_bound_enforced(frame_25):
    with pytest.raises(TruncationError):
        frame_25.entry(frame_25.row_bound + 1, 1)


def test_weight_below_leading_partition_rejected():
    with pytest.raises(ValueError):
        build_frame(NSCurve(3, 4), 4)


@pytest.mark.parametrize("ns", [(2, 3), (2, 5), (3, 4)])
def test_degenerate_frame_is_unit_columns(ns):
    fr = build_frame(NSCurve(*ns), 8)
    for j, p in enumerate(fr.pivots, start=1):
        assert all(fr.entry(r, j) == (1 if r == p else 0) for r in range(p, fr.row_bound + 1))
    assert normalize_frame(fr).columns == fr.columns


def test_leading_coordinate_is_one(frame_25):
    assert plucker(frame_25, (2, 1)) == 1


def test_degree_one_coordinates(frame_25):
    # lambda21 is the only degree-1 parameter, so xi_(3,1) is a rational multiple of it.
    # Columns 1 and x = z^-2 expand exactly, which makes that multiple zero.
    ring = frame_25.curve.ring
    for mu in [(3, 1), (2, 2), (2, 1, 1)]:
        xi = plucker(frame_25, mu)
        assert (xi / ring.gen(2, 1)).is_constant()
        assert xi == 0


def test_first_nonzero_correction(frame_25):
    # rows z^0, z^-2, z^-3, z^-4 against columns 1, x, x^2, y leave -v_2, where
    # v^2 = 1 + lambda21 z v + lambda40 z^2 + ... gives v_2 = lambda21^2/8 + lambda40/2
    ring = frame_25.curve.ring
    l21, l40 = ring.gen(2, 1), ring.gen(4, 0)
    assert plucker(frame_25, (2, 1, 1, 1)) == -(l21 ** 2 / 8 + l40 / 2)


def test_raw_and_normalized_agree(frame_25):
    norm = normalize_frame(frame_25)
    for mu in enumerate_superpartitions((), 8):
        assert plucker(frame_25, mu) == plucker(norm, mu), mu


def test_minor_size_independence(frame_25):
    rng = random.Random(7)
    pool = [mu for mu in partitions_up_to(10) if len(mu) <= 8]
    for mu in rng.sample(pool, 50):
        assert plucker(frame_25, mu) == plucker(frame_25, mu, max(len(mu), 2) + 2), mu


def test_homogeneity_and_containment(frame_25):
    ring = frame_25.curve.ring
    lead = Partition((2, 1))
    for mu in partitions_up_to(10):
        xi = plucker(frame_25, mu)
        if not mu.contains(lead):
            assert xi == 0, mu
        else:
            assert ring.is_homogeneous(xi, mu.weight - lead.weight), mu


def test_coordinates_vanish_on_degenerate_fiber():
    fr = build_frame(NSCurve(3, 4), 9)
    for mu in enumerate_superpartitions((3, 1, 1), 9):
        assert plucker(fr, mu) == (1 if mu == (3, 1, 1) else 0)


def test_parallel_minors_match_serial():
    fr = build_frame(NSCurve.symbolic(2, 5), 9)
    mus = enumerate_superpartitions((2, 1), 9)
    assert plucker_many(fr, mus, 9, jobs=3) == plucker_many(fr, mus, 9, jobs=1)
