import itertools

import pytest

from shalika import cosets, symgrp
from shalika.cosets import CosetLabel
from shalika.symgrp import Permutation, SubsetLabel


def delta_sn(n):
    """ΔS_n listed directly: τ on {1..n} copied onto {n+1..2n}."""
    for tau in itertools.permutations(range(1, n + 1)):
        yield Permutation(tau + tuple(n + t for t in tau))


def test_permutation_basics():
    s = Permutation((2, 3, 1))
    assert s(1) == 2 and s.inverse() * s == Permutation.identity(3)
    assert (s * s).images == (3, 1, 2)
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_permutation_matrix_convention():
    s = Permutation((2, 3, 1))
    m = s.matrix(2)
    # column j carries e_{σ(j)}
    assert m.column(0) == (0, 1, 0) and m.column(2) == (1, 0, 0)
    t = Permutation((3, 1, 2))
    assert (s * t).matrix(5) == s.matrix(5) @ t.matrix(5)


def test_is_in_delta_sn_examples():
    assert symgrp.is_in_delta_sn(Permutation.identity(4), 2)
    assert symgrp.is_in_delta_sn(Permutation((2, 1, 4, 3)), 2)
    assert not symgrp.is_in_delta_sn(Permutation((3, 2, 1, 4)), 2)
    with pytest.raises(ValueError):
        symgrp.is_in_delta_sn(Permutation.identity(3), 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_delta_sn_membership_exhaustive(n):
    members = {s.images for s in delta_sn(n)}
    for img in itertools.permutations(range(1, 2 * n + 1)):
        assert symgrp.is_in_delta_sn(Permutation(img), n) == (img in members)


def test_subset_label_examples():
    n = 4
    for r in range(1, n + 1):
        assert symgrp.subset_label(range(1, r + 1), n) == SubsetLabel(r, 0)
        assert symgrp.subset_label(range(n + 1, n + r + 1), n) == SubsetLabel(0, 0)
    for r in range(1, 2 * n):
        for lab in cosets.kl_bounds(n, r):
            assert symgrp.subset_label(symgrp.model_subset(lab), n) == SubsetLabel(lab.k, lab.l)
    with pytest.raises(ValueError):
        symgrp.subset_label({0, 1}, 2)


@pytest.mark.parametrize("n", range(1, 9))
def test_w_prime_matches_representative(n):
    for r in range(1, 2 * n):
        for lab in cosets.kl_bounds(n, r):
            wp = symgrp.w_prime(lab)
            assert symgrp.permutation_matrix(wp, 3) == cosets.representative(lab, 3)
            assert wp.image_of(range(1, r + 1)) == symgrp.model_subset(lab)


def test_w_prime_small():
    assert symgrp.w_prime(CosetLabel(1, 0, 1, 1)) == Permutation.identity(2)
    assert symgrp.w_prime(CosetLabel(0, 0, 1, 1)).images == (2, 1)


def test_transversal_examples():
    assert len(symgrp.delta_orbit_transversal(2, 2)) == 4
    assert len(symgrp.delta_orbit_transversal(1, 1)) == 2
    for n in range(1, 6):
        for r in range(1, 2 * n):
            t = symgrp.delta_orbit_transversal(n, r)
            assert len({lab for lab, _ in t}) == len(t) == cosets.count(n, r)


def test_brute_force_examples():
    classes = symgrp.brute_force_sym_cosets(1, 1)
    assert sorted(len(c) for c in classes) == [1, 1]
    classes = symgrp.brute_force_sym_cosets(2, 2)
    assert len(classes) == 4
    reps = [symgrp.w_prime(lab).images for lab in cosets.kl_bounds(2, 2)]
    assert all(sum(w in c for w in reps) == 1 for c in classes)
    with pytest.raises(symgrp.SizeLimitError):
        symgrp.brute_force_sym_cosets(5, 2)


@pytest.mark.parametrize("r", range(1, 6))
def test_brute_force_n3(r):
    report = symgrp.check_sym_bijection(3, r)
    assert report["ok"] and report["classes"] == cosets.count(3, r)
    assert sum(report["class_sizes"]) == 720


@pytest.mark.parametrize("n", [1, 2, 3])
def test_subset_label_invariance(n):
    group = list(delta_sn(n))
    for r in range(1, 2 * n):
        for A in itertools.combinations(range(1, 2 * n + 1), r):
            lab = symgrp.subset_label(A, n)
            assert lab.k >= max(0, r - n) and max(0, r - n) <= lab.l <= min(lab.k, r - lab.k)
            for s in group:
                assert symgrp.subset_label(s.image_of(A), n) == lab


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_orbits_determined_by_label(n):
    for r in range(1, 2 * n):
        orbits = symgrp.delta_orbits_on_subsets(n, r)
        labs = [{symgrp.subset_label(A, n) for A in orb} for orb in orbits]
        assert all(len(x) == 1 for x in labs)
        flat = [next(iter(x)) for x in labs]
        assert len(set(flat)) == len(flat) == cosets.count(n, r)


def test_permutation_json():
    s = Permutation((3, 1, 2))
    assert Permutation.from_json(s.to_json()) == s
