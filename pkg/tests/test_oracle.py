import random

import numpy as np
import pytest

from shalika import cosets, oracle, subspace as sp
from shalika.gf import GF
from shalika.linalg import Matrix, is_in_parabolic, is_in_shalika, random_invertible


def brute_gl_order(m, p):
    """Count invertible matrices by row-reducing every matrix."""
    total = 0
    for code in range(p ** (m * m)):
        digits = [(code // p ** t) % p for t in range(m * m)]
        if Matrix.from_rows([digits[i * m:(i + 1) * m] for i in range(m)], p).is_invertible():
            total += 1
    return total


@pytest.mark.parametrize("dim, p, expected", [(2, 2, 6), (2, 3, 48), (4, 2, 20160)])
def test_enumerate_group_counts(dim, p, expected):
    els = list(oracle.enumerate_group(dim, p))
    assert len(els) == expected == oracle.gl_order(dim, p)
    assert len({g.encode() for g in els}) == expected
    if dim == 2:
        assert all(g.is_invertible() for g in els)


def test_invertible_mask_against_row_reduction():
    for m, p in [(2, 2), (2, 3), (2, 5)]:
        assert int(oracle.invertible_mask(m, p).sum()) == brute_gl_order(m, p)


def test_size_gate():
    with pytest.raises(oracle.SizeLimitError):
        oracle.check_size(6, 2)
    with pytest.raises(oracle.SizeLimitError):
        oracle.check_size(4, 3)
    oracle.check_size(4, 3, expensive=True)
    with pytest.raises(oracle.SizeLimitError):
        list(oracle.enumerate_group(4, 5))


def test_codes_roundtrip(rng):
    for m, p in [(2, 5), (4, 3), (4, 2)]:
        g = random_invertible(m, GF(p), rng)
        assert oracle.matrix_of(oracle.code_of(g), m, p) == g
        codes = np.array([rng.randrange(p ** (m * m)) for _ in range(50)])
        assert (oracle.encode(oracle.decode(codes, m, p), p) == codes).all()


def test_generators_lie_in_subgroups():
    for n, p in [(1, 3), (2, 2), (2, 3), (2, 5)]:
        for variant in ("standard", "alt"):
            for g in oracle.shalika_generators(n, p, variant):
                assert is_in_shalika(Matrix.from_rows(g.tolist(), p))
            for r in range(1, 2 * n):
                for g in oracle.parabolic_generators(2 * n, r, p, variant):
                    assert is_in_parabolic(Matrix.from_rows(g.tolist(), p), r)


def test_shalika_order():
    assert len(oracle.shalika_elements(2, 2)) == 96
    assert len(oracle.shalika_elements(1, 5)) == 4 * 5


@pytest.fixture(scope="module")
def gl4f2_mask():
    return oracle.invertible_mask(4, 2)


def test_partition_examples(gl4f2_mask):
    part = oracle.double_coset_partition(2, 2, 2, mask=gl4f2_mask)
    assert len(part.classes) == 4
    assert sum(part.sizes) == 20160
    part = oracle.double_coset_partition(2, 2, 1, mask=gl4f2_mask)
    assert len(part.classes) == 2
    assert sum(part.sizes) == 20160


def test_partition_classes_are_closed(gl4f2_mask, rng):
    part = oracle.double_coset_partition(2, 2, 2, mask=gl4f2_mask)
    F = GF(2)
    from shalika.linalg import random_parabolic, random_shalika
    for _ in range(200):
        g = random_invertible(4, F, rng)
        h = random_shalika(2, F, rng) @ g @ random_parabolic(4, 2, F, rng)
        assert part.class_of(g) == part.class_of(h)


@pytest.mark.parametrize("n, p", [(1, 3), (1, 5), (2, 2)])
def test_generator_independence(n, p):
    for r in range(1, 2 * n):
        a = oracle.double_coset_partition(n, p, r, variant="standard")
        b = oracle.double_coset_partition(n, p, r, variant="alt")
        assert a.canonical() == b.canonical()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_certify_gl2(p):
    rep = oracle.certify(1, p, 1)
    assert rep["ok"], rep
    assert rep["num_classes"] == 2


def test_certify_report_shape():
    rep = oracle.certify(1, 3, 1)
    assert set(rep["assertions"]) == {"class_count", "partition", "one_representative_each",
                                      "classify_constant", "classify_distinct", "orbit_stabilizer"}
    for c in rep["classes"]:
        assert {"size", "label", "representative", "stabilizer_order", "orbit_stabilizer_size"} <= set(c)
    assert sorted(c["size"] for c in rep["classes"]) == sorted([2 * 3 * 2, 48 - 12])


def test_certify_catches_bad_partition():
    part = oracle.double_coset_partition(1, 3, 1)
    merged = np.sort(np.concatenate(part.classes))
    labels = part.labels.copy()
    labels[merged] = 0
    broken = oracle.CosetPartition(1, 3, 1, [merged], part.group_order, labels)
    rep = oracle.certify(1, 3, 1, partition=broken)
    assert not rep["ok"]
    assert not rep["assertions"]["class_count"]
    assert rep["witnesses"]


def test_batched_labels_agree_with_classify(rng):
    part = oracle.double_coset_partition(1, 5, 1)
    for n, p in [(2, 3), (2, 5), (2, 2)]:
        m = 2 * n
        F = GF(p)
        gs = [random_invertible(m, F, rng) for _ in range(100)]
        codes = np.array([oracle.code_of(g) for g in gs])
        for r in range(1, m):
            fake = oracle.CosetPartition(n, p, r, [], 0, part.labels)
            fast = oracle.element_labels(fake, codes, direct=False)
            slow = [cosets.classify(g, n, r).as_tuple() for g in gs]
            assert fast == slow
            spans = oracle._batched_column_spans(oracle.decode(codes, m, p), r, p)
            for g, c in zip(gs, spans.tolist()):
                assert oracle._subspace_from_code(c, r, m, p) == sp.column_span(g, r)
