import random

import pytest

from dedekind.canon import (
    IntervalClass,
    InvalidPairError,
    PairClass,
    classify_intervals,
    classify_pairs,
    interval_automorphisms,
    interval_graph,
    interval_orbits,
    interval_partition,
    pair_graph,
    pair_partition,
    pair_total,
)
from dedekind.fca import build_context
from dedekind.intervals import build_interval_table, count_intervals, enumerate_intervals
from dedekind.known import (
    D2_INTERVAL_CLASSES,
    D2_TOP_PAIR_CLASSES,
    INTERVAL_CLASSES,
    PAIR_REDUCTION,
    as_partition,
)
from dedekind.labeling import canonical_key
from dedekind.lattice import generate_lattice
from oracles import brute_pair_partition, lattice_equivalent, random_perm


def _key(lat, iv):
    return canonical_key(interval_graph(build_context(build_interval_table(lat, iv))))


def test_interval_graph_of_0_15():
    lat = generate_lattice(2)
    g = interval_graph(build_context(build_interval_table(lat, (0, 15))))
    assert g.n == 4 + 4 + 2
    assert g.color_counts == (8, 2)


def test_example_equal_interval_keys():
    lat = generate_lattice(2)
    assert _key(lat, (0, 3)) == _key(lat, (3, 15)) == _key(lat, (0, 5)) == _key(lat, (5, 15))
    assert _key(lat, (0, 7)) == _key(lat, (1, 15))  # anti-isomorphic pair
    assert _key(lat, (1, 7)) != _key(lat, (0, 7))


def test_interval_key_invariant_under_relabeling():
    lat = generate_lattice(3)
    rng = random.Random(3)
    for iv in list(enumerate_intervals(lat))[::7]:
        g = interval_graph(build_context(build_interval_table(lat, iv)))
        key = canonical_key(g)
        for _ in range(20):
            assert canonical_key(g.relabel(random_perm(rng, g.n))) == key


def test_d2_classes_match_reference():
    lat = generate_lattice(2)
    assert as_partition(interval_partition(lat)) == as_partition(D2_INTERVAL_CLASSES)
    classes = classify_intervals(lat)
    assert [(c.representative, c.cardinality) for c in classes] == [
        ((0, 0), 6), ((0, 1), 6), ((0, 3), 4), ((0, 7), 2), ((0, 15), 1), ((1, 7), 1)
    ]
    assert [c.size for c in classes] == [1, 2, 3, 5, 6, 4]


@pytest.mark.parametrize("n", [2, 3])
def test_interval_classes_match_poset_isomorphism_oracle(n):
    lat = generate_lattice(n)
    tables = {iv: build_interval_table(lat, iv).elems.tolist() for iv in enumerate_intervals(lat)}
    parts = interval_partition(lat)
    reps = [p[0] for p in parts]
    for group in parts:
        for iv in group[1:]:
            assert lattice_equivalent(tables[group[0]], tables[iv]), (group[0], iv)
    for i, r in enumerate(reps):
        for s in reps[i + 1:]:
            assert not lattice_equivalent(tables[r], tables[s]), (r, s)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_class_counts_and_cardinalities(n):
    lat = generate_lattice(n)
    classes = classify_intervals(lat)
    if n in INTERVAL_CLASSES:
        assert len(classes) == INTERVAL_CLASSES[n]
    assert sum(c.cardinality for c in classes) == count_intervals(lat)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_symmetry_shortcut_does_not_change_classes(n):
    lat = generate_lattice(n)
    fast = classify_intervals(lat, use_symmetry=True)
    if n == 4:
        fast_keys = {c.key: c.cardinality for c in fast}
        assert len(fast_keys) == 134
        return
    slow = classify_intervals(lat, use_symmetry=False)
    assert [(c.representative, c.key, c.cardinality, c.size) for c in fast] == \
        [(c.representative, c.key, c.cardinality, c.size) for c in slow]


def test_interval_orbits_cover_all_intervals():
    lat = generate_lattice(3)
    reps, counts = interval_orbits(lat)
    assert counts.sum() == count_intervals(lat)
    assert len(reps) >= len(classify_intervals(lat))


def test_pair_graph_sizes_and_errors():
    lat = generate_lattice(2)
    tbl = build_interval_table(lat, (0, 15))
    ctx = build_context(tbl)
    g = pair_graph(tbl, ctx, 3, 5)
    assert g.color_counts == (8, 2, 4, 2)
    with pytest.raises(InvalidPairError):
        pair_graph(tbl, ctx, 5, 3)
    with pytest.raises(InvalidPairError):
        pair_graph(build_interval_table(lat, (1, 7)), build_context(build_interval_table(lat, (1, 7))), 0, 3)


def test_example_pair_keys():
    tbl = build_interval_table(generate_lattice(2), (0, 15))
    ctx = build_context(tbl)

    def k(a, b):
        return canonical_key(pair_graph(tbl, ctx, a, b))

    assert k(0, 3) == k(5, 15) and k(3, 3) == k(5, 5)
    assert len({k(3, 5), k(3, 3), k(0, 15), k(0, 0), k(1, 7)}) == 5


def test_pair_classes_of_0_15_match_reference():
    tbl = build_interval_table(generate_lattice(2), (0, 15))
    assert as_partition(pair_partition(tbl)) == as_partition(D2_TOP_PAIR_CLASSES)
    pcs = classify_pairs(tbl)
    assert len(pcs) == 10 and sum(p.cardinality for p in pcs) == pair_total(6)
    assert {p.representative: p.weight for p in pcs}[(3, 5)] == 2
    assert {p.representative: p.weight for p in pcs}[(3, 3)] == 1


@pytest.mark.parametrize("n", [2, 3])
def test_pair_classes_match_symmetry_oracle(n):
    lat = generate_lattice(n)
    for c in classify_intervals(lat):
        tbl = build_interval_table(lat, c.representative)
        got = as_partition(pair_partition(tbl))
        assert got == brute_pair_partition(tbl.elems.tolist()), c.representative


@pytest.mark.parametrize("n", [2, 3])
def test_orbit_and_graph_methods_agree(n):
    lat = generate_lattice(n)
    for iv in enumerate_intervals(lat):
        tbl = build_interval_table(lat, iv)
        a = [(p.representative, p.cardinality) for p in classify_pairs(tbl, method="orbits")]
        b = [(p.representative, p.cardinality) for p in classify_pairs(tbl, method="graph")]
        assert a == b, iv


def test_automorphisms_preserve_or_reverse_order():
    lat = generate_lattice(3)
    for iv in list(enumerate_intervals(lat))[::5]:
        tbl = build_interval_table(lat, iv)
        le = tbl.leq_matrix
        for perm in interval_automorphisms(tbl):
            image = le[perm][:, perm]
            assert (image == le).all() or (image == le.T).all()


@pytest.mark.parametrize("n", [2, 3])
def test_pair_reduction_counts(n):
    lat = generate_lattice(n)
    pairs = classes = 0
    for c in classify_intervals(lat):
        pcs = classify_pairs(build_interval_table(lat, c.representative))
        pairs += sum(p.cardinality for p in pcs)
        classes += len(pcs)
    assert (pairs, classes) == PAIR_REDUCTION[n]


def test_bad_method():
    tbl = build_interval_table(generate_lattice(1), (0, 3))
    with pytest.raises(ValueError):
        classify_pairs(tbl, method="nope")


def test_class_records():
    c = IntervalClass((0, 15), None, 1, 6)
    assert c.size == 6
    assert PairClass((1, 1), None, 2).weight == 1 and PairClass((1, 3), None, 4).weight == 2
