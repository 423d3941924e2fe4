"""Known Dedekind numbers d(0) .. d(9) and reference class counts."""

DEDEKIND = {
    0: 2,
    1: 3,
    2: 6,
    3: 20,
    4: 168,
    5: 7581,
    6: 7828354,
    7: 2414682040998,
    8: 56130437228687557907788,
    9: 286386577668298411128469151667598498812366,
}

# interval classes of D_n under (anti)isomorphism
INTERVAL_CLASSES = {2: 6, 3: 18, 4: 134, 5: 9919}

# (unordered pairs over all class representatives, pair classes)
PAIR_REDUCTION = {
    2: (56, 33),
    3: (1127, 446),
    4: (274409, 80741),
    5: (8646896880, 4257682565),
}

# the largest interval of D_5, [0, 2**32 - 1]
LARGEST_D5_PAIRS = (57471561, 140736)


def known_value(n: int) -> int:
    try:
        return DEDEKIND[n]
    except KeyError:
        raise KeyError(f"d({n}) is not known") from None


# reference partitions: intervals of D_2, and pairs inside [0, 15]
D2_INTERVAL_CLASSES = [
    [(0, 0), (1, 1), (3, 3), (5, 5), (7, 7), (15, 15)],
    [(0, 1), (1, 3), (1, 5), (3, 7), (5, 7), (7, 15)],
    [(0, 3), (0, 5), (3, 15), (5, 15)],
    [(1, 7)],
    [(0, 7), (1, 15)],
    [(0, 15)],
]
D2_TOP_PAIR_CLASSES = [
    [(0, 0), (15, 15)],
    [(1, 1), (7, 7)],
    [(3, 3), (5, 5)],
    [(0, 1), (7, 15)],
    [(3, 5)],
    [(0, 3), (0, 5), (3, 15), (5, 15)],
    [(1, 3), (1, 5), (3, 7), (5, 7)],
    [(1, 7)],
    [(0, 7), (1, 15)],
    [(0, 15)],
]


def as_partition(groups) -> set[frozenset]:
    return {frozenset(tuple(x) for x in g) for g in groups}
