"""Shared random-instance generators for the test suite."""

import numpy as np

from cellmat import GroupedSpec, PositiveVector


def random_positive_vector(rng, n=None, n_max=50, lo=0.1, hi=10.0) -> PositiveVector:
    if n is None:
        n = int(rng.integers(1, n_max + 1))
    return PositiveVector(tuple(rng.uniform(lo, hi, size=n)))


def random_group_shape(rng, k_max=5, n_max=50):
    """Group count k and sizes summing to a random n in [2k, n_max]."""
    k = int(rng.integers(1, k_max + 1))
    n = int(rng.integers(2 * k, n_max + 1))
    mults = [2] * k
    for _ in range(n - 2 * k):
        mults[int(rng.integers(0, k))] += 1
    return k, tuple(mults)


def distinct_values(rng, k, lo=0.1, hi=10.0, min_gap=1e-6):
    while True:
        vals = rng.uniform(lo, hi, size=k)
        if k == 1 or float(np.min(np.diff(np.sort(vals)))) > min_gap:
            return tuple(float(v) for v in vals)


def distinct_dyadic_values(rng, k, lo=0.1, hi=10.0, denom=64):
    """Distinct values on a 1/denom grid, so all similarity arithmetic on the
    resulting cell matrix stays exactly representable."""
    low = int(np.ceil(lo * denom))
    high = int(np.floor(hi * denom))
    picks = rng.choice(np.arange(low, high + 1), size=k, replace=False)
    return tuple(float(p) / denom for p in picks)


def random_grouped_vector(rng, k_max=5, n_max=50, lo=0.1, hi=10.0, dyadic=False,
                          shuffle=True) -> PositiveVector:
    k, mults = random_group_shape(rng, k_max=k_max, n_max=n_max)
    if dyadic:
        values = distinct_dyadic_values(rng, k, lo=lo, hi=hi)
    else:
        values = distinct_values(rng, k, lo=lo, hi=hi)
    entries = np.repeat(values, mults)
    if shuffle:
        entries = rng.permutation(entries)
    return PositiveVector(tuple(entries))


def random_grouped_spec(rng, k_max=5, n_max=50, lo=0.1, hi=10.0) -> GroupedSpec:
    k, mults = random_group_shape(rng, k_max=k_max, n_max=n_max)
    tails = tuple(-2.0 * v for v in distinct_values(rng, k, lo=lo, hi=hi))
    return GroupedSpec(tails, mults)


def random_permutation_mapping(rng, n):
    """0-based bijection as a tuple."""
    return tuple(int(v) for v in rng.permutation(n))
