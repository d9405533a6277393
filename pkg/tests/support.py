"""Seeded random panel builders shared by property and acceptance tests."""

from __future__ import annotations

import numpy as np

from thermorank import (
    RATING_SCALE,
    WEIGHT_SCALE,
    CriterionSpec,
    CrispPanel,
    FuzzyPanel,
    from_linguistic,
)

# labels whose triplets are strictly positive in every component, so quality
# reference means can never hit zero and cost columns stay divisible
POSITIVE_RATING_LABELS = ("MP", "F", "MG", "G", "VG")
WEIGHT_LABELS = ("VL", "L", "ML", "M", "MH", "H", "VH")


def random_kinds(rng, n, cost_allowed=True):
    if not cost_allowed:
        return ["benefit"] * n
    kinds = [rng.choice(["benefit", "cost"]) for _ in range(n)]
    return [str(k) for k in kinds]


def random_crisp_panel(rng, m=None, n=None, K=None, max_dim=5, cost_allowed=True,
                       integer_ratings=False, normalize_weights=False):
    m = int(m if m is not None else rng.integers(2, max_dim + 1))
    n = int(n if n is not None else rng.integers(1, max_dim + 1))
    K = int(K if K is not None else rng.integers(1, max_dim + 1))
    kinds = random_kinds(rng, n, cost_allowed)
    if integer_ratings:
        ratings = rng.integers(1, 11, size=(K, m, n)).astype(float)
    else:
        ratings = rng.uniform(0.5, 10.0, size=(K, m, n))
    weights = rng.uniform(0.05, 1.0, size=(K, n))
    if normalize_weights:
        weights = weights / weights.sum(axis=1, keepdims=True)
    return CrispPanel(
        alternatives=tuple(f"A{i + 1}" for i in range(m)),
        criteria=tuple(CriterionSpec(f"C{j + 1}", kind) for j, kind in enumerate(kinds)),
        decision_makers=tuple(f"DM{k + 1}" for k in range(K)),
        ratings=ratings,
        weights=weights,
    )


def consensus_crisp_panel(rng, max_dim=5):
    """Every decision maker gives the same ratings; weights still differ."""
    m = int(rng.integers(2, max_dim + 1))
    n = int(rng.integers(1, max_dim + 1))
    K = int(rng.integers(2, max_dim + 1))
    shared = rng.uniform(0.5, 10.0, size=(m, n))
    ratings = np.repeat(shared[None, :, :], K, axis=0)
    return CrispPanel(
        alternatives=tuple(f"A{i + 1}" for i in range(m)),
        criteria=tuple(
            CriterionSpec(f"C{j + 1}", str(rng.choice(["benefit", "cost"])))
            for j in range(n)
        ),
        decision_makers=tuple(f"DM{k + 1}" for k in range(K)),
        ratings=ratings,
        weights=rng.uniform(0.05, 1.0, size=(K, n)),
    )


def random_fuzzy_labels(rng, m, n, K):
    index = rng.integers(0, len(POSITIVE_RATING_LABELS), size=(K, m, n))
    return [
        [[POSITIVE_RATING_LABELS[index[k, i, j]] for j in range(n)] for i in range(m)]
        for k in range(K)
    ]


def random_fuzzy_panel(rng, m=None, n=None, K=None, max_dim=3, cost_allowed=True):
    m = int(m if m is not None else rng.integers(2, max_dim + 1))
    n = int(n if n is not None else rng.integers(1, max_dim + 1))
    K = int(K if K is not None else rng.integers(1, max_dim + 1))
    kinds = random_kinds(rng, n, cost_allowed)
    labels = random_fuzzy_labels(rng, m, n, K)
    weight_index = rng.integers(0, len(WEIGHT_LABELS), size=(K, n))
    weights = [
        [WEIGHT_LABELS[weight_index[k, j]] for j in range(n)] for k in range(K)
    ]
    return FuzzyPanel(
        alternatives=tuple(f"A{i + 1}" for i in range(m)),
        criteria=tuple(CriterionSpec(f"C{j + 1}", kind) for j, kind in enumerate(kinds)),
        decision_makers=tuple(f"DM{k + 1}" for k in range(K)),
        ratings=[
            [
                [from_linguistic(labels[k][i][j], RATING_SCALE) for j in range(n)]
                for i in range(m)
            ]
            for k in range(K)
        ],
        weights=[
            [from_linguistic(weights[k][j], WEIGHT_SCALE) for j in range(n)]
            for k in range(K)
        ],
        rating_labels=labels,
        weight_labels=weights,
    )


def as_tuple(tfn):
    return (tfn.a, tfn.b, tfn.c)
