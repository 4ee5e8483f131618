"""Exact hypergeometric vs multinomial comparison for labelled urns.

Drawing k items from an urn of n labelled balls, with replacement, gives
the multinomial distribution M (every ordered position tuple has mass
1/n^k); without replacement it gives the hypergeometric distribution H
(mass 1/(n(n-1)...(n-k+1)) on distinct tuples, 0 otherwise).  The exported
distance is taken between the induced *label*-sequence distributions,
using the 1/2 * L1 (total variation) convention.
"""

from collections import Counter
from dataclasses import dataclass

from .errors import ResourceLimitError

# Label-sequence spaces larger than this are refused.
ENUMERATION_CAP = 10**7


@dataclass(frozen=True)
class Urn:
    """An urn of n balls carrying integer labels (repeats allowed)."""

    labels: tuple

    def __post_init__(self):
        labels = tuple(int(v) for v in self.labels)
        if not labels:
            raise ValueError("urn must contain at least one ball")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def counts(self) -> dict:
        return dict(Counter(self.labels))

    @property
    def distinct(self) -> tuple:
        return tuple(sorted(set(self.labels)))


def _check_positions(urn: Urn, positions):
    positions = [int(p) for p in positions]
    if any(p < 0 or p >= urn.n for p in positions):
        raise ValueError(f"positions must lie in 0..{urn.n - 1}: {positions}")
    return positions


def multinomial_pmf(urn: Urn, positions) -> float:
    """Probability 1/n^k of an ordered position tuple when drawing with replacement."""
    positions = _check_positions(urn, positions)
    return urn.n ** (-float(len(positions)))


def hypergeometric_pmf(urn: Urn, positions) -> float:
    """Probability of an ordered position tuple when drawing without replacement.

    Repeated positions get probability 0; distinct tuples get
    1/(n(n-1)...(n-k+1)).
    """
    positions = _check_positions(urn, positions)
    k = len(positions)
    if k > urn.n:
        raise ValueError(f"cannot draw {k} balls without replacement from {urn.n}")
    if len(set(positions)) != k:
        return 0.0
    denom = 1.0
    for t in range(k):
        denom *= urn.n - t
    return 1.0 / denom


def multinomial_label_pmf(urn: Urn, label_seq) -> float:
    counts = urn.counts
    p = 1.0
    for lab in label_seq:
        p *= counts.get(int(lab), 0) / urn.n
    return p


def hypergeometric_label_pmf(urn: Urn, label_seq) -> float:
    label_seq = [int(v) for v in label_seq]
    if len(label_seq) > urn.n:
        raise ValueError("sequence longer than the urn")
    counts = dict(urn.counts)
    p = 1.0
    for t, lab in enumerate(label_seq):
        c = counts.get(lab, 0)
        if c <= 0:
            return 0.0
        p *= c / (urn.n - t)
        counts[lab] = c - 1
    return p


def urn_variational_distance(urn: Urn, k: int) -> float:
    """Exact 1/2 * sum over label sequences of |H(s) - M(s)|.

    Enumerates the c^k label sequences (c = number of distinct labels) by
    depth-first search with incrementally maintained probabilities,
    pruning branches where both measures already vanish.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > urn.n:
        raise ValueError(f"k={k} exceeds urn size {urn.n}")
    labels = urn.distinct
    if len(labels) ** k > ENUMERATION_CAP:
        raise ResourceLimitError(
            f"label-sequence space {len(labels)}**{k} exceeds {ENUMERATION_CAP}"
        )
    n = urn.n
    base = urn.counts
    remaining = dict(base)
    total = 0.0

    def visit(depth, h, m):
        nonlocal total
        if depth == k:
            total += abs(h - m)
            return
        for lab in labels:
            c = remaining[lab]
            h2 = h * (c / (n - depth)) if c > 0 else 0.0
            m2 = m * (base[lab] / n)
            if h2 == 0.0 and m2 == 0.0:
                continue
            remaining[lab] = c - 1
            visit(depth + 1, h2, m2)
            remaining[lab] = c
        return

    visit(0, 1.0, 1.0)
    return 0.5 * total


def df_bound(n: int, k: int, c: float) -> float:
    """Diaconis-Freedman style bound min(2kc/n, k(k-1)/n) on the distance."""
    if n < 1 or k < 0 or c < 1:
        raise ValueError("require n >= 1, k >= 0, c >= 1")
    return min(2.0 * k * c / n, k * (k - 1) / n)
