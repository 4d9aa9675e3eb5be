"""Empirical joint types of paired samples, canonical up to relabeling.

A type is the contingency table of a sample with rows and columns considered
modulo independent permutations; any statistic of the table alone is then
well-defined on relabeled data. Counts are stored as exact integers.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .fdiv import FGenerator, JointDistribution, f_mutual_information

Pair = tuple[int, int]


@dataclass(frozen=True)
class PairSample:
    """Ordered sample of (x, y) index pairs, optionally bounded by alphabets."""

    pairs: tuple[Pair, ...]
    x_alphabet_size: int | None = None
    y_alphabet_size: int | None = None

    def __post_init__(self):
        pairs = tuple((int(x), int(y)) for x, y in self.pairs)
        if len(pairs) < 1:
            raise ValueError("sample must contain at least one pair")
        for x, y in pairs:
            if x < 0 or y < 0:
                raise ValueError("indices must be non-negative")
            if self.x_alphabet_size is not None and x >= self.x_alphabet_size:
                raise ValueError(f"x index {x} outside declared alphabet")
            if self.y_alphabet_size is not None and y >= self.y_alphabet_size:
                raise ValueError(f"y index {y} outside declared alphabet")
        object.__setattr__(self, "pairs", pairs)

    @property
    def n(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class EmpiricalType:
    """Canonical contingency table: integer counts plus their total."""

    counts: tuple[tuple[int, ...], ...]
    n: int

    def as_array(self) -> np.ndarray:
        return np.array(self.counts, dtype=np.int64)


def _refined_ranks(cells: list[list[int]], r: int, c: int) -> tuple[list[int], list[int]]:
    """Iteratively refine row/column classes into label-free integer ranks.

    Signatures only use cell values and peer ranks, so the resulting ranks
    are invariant under row/column permutations of the input.
    """
    row_key = [tuple(sorted(cells[i])) for i in range(r)]
    col_key = [tuple(sorted(cells[i][j] for i in range(r))) for j in range(c)]
    row_rank = {k: n for n, k in enumerate(sorted(set(row_key)))}
    col_rank = {k: n for n, k in enumerate(sorted(set(col_key)))}
    rows = [row_rank[k] for k in row_key]
    cols = [col_rank[k] for k in col_key]
    while True:
        new_row_key = [
            (rows[i], tuple(sorted((cells[i][j], cols[j]) for j in range(c))))
            for i in range(r)
        ]
        new_col_key = [
            (cols[j], tuple(sorted((cells[i][j], rows[i]) for i in range(r))))
            for j in range(c)
        ]
        rr = {k: n for n, k in enumerate(sorted(set(new_row_key)))}
        cr = {k: n for n, k in enumerate(sorted(set(new_col_key)))}
        new_rows = [rr[k] for k in new_row_key]
        new_cols = [cr[k] for k in new_col_key]
        if new_rows == rows and new_cols == cols:
            return rows, cols
        rows, cols = new_rows, new_cols


def _canonical_counts(counts: np.ndarray) -> tuple[tuple[int, ...], ...]:
    """Canonical representative of a count table under row/column relabeling.

    All-zero rows and columns are dropped first (unobserved symbols carry no
    information and would break invariance across alphabet paddings). Rows
    and columns are then ordered by refined structural rank; residual
    within-class column ambiguity is resolved by exhaustive search over the
    tied blocks, keeping the lexicographically largest matrix. Blocks are
    small at desk scale.
    """
    counts = np.asarray(counts, dtype=np.int64)
    if counts.size:
        counts = counts[counts.sum(axis=1) > 0][:, counts.sum(axis=0) > 0]
    if counts.size == 0:
        return ()
    r, c = counts.shape

    # Diagonal-like tables (one nonzero per row and per column) canonicalize
    # to a sorted diagonal directly; this is the Monte Carlo hot path.
    if r == c and (counts > 0).sum(axis=1).max() == 1 and (counts > 0).sum(axis=0).max() == 1:
        vals = sorted((int(v) for v in counts[counts > 0]), reverse=True)
        return tuple(
            tuple(vals[i] if i == j else 0 for j in range(r)) for i in range(r)
        )

    cells = [[int(counts[i][j]) for j in range(c)] for i in range(r)]
    rows, cols = _refined_ranks(cells, r, c)
    groups: dict[int, list[int]] = {}
    for j in range(c):
        groups.setdefault(cols[j], []).append(j)
    ordered = [groups[k] for k in sorted(groups, reverse=True)]

    best: tuple[tuple[int, ...], ...] | None = None

    def emit(colseq: list[int]) -> None:
        nonlocal best
        order = sorted(
            range(r),
            key=lambda i: (rows[i], tuple(cells[i][j] for j in colseq)),
            reverse=True,
        )
        cand = tuple(tuple(cells[i][j] for j in colseq) for i in order)
        if best is None or cand > best:
            best = cand

    def search(prefix: list[int], rest: list[list[int]]) -> None:
        if not rest:
            emit(prefix)
            return
        head, *tail = rest
        seen = set()
        for perm in itertools.permutations(head):
            key = tuple(tuple(cells[i][j] for i in range(r)) for j in perm)
            if key in seen:
                continue
            seen.add(key)
            search(prefix + list(perm), tail)

    search([], ordered)
    assert best is not None
    return best


def empirical_type(sample: PairSample) -> EmpiricalType:
    """Contingency table of a sample, in canonical form."""
    multiplicity = Counter(sample.pairs)
    xs = sorted({x for x, _ in multiplicity})
    ys = sorted({y for _, y in multiplicity})
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: j for j, y in enumerate(ys)}
    counts = np.zeros((len(xs), len(ys)), dtype=np.int64)
    for (x, y), k in multiplicity.items():
        counts[xi[x], yi[y]] = k
    return EmpiricalType(counts=_canonical_counts(counts), n=sample.n)


def types_equal(a: EmpiricalType, b: EmpiricalType) -> bool:
    """Exact equality of canonical forms (agrees with permutation search)."""
    return a.n == b.n and a.counts == b.counts


def plug_in_fmi(t: EmpiricalType, gen: FGenerator) -> float:
    """Plug-in f-mutual information of the normalized count table."""
    if t.n < 1:
        raise ValueError("type must have positive total count")
    joint = JointDistribution(t.as_array().astype(np.float64) / float(t.n))
    return f_mutual_information(joint, gen)


def is_pure(sample: PairSample, tail_atoms: set[Pair]) -> bool:
    """True iff no tail atom occurs twice in the sample."""
    multiplicity = Counter(sample.pairs)
    return all(multiplicity[a] <= 1 for a in tail_atoms)
