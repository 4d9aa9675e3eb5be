import itertools

import numpy as np
import pytest

from infomech import (
    BUILTIN_GENERATORS,
    TVD,
    JointDistribution,
    PairSample,
    empirical_type,
    f_mutual_information,
    is_pure,
    plug_in_fmi,
    types_equal,
)


def sample_from_counts(counts) -> PairSample:
    pairs = []
    counts = np.asarray(counts)
    for i in range(counts.shape[0]):
        for j in range(counts.shape[1]):
            pairs.extend([(i, j)] * int(counts[i, j]))
    return PairSample(tuple(pairs))


def brute_force_equivalent(a, b) -> bool:
    """Oracle: search every row and column permutation for a match."""
    a = np.asarray(a)
    b = np.asarray(b)
    a = a[a.sum(1) > 0][:, a.sum(0) > 0]
    b = b[b.sum(1) > 0][:, b.sum(0) > 0]
    if a.shape != b.shape:
        return False
    target = tuple(map(tuple, b))
    for rp in itertools.permutations(range(a.shape[0])):
        m = a[list(rp)]
        for cp in itertools.permutations(range(a.shape[1])):
            if tuple(map(tuple, m[:, list(cp)])) == target:
                return True
    return False


def permuted_sample(sample: PairSample, rng: np.random.Generator) -> PairSample:
    xs = sorted({x for x, _ in sample.pairs})
    ys = sorted({y for _, y in sample.pairs})
    xmap = dict(zip(xs, rng.permutation(xs)))
    ymap = dict(zip(ys, rng.permutation(ys)))
    return PairSample(tuple((int(xmap[x]), int(ymap[y])) for x, y in sample.pairs))


class TestPairSample:
    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="at least one"):
            PairSample(())

    def test_alphabet_bound_enforced(self):
        with pytest.raises(ValueError, match="outside declared"):
            PairSample(((0, 3),), y_alphabet_size=3)

    def test_length(self):
        assert PairSample(((0, 0), (1, 1))).n == 2


class TestEmpiricalType:
    def test_two_and_one_on_disjoint_cells(self):
        t = empirical_type(PairSample(((0, 0), (0, 0), (1, 1))))
        assert t.n == 3
        assert t.counts == ((2, 0), (0, 1))

    def test_relabeled_sample_gives_identical_type(self):
        a = PairSample(((0, 0), (0, 0), (1, 1)))
        b = PairSample(((1, 1), (1, 1), (0, 0)))  # 0<->1 on both axes
        assert empirical_type(a) == empirical_type(b)

    def test_all_cells_equal_table_is_a_fixed_point(self):
        sample = PairSample(tuple([(0, 0), (0, 1), (1, 0), (1, 1)] * 3))
        t = empirical_type(sample)
        assert t.counts == ((3, 3), (3, 3))
        # every relabeling canonicalizes back to the same table
        counts = t.as_array()
        for rp in itertools.permutations(range(2)):
            for cp in itertools.permutations(range(2)):
                relabeled = sample_from_counts(counts[list(rp)][:, list(cp)])
                assert empirical_type(relabeled) == t

    def test_unobserved_symbols_do_not_change_the_type(self):
        small = PairSample(((0, 0), (1, 1)))
        padded = PairSample(((0, 0), (5, 7)), x_alphabet_size=9, y_alphabet_size=9)
        assert types_equal(empirical_type(small), empirical_type(padded))

    def test_relabel_invariance_500_random_samples(self):
        rng = np.random.default_rng(99)
        for _ in range(500):
            n = int(rng.integers(1, 12))
            pairs = tuple(
                (int(rng.integers(0, 5)), int(rng.integers(0, 5))) for _ in range(n)
            )
            sample = PairSample(pairs)
            assert empirical_type(sample) == empirical_type(permuted_sample(sample, rng))


class TestTypesEqual:
    def test_reflexive(self):
        t = empirical_type(PairSample(((0, 1), (2, 2))))
        assert types_equal(t, t)

    def test_swapped_diagonal_counts_equal(self):
        a = empirical_type(sample_from_counts([[2, 0], [0, 1]]))
        b = empirical_type(sample_from_counts([[1, 0], [0, 2]]))
        assert types_equal(a, b)

    def test_structurally_different_tables_differ(self):
        a = empirical_type(sample_from_counts([[2, 0], [0, 1]]))
        b = empirical_type(sample_from_counts([[2, 1], [0, 0]]))
        assert not types_equal(a, b)
        assert not brute_force_equivalent([[2, 0], [0, 1]], [[2, 1], [0, 0]])

    def test_agrees_with_brute_force_on_random_corpus(self):
        rng = np.random.default_rng(4242)
        for _ in range(250):
            r = int(rng.integers(1, 6))
            c = int(rng.integers(1, 6))
            counts = rng.integers(0, 4, size=(r, c))
            if counts.sum() == 0:
                continue
            equivalent = counts[rng.permutation(r)][:, rng.permutation(c)]
            perturbed = counts.copy()
            perturbed[rng.integers(0, r), rng.integers(0, c)] += 1
            for other in (equivalent, perturbed):
                want = brute_force_equivalent(counts, other)
                got = types_equal(
                    empirical_type(sample_from_counts(counts)),
                    empirical_type(sample_from_counts(other)),
                )
                assert got == want


class TestPlugInFmi:
    def test_copied_bit(self):
        t = empirical_type(PairSample(((0, 0), (1, 1))))
        assert plug_in_fmi(t, TVD) == pytest.approx(0.5, abs=1e-15)

    def test_empirical_independence(self):
        t = empirical_type(PairSample(((0, 0), (0, 1), (1, 0), (1, 1))))
        for gen in BUILTIN_GENERATORS.values():
            assert abs(plug_in_fmi(t, gen)) <= 1e-12

    def test_degenerate_single_pair(self):
        t = empirical_type(PairSample(((0, 0),)))
        for gen in BUILTIN_GENERATORS.values():
            assert plug_in_fmi(t, gen) == pytest.approx(0.0, abs=1e-12)

    def test_matches_dense_fmi_and_relabeling(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            n = int(rng.integers(2, 15))
            pairs = tuple(
                (int(rng.integers(0, 4)), int(rng.integers(0, 4))) for _ in range(n)
            )
            sample = PairSample(pairs)
            t = empirical_type(sample)
            dense = JointDistribution(t.as_array().astype(float) / t.n)
            for gen in BUILTIN_GENERATORS.values():
                direct = f_mutual_information(dense, gen)
                assert plug_in_fmi(t, gen) == pytest.approx(direct, abs=1e-12)
                relabeled = empirical_type(permuted_sample(sample, rng))
                assert plug_in_fmi(relabeled, gen) == pytest.approx(
                    plug_in_fmi(t, gen), abs=1e-12
                )


class TestIsPure:
    def test_no_tail_atoms_is_pure(self):
        assert is_pure(PairSample(((0, 0), (0, 0))), set())

    def test_repeated_tail_atom_impure(self):
        sample = PairSample(((3, 3), (3, 3), (0, 0)))
        assert not is_pure(sample, {(3, 3)})
        assert is_pure(sample, {(1, 1)})

    def test_tail_uniform_pure_rate_beats_union_bound(self):
        # Tail-uniform design: all mass on k*N^2 tail atoms of mass 1/(k*N^2).
        k, n = 2, 4
        atoms = k * n * n
        tail = {(i, i) for i in range(atoms)}
        rng = np.random.default_rng(515)
        pure = 0
        draws = 10_000
        for _ in range(draws):
            picks = rng.integers(0, atoms, size=n)
            sample = PairSample(tuple((int(i), int(i)) for i in picks))
            pure += is_pure(sample, tail)
        assert pure / draws >= 1.0 - 1.0 / (2 * k)
