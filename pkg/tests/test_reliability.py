import numpy as np
import pytest

from infomech import (
    DEFAULT_ACCEPTANCE,
    TVD,
    ContingencyTable,
    CriticVerdict,
    JointDistribution,
    KappaUndefinedError,
    agreement_stats,
    cohens_kappa,
    f_mutual_information,
    kappa_tvd_bound_check,
    tvd_joint_product,
    tvd_mi_score,
    youdens_j,
)

HAND_TABLE = ContingencyTable([[40, 10], [20, 30]])


def random_table(rng: np.random.Generator, k: int) -> ContingencyTable:
    counts = rng.integers(0, 20, size=(k, k))
    if counts.sum() == 0:
        counts[0, 0] = 1
    return ContingencyTable(counts)


class TestValidation:
    def test_rectangular_rejected(self):
        with pytest.raises(ValueError, match="square"):
            ContingencyTable([[1, 2, 3], [4, 5, 6]])

    def test_one_by_one_rejected(self):
        with pytest.raises(ValueError, match="k >= 2"):
            ContingencyTable([[3]])

    def test_empty_table_rejected(self):
        with pytest.raises(ValueError, match="observation"):
            ContingencyTable([[0, 0], [0, 0]])


class TestAgreementStats:
    def test_perfect_diagonal(self):
        stats = agreement_stats(ContingencyTable([[3, 0], [0, 7]]))
        assert stats.p_o == 1.0

    def test_uniform_two_by_two(self):
        stats = agreement_stats(ContingencyTable([[1, 1], [1, 1]]))
        assert stats.p_o == 0.5
        assert stats.p_e == 0.5

    def test_hand_computed(self):
        stats = agreement_stats(HAND_TABLE)
        assert stats.p_o == pytest.approx(0.7, abs=1e-15)
        assert stats.p_e == pytest.approx(0.5, abs=1e-15)


class TestCohensKappa:
    def test_perfect_agreement(self):
        assert cohens_kappa(ContingencyTable([[3, 0], [0, 7]])) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_independence_shaped_table(self):
        assert cohens_kappa(ContingencyTable([[4, 4], [4, 4]])) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_hand_computed(self):
        assert cohens_kappa(HAND_TABLE) == pytest.approx(0.4, abs=1e-12)

    def test_degenerate_chance_agreement_flagged(self):
        with pytest.raises(KappaUndefinedError):
            cohens_kappa(ContingencyTable([[5, 0], [0, 0]]))


class TestTvdJointProduct:
    def test_product_table_is_zero(self):
        # counts proportional to an outer product
        assert tvd_joint_product(ContingencyTable([[1, 2], [2, 4]])) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_copied_bit(self):
        assert tvd_joint_product(ContingencyTable([[5, 0], [0, 5]])) == pytest.approx(
            0.5, abs=1e-15
        )

    def test_matches_fdiv_tvd_mi(self, rng):
        for _ in range(100):
            t = random_table(rng, int(rng.integers(2, 5)))
            joint = JointDistribution(t.probabilities())
            assert tvd_joint_product(t) == pytest.approx(
                f_mutual_information(joint, TVD), abs=1e-12
            )


class TestKappaTvdBound:
    def test_perfect_agreement_balanced(self):
        report = kappa_tvd_bound_check(ContingencyTable([[5, 0], [0, 5]]))
        assert report.tvd == pytest.approx(0.5, abs=1e-15)
        assert report.kappa == pytest.approx(1.0, abs=1e-12)
        assert report.p_e == pytest.approx(0.5, abs=1e-15)
        assert report.holds  # bound: 0.5 * 1 * 0.5 = 0.25 <= 0.5

    def test_product_table_trivially_holds(self):
        report = kappa_tvd_bound_check(ContingencyTable([[1, 2], [2, 4]]))
        assert report.kappa == pytest.approx(0.0, abs=1e-12)
        assert report.holds

    def test_holds_on_random_tables(self, rng):
        for _ in range(2000):
            t = random_table(rng, int(rng.integers(2, 5)))
            stats = agreement_stats(t)
            if stats.p_e >= 1.0:
                continue
            assert kappa_tvd_bound_check(t).holds


class TestYoudensJ:
    def test_examples(self):
        assert youdens_j(1.0, 1.0) == 1.0
        assert youdens_j(0.5, 0.5) == 0.0
        assert youdens_j(0.9, 0.8) == pytest.approx(0.7, abs=1e-15)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            youdens_j(1.2, 0.5)

    def test_identical_to_tvd_mi_score_on_shared_counts(self, rng):
        sig = CriticVerdict("significant_gain")
        no = CriticVerdict("no_gain")
        for _ in range(50):
            n_pos = int(rng.integers(1, 30))
            n_neg = int(rng.integers(1, 30))
            k_pos = int(rng.integers(0, n_pos + 1))
            k_neg = int(rng.integers(0, n_neg + 1))
            pos = [sig] * k_pos + [no] * (n_pos - k_pos)
            neg = [no] * k_neg + [sig] * (n_neg - k_neg)
            tpr = k_pos / n_pos
            tnr = k_neg / n_neg
            assert tvd_mi_score(pos, neg, DEFAULT_ACCEPTANCE) == youdens_j(tpr, tnr)
