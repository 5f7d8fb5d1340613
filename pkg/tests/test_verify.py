import pytest

from freeradial.counting import CountTable, count_table
from freeradial.radial import expect_xwny
from freeradial.verify import (
    VerificationReport,
    check_counts_vs_enumeration,
    oracle_abc,
    oracle_expect,
    oracle_mu,
    oracle_mu_table,
    oracle_nu,
    run_suite,
)
from freeradial.words import ReducedWord, parse_word, word_count


def corrupted_table(k, n_max):
    """Run the count recurrence with (2k-3) bumped to (2k-2)."""
    a, b, g = 1, 1, 0
    alphas, betas, gammas = [a], [b], [g]
    for _ in range(2, n_max):
        a, b, g = (2 * k - 2) * a + b + g, b + (2 * k - 2) * a, g + (2 * k - 2) * a
        alphas.append(a)
        betas.append(b)
        gammas.append(g)
    return CountTable(k, tuple(alphas), tuple(betas), tuple(gammas))


class TestOracles:
    def test_nu_base_values(self):
        assert oracle_nu(2, 1, 2, 2) == 1
        assert oracle_nu(2, 1, -1, 2) == 0
        assert oracle_nu(2, 1, 1, 2) == 1

    def test_abc_matches_table(self):
        for n in (2, 3, 4, 5):
            assert oracle_abc(2, n) == count_table(2, n).triple(n)

    def test_mu_61(self):
        assert oracle_mu(0, 0, 4, parse_word("g1", 2), parse_word("g2", 2)) == 61

    def test_mu_table_total(self):
        x, y = parse_word("g1 g2", 2), parse_word("g1", 2)
        table = oracle_mu_table(x, y, 6)
        assert sum(table.values()) == word_count(2, 6)
        assert all(0 <= r <= 2 and 0 <= s <= 1 for r, s in table)

    def test_expect_identity_sides(self):
        e = ReducedWord(2)
        from freeradial.radial import RadialElement

        assert oracle_expect(e, e, 3) == RadialElement.basis(2, 3)

    def test_expect_agrees_with_counting_path(self):
        x, y = parse_word("g2", 2), parse_word("g1^-1", 2)
        for n in (4, 5, 6):
            assert oracle_expect(x, y, n) == expect_xwny(x, y, n)


class TestReports:
    def test_pass_iff_equal(self):
        assert VerificationReport("c", (1,), 3, 3).passed
        assert not VerificationReport("c", (1,), 3, 4).passed

    def test_to_dict(self):
        d = VerificationReport("c", (2, "x"), 1, 2).to_dict()
        assert d["check"] == "c" and d["passed"] is False

    def test_str_shows_expected_on_failure(self):
        text = str(VerificationReport("c", (2,), 1, 2))
        assert "FAIL" in text and "expected=1" in text


class TestRunSuite:
    def test_empty_selection(self):
        assert run_suite(checks=()) == []

    def test_unknown_check(self):
        with pytest.raises(ValueError):
            run_suite(checks=("bogus",))

    def test_small_suite_passes(self):
        reports = run_suite(k=2, n_max=5)
        assert reports
        failures = [r for r in reports if not r.passed]
        assert failures == []

    def test_rank_three_subset_passes(self):
        reports = run_suite(
            k=3,
            n_max=4,
            checks=("word_counts", "counts_vs_enumeration", "sphere_splitting",
                    "radial_recurrence", "norms"),
        )
        assert reports and all(r.passed for r in reports)

    def test_rank_three_sphere_splitting_full_grid(self):
        from freeradial.verify import check_sphere_splitting

        reports = check_sphere_splitting(3, 7)
        assert len(reports) == 18 and all(r.passed for r in reports)

    def test_order_is_deterministic(self):
        first = [(r.check, r.params) for r in run_suite(k=2, n_max=4, checks=("word_counts", "norms"))]
        second = [(r.check, r.params) for r in run_suite(k=2, n_max=4, checks=("word_counts", "norms"))]
        assert first == second

    def test_negative_control_fails_at_first_bad_n(self):
        bad = corrupted_table(2, 6)
        reports = check_counts_vs_enumeration(2, 6, table=bad)
        first_failure = next(r for r in reports if not r.passed)
        assert first_failure.params == (2, 3)
        # same behaviour through the suite entry point
        suite = run_suite(k=2, n_max=6, checks=("counts_vs_enumeration",), count_table=bad)
        assert next(r for r in suite if not r.passed).params == (2, 3)
