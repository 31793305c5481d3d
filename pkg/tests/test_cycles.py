from itertools import product
from math import gcd

import pytest

from fermat_hodge import (
    COUNTEREXAMPLE_33,
    MonoidVector,
    VerdictStatus,
    build_pool,
    check_condition,
    enumerate_level,
    is_member,
    is_quasi_decomposable,
    level_one,
    newton_identity_check,
    power_sum_identity_holds,
    scan_fourfolds,
    standard_elements,
    verdict,
)
from fermat_hodge.errors import IncompleteBasisError, IncompletePoolError
from fermat_hodge.cycles import LevelPool, _is_prime, _prime_square


class TestStandardElements:
    def test_m9_seed_one(self):
        std = standard_elements(9)
        v = MonoidVector((1, 0, 0, 1, 0, 1, 1, 0), 2)
        assert v in std
        prov = std.provenance[v]
        assert prov.p == 3 and not prov.doubled

    def test_m25_seed_one(self):
        x = [0] * 24
        for r in (1, 6, 11, 16, 21, 20):
            x[r - 1] += 1
        assert MonoidVector(tuple(x), 3) in standard_elements(25)

    def test_prime_degree_empty(self):
        assert standard_elements(7).vectors == ()

    @pytest.mark.parametrize("m", [9, 10, 12, 21, 25, 27, 33])
    def test_all_members_with_provenance(self, m):
        std = standard_elements(m)
        for v in std.vectors:
            assert is_member(v, m)
            prov = std.provenance[v]
            assert m % prov.p == 0
        doubled = [v for v in std.vectors if std.provenance[v].doubled]
        assert doubled, "doubling rule records doubled candidates"

    @pytest.mark.parametrize("p", [3, 5])
    def test_prime_square_levels(self, p):
        std = standard_elements(p * p)
        undoubled = [v for v in std.vectors if not std.provenance[v].doubled]
        assert undoubled
        assert {v.y for v in undoubled} == {(p + 1) // 2}


class TestQuasiDecomposable:
    def test_m4_level_one_not_quasi(self):
        assert is_quasi_decomposable(MonoidVector((1, 0, 1), 1), 4) is None

    def test_degree_33_counterexample_not_quasi(self):
        assert is_quasi_decomposable(COUNTEREXAMPLE_33, 33) is None

    def test_first_level_three_indecomposable_of_21_is_quasi(self, get_basis):
        first = next(v for v in get_basis(21).elements if v.y == 3)
        witness = is_quasi_decomposable(first, 21)
        assert witness is not None
        assert witness.b.y == 1
        assert witness.c != first and witness.d != first
        assert first + witness.b == witness.c + witness.d
        for part in (witness.b, witness.c, witness.d):
            assert is_member(part, 21)
        assert witness.c.y + witness.d.y == first.y + 1

    def test_missing_pool_level_raises(self):
        pool = LevelPool(m=21, levels={1: tuple(level_one(21))})
        element = MonoidVector((0,) * 20, 1)
        first = enumerate_level(21, 3)[0]
        with pytest.raises(IncompletePoolError):
            is_quasi_decomposable(first, 21, level_one(21), pool)

    @pytest.mark.parametrize("m", [6, 8, 9, 10, 12])
    def test_matches_literal_triple_loop(self, m, get_basis):
        """The subtraction search agrees with the appendix-style scan."""
        basis = get_basis(m)
        targets = [v for v in basis.elements if v.y >= 3] or [
            v for v in basis.elements if v.y == basis.max_element_level
        ]
        pool_levels = {}
        for x in targets:
            for y in range(1, x.y + 1):
                pool_levels.setdefault(y, tuple(enumerate_level(m, y)))
            pool = LevelPool(m=m, levels=pool_levels)
            ones = level_one(m)
            flat_pool = [v for y in sorted(pool_levels) for v in pool_levels[y] if y <= x.y]
            brute = False
            for b, c, d in product(ones, flat_pool, flat_pool):
                if x + b == c + d and c != x and d != x:
                    brute = True
                    break
            assert (is_quasi_decomposable(x, m, ones, pool) is not None) == brute


class TestCheckCondition:
    def test_m21_with_exclusion(self, get_basis):
        report = check_condition(21, exclude_standard=True, basis=get_basis(21))
        assert report.verdict and report.complete

    def test_m27_with_exclusion(self, get_basis):
        report = check_condition(27, exclude_standard=True, basis=get_basis(27))
        assert report.verdict and report.complete

    def test_m33_fails_on_counterexample(self, get_basis):
        report = check_condition(33, basis=get_basis(33))
        assert not report.verdict
        failing = [o.element for o in report.outcomes if o.kind == "FAIL"]
        assert COUNTEREXAMPLE_33 in failing

    def test_m12_all_quasi(self, get_basis):
        report = check_condition(12, basis=get_basis(12))
        assert report.verdict
        assert report.counts["FAIL"] == 0

    def test_m13_vacuous(self):
        report = check_condition(13)
        assert report.verdict and not report.outcomes

    def test_incomplete_basis_rejected(self):
        from fermat_hodge import hilbert_basis

        partial = hilbert_basis(12, algorithm="levelwise", max_level=3)
        with pytest.raises(IncompleteBasisError):
            check_condition(12, basis=partial)

    def test_fourfold_range_levels_exactly_three(self, get_basis):
        report = check_condition(25, n=4, exclude_standard=True)
        assert report.verdict
        assert all(o.element.y == 3 for o in report.outcomes)
        assert all(o.kind == "STANDARD" for o in report.outcomes)


class TestScan:
    def test_range_with_counterexample(self):
        reports = scan_fourfolds(33, 33)
        assert len(reports) == 1 and not reports[0].verdict

    def test_small_coprime_range_all_true(self):
        reports = scan_fourfolds(5, 21, coprime_to=6)
        assert [r.m for r in reports] == [5, 7, 11, 13, 17, 19]
        assert all(r.verdict for r in reports)

    def test_m3_vacuous(self):
        reports = scan_fourfolds(3, 3)
        assert reports[0].verdict and not reports[0].outcomes


class TestVerdict:
    def test_examples(self):
        assert verdict(7, 4).status == VerdictStatus.PROVEN_PRIME_OR_4
        assert verdict(25, 6).status == VerdictStatus.PROVEN_PRIME_SQUARE
        assert verdict(33, 4).status == VerdictStatus.UNDETERMINED
        assert verdict(35, 4).status == VerdictStatus.PROVEN_FOURFOLD_COPRIME_6
        assert verdict(12, 6).status == VerdictStatus.PROVEN_M_LE_20
        assert verdict(21, 8).status == VerdictStatus.PROVEN_M_21_27
        assert verdict(35, 0).status == VerdictStatus.PROVEN_DIM_LE_2

    def test_pnm_check_path(self):
        report = verdict(22, 4)
        assert report.status == VerdictStatus.PROVEN_BY_PNM_CHECK
        assert report.condition_report is not None
        assert report.condition_report.verdict

    def test_rejects_odd_dimension(self):
        with pytest.raises(ValueError):
            verdict(7, 3)

    def test_never_undetermined_when_a_theorem_applies(self):
        for m in range(2, 31):
            for n in range(0, 10, 2):
                theorem_applies = (
                    n <= 2
                    or _is_prime(m)
                    or m == 4
                    or _prime_square(m)
                    or m <= 20
                    or m in (21, 27)
                    or (n == 4 and gcd(m, 6) == 1)
                )
                if theorem_applies:
                    assert verdict(m, n).status != VerdictStatus.UNDETERMINED, (m, n)


class TestNewtonIdentity:
    def test_all_ones(self):
        assert power_sum_identity_holds((1, 1, 1, 1, 1, 1), 1)

    def test_cancellation(self):
        assert power_sum_identity_holds((1, -1, 0, 0, 0, 0), 1)

    def test_seeded_runs(self):
        assert newton_identity_check(2, 100, 7)
        for d in (1, 2, 3):
            assert newton_identity_check(d, 200, d)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            newton_identity_check(0, 10, 1)
