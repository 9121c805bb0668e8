import math

import numpy as np
import pytest

from greedycs.bounds import (
    DeltaModel,
    compare_omp_komp,
    komp_error_bound,
    komp_error_constant,
    komp_truncated_error_bound,
    omp_error_bound,
    omp_error_constant,
)
from greedycs.errors import BoundUndefined, OrderOutOfRange

ZERO = DeltaModel.power_law(0.0, 0.0)
POWER_03 = DeltaModel.power_law(0.00015, 0.3)

# Frozen from an independent transcription of the constant formulas
# (straight-line evaluation, no shared code with the module).
C1_POWER03_T100 = 13.08527508327567
CK_POWER03_T100_K9 = 6.3636024818858337
C1_POWER08_T100 = 13.932146425308449
CK_POWER08_T100_K12 = 6.9273796366157541


class TestDeltaModel:
    def test_power_law_evaluation(self):
        model = DeltaModel.power_law(0.01, 0.5)
        assert model.delta_at(4) == pytest.approx(0.02)

    def test_table_lookup_and_missing_order(self):
        model = DeltaModel.from_table({1: 0.1, 2: 0.2})
        assert model.delta_at(2) == 0.2
        with pytest.raises(OrderOutOfRange):
            model.delta_at(3)

    def test_from_report(self):
        from greedycs.model import gen_gaussian_matrix
        from greedycs.rip import exact_report

        report = exact_report(gen_gaussian_matrix(10, 12, seed=1), [1, 2, 3])
        model = DeltaModel.from_report(report)
        assert model.delta_at(2) == report.delta_at(2)


class TestOmpConstant:
    def test_zero_delta_closed_form(self):
        for t in (1, 4, 25, 100):
            assert omp_error_constant(ZERO, t) == pytest.approx(
                math.sqrt(t) + 3.0, abs=1e-12
            )

    def test_power_law_value_frozen(self):
        assert omp_error_constant(POWER_03, 100) == pytest.approx(
            C1_POWER03_T100, rel=1e-12
        )
        assert omp_error_constant(
            DeltaModel.power_law(0.00015, 0.8), 100
        ) == pytest.approx(C1_POWER08_T100, rel=1e-12)

    def test_undefined_when_delta_2t_saturates(self):
        model = DeltaModel.from_table({4: 0.1, 5: 0.1, 8: 1.0})
        with pytest.raises(BoundUndefined, match="delta_8"):
            omp_error_constant(model, 4)

    def test_undefined_when_selection_margin_fails(self):
        model = DeltaModel.from_table({4: 0.1, 5: 0.4, 8: 0.2})
        with pytest.raises(BoundUndefined, match="delta_5"):
            omp_error_constant(model, 4)  # 0.4 * 3 > 1


class TestKompConstant:
    def test_zero_delta_closed_form(self):
        for t in (4, 100):
            for k in (1, 2, 4, 10):
                assert komp_error_constant(ZERO, t, k) == pytest.approx(
                    math.sqrt(t / k) + 3.0, abs=1e-12
                )

    def test_t_equals_k(self):
        assert komp_error_constant(ZERO, 7, 7) == pytest.approx(4.0, abs=1e-12)

    def test_power_law_values_frozen(self):
        assert komp_error_constant(POWER_03, 100, 9) == pytest.approx(
            CK_POWER03_T100_K9, rel=1e-12
        )
        assert komp_error_constant(
            DeltaModel.power_law(0.00015, 0.8), 100, 12
        ) == pytest.approx(CK_POWER08_T100_K12, rel=1e-12)

    def test_k1_specialization_differs_from_omp_constant(self):
        # The two constants come from different derivations and only agree
        # at zero deltas; both must stay finite and close.
        c1 = omp_error_constant(POWER_03, 100)
        ck1 = komp_error_constant(POWER_03, 100, 1)
        assert ck1 != c1
        assert abs(ck1 - c1) < 0.1

    def test_non_increasing_in_k_for_small_deltas(self):
        values = [komp_error_constant(POWER_03, 100, k) for k in range(1, 21)]
        assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))


class TestCompareTable:
    @pytest.mark.parametrize(
        "beta,first_k",
        [(0.3, 9), (0.8, 12), (0.95, None)],
    )
    def test_crossovers(self, beta, first_k):
        model = DeltaModel.power_law(0.00015, beta)
        table = compare_omp_komp(model, 100, range(1, 31))
        assert table.first_crossover() == first_k

    def test_k1_row_carries_omp_constant(self):
        table = compare_omp_komp(POWER_03, 100, range(1, 5))
        row = table.rows[0]
        assert row.k == 1 and not row.crossover
        assert row.constant == pytest.approx(C1_POWER03_T100, rel=1e-12)
        assert row.comparison_value == row.constant

    def test_k_rows_carry_shifted_value(self):
        table = compare_omp_komp(POWER_03, 100, range(1, 12))
        for row in table.rows[1:]:
            assert row.comparison_value == pytest.approx(
                2.0 * row.constant + 2.0, rel=1e-12
            )

    def test_undefined_rows_never_cross(self):
        # Steep growth saturates the needed deltas for large K.
        model = DeltaModel.power_law(0.002, 0.95)
        table = compare_omp_komp(model, 100, range(1, 31))
        for row in table.rows:
            if not row.defined:
                assert row.constant is None and not row.crossover
        assert any(not row.defined for row in table.rows)


class TestBoundEvaluations:
    def test_sparse_noiseless_bounds_vanish(self):
        assert omp_error_bound(ZERO, 4, 0.0, 0.0, 0.0) == 0.0
        assert komp_truncated_error_bound(ZERO, 4, 2, 0.0, 0.0, 0.0) == 0.0

    def test_zero_delta_arithmetic(self):
        # C1 = 5 at t = 4: (1 + 5) * 1 + (5 / 2) * 2 = 11.
        assert omp_error_bound(ZERO, 4, 1.0, 2.0, 0.0) == pytest.approx(11.0)
        # C_K = 8 at t = 100, k = 4: (3 + 16) * 1 + 2 * 1 = 21.
        assert komp_truncated_error_bound(
            ZERO, 100, 4, 1.0, 0.0, 1.0
        ) == pytest.approx(21.0)

    def test_raw_komp_bound_coefficients(self):
        # (1 + C_K) err2 + (C_K / sqrt(t)) err1 + C_K noise with C_K = 8.
        assert komp_error_bound(ZERO, 100, 4, 1.0, 10.0, 1.0) == pytest.approx(
            9.0 + 8.0 + 8.0
        )

    def test_monotone_in_each_argument(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            e2, e1, w = rng.uniform(0, 5, size=3)
            base = omp_error_bound(POWER_03, 25, e2, e1, w)
            assert omp_error_bound(POWER_03, 25, e2 + 0.1, e1, w) >= base
            assert omp_error_bound(POWER_03, 25, e2, e1 + 0.1, w) >= base
            assert omp_error_bound(POWER_03, 25, e2, e1, w + 0.1) >= base
            base_k = komp_truncated_error_bound(POWER_03, 25, 2, e2, e1, w)
            assert komp_truncated_error_bound(
                POWER_03, 25, 2, e2 + 0.1, e1, w
            ) >= base_k

    def test_negative_norms_rejected(self):
        with pytest.raises(ValueError):
            omp_error_bound(ZERO, 4, -1.0, 0.0, 0.0)
