import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quasitone.decimalreal import PI
from quasitone.errors import DimensionMismatch, ZeroPeriod
from quasitone.golden import PHI, GoldenReal
from quasitone.numbertheory import Kind
from quasitone.quasicore import (
    BellComponent,
    FrequencyVector,
    QuasiperiodReport,
    SineComponent,
    TorusFunction,
    evaluate,
    quasiperiods,
    rationally_independent,
    verify_near_coincidence,
)
from quasitone.score import raindrops_preset, torus_function

from oracles import relation_search

F = Fraction
coef = st.fractions(min_value=-6, max_value=6, max_denominator=6)


class TestIndependence:
    def test_one_and_phi(self):
        res = rationally_independent([1, PHI])
        assert res.independent and bool(res) and res.witness is None

    def test_rationals(self):
        res = rationally_independent([F(1, 2), F(3, 4)])
        assert not res
        assert res.witness == (3, -2)

    def test_scalar_multiple(self):
        res = rationally_independent([GoldenReal(1, 1), GoldenReal(2, 2)])
        assert res.witness == (2, -1)

    def test_three_values_in_a_two_dimensional_field(self):
        vals = [F(1), PHI, GoldenReal(3, -2)]
        res = rationally_independent(vals)
        assert not res
        assert sum(y * v for y, v in zip(res.witness, vals)) == 0

    def test_rejects_pi_and_zero(self):
        with pytest.raises(TypeError):
            rationally_independent([1, PI])
        with pytest.raises(ValueError):
            rationally_independent([1, 0])

    @settings(max_examples=200)
    @given(coef, coef, coef, coef, st.booleans(), st.integers(-12, 12), st.integers(1, 12))
    def test_agrees_with_bounded_relation_search(self, a1, b1, a2, b2, dependent, p, q):
        if dependent and p:
            a2, b2 = a1 * F(p, q), b1 * F(p, q)
        if (a1, b1) == (0, 0) or (a2, b2) == (0, 0):
            return
        x, y = GoldenReal(a1, b1), GoldenReal(a2, b2)
        res = rationally_independent([x, y])
        found = relation_search([(a1, b1), (a2, b2)], 100)
        if res:
            assert found == []
        else:
            assert res.witness[0] * x + res.witness[1] * y == 0
            assert res.witness[0] > 0 and math.gcd(*res.witness) == 1
            in_bound = max(map(abs, res.witness)) <= 100
            assert bool(found) == in_bound
            if in_bound:
                assert res.witness in found


class TestEvaluate:
    def sine_pair(self):
        return TorusFunction([SineComponent(), SineComponent()], 1), FrequencyVector((1, 2 * PI))

    def test_at_zero(self):
        Q, omega = self.sine_pair()
        assert evaluate(Q, omega, 0.0).tolist() == [0.0]

    def test_at_quarter(self):
        Q, omega = self.sine_pair()
        assert evaluate(Q, omega, 0.25)[0] == pytest.approx(math.sin(0.25) + 1.0, abs=1e-12)
        assert evaluate(Q, omega, 0.25)[0] == pytest.approx(1.2474039592545229, abs=1e-12)

    def test_vectorised(self):
        Q, omega = self.sine_pair()
        xs = np.linspace(0, 3, 7)
        out = evaluate(Q, omega, xs)
        assert out.shape == (7, 1)
        assert np.allclose(out[:, 0], np.sin(xs) + np.sin(2 * np.pi * xs), atol=1e-12)

    def test_dimension_mismatch(self):
        Q, _ = self.sine_pair()
        with pytest.raises(DimensionMismatch):
            evaluate(Q, FrequencyVector((1,)), 0.0)
        with pytest.raises(DimensionMismatch):
            TorusFunction([SineComponent((1.0, 2.0)), SineComponent()], 2)

    def test_float_frequency_rejected(self):
        with pytest.raises(TypeError):
            FrequencyVector((1.0, 2.0))

    @pytest.mark.parametrize("w", [F(1), F(3, 7), PHI, GoldenReal(F(1, 3), 2)])
    def test_single_component_is_periodic(self, w):
        Q = TorusFunction([SineComponent()], 1)
        omega = FrequencyVector((w,))
        period = 2 * math.pi / float(w)
        xs = np.linspace(0, 10, 1001)
        assert np.max(np.abs(evaluate(Q, omega, xs + period) - evaluate(Q, omega, xs))) <= 1e-12

    def test_bell_component_is_continuous_across_the_measure(self):
        comp = BellComponent(1.0, [(0.0, 1.0, 0)], 1)
        before, after = comp(np.array([2 * math.pi - 1e-9, 0.0]))[:, 0]
        assert before == pytest.approx(after, abs=1e-6)

    @pytest.mark.parametrize("name", ["sine", "bell"])
    def test_near_repeat_bounded_by_lipschitz_times_gap(self, name):
        if name == "sine":
            Q = TorusFunction([SineComponent(), SineComponent()], 1)
            omega = FrequencyVector.from_periods((1, PHI))
        else:
            Q, omega, _ = torus_function(raindrops_preset())
        L = Q.lipschitz(omega)
        xs = np.arange(0, 50001) * 1e-3
        base = evaluate(Q, omega, xs)
        for rep in quasiperiods(1, PHI, 200):
            shifted = evaluate(Q, omega, xs + rep.quasiperiod_float)
            worst = np.max(np.abs(shifted - base))
            assert worst <= L * rep.gap_float + 1e-9


class TestQuasiperiods:
    @pytest.mark.parametrize("kind", list(Kind))
    def test_two_pi_final_report(self, kind):
        rep = quasiperiods(1, 2 * PI, 3, kind)[-1]
        assert rep.approximant == F(19, 3)
        t1, t2 = rep.pair_floats
        assert t1 == 19.0
        assert t2 == pytest.approx(6 * math.pi, abs=1e-12)
        assert rep.gap_float == pytest.approx(19 - 6 * math.pi, abs=1e-12)
        assert rep.quasiperiod_float == pytest.approx(6 * math.pi, abs=1e-12)
        assert verify_near_coincidence(1, 2 * PI, rep)

    def test_golden_reports_are_exact(self):
        reps = quasiperiods(1, PHI, 5, Kind.SECOND)
        assert [r.approximant for r in reps] == [F(2), F(3, 2), F(5, 3), F(8, 5)]
        for r in reps:
            a, b = r.approximant.numerator, r.approximant.denominator
            assert r.coincidence_pair == (a, b * PHI)
            assert r.gap == abs(a - b * PHI)
            assert isinstance(r.gap, GoldenReal)
        assert reps[-1].gap == 5 * PHI - 8
        assert reps[-1].gap_float == pytest.approx(0.0901699437, abs=1e-10)

    @pytest.mark.parametrize("kind", list(Kind))
    def test_commensurate(self, kind):
        reps = quasiperiods(2, 4, 10, kind)
        assert len(reps) == 1
        assert reps[0].coincidence_pair == (4, 4)
        assert reps[0].gap == 0

    @pytest.mark.parametrize("p", [0, -1, F(-1, 2), -PHI])
    def test_non_positive_period(self, p):
        with pytest.raises(ZeroPeriod):
            quasiperiods(1, p, 5)

    @pytest.mark.parametrize("p2, max_den", [(PHI, 1000), (2 * PI, 10_000), (GoldenReal(F(1, 3), F(3, 2)), 500)])
    def test_second_kind_gaps_strictly_decrease(self, p2, max_den):
        gaps = [r.gap for r in quasiperiods(1, p2, max_den, Kind.SECOND)]
        assert len(gaps) >= 4
        assert all(a > b for a, b in zip(gaps, gaps[1:]))

    def test_first_kind_gaps_can_grow(self):
        # 13/2 is a first-kind approximant of 2pi, but |13 - 4pi| > |6 - 2pi|
        reps = quasiperiods(1, 2 * PI, 3, Kind.FIRST)
        assert [r.approximant for r in reps] == [F(6), F(13, 2), F(19, 3)]
        assert reps[1].gap > reps[0].gap
        assert not verify_near_coincidence(1, 2 * PI, reps[1])


class TestVerify:
    def test_golden_eight_fifths(self):
        rep = quasiperiods(1, PHI, 5)[-1]
        assert rep.approximant == F(8, 5)
        assert verify_near_coincidence(1, PHI, rep)

    def test_all_golden_reports_verify(self):
        assert all(verify_near_coincidence(1, PHI, r) for r in quasiperiods(1, PHI, 300))

    def test_overstated_gap_is_rejected(self):
        rep = quasiperiods(1, 2 * PI, 3)[-1]
        forged = QuasiperiodReport(rep.approximant, rep.coincidence_pair, rep.gap + 1, rep.quasiperiod)
        assert not verify_near_coincidence(1, 2 * PI, forged)

    def test_closer_earlier_pair_is_found(self):
        forged = QuasiperiodReport(F(13, 2), (13, 4 * PI), 13 - 4 * PI, 4 * PI)
        assert not verify_near_coincidence(1, 2 * PI, forged)

    def test_scan_resolution_must_be_positive(self):
        rep = quasiperiods(1, PHI, 5)[-1]
        with pytest.raises(ValueError):
            verify_near_coincidence(1, PHI, rep, scan_resolution=0)
