import numpy as np
import pytest

from sirsd_koopman import (
    Dictionary,
    DomainError,
    StateVec,
    Trajectory,
    dictionary_d1,
    dictionary_d2,
    lift,
    lift_trajectory,
    preset,
    simulate_nsfd,
)

from conftest import random_interior_states

D1_LABELS = ("s", "i", "r", "d", "s*i/(1-d)")
D2_LABELS = (
    "s", "i", "r", "d",
    "s*i", "s*r", "i*r", "s*i/(1-d)",
    "s^2", "i^2", "r^2", "d^2",
)


class TestDictionaryConstruction:
    def test_minimal_dictionary_contents(self):
        d1 = dictionary_d1()
        assert d1.size == 5
        assert d1.labels == D1_LABELS
        assert d1.linear_block == (0, 1, 2, 3)

    def test_extended_dictionary_contents(self):
        d2 = dictionary_d2()
        assert d2.size == 12
        assert d2.labels == D2_LABELS
        assert d2.linear_block == (0, 1, 2, 3)

    def test_rejects_duplicate_labels(self):
        with pytest.raises(ValueError, match="unique"):
            Dictionary(
                name="bad",
                observables=(
                    ("s", lambda x: x.s),
                    ("s", lambda x: x.i),
                    ("r", lambda x: x.r),
                    ("d", lambda x: x.d),
                ),
                linear_block=(0, 1, 2, 3),
            )

    def test_rejects_short_linear_block(self):
        with pytest.raises(ValueError, match="linear_block"):
            Dictionary(
                name="bad",
                observables=dictionary_d1().observables,
                linear_block=(0, 1, 2),
            )


class TestLift:
    def test_disease_free_minimal(self):
        out = lift(StateVec(1.0, 0.0, 0.0, 0.0), dictionary_d1())
        assert out.values.tolist() == [1.0, 0.0, 0.0, 0.0, 0.0]
        assert out.dictionary == "d1"

    def test_disease_free_extended(self):
        out = lift(StateVec(1.0, 0.0, 0.0, 0.0), dictionary_d2())
        assert out.values.tolist() == [1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0]

    def test_interior_point_minimal(self):
        # Oracle: 0.5*0.2/0.9 and 0.0625/0.75 evaluated directly.
        out = lift(StateVec(0.5, 0.2, 0.2, 0.1), dictionary_d1())
        assert out.values[:4].tolist() == [0.5, 0.2, 0.2, 0.1]
        assert out.values[4] == pytest.approx(0.11111111111111112, rel=1e-15)
        centered = lift(StateVec(0.25, 0.25, 0.25, 0.25), dictionary_d1())
        assert centered.values[4] == pytest.approx(0.08333333333333333, rel=1e-15)

    def test_interior_point_extended(self):
        out = lift(StateVec(0.5, 0.2, 0.2, 0.1), dictionary_d2())
        expected = [0.5, 0.2, 0.2, 0.1, 0.1, 0.1, 0.04, 0.11111111111111112,
                    0.25, 0.04, 0.04, 0.01]
        assert out.values == pytest.approx(expected, rel=1e-12)

    def test_incidence_product_entry(self):
        out = lift(StateVec(0.9, 0.1, 0.0, 0.0), dictionary_d2())
        assert out.values[4] == pytest.approx(0.09, rel=1e-15)

    def test_readback_identity(self, rng):
        for dictionary in (dictionary_d1(), dictionary_d2()):
            for x in random_interior_states(rng, 50):
                values = lift(x, dictionary).values
                block = values[list(dictionary.linear_block)]
                assert block.tolist() == [x.s, x.i, x.r, x.d]

    def test_minimal_is_subset_of_extended(self, rng):
        d1, d2 = dictionary_d1(), dictionary_d2()
        positions = [d2.labels.index(label) for label in d1.labels]
        for x in random_interior_states(rng, 100):
            v1 = lift(x, d1).values
            v2 = lift(x, d2).values
            assert v1.tolist() == v2[positions].tolist()

    def test_observables_bounded_on_simplex(self, rng):
        d2 = dictionary_d2()
        for x in random_interior_states(rng, 100):
            values = lift(x, d2).values
            assert np.all(values >= 0.0)
            assert np.all(values <= 1.0)

    def test_rejects_vanishing_denominator(self):
        with pytest.raises(DomainError):
            lift(StateVec(0.0, 0.0, 0.0, 1.0), dictionary_d1())


class TestLiftTrajectory:
    def test_constant_trajectory(self):
        states = np.tile([0.9, 0.1, 0.0, 0.0], (3, 1))
        lifted = lift_trajectory(Trajectory(0.0, 0.1, states), dictionary_d1())
        assert len(lifted) == 3
        for vec in lifted:
            assert vec.values.tolist() == lifted[0].values.tolist()

    def test_readback_matches_source(self):
        scenario = preset("ebola")
        traj = simulate_nsfd(scenario.nsfd_config(t_end=5.0), scenario.params)
        lifted = lift_trajectory(traj, dictionary_d1())
        assert len(lifted) == len(traj)
        for k in (0, 10, 50):
            assert lifted[k].values[:4].tolist() == traj.states[k].tolist()
        # Seed state: incidence observable is beta-free 0.9*0.1/1.
        assert lifted[0].values[4] == pytest.approx(0.09, rel=1e-15)

    def test_reports_failing_sample_index(self):
        states = np.array(
            [
                [0.9, 0.1, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ]
        )
        with pytest.raises(DomainError, match="sample 1"):
            lift_trajectory(Trajectory(0.0, 0.1, states), dictionary_d2())
