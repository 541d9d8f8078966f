import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzcrypt.errors import DimensionError, EmptyInputError, InvalidParameterError
from fuzzcrypt.fuzzy import (
    CategorySet,
    FuzzyCategory,
    MembershipKind,
    defuzzify,
    fuzzify,
    gaussian_membership,
    rational_membership,
)

from oracles import gaussian_oracle, rational_oracle, rel_err

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
spread = st.floats(min_value=1e-3, max_value=1e3)
shape = st.floats(min_value=0.1, max_value=10)


def cats(*specs, kind=None):
    kind = kind or MembershipKind()
    return CategorySet(
        tuple(FuzzyCategory(f"c{j}", mu, sigma) for j, (mu, sigma) in enumerate(specs)), kind
    )


class TestGaussian:
    def test_center(self):
        assert gaussian_membership(5.0, 5.0, 2.0) == 1.0

    @pytest.mark.parametrize(
        "x, mu, sigma, expected",
        [
            (1.0, 0.0, 1.0, 0.6065306597126334236037995349911804534419),
            (0.0, 3.0, 1.0, 0.01110899653824230649614313428693052777154),
        ],
    )
    def test_values(self, x, mu, sigma, expected):
        assert gaussian_membership(x, mu, sigma) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("sigma", [0.0, -1.0, math.inf, math.nan])
    def test_bad_sigma(self, sigma):
        with pytest.raises(InvalidParameterError):
            gaussian_membership(0.0, 0.0, sigma)

    @pytest.mark.parametrize("x, mu", [(math.nan, 0.0), (0.0, math.inf)])
    def test_non_finite(self, x, mu):
        with pytest.raises(InvalidParameterError):
            gaussian_membership(x, mu, 1.0)

    def test_far_tail_stays_positive(self):
        u = gaussian_membership(1e6, 0.0, 1.0)
        assert 0.0 < u < 1e-300

    def test_near_center_stays_below_one(self):
        assert gaussian_membership(1e-12, 0.0, 1.0) < 1.0


class TestRational:
    @given(finite, spread, shape)
    def test_center(self, mu, sigma, p):
        assert rational_membership(mu, mu, sigma, p) == 1.0

    def test_unit_distance(self):
        assert rational_membership(1.0, 0.0, 1.0, 2) == 0.5

    def test_three_sigma(self):
        assert rational_membership(3.0, 0.0, 1.0, 2) == pytest.approx(0.1, rel=1e-12)

    @pytest.mark.parametrize("sigma, p", [(0.0, 2.0), (-1.0, 2.0), (1.0, 0.0), (1.0, -2.0), (1.0, math.nan)])
    def test_bad_params(self, sigma, p):
        with pytest.raises(InvalidParameterError):
            rational_membership(1.0, 0.0, sigma, p)

    def test_overflow_stays_positive(self):
        u = rational_membership(1e300, 0.0, 1e-300, 5.0)
        assert u > 0.0


@given(finite, st.floats(-30, 30), spread, shape)
def test_oracle_agreement(mu, z, sigma, p):
    x = mu + z * sigma
    g = gaussian_membership(x, mu, sigma)
    r = rational_membership(x, mu, sigma, p)
    assert rel_err(g, gaussian_oracle(x, mu, sigma)) < 1e-12
    assert rel_err(r, rational_oracle(x, mu, sigma, p)) < 1e-12


@given(st.floats(min_value=0, max_value=1e4), spread, shape)
def test_symmetry_exact_at_zero(d, sigma, p):
    assert gaussian_membership(d, 0.0, sigma) == gaussian_membership(-d, 0.0, sigma)
    assert rational_membership(d, 0.0, sigma, p) == rational_membership(-d, 0.0, sigma, p)


@given(finite, st.floats(min_value=0, max_value=1e2), spread, shape)
def test_symmetry(mu, d, sigma, p):
    # mu +/- d rounds, so off-zero centers only agree to rounding error
    for f in (gaussian_membership, lambda x, m, s: rational_membership(x, m, s, p)):
        hi, lo = f(mu + d, mu, sigma), f(mu - d, mu, sigma)
        if abs((mu + d) - mu) == abs((mu - d) - mu):
            assert hi == lo


@given(st.floats(0.1, 8), st.floats(1e-3, 8), spread, st.floats(0.5, 4), st.booleans())
def test_monotone_decay(t_near, gap, sigma, p, from_center):
    # Normalized distances where a double can resolve neighbouring degrees;
    # much closer to the center both values round to the same float.
    near = 0.0 if from_center else t_near * sigma
    far = (t_near + gap) * sigma
    assert gaussian_membership(far, 0.0, sigma) < gaussian_membership(near, 0.0, sigma)
    assert rational_membership(far, 0.0, sigma, p) < rational_membership(near, 0.0, sigma, p)


@given(finite, finite, spread, shape)
def test_range(x, mu, sigma, p):
    for u in (gaussian_membership(x, mu, sigma), rational_membership(x, mu, sigma, p)):
        assert 0.0 < u <= 1.0
        assert (u == 1.0) == (x == mu)


class TestTypes:
    def test_category_rejects_bad_values(self):
        with pytest.raises(InvalidParameterError):
            FuzzyCategory("a", 0.0, 0.0)
        with pytest.raises(InvalidParameterError):
            FuzzyCategory("a", 0.0, 1.0, weight=-1.0)
        with pytest.raises(InvalidParameterError):
            FuzzyCategory("", 0.0, 1.0)

    def test_category_set_rules(self):
        with pytest.raises(InvalidParameterError):
            CategorySet(())
        with pytest.raises(InvalidParameterError):
            CategorySet((FuzzyCategory("a", 0, 1), FuzzyCategory("a", 1, 1)))

    def test_kind(self):
        assert MembershipKind() == MembershipKind("rational", 2.0)
        with pytest.raises(InvalidParameterError):
            MembershipKind("rational", 0.0)
        with pytest.raises(InvalidParameterError):
            MembershipKind("triangular")
        # p is irrelevant to the Gaussian and not validated there
        MembershipKind("gaussian", 0.0)


class TestFuzzify:
    def test_single_center(self):
        m = fuzzify([0.0], cats((0.0, 1.0), kind=MembershipKind("gaussian")))
        assert m.values.tolist() == [[1.0]]

    def test_two_by_two(self):
        m = fuzzify([0.0, 1.0], cats((0.0, 1.0), (1.0, 1.0)))
        assert m.values.tolist() == [[1.0, 0.5], [0.5, 1.0]]
        assert (m.rows, m.cols) == (2, 2)

    def test_code_points(self):
        cs = cats((97.0, 10.0), (110.0, 5.0), kind=MembershipKind("gaussian"))
        m = fuzzify([97, 98], cs)
        assert m[0, 0] == 1.0
        assert m[1, 0] == pytest.approx(0.9950124791926823133525642462325041853859, rel=1e-12)

    def test_empty(self):
        with pytest.raises(EmptyInputError):
            fuzzify([], cats((0.0, 1.0)))

    @given(st.lists(st.floats(-500, 500), min_size=1, max_size=40), st.sampled_from(["gaussian", "rational"]))
    def test_entries_are_scalar_results(self, values, variant):
        kind = MembershipKind(variant, 1.7)
        cs = cats((0.0, 3.0), (100.0, 40.0), (-50.0, 0.5), kind=kind)
        m = fuzzify(values, cs)
        for i, x in enumerate(values):
            for j, c in enumerate(cs):
                assert m[i, j] == kind(x, c)

    def test_matrix_is_read_only(self):
        m = fuzzify([1.0], cats((0.0, 1.0)))
        with pytest.raises(ValueError):
            m.values[0, 0] = 0.3


class TestDefuzzify:
    def test_single(self):
        assert defuzzify([0.123], cats((42.0, 1.0))) == 42.0

    def test_midpoint(self):
        assert defuzzify([0.5, 0.5], cats((0.0, 1.0), (10.0, 1.0))) == 5.0

    def test_weighted(self):
        assert defuzzify([0.8, 0.2], cats((0.0, 1.0), (10.0, 1.0))) == pytest.approx(2.0, rel=1e-12)

    def test_dimension(self):
        with pytest.raises(DimensionError):
            defuzzify([0.5], cats((0.0, 1.0), (10.0, 1.0)))

    def test_all_zero(self):
        with pytest.raises(InvalidParameterError):
            defuzzify([0.0, 0.0], cats((0.0, 1.0), (10.0, 1.0)))

    @given(st.floats(-1e6, 1e6), finite, spread)
    def test_single_category_round_trip(self, x, mu, sigma):
        cs = cats((mu, sigma))
        assert defuzzify(fuzzify([x], cs)[0], cs) == mu

    @given(
        st.lists(
            st.tuples(st.floats(-1e6, 1e6), st.floats(1e-300, 1.0)), min_size=1, max_size=8
        )
    )
    def test_bounded(self, pairs):
        mus = [mu for mu, _ in pairs]
        cs = CategorySet(tuple(FuzzyCategory(f"c{j}", mu, 1.0) for j, mu in enumerate(mus)))
        out = defuzzify(np.array([u for _, u in pairs]), cs)
        assert min(mus) <= out <= max(mus)
