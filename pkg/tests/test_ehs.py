import numpy as np
import pytest
from hypothesis import given, strategies as st

from elldqg.ehs import (
    Monomial, NonTerminatingError, ThetaRatio, VParams, balanced_check, first_vanishing_term, symbolic_termination,
    termination_index, v_series, v_term,
)
from elldqg.elliptic_core import ModulusParams
from elldqg.pairing.closed_form import vparams_at

P = ModulusParams(0.2, 0.5)
A1 = 0.3 + 0.1j
# two-term sum with termination parameter q^-2 (= 4), mpmath at 30 digits
TWO_TERM_REF = complex(0.698660742634562978, -0.110305796476647511)


def balanced(a1, free, m, params):
    """Trailing list with a q^{-2m} entry and a last entry fixing the balancing."""
    q2 = params.q ** 2
    r = len(free) + 2 + 4
    rest = np.prod(free) * q2 ** (-m)
    last = np.sqrt((a1 * q2) ** (r - 5) / q2 ** 2) / rest
    return tuple(free) + (q2 ** (-m), last)


def test_unit_parameter_gives_one():
    assert v_series(VParams(A1, (1.0, 0.5, 0.7 + 0.2j), P)) == pytest.approx(1.0)


def test_two_term_reference():
    vp = VParams(A1, (4.0, 0.5, 0.6 + 0.2j, 0.25), P)
    assert termination_index(vp.trailing, P.q) == 1
    assert abs(v_series(vp) - TWO_TERM_REF) < 1e-13


def test_non_terminating_rejected():
    with pytest.raises(NonTerminatingError):
        v_series(VParams(A1, (0.5, 0.6), P))


def test_termination_matches_first_vanishing_term():
    for m in range(5):
        vp = VParams(A1, (0.37, P.q ** (-2 * m), 0.6j), P)
        assert termination_index(vp.trailing, P.q) == m
        assert first_vanishing_term(vp) == m + 1
        assert v_term(vp, m + 1) == 0


def test_balanced_check():
    tr = balanced(A1, [0.5, 0.6 + 0.2j, 1.3, 0.8j, 0.9, 1.1], 2, P)
    vp = VParams(A1, tr, P)
    assert vp.r == 12
    assert balanced_check(vp) < 1e-14
    bumped = VParams(A1, (tr[0] * 1.01,) + tr[1:], P)
    assert abs(balanced_check(bumped) - 0.0199) < 5e-4


def test_closed_form_parameters_balanced(rng):
    for _ in range(20):
        M, N = rng.integers(0, 4, size=2)
        r, s = rng.integers(0, M + 1, size=2)
        k = int(rng.integers(0, N + 1))
        lam = complex(rng.uniform(0.1, 0.9), rng.uniform(-0.3, 0.3))
        x = complex(np.exp(rng.uniform(-0.5, 0.5) + 1j * rng.uniform(0, 6)))
        vp = vparams_at(int(M), int(r), int(s), int(N), k, int(s + k - r), lam, x, P)
        assert balanced_check(vp) < 1e-10


def test_closed_form_series_is_one_when_r_s_vanish():
    vp = vparams_at(2, 0, 0, 2, 1, 1, 0.4 + 0.1j, 0.8 + 0.3j, P)
    assert v_series(vp) == pytest.approx(1.0)


@given(st.permutations(range(4)))
def test_series_invariant_under_trailing_permutation(perm):
    tr = (4.0 * P.q ** -2, 0.5, 0.6 + 0.2j, 0.25)
    base = v_series(VParams(A1, tr, P))
    permuted = v_series(VParams(A1, tuple(tr[i] for i in perm), P))
    assert abs(base - permuted) < 1e-12 * max(1.0, abs(base))


def test_monomial_algebra():
    a, b = Monomial(2, 1, -1), Monomial(-1, 0, 1)
    assert a * b == Monomial(1, 1, 0)
    assert a / a == Monomial(0)
    assert (a * a.inv()).is_one
    assert a.qshift(3) == Monomial(5, 1, -1)
    assert a.value(0.0, 2.0, P) == pytest.approx(0.25 ** 2 / 2)
    assert symbolic_termination([Monomial(-3), Monomial(2), Monomial(-1, 1)]) == 3


def test_theta_ratio_simplify_inverse_pair():
    u = Monomial(1, 1, 0)
    tr = ThetaRatio(num=[u.inv()], den=[u]).simplify()
    assert tr.num == [] and tr.den == [] and tr.sign == -1
    lam = np.array([0.3 + 0.1j])
    expected = -1 / u.value(lam, 1.0, P)
    assert np.allclose(tr.evaluate(lam, 1.0, P), expected, rtol=1e-14)
    assert ThetaRatio(num=[Monomial(0)]).vanishes
    assert ThetaRatio(den=[Monomial(0)]).singular
