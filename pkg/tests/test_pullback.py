import numpy as np
import pytest

from cohgeom import (
    DomainError,
    StateFamily,
    StepError,
    TangentSpec,
    UnsupportedBasePoint,
    analytic_tangent,
    closed_form,
    family_state,
    kahler_verdict,
    numeric_tangent,
    project_orthogonal,
    pullback_form,
    spin_matrices,
    squeeze_prefactor,
    su2_squeezed_vacuum,
)

PAIRS = ((1 + 0j, 1 + 0j), (1 + 0j, 1j), (1j, 1j))

WH = StateFamily("wh")
SU2_J1 = StateFamily("su2", param=1.0)
SU11_K1 = StateFamily("su11", param=1.0)


# ---------------------------------------------------------------------------
# tangents

def test_wh_tangent_at_origin_is_first_level():
    t = analytic_tangent(WH, TangentSpec(0, 1))
    # |1> plus a norm-derivative term along |0> (zero coefficient here)
    assert t.amps[1] == pytest.approx(1.0)
    assert np.max(np.abs(t.amps[2:])) < 1e-14


def test_su2_tangent_at_origin_is_raising_direction():
    # d/ds D(alpha)|lowest> = -alpha' L+ |lowest> at the origin
    fam = StateFamily("su2", param=0.5)
    t = analytic_tangent(fam, TangentSpec(0, 1))
    spin = spin_matrices(0.5)
    lowest = np.array([0.0, 1.0], dtype=complex)
    expected = -(spin.lplus @ lowest)
    assert np.allclose(t.amps, expected)


def test_zero_direction_gives_zero_tangent():
    for fam in (WH, SU2_J1, SU11_K1, StateFamily("wh", v=0.4)):
        t = analytic_tangent(fam, TangentSpec(0.1, 0))
        assert np.max(np.abs(t.amps)) == 0
        n = numeric_tangent(fam, TangentSpec(0.1, 0), 1e-4)
        assert np.max(np.abs(n.amps)) == 0


def test_numeric_tangent_step_guard():
    with pytest.raises(StepError):
        numeric_tangent(WH, TangentSpec(0, 1), 1e-8)
    with pytest.raises(StepError):
        numeric_tangent(WH, TangentSpec(0, 1), 1e-2)


@pytest.mark.parametrize("fam,base,direction", [
    (WH, 0.3 + 0.4j, 1 + 0j),
    (WH, 0.3 + 0.4j, 1j),
    (SU11_K1, 0.2, 1j),
    (SU11_K1, 0.1 - 0.4j, 1 + 0j),
    (StateFamily("su2", param=1.5), 0.5 + 0.2j, 1 + 0j),
    (StateFamily("wh", v=0.5), 0.4, 1j),
])
def test_numeric_vs_analytic_tangent(fam, base, direction):
    # central difference agrees after projection to O(h^2)
    psi = family_state(fam, base).normalized()
    spec = TangentSpec(base, direction)
    ta = project_orthogonal(psi, analytic_tangent(fam, spec))
    tn = project_orthogonal(psi, numeric_tangent(fam, spec, 1e-4))
    assert np.linalg.norm(ta.amps - tn.amps) < 1e-7


def test_oracle_grid_all_families():
    # 5x5 grids per family; numeric and analytic pullbacks agree to 1e-6
    grids = {
        WH: 1.5, SU2_J1: 1.0, SU11_K1: 0.55,
    }
    for fam, radius in grids.items():
        side = radius / np.sqrt(2)
        for x in np.linspace(-side, side, 5):
            for y in np.linspace(-side, side, 5):
                base = complex(x, y)
                v_num = pullback_form(fam, base, 1, 1j, use_numeric=True).value
                v_ana = pullback_form(fam, base, 1, 1j).value
                assert abs(v_num - v_ana) < 1e-6


# ---------------------------------------------------------------------------
# closed forms and reports

def test_wh_coherent_pullback_grid():
    # the form is exactly conj(u) w at every base point
    for x in np.linspace(-1.4, 1.4, 5):
        for y in np.linspace(-1.4, 1.4, 5):
            rep = pullback_form(WH, complex(x, y), 1, 1j)
            assert rep.reference == 1j
            assert rep.abs_deviation < 1e-8
            assert rep.metric_part == pytest.approx(0.0, abs=1e-8)
            assert rep.symplectic_part == pytest.approx(1.0, abs=1e-8)


def test_wh_squeezed_closed_form_all_pairs():
    for v in (-1.0, -0.5, 0.5, 1.0):
        fam = StateFamily("wh", v=v)
        for (u, w) in PAIRS:
            rep = pullback_form(fam, 0j, u, w)
            assert rep.abs_deviation < 1e-8


def test_wh_squeezed_metric_anisotropy():
    # metric in the real direction scales by e^{2v}
    base_val = pullback_form(WH, 0j, 1, 1).value.real
    for v in (-1.0, -0.5, 0.5, 1.0):
        val = pullback_form(StateFamily("wh", v=v), 0j, 1, 1).value.real
        assert val == pytest.approx(np.exp(2 * v) * base_val, abs=1e-8)


def test_wh_squeezed_symplectic_invariance():
    ref = pullback_form(WH, 0j, 1, 1j).value.imag
    for v in (-1.0, -0.5, 0.0, 0.5, 1.0):
        val = pullback_form(StateFamily("wh", v=v), 0j, 1, 1j).value.imag
        assert val == pytest.approx(ref, abs=1e-8)


def test_su2_symplectic_invariance_of_normalized_bracket():
    # after dividing out -<Lz>, the imaginary part is squeeze-independent
    ref = (pullback_form(SU2_J1, 0j, 1, 1j).value
           / squeeze_prefactor(SU2_J1)).imag
    for v in (-1.0, -0.5, 0.0, 0.5, 1.0):
        fam = StateFamily("su2", v=v, param=1.0)
        val = (pullback_form(fam, 0j, 1, 1j).value
               / squeeze_prefactor(fam)).imag
        assert val == pytest.approx(ref, abs=1e-8)


def test_squeeze_param_exponential():
    from cohgeom import SqueezeParam

    assert SqueezeParam(0.0).lam == 1.0
    assert SqueezeParam(0.5).lam == pytest.approx(np.exp(0.5))
    assert SqueezeParam(-2.0).lam > 0


def test_wh_squeezed_value_translation_invariant():
    # displacements act transitively, so the value matches the origin value
    fam = StateFamily("wh", v=0.5)
    at0 = pullback_form(fam, 0j, 1, 1j).value
    rep = pullback_form(fam, 0.7 + 0.3j, 1, 1j)
    assert rep.reference is None  # no closed-form claim off the origin
    assert abs(rep.value - at0) < 1e-9


def test_su2_closed_form_j_half_v0():
    # prefactor -<Lz> = j = 1/2; bracket at u = w = 1 is 1
    rep = pullback_form(StateFamily("su2", param=0.5), 0j, 1, 1)
    assert rep.reference == pytest.approx(0.5)
    assert rep.abs_deviation < 1e-12


@pytest.mark.parametrize("j,v", [(0.5, 0.0), (1.0, 0.0), (2.0, 0.0),
                                 (1.0, 0.5), (2.0, 0.5)])
def test_su2_closed_form_all_pairs(j, v):
    fam = StateFamily("su2", v=v, param=j)
    pref = squeeze_prefactor(fam)
    for (u, w) in PAIRS:
        rep = pullback_form(fam, 0j, u, w)
        assert rep.abs_deviation < 1e-8
        # normalized bracket matches the quadrature-form expression
        u1, u2, w1, w2 = u.real, u.imag, w.real, w.imag
        bracket = ((u1 * w1 * np.exp(2 * v) + u2 * w2 * np.exp(-2 * v))
                   + 1j * (u1 * w2 - u2 * w1))
        assert rep.value / pref == pytest.approx(bracket, abs=1e-8)


def test_su2_printed_variant_differs_by_v_flip_and_conjugation():
    # the as-printed spin bracket equals the consistent one at -v, conjugated
    fam = StateFamily("su2", v=0.5, param=1.0)
    fam_neg = StateFamily("su2", v=-0.5, param=1.0)
    for (u, w) in PAIRS:
        printed = closed_form(fam, 0j, u, w, variant="printed")
        flipped = np.conj(closed_form(fam_neg, 0j, u, w))
        ratio = squeeze_prefactor(fam) / squeeze_prefactor(fam_neg)
        assert printed == pytest.approx(flipped * ratio, abs=1e-12)


def test_su2_prefactor_is_minus_lz_mean():
    for (j, v) in ((1.0, 0.5), (2.0, 0.3)):
        vac = su2_squeezed_vacuum(v, j)
        lz = spin_matrices(j).lz
        expected = -np.real(np.vdot(vac.amps, lz @ vac.amps))
        assert squeeze_prefactor(StateFamily("su2", v=v, param=j)) == \
            pytest.approx(expected)


def test_su11_closed_form_examples():
    rep = pullback_form(SU11_K1, 0j, 1, 1)
    assert rep.reference == pytest.approx(2.0)
    assert rep.abs_deviation < 1e-10
    # k = 2 at alpha = 0.5: 4/(0.75)^2
    rep = pullback_form(StateFamily("su11", param=2.0), 0.5, 1, 1)
    assert rep.reference == pytest.approx(4.0 / 0.75**2)
    assert rep.abs_deviation / abs(rep.reference) < 1e-9


@pytest.mark.parametrize("k", [0.75, 1.0, 2.0])
def test_su11_relative_accuracy_grid(k):
    fam = StateFamily("su11", param=k)
    side = 0.8 / np.sqrt(2)
    for x in np.linspace(-side, side, 4):
        for y in np.linspace(-side, side, 4):
            base = complex(x, y)
            rep = pullback_form(fam, base, 1, 1j)
            assert rep.abs_deviation / abs(rep.reference) < 1e-6


def test_closed_form_errors():
    with pytest.raises(UnsupportedBasePoint):
        closed_form(StateFamily("wh", v=0.5), 0.3, 1, 1)
    with pytest.raises(UnsupportedBasePoint):
        closed_form(SU2_J1, 0.3, 1, 1)
    with pytest.raises(DomainError):
        closed_form(SU11_K1, 1.2, 1, 1)


def test_truncation_doubling_stability():
    # doubling the basis moves values by less than 10 x the declared budget
    for fam, base in ((WH, 0.8 + 0.3j), (SU11_K1, 0.4 - 0.2j),
                      (StateFamily("su11", param=2.0), 0.55 + 0.2j),
                      (StateFamily("wh", v=0.5), 0j)):
        n = fam.dim(base)
        fam2 = StateFamily(fam.family, fam.v, fam.param, trunc=2 * n)
        for (u, w) in PAIRS:
            v1 = pullback_form(fam, base, u, w).value
            v2 = pullback_form(fam2, base, u, w).value
            assert abs(v1 - v2) < 10 * fam.eps


# ---------------------------------------------------------------------------
# embedding verdicts

def test_verdict_wh_coherent():
    verdict = kahler_verdict(WH)
    assert verdict.is_kahler and verdict.is_symplectic
    assert verdict.max_dev < 1e-8


def test_verdict_wh_squeezed():
    verdict = kahler_verdict(StateFamily("wh", v=0.7))
    assert not verdict.is_kahler
    assert verdict.is_symplectic


def test_verdict_su2_coherent():
    verdict = kahler_verdict(SU2_J1)
    assert verdict.is_kahler and verdict.is_symplectic


def test_verdict_su2_squeezed():
    verdict = kahler_verdict(StateFamily("su2", v=0.5, param=1.0))
    assert not verdict.is_kahler
    assert verdict.is_symplectic


def test_verdict_su11():
    verdict = kahler_verdict(SU11_K1, bases=[0j, 0.3, 0.2 + 0.4j])
    assert verdict.is_kahler and verdict.is_symplectic
