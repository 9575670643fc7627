"""Pullback of the projective-space Hermitian form along state families.

For a family alpha -> |psi(alpha)> the pushforward of a tangent direction u
at a base point is d/ds |psi(alpha + s u)>.  After projecting orthogonally to
the ray, the Hermitian form

    H(u, w) = <T_u| (1 - |psi><psi|) |T_w>

has the induced metric as its real part and the induced symplectic form as
its imaginary part.

Slot convention (fixed once, used everywhere): the FIRST tangent argument u
sits in the conjugated slot.  Closed forms below are written in that
convention; where the source material orders the slots the other way the
value is the complex conjugate, and ``closed_form(..., variant="printed")``
exposes that reading so the discrepancy is observable rather than silent.

Closed forms at squeeze parameter v (u = u1 + i u2, w = w1 + i w2):

* oscillator, v = 0, any base:     conj(u) w
* oscillator, v != 0, base 0:      (u1 w1 e^{2v} + u2 w2 e^{-2v})
                                     + i (u1 w2 - u2 w1)
* spin-j, base 0:                  prefactor * [same bracket as above],
                                   prefactor = -<0;v| Lz |0;v>
* discrete series k, |base| < 1:   2k conj(u) w / (1 - |base|^2)^2

The spin bracket shares the oscillator's exponent orientation: both families
are derived from the same Bogoliubov identity, and the finite-difference
oracle (``numeric_tangent``) confirms it.  The "printed" spin variant with
e^{-2v} on the (1,1) component corresponds to relabelling v -> -v and is kept
only for reporting.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import expm_frechet
from scipy.special import gammaln

from .errors import DomainError, StepError, UnsupportedBasePoint
from .statespace import (
    PullbackReport,
    StateVector,
    inner,
    project_orthogonal,
)
from .states import (
    ladder_matrices,
    spin_matrices,
    su2_squeezed_vacuum,
    su2_state,
    su11_coherent,
    squeezed_vacuum,
    truncation_dim,
    wh_coherent,
    wh_squeezed,
)

FAMILIES = ("wh", "su2", "su11")

DEFAULT_PAIRS = ((1 + 0j, 1 + 0j), (1 + 0j, 1j), (1j, 1j))


@dataclass(frozen=True)
class StateFamily:
    """A coherent/squeezed embedding family.

    family: "wh" (oscillator), "su2" (spin), "su11" (discrete series).
    v: squeeze parameter (lambda = e^v); ignored for su11.
    param: j for su2, k for su11; unused for wh.
    trunc: number-basis truncation; 0 selects it from the tail budget eps.
    """

    family: str
    v: float = 0.0
    param: float = 0.0
    trunc: int = 0
    eps: float = 1e-12

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "su11" and self.param <= 0.5:
            raise DomainError("su11 family needs k > 1/2")

    def dim(self, base: complex) -> int:
        if self.family == "su2":
            return int(round(2 * self.param)) + 1
        if self.trunc > 0:
            return self.trunc
        # tangent series weigh amplitudes by the level index, so the basis
        # is sized three decades below the declared state budget
        tight = 1e-3 * self.eps
        if self.family == "su11":
            n = truncation_dim(base, "discrete_series", self.param, tight)
        elif self.v == 0.0:
            n = truncation_dim(base, "fock", eps=tight)
        else:
            # amplitude-level budget keeps kernel residuals at ~sqrt(eps)
            n = truncation_dim(base, "squeezed_fock", self.v,
                               eps=np.sqrt(self.eps))
        # headroom for the one-level shift of the derivative itself
        return max(n + 2, 8)


@dataclass(frozen=True)
class TangentSpec:
    """Base point and complex tangent direction d(alpha)/ds."""

    base: complex
    direction: complex


def family_state(fam: StateFamily, base: complex) -> StateVector:
    """The family member at the given base point."""
    base = complex(base)
    N = fam.dim(base)
    if fam.family == "wh":
        if fam.v == 0.0:
            return wh_coherent(base, N, fam.eps)
        return wh_squeezed(base, fam.v, N)
    if fam.family == "su2":
        return su2_state(base, fam.v, fam.param)
    return su11_coherent(base, fam.param, N, fam.eps)


def _wh_coherent_tangent(alpha: complex, u: complex, N: int, eps: float) -> StateVector:
    # term-by-term derivative of the amplitude series; the second piece is
    # the norm-derivative term along the state, removed later by projection
    psi = wh_coherent(alpha, N, eps)
    n = np.arange(N)
    sqrt_fact = np.exp(0.5 * gammaln(n + 1.0))
    deriv = np.zeros(N, dtype=complex)
    if N > 1:
        deriv[1:] = psi.amps[0] * n[1:] * alpha ** (n[1:] - 1) / sqrt_fact[1:]
    amps = u * deriv - np.real(np.conj(alpha) * u) * psi.amps
    return StateVector(amps, psi.basis, psi.tol)


def _su11_tangent(alpha: complex, u: complex, k: float, N: int, eps: float) -> StateVector:
    psi = su11_coherent(alpha, k, N, eps)
    n = np.arange(N)
    b = np.exp(0.5 * (gammaln(n + 2 * k) - gammaln(n + 1.0) - gammaln(2 * k)))
    deriv = np.zeros(N, dtype=complex)
    if N > 1:
        deriv[1:] = b[1:] * n[1:] * alpha ** (n[1:] - 1)
    pref = (1.0 - abs(alpha) ** 2) ** k
    amps = (u * pref * deriv
            - 2.0 * k * np.real(np.conj(alpha) * u) / (1.0 - abs(alpha) ** 2) * psi.amps)
    return StateVector(amps, psi.basis, psi.tol)


def _displaced_generator_tangent(X: np.ndarray, Xdot: np.ndarray,
                                 fiducial: StateVector) -> np.ndarray:
    # d/ds exp(X + s Xdot)|fid> via the Frechet derivative of expm;
    # at the origin this is just Xdot acting on the fiducial vector
    if not np.any(X):
        return Xdot @ fiducial.amps
    _, L = expm_frechet(X, Xdot)
    return L @ fiducial.amps


def analytic_tangent(fam: StateFamily, t: TangentSpec) -> StateVector:
    """Pushforward of the tangent ``t.direction`` at ``t.base``, un-projected.

    Oscillator coherent and disc families differentiate the amplitude series
    term by term; squeezed oscillator and spin families differentiate the
    displacement unitary acting on the fiducial kernel state.
    """
    base, u = complex(t.base), complex(t.direction)
    N = fam.dim(base)
    if fam.family == "wh" and fam.v == 0.0:
        return _wh_coherent_tangent(base, u, N, fam.eps)
    if fam.family == "su11":
        return _su11_tangent(base, u, fam.param, N, fam.eps)
    if fam.family == "wh":
        lad = ladder_matrices(N)
        vac = squeezed_vacuum(fam.v, N)
        X = base * lad.adag - np.conj(base) * lad.a
        Xdot = u * lad.adag - np.conj(u) * lad.a
        return StateVector(_displaced_generator_tangent(X, Xdot, vac),
                           vac.basis, vac.tol)
    spin = spin_matrices(fam.param)
    vac = su2_squeezed_vacuum(fam.v, fam.param)
    X = np.conj(base) * spin.lminus - base * spin.lplus
    Xdot = np.conj(u) * spin.lminus - u * spin.lplus
    return StateVector(_displaced_generator_tangent(X, Xdot, vac),
                       vac.basis, vac.tol)


def numeric_tangent(fam: StateFamily, t: TangentSpec, h: float) -> StateVector:
    """Central-difference tangent (psi(base + h u) - psi(base - h u)) / 2h.

    Independent of ``analytic_tangent``; agrees with it to O(h^2) after both
    are projected orthogonally to the state.  The step must lie in
    [1e-6, 1e-3].
    """
    if not (1e-6 <= h <= 1e-3):
        raise StepError(f"step {h:.2e} outside [1e-6, 1e-3]")
    base, u = complex(t.base), complex(t.direction)
    fam_fixed = replace(fam, trunc=fam.dim(base))
    plus = family_state(fam_fixed, base + h * u)
    minus = family_state(fam_fixed, base - h * u)
    amps = (plus.amps - minus.amps) / (2.0 * h)
    return StateVector(amps, plus.basis, plus.tol)


def squeeze_prefactor(fam: StateFamily) -> float:
    """Overall constant of the family's closed form.

    1 for the oscillator and disc families; -<0;v| Lz |0;v> for spin (equal
    to j at v = 0).
    """
    if fam.family != "su2":
        return 1.0
    vac = su2_squeezed_vacuum(fam.v, fam.param)
    lz = spin_matrices(fam.param).lz
    return float(-np.real(np.vdot(vac.amps, lz @ vac.amps)))


def _squeeze_bracket(v: float, u: complex, w: complex, variant: str) -> complex:
    u1, u2, w1, w2 = u.real, u.imag, w.real, w.imag
    if variant == "consistent":
        return ((u1 * w1 * np.exp(2 * v) + u2 * w2 * np.exp(-2 * v))
                + 1j * (u1 * w2 - u2 * w1))
    if variant == "printed_wh":
        # slot reading (u = prime, w = dot) of the printed oscillator formula
        return ((u1 * w1 * np.exp(2 * v) + u2 * w2 * np.exp(-2 * v))
                + 1j * (w1 * u2 - w2 * u1))
    if variant == "printed_su2":
        # printed spin bracket: exponents mirrored, imaginary part as above
        return ((u1 * w1 * np.exp(-2 * v) + u2 * w2 * np.exp(2 * v))
                + 1j * (u2 * w1 - u1 * w2))
    raise ValueError(f"unknown variant {variant!r}")


def closed_form(fam: StateFamily, base: complex, u: complex, w: complex,
                variant: str = "consistent") -> complex:
    """Closed-form reference for the pullback at ``base``.

    ``variant="consistent"`` (default) is the oracle-validated form in this
    module's slot convention.  ``variant="printed"`` evaluates the bracket
    exactly as printed in the source derivations under the identification
    (u = prime slot, w = dot slot); for the squeezed families it differs by a
    conjugation (oscillator) or a v sign flip plus conjugation (spin), and is
    provided so reports can quantify the difference.

    Squeezed families (oscillator v != 0, and spin) are referenced at the
    origin only; elsewhere UnsupportedBasePoint is raised and callers report
    the computed value with no claim.
    """
    base, u, w = complex(base), complex(u), complex(w)
    if fam.family == "wh":
        if fam.v == 0.0:
            return np.conj(u) * w
        if base != 0:
            raise UnsupportedBasePoint("squeezed reference available at 0 only")
        key = "consistent" if variant == "consistent" else "printed_wh"
        return _squeeze_bracket(fam.v, u, w, key)
    if fam.family == "su2":
        if base != 0:
            raise UnsupportedBasePoint("spin reference available at 0 only")
        key = "consistent" if variant == "consistent" else "printed_su2"
        return squeeze_prefactor(fam) * _squeeze_bracket(fam.v, u, w, key)
    # discrete series
    if abs(base) >= 1.0:
        raise DomainError("disc base point must satisfy |alpha| < 1")
    k = fam.param
    return 2.0 * k * np.conj(u) * w / (1.0 - abs(base) ** 2) ** 2


def pullback_form(fam: StateFamily, base: complex, u: complex, w: complex,
                  use_numeric: bool = False, h: float = 1e-4) -> PullbackReport:
    """Evaluate H(u, w) at ``base`` and compare with the closed form.

    Tangents are always projected orthogonally against the normalized state
    before the inner product, which removes the norm/phase derivative terms
    automatically.  ``use_numeric=True`` swaps in the finite-difference
    tangents (the independent oracle path).
    """
    psi = family_state(fam, base).normalized()
    if use_numeric:
        tu = numeric_tangent(fam, TangentSpec(base, u), h)
        tw = numeric_tangent(fam, TangentSpec(base, w), h)
    else:
        tu = analytic_tangent(fam, TangentSpec(base, u))
        tw = analytic_tangent(fam, TangentSpec(base, w))
    value = inner(project_orthogonal(psi, tu), project_orthogonal(psi, tw))
    try:
        ref = closed_form(fam, base, u, w)
    except UnsupportedBasePoint:
        ref = None
    return PullbackReport.from_value(value, ref)


@dataclass(frozen=True)
class KahlerVerdict:
    """Outcome of the embedding-type check on a sample grid."""

    is_kahler: bool
    is_symplectic: bool
    max_dev: float


def kahler_verdict(fam: StateFamily, bases=None, pairs=DEFAULT_PAIRS,
                   tol: float = 1e-8) -> KahlerVerdict:
    """Decide whether the family embeds symplectically and/or Kahler-ly.

    ``is_symplectic``: the imaginary part matches the v = 0 symplectic
    reference on every sample (after dividing out the family's overall
    constant, which for spin depends on v).  ``is_kahler``: the full complex
    value matches the v = 0 closed form, i.e. metric and symplectic parts are
    mutually compatible.  ``max_dev`` is the worst full-value deviation.
    """
    squeezed = fam.family == "su2" or fam.v != 0.0
    if bases is None:
        bases = [0j] if squeezed else [0j, 0.3 + 0.1j, -0.2 + 0.4j]
    elif squeezed:
        bases = [0j]
    fam0 = replace(fam, v=0.0)
    n_v = squeeze_prefactor(fam)
    n_0 = squeeze_prefactor(fam0)
    dev_full = 0.0
    dev_sympl = 0.0
    for base in bases:
        for (u, w) in pairs:
            val = pullback_form(fam, base, u, w).value / n_v
            ref0 = closed_form(fam0, base, u, w) / n_0
            dev_full = max(dev_full, abs(val - ref0))
            dev_sympl = max(dev_sympl, abs(val.imag - ref0.imag))
    return KahlerVerdict(is_kahler=dev_full < tol,
                         is_symplectic=dev_sympl < tol,
                         max_dev=dev_full)
