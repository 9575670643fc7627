"""Operator matrices and coherent / squeezed state constructors.

Three families are covered:

* the oscillator algebra on a truncated number basis (annihilation a with
  a|n> = sqrt(n)|n-1>), with coherent states, the displacement unitary
  D(alpha) = exp(alpha a+ - conj(alpha) a), and squeezed states built as the
  numerical kernel of the Bogoliubov-rotated annihilator
  a_v = cosh(v) a + sinh(v) a+;
* the spin-j algebra, with displaced kernel states of
  L-(v) = e^v Lx - i e^{-v} Ly (the spin analogue of squeezing);
* the positive discrete series labelled by k > 1/2, with disc coherent
  states on |alpha| < 1.

Ladder normalization note: the spin ladder operators exposed here are
L+- = (Lx +- i Ly)/sqrt(2), so [L+, L-] = Lz.  The squeezed combinations
e^v Lx +- i e^{-v} Ly carry no 1/sqrt(2); kernels and ray-level results do
not depend on that overall scale, but matrix elements do, and each function
documents which normalization it uses.

Squeezed fiducial vectors are computed as smallest-singular-value vectors of
the truncated annihilator, normalized with their first nonzero amplitude real
positive so results are deterministic representatives of the ray.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .errors import (
    DimensionTooSmall,
    DomainError,
    InvalidSpin,
    KernelError,
    TruncationError,
)
from .statespace import StateVector, disc_tag, fock_tag, spin_tag

__all__ = [
    "LadderPair",
    "SpinTriple",
    "SqueezeParam",
    "ladder_matrices",
    "spin_matrices",
    "kernel_vector",
    "wh_coherent",
    "wh_displacement",
    "squeezed_vacuum",
    "wh_squeezed",
    "su2_tilde_minus",
    "su2_squeezed_vacuum",
    "su2_displacement",
    "su2_state",
    "su11_coherent",
    "truncation_dim",
]


@dataclass(frozen=True)
class LadderPair:
    """Truncated annihilation / creation pair on an N-level number basis.

    [a, a+] = 1 holds exactly on the span of |0> .. |N-2>; the top row is
    the unavoidable truncation edge.
    """

    dim: int
    a: np.ndarray
    adag: np.ndarray


@dataclass(frozen=True)
class SpinTriple:
    """Hermitian spin-j generators with [Lx, Ly] = i Lz and cyclic.

    Basis ordering is m = j, j-1, ..., -j, so the lowest-weight vector is the
    last basis element.
    """

    j: float
    lx: np.ndarray
    ly: np.ndarray
    lz: np.ndarray

    @property
    def dim(self) -> int:
        return int(round(2 * self.j)) + 1

    @property
    def lplus(self) -> np.ndarray:
        """(Lx + i Ly)/sqrt(2); with lminus satisfies [L+, L-] = Lz."""
        return (self.lx + 1j * self.ly) / np.sqrt(2.0)

    @property
    def lminus(self) -> np.ndarray:
        return (self.lx - 1j * self.ly) / np.sqrt(2.0)


@dataclass(frozen=True)
class SqueezeParam:
    """Squeezing parameter v with lam = e^v (lam real positive)."""

    v: float

    @property
    def lam(self) -> float:
        return float(np.exp(self.v))


def ladder_matrices(N: int) -> LadderPair:
    """Truncated oscillator ladder matrices of dimension N >= 2."""
    if N < 2:
        raise DimensionTooSmall(f"need N >= 2 levels, got {N}")
    a = np.zeros((N, N), dtype=complex)
    n = np.arange(1, N)
    a[n - 1, n] = np.sqrt(n)
    return LadderPair(N, a, a.conj().T)


def spin_matrices(j: float) -> SpinTriple:
    """Standard spin-j representation, dimension 2j+1.

    Raises InvalidSpin unless 2j is a positive integer.
    """
    twoj = 2.0 * j
    if j <= 0 or abs(twoj - round(twoj)) > 1e-12:
        raise InvalidSpin(f"j must be a positive half-integer, got {j}")
    d = int(round(twoj)) + 1
    m = j - np.arange(d)  # m = j .. -j
    lz = np.diag(m).astype(complex)
    jp = np.zeros((d, d), dtype=complex)  # unnormalized raising operator
    for i in range(1, d):
        mm = m[i]
        jp[i - 1, i] = np.sqrt(j * (j + 1) - mm * (mm + 1))
    jm = jp.conj().T
    lx = (jp + jm) / 2.0
    ly = (jp - jm) / 2.0j
    return SpinTriple(float(j), lx, ly, lz)


def _fix_phase(x: np.ndarray) -> np.ndarray:
    """Rotate a vector so its first nonzero amplitude is real positive."""
    idx = np.flatnonzero(np.abs(x) > 1e-10 * np.max(np.abs(x)))
    if idx.size == 0:
        return x
    return x * np.exp(-1j * np.angle(x[idx[0]]))


def kernel_vector(M: np.ndarray, rtol: float = 1e-8) -> tuple[np.ndarray, float]:
    """Unit vector spanning the numerical kernel of M, plus its residual.

    The kernel is accepted when the smallest singular value is below
    rtol * sigma_max and the next one is well separated; otherwise the kernel
    is empty or more than one-dimensional and KernelError is raised.
    """
    s = np.linalg.svd(M, compute_uv=False)
    smax = s[0]
    if smax == 0.0:
        raise KernelError("matrix is identically zero, kernel is everything")
    if s[-1] > rtol * smax:
        raise KernelError(
            f"no kernel within tolerance: sigma_min/sigma_max = {s[-1] / smax:.3e}"
        )
    if len(s) > 1 and s[-2] <= 10.0 * rtol * smax:
        raise KernelError(
            f"kernel not one-dimensional: next singular value ratio "
            f"{s[-2] / smax:.3e}"
        )
    _, _, vh = np.linalg.svd(M)
    x = _fix_phase(vh[-1].conj())
    return x, float(np.linalg.norm(M @ x))


def wh_coherent(alpha: complex, N: int, tol: float = 1e-12) -> StateVector:
    """Oscillator coherent state on an N-level number basis.

    Amplitudes are exp(-|alpha|^2/2) alpha^n / sqrt(n!), built by the stable
    recurrence c_n = c_{n-1} alpha / sqrt(n).  The dropped tail mass equals
    the norm deficit; TruncationError if it exceeds ``tol``.
    """
    alpha = complex(alpha)
    if N < 1:
        raise DimensionTooSmall("need at least one level")
    c = np.zeros(N, dtype=complex)
    c[0] = np.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, N):
        c[n] = c[n - 1] * alpha / np.sqrt(n)
    tail = max(0.0, 1.0 - float(np.sum(np.abs(c) ** 2)))
    if tail > tol:
        raise TruncationError(
            f"tail mass {tail:.3e} exceeds budget {tol:.1e} at N = {N}; "
            f"need N >= {truncation_dim(alpha, 'fock', eps=tol)}"
        )
    return StateVector(c, fock_tag(), tol)


def wh_displacement(alpha: complex, N: int, tol: float = 1e-12) -> np.ndarray:
    """Displacement unitary exp(alpha a+ - conj(alpha) a) on N levels.

    Exactly unitary (matrix exponential of a skew-Hermitian matrix); agrees
    with the true displacement on the well-truncated block.  TruncationError
    if N is below the coherent tail budget for this alpha.
    """
    alpha = complex(alpha)
    if N < truncation_dim(alpha, "fock", eps=tol):
        raise TruncationError(
            f"N = {N} below the tail budget for |alpha| = {abs(alpha):.3f}"
        )
    lad = ladder_matrices(N)
    return expm(alpha * lad.adag - np.conj(alpha) * lad.a)


def squeezed_vacuum(v: float, N: int, ktol: float = 1e-8, tol: float = 1e-12) -> StateVector:
    """Kernel state of the truncated a_v = cosh(v) a + sinh(v) a+.

    Computed as the smallest-singular-value vector, so it is self-validating:
    ``|a_v psi|`` equals the returned state's kernel residual.  Supported only
    on even number states (parity is conserved by a_v).
    """
    lad = ladder_matrices(N)
    av = np.cosh(v) * lad.a + np.sinh(v) * lad.adag
    x, _resid = kernel_vector(av, rtol=ktol)
    return StateVector(x, fock_tag(), tol)


def wh_squeezed(alpha: complex, v: float, N: int, ktol: float = 1e-8,
                tol: float = 1e-12) -> StateVector:
    """Displaced squeezed state D(alpha) |0; v> on N levels.

    |0; v> is the numerical kernel of cosh(v) a + sinh(v) a+.  For v = 0 this
    reduces to the coherent state.  The condition-number guard |v| <= 2 keeps
    the kernel resolvable at desk-scale N.
    """
    if abs(v) > 2.0:
        raise DomainError(f"|v| = {abs(v):.2f} exceeds the guard |v| <= 2")
    vac = squeezed_vacuum(v, N, ktol=ktol, tol=tol)
    if alpha == 0:
        return vac
    D = wh_displacement(alpha, N, tol=tol)
    return StateVector(D @ vac.amps, fock_tag(), tol)


def su2_tilde_minus(spin: SpinTriple, v: float) -> np.ndarray:
    """Squeezed lowering combination e^v Lx - i e^{-v} Ly.

    Equals sqrt(2) (sinh v L+ + cosh v L-) in the normalized-ladder
    convention; the scale does not affect its kernel.
    """
    return np.exp(v) * spin.lx - 1j * np.exp(-v) * spin.ly


def su2_squeezed_vacuum(v: float, j: float, ktol: float = 1e-8) -> StateVector:
    """Kernel state of e^v Lx - i e^{-v} Ly in the spin-j representation.

    At v = 0 this is the lowest-weight state.  For v != 0 a kernel exists
    only for integer j: the operator maps the even-m sector onto the smaller
    odd-m sector.  Half-integer j with v != 0 raises KernelError.
    """
    spin = spin_matrices(j)
    x, _resid = kernel_vector(su2_tilde_minus(spin, v), rtol=ktol)
    return StateVector(x, spin_tag(j))


def su2_displacement(alpha: complex, j: float) -> np.ndarray:
    """Spin displacement exp(conj(alpha) L- - alpha L+), L+- normalized."""
    spin = spin_matrices(j)
    return expm(np.conj(alpha) * spin.lminus - alpha * spin.lplus)


def su2_state(alpha: complex, v: float, j: float, ktol: float = 1e-8) -> StateVector:
    """Displaced spin kernel state D(alpha) |0; v> (exact finite-dim expm).

    v = 0 yields the standard spin coherent state attached to the lowest
    weight.  Displacement is unitary, so the result is normalized exactly.
    """
    vac = su2_squeezed_vacuum(v, j, ktol=ktol)
    if alpha == 0:
        return vac
    return StateVector(su2_displacement(alpha, j) @ vac.amps, spin_tag(j))


def _su11_log_coeffs(k: float, N: int) -> np.ndarray:
    # sqrt(Gamma(n+2k) / (n! Gamma(2k))) in log space
    n = np.arange(N)
    return 0.5 * (gammaln(n + 2.0 * k) - gammaln(n + 1.0) - gammaln(2.0 * k))


def su11_coherent(alpha: complex, k: float, N: int, tol: float = 1e-12) -> StateVector:
    """Disc coherent state of the positive discrete series, k > 1/2.

    Amplitudes (1-|alpha|^2)^k [Gamma(n+2k)/(n! Gamma(2k))]^{1/2} alpha^n on
    the basis |n, k>; requires |alpha| < 1.  The binomial identity
    sum Gamma(n+2k)/(n! Gamma(2k)) x^n = (1-x)^{-2k} makes the dropped tail
    mass equal to the norm deficit, checked against ``tol``.
    """
    alpha = complex(alpha)
    if abs(alpha) >= 1.0:
        raise DomainError(f"|alpha| = {abs(alpha):.4f} outside the unit disc")
    if k <= 0.5:
        raise DomainError(f"discrete-series label must satisfy k > 1/2, got {k}")
    if N < 1:
        raise DimensionTooSmall("need at least one level")
    b = np.exp(_su11_log_coeffs(k, N))
    n = np.arange(N)
    c = (1.0 - abs(alpha) ** 2) ** k * b * alpha**n
    tail = max(0.0, 1.0 - float(np.sum(np.abs(c) ** 2)))
    if tail > tol:
        raise TruncationError(
            f"tail mass {tail:.3e} exceeds budget {tol:.1e} at N = {N}; "
            f"need N >= {truncation_dim(alpha, 'discrete_series', k, eps=tol)}"
        )
    return StateVector(c, disc_tag(k), tol)


def truncation_dim(alpha: complex, family: str, param: float = 0.0,
                   eps: float = 1e-12) -> int:
    """Smallest N whose analytically bounded tail beyond N is below eps.

    Families:

    * ``"fock"``: coherent amplitudes; the bound is on tail *mass* (norm
      deficit), via the geometric bound t_N / (1 - r_N) once the term ratio
      r = |alpha|^2/(n+1) drops below 1.
    * ``"discrete_series"`` (param = k): same mass bound with ratio
      |alpha|^2 (n+2k)/(n+1), decreasing for k > 1/2.
    * ``"squeezed_fock"`` (param = v): bound on the *amplitude* scale of the
      kernel-vector tail (|c_{2m}| <= tanh|v|^m), sized so the eigenvalue
      residual of the kernel state is ~eps, plus the coherent budget for the
      displacement.  Residuals, not norm deficits, are what truncation harms
      for kernel states (their SVD vector is normalized exactly).
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    x = abs(complex(alpha)) ** 2

    if family == "fock":
        if x == 0.0:
            return 1
        t = np.exp(-x)
        n = 0
        while True:
            t_next = t * x / (n + 1)
            r = x / (n + 2)
            if t_next == 0.0 or (r < 1.0 and t_next / (1.0 - r) < eps):
                return n + 1
            t = t_next
            n += 1

    if family == "discrete_series":
        k = param
        if k <= 0.5:
            raise DomainError(f"need k > 1/2, got {k}")
        if x >= 1.0:
            raise DomainError("discrete-series states require |alpha| < 1")
        if x == 0.0:
            return 1
        t = (1.0 - x) ** (2.0 * k)
        n = 0
        while True:
            t_next = t * x * (n + 2.0 * k) / (n + 1)
            r = x * (n + 1 + 2.0 * k) / (n + 2)
            if t_next == 0.0 or (r < 1.0 and t_next / (1.0 - r) < eps):
                return n + 1
            t = t_next
            n += 1

    if family == "squeezed_fock":
        v = abs(param)
        tau = np.tanh(v)
        n_sq = 2
        if tau > 0.0:
            m = 1
            while np.sinh(v) * np.sqrt(2.0 * m + 2.0) * tau**m >= eps:
                m += 1
            n_sq = 2 * m + 2
        n_coh = truncation_dim(alpha, "fock", eps=eps) if x > 0 else 1
        return n_sq + n_coh + 8  # margin for displacement spreading

    raise ValueError(f"unknown family {family!r}")
