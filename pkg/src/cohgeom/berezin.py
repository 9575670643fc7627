"""Berezin quantization of the upper half plane through the unit disc.

The half plane maps to the disc by the Cayley transform eps(w) = (w-i)/(w+i).
For 0 < h < 1 the weighted Bergman inner product on disc functions is

    (phi, psi)_D = (1/h - 1) Integral conj(phi) psi (1-|z|^2)^{1/h} dmu,
    dmu = (1/pi) dx dy / (1-|z|^2)^2,

under which the monomial basis

    psi_l(z) = [ (1/h)(1/h + 1)...(1/h - 1 + l) / l! ]^{1/2} z^l

is orthonormal; f_l = psi_l o eps is the corresponding half-plane basis.
Radial quadrature uses Gauss-Jacobi nodes in u = r^2 with the Bergman weight
(1-u)^{1/h-2} built into the rule, so polynomial integrands are integrated
essentially exactly even where the weight exponent is not an integer; the
angular direction is the uniform (trapezoid) rule, exact for trigonometric
polynomials below the node count.  Every inner product is gated by one
refinement doubling.

With the cutoff L, the reproducing kernel and coherent states are

    K_h(p, q)  = sum_l f_l(p) conj(f_l(q)),
    tau_p      = sum_l conj(f_l(p)) f_l = K_h(., p),

the coefficient ordering for tau_p being the one (verified numerically) that
makes (tau_p, f)_H = f(p) with the conjugate-linear-in-first-slot product.

Symbols: the two-point symbol of an operator is (tau_p, A tau_q)_H; both the
raw value and the covariant one (divided by K_h(p, q)) are exposed, and all
semiclassical limits are phrased in the covariant symbol.  The composition
symbol ("star product") satisfies, as h -> 0,

    star12 -> A1 A2            and    star12 - star21 = h {A1, A2}_D + O(h^2),

with {A1, A2}_D = (1-|z|^2)^2 (dzbar A1 dz A2 - dzbar A2 dz A1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln, roots_jacobi

from .errors import DomainError, QuadratureError, TruncationError

__all__ = [
    "BerezinSpace",
    "cayley",
    "cayley_inv",
    "cayley_grid",
    "cayley_inv_grid",
    "basis_coeff",
    "basis_psi",
    "basis_f",
    "disc_inner",
    "halfplane_inner",
    "gram_matrix",
    "kernel",
    "kernel_tail_bound",
    "coherent_coeffs",
    "coherent_state_fn",
    "SymbolPair",
    "symbol",
    "star",
    "toeplitz_operator",
    "poisson_disc",
    "poisson_halfplane",
    "correspondence_report",
]


@dataclass(frozen=True)
class BerezinSpace:
    """Weight parameter, basis cutoff and quadrature configuration.

    0 < h < 1 keeps the weight exponent 1/h - 2 > -1 and the measure finite.
    ``n_radial`` and ``n_angular`` are the base node counts; convergence is
    gated by one doubling against ``quad_tol``.
    """

    h: float
    cutoff: int = 8
    n_radial: int = 64
    n_angular: int = 256
    quad_tol: float = 1e-8
    tail_tol: float = 1e-10

    def __post_init__(self):
        if not (0.0 < self.h < 1.0):
            raise DomainError(f"weight parameter must satisfy 0 < h < 1, got {self.h}")
        if self.cutoff < 1:
            raise DomainError("cutoff must be at least 1")


def cayley(w: complex) -> complex:
    """Half plane to unit disc, (w - i)/(w + i)."""
    w = complex(w)
    if w.imag <= 0:
        raise DomainError(f"point {w} is not in the upper half plane")
    return (w - 1j) / (w + 1j)


def cayley_inv(z: complex) -> complex:
    """Unit disc to half plane, i (1 + z)/(1 - z)."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError(f"point {z} is not in the open unit disc")
    return 1j * (1.0 + z) / (1.0 - z)


def basis_coeff(l: int, h: float) -> float:
    """Normalization sqrt((1/h)_l / l!) of the monomial basis, in log space."""
    ih = 1.0 / h
    return float(np.exp(0.5 * (gammaln(ih + l) - gammaln(ih) - gammaln(l + 1.0))))


def basis_psi(l: int, z, h: float):
    """Disc basis function psi_l(z); accepts scalars or arrays."""
    return basis_coeff(l, h) * np.asarray(z, dtype=complex) ** l


def basis_f(l: int, w: complex, h: float) -> complex:
    """Half-plane basis function f_l = psi_l o cayley."""
    return complex(basis_psi(l, cayley(w), h))


def _radial_rule(h: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for Integral_0^1 (1-u)^{1/h-2} g(u) du (u = r^2)."""
    alpha = 1.0 / h - 2.0
    x, w = roots_jacobi(n, alpha, 0.0)
    u = 0.5 * (x + 1.0)
    w = w * 2.0 ** (-(alpha + 1.0))
    return u, w


def _disc_quadrature(integrand: Callable, space: BerezinSpace,
                     n_radial: int, n_angular: int) -> complex:
    u, wu = _radial_rule(space.h, n_radial)
    theta = 2.0 * np.pi * np.arange(n_angular) / n_angular
    z = np.sqrt(u)[:, None] * np.exp(1j * theta)[None, :]
    vals = np.asarray(integrand(z), dtype=complex)
    angular_mean = vals.mean(axis=1)
    return complex((1.0 / space.h - 1.0) * np.sum(wu * angular_mean))


def disc_inner(phi: Callable, psi: Callable, space: BerezinSpace) -> complex:
    """Weighted Bergman inner product of two disc functions.

    ``phi`` and ``psi`` must accept complex arrays.  The base rule and its
    doubled refinement must agree to ``quad_tol`` or QuadratureError is
    raised; the refined value is returned.
    """
    integrand = lambda z: np.conj(phi(z)) * psi(z)
    coarse = _disc_quadrature(integrand, space, space.n_radial, space.n_angular)
    fine = _disc_quadrature(integrand, space, 2 * space.n_radial, 2 * space.n_angular)
    if abs(fine - coarse) > space.quad_tol:
        raise QuadratureError(
            f"refinement changed the integral by {abs(fine - coarse):.3e} "
            f"(> {space.quad_tol:.1e})")
    return fine


def cayley_grid(w):
    """Vectorized half plane -> disc map (no domain check)."""
    w = np.asarray(w, dtype=complex)
    return (w - 1j) / (w + 1j)


def cayley_inv_grid(z):
    """Vectorized disc -> half plane map (no domain check)."""
    z = np.asarray(z, dtype=complex)
    return 1j * (1.0 + z) / (1.0 - z)


def halfplane_inner(f: Callable, g: Callable, space: BerezinSpace) -> complex:
    """(f, g)_H computed as the disc inner product of the pulled-back pair."""
    return disc_inner(lambda z: f(cayley_inv_grid(z)),
                      lambda z: g(cayley_inv_grid(z)), space)


def gram_matrix(space: BerezinSpace) -> np.ndarray:
    """Gram matrix of the first ``cutoff`` basis functions under quadrature."""
    L = space.cutoff
    G = np.zeros((L, L), dtype=complex)
    for l in range(L):
        for m in range(l, L):
            val = disc_inner(lambda z, l=l: basis_psi(l, z, space.h),
                             lambda z, m=m: basis_psi(m, z, space.h), space)
            G[l, m] = val
            G[m, l] = np.conj(val)
    return G


def _disc_coords(p: complex, q: complex) -> tuple[complex, complex]:
    return cayley(p), cayley(q)


def kernel_tail_bound(p: complex, q: complex, space: BerezinSpace) -> float:
    """Geometric bound on the kernel series tail beyond the cutoff."""
    zp, zq = _disc_coords(p, q)
    r = abs(zp * np.conj(zq))
    if r == 0.0:
        return 0.0
    L = space.cutoff
    t_L = basis_coeff(L, space.h) ** 2 * r**L
    rho = (1.0 / space.h + L) / (L + 1.0) * r
    if rho >= 1.0:
        raise TruncationError(
            f"kernel series not summable at cutoff {L}: ratio {rho:.3f} >= 1")
    return float(t_L / (1.0 - rho))


def _kernel_sum(p: complex, q: complex, space: BerezinSpace) -> complex:
    # the cutoff-model kernel; exact within the truncated space
    zp, zq = _disc_coords(p, q)
    ls = np.arange(space.cutoff)
    c2 = np.exp(gammaln(1.0 / space.h + ls) - gammaln(1.0 / space.h)
                - gammaln(ls + 1.0))
    return complex(np.sum(c2 * (zp * np.conj(zq)) ** ls))


def kernel(p: complex, q: complex, space: BerezinSpace) -> complex:
    """Truncated reproducing kernel K_h(p, q) = sum_l f_l(p) conj(f_l(q)).

    The conjugate acts on the second argument's coefficient functions.
    TruncationError if the geometric tail bound exceeds ``tail_tol``, i.e.
    when the truncation misrepresents the full kernel at these points.
    """
    tail = kernel_tail_bound(p, q, space)
    if tail > space.tail_tol:
        raise TruncationError(
            f"kernel tail bound {tail:.3e} exceeds {space.tail_tol:.1e}; "
            "increase the cutoff")
    return _kernel_sum(p, q, space)


def coherent_coeffs(p: complex, space: BerezinSpace) -> np.ndarray:
    """Coefficients of tau_p in the f_l basis: conj(f_l(p))."""
    zp = cayley(p)
    ls = np.arange(space.cutoff)
    c = np.array([basis_coeff(l, space.h) for l in ls])
    return np.conj(c * zp**ls)


def coherent_state_fn(p: complex, space: BerezinSpace) -> Callable:
    """tau_p as a function on the half plane (vectorized)."""
    coeffs = coherent_coeffs(p, space)
    c = np.array([basis_coeff(l, space.h) for l in range(space.cutoff)])

    def tau(w):
        z = np.asarray(cayley_grid(w), dtype=complex)
        out = np.zeros_like(z)
        for l in range(space.cutoff):
            out = out + coeffs[l] * c[l] * z**l
        return out

    return tau


@dataclass(frozen=True)
class SymbolPair:
    """Raw two-point symbol and its covariant (kernel-normalized) version."""

    raw: complex
    normalized: complex


def symbol(P: np.ndarray, p: complex, q: complex, space: BerezinSpace) -> SymbolPair:
    """Two-point symbol (tau_p, P tau_q)_H of an operator matrix.

    Evaluated exactly in the orthonormal basis (Parseval), which the
    quadrature Gram gate validates independently.  The covariant symbol
    divides by K_h(p, q); for the identity it is exactly 1.
    """
    L = space.cutoff
    if P.shape != (L, L):
        raise ValueError(f"operator must be {L}x{L} for this space")
    vq = coherent_coeffs(q, space)
    vp = coherent_coeffs(p, space)
    raw = complex(np.conj(vp) @ (P @ vq))
    # normalize inside the cutoff model: identity -> exactly 1 at any L
    return SymbolPair(raw, raw / _kernel_sum(p, q, space))


def star(P1: np.ndarray, P2: np.ndarray, p: complex, space: BerezinSpace) -> SymbolPair:
    """Symbol of the composition P1 P2 at the diagonal point (p, p)."""
    return symbol(P1 @ P2, p, p, space)


def toeplitz_operator(g: Callable, space: BerezinSpace) -> np.ndarray:
    """Multiplication-then-project operator with entries (psi_l, g psi_m)_D.

    This is the fixed quantization rule used to build operator families that
    are comparable across different h.  ``g`` takes disc points (arrays).
    """
    L = space.cutoff
    T = np.zeros((L, L), dtype=complex)
    for l in range(L):
        for m in range(L):
            T[l, m] = disc_inner(
                lambda z, l=l: basis_psi(l, z, space.h),
                lambda z, m=m: g(z) * basis_psi(m, z, space.h), space)
    return T


def _wirtinger(A: Callable, z: complex, fd_h: float):
    # dz = (dx - i dy)/2, dzbar = (dx + i dy)/2 by central differences
    ax = (A(z + fd_h) - A(z - fd_h)) / (2.0 * fd_h)
    ay = (A(z + 1j * fd_h) - A(z - 1j * fd_h)) / (2.0 * fd_h)
    return 0.5 * (ax - 1j * ay), 0.5 * (ax + 1j * ay)


def poisson_disc(A1: Callable, A2: Callable, z: complex, fd_h: float = 1e-5) -> complex:
    """Disc Poisson bracket (1-|z|^2)^2 (dzbar A1 dz A2 - dzbar A2 dz A1)."""
    d1, d1b = _wirtinger(A1, z, fd_h)
    d2, d2b = _wirtinger(A2, z, fd_h)
    return complex((1.0 - abs(z) ** 2) ** 2 * (d1b * d2 - d2b * d1))


def poisson_halfplane(P1: Callable, P2: Callable, w: complex,
                      fd_h: float = 1e-5) -> complex:
    """Half-plane bracket 4 (Im w)^2 (dwbar P1 dw P2 - dwbar P2 dw P1)."""
    d1, d1b = _wirtinger(P1, w, fd_h)
    d2, d2b = _wirtinger(P2, w, fd_h)
    return complex(4.0 * w.imag**2 * (d1b * d2 - d2b * d1))


@dataclass(frozen=True)
class CorrespondenceRow:
    h: float
    star12: complex
    star21: complex
    product: complex
    bracket: complex
    dev_product: float
    dev_bracket: float


@dataclass(frozen=True)
class CorrespondenceReport:
    """Semiclassical limits of the star product across an h sequence.

    ``dev_product`` tracks |star12 - A1 A2| (expected O(h)) and
    ``dev_bracket`` tracks |(star12 - star21) - h {A1, A2}_D| (expected
    O(h^2)); ``alt_bracket_devs`` records the same deviation under the
    alternative convention factors {-1, i, -i} multiplying h {.,.}, so the
    adopted factor +1 is falsifiable from the report alone.
    """

    rows: tuple
    order_product: float
    order_bracket: float
    alt_bracket_devs: dict


def _fit_order(hs, devs) -> float:
    hs = np.asarray(hs, float)
    devs = np.asarray(devs, float)
    mask = devs > 0
    if mask.sum() < 2:
        return float("inf")
    slope, _ = np.polyfit(np.log(hs[mask]), np.log(devs[mask]), 1)
    return float(slope)


def correspondence_report(factory1: Callable, factory2: Callable, p: complex,
                          h_values, cutoff: int = 16,
                          fd_h: float = 1e-5) -> CorrespondenceReport:
    """Evaluate both limits of the star product over decreasing h.

    ``factory1/2`` map a BerezinSpace to an operator matrix (the same
    construction rule at every h, e.g. a ``toeplitz_operator`` of a fixed
    disc function).  Covariant symbols are used throughout.  The bracket
    reference uses finite-difference Wirtinger derivatives of the symbols.
    """
    rows = []
    alt = {"-1": [], "i": [], "-i": []}
    zeta = cayley(p)
    for h in h_values:
        space = BerezinSpace(h=h, cutoff=cutoff)
        P1 = factory1(space)
        P2 = factory2(space)
        s12 = star(P1, P2, p, space).normalized
        s21 = star(P2, P1, p, space).normalized
        sym1 = lambda z, P1=P1, space=space: _symbol_at_disc(P1, z, space)
        sym2 = lambda z, P2=P2, space=space: _symbol_at_disc(P2, z, space)
        a1 = sym1(zeta)
        a2 = sym2(zeta)
        pb = poisson_disc(sym1, sym2, zeta, fd_h)
        dev_prod = abs(s12 - a1 * a2)
        dev_br = abs((s12 - s21) - h * pb)
        rows.append(CorrespondenceRow(h, s12, s21, complex(a1 * a2), pb,
                                      dev_prod, dev_br))
        alt["-1"].append(abs((s12 - s21) + h * pb))
        alt["i"].append(abs((s12 - s21) - 1j * h * pb))
        alt["-i"].append(abs((s12 - s21) + 1j * h * pb))
    hs = [r.h for r in rows]
    return CorrespondenceReport(
        rows=tuple(rows),
        order_product=_fit_order(hs, [r.dev_product for r in rows]),
        order_bracket=_fit_order(hs, [r.dev_bracket for r in rows]),
        alt_bracket_devs={k: tuple(v) for k, v in alt.items()},
    )


def _symbol_at_disc(P: np.ndarray, z, space: BerezinSpace):
    """Covariant symbol as a function of the disc coordinate (vectorized)."""
    z = np.asarray(z, dtype=complex)
    ls = np.arange(space.cutoff)
    c = np.exp(0.5 * (gammaln(1.0 / space.h + ls) - gammaln(1.0 / space.h)
                      - gammaln(ls + 1.0)))
    scalar = z.ndim == 0
    zz = z.reshape(-1)
    out = np.zeros_like(zz)
    for i, zi in enumerate(zz):
        f = c * zi**ls  # f_l at this disc point
        out[i] = (f @ (P @ np.conj(f))) / np.sum(c**2 * abs(zi) ** (2 * ls))
    return complex(out[0]) if scalar else out.reshape(z.shape)
