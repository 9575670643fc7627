import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_state(rng, dim, basis, tol=1e-12):
    """Random normalized state on the given basis."""
    from cohgeom import StateVector

    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(amps / np.linalg.norm(amps), basis, tol)


class Poly2:
    """Exact bivariate polynomial in (s, t): {(i, j): coeff}.

    Test-side oracle for bracket identities; partial derivatives and products
    are exact, so Jacobi-identity checks carry no differentiation error.
    """

    def __init__(self, coeffs):
        self.coeffs = {k: v for k, v in coeffs.items() if v != 0}

    def __call__(self, s, t):
        return sum(c * s**i * t**j for (i, j), c in self.coeffs.items())

    def d_s(self):
        return Poly2({(i - 1, j): c * i for (i, j), c in self.coeffs.items()
                      if i > 0})

    def d_t(self):
        return Poly2({(i, j - 1): c * j for (i, j), c in self.coeffs.items()
                      if j > 0})

    def __mul__(self, other):
        out = {}
        for (i, j), c in self.coeffs.items():
            for (k, l), d in other.coeffs.items():
                out[(i + k, j + l)] = out.get((i + k, j + l), 0) + c * d
        return Poly2(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) - v
        return Poly2(out)

    def scale(self, c):
        return Poly2({k: c * v for k, v in self.coeffs.items()})

    def as_field(self):
        from cohgeom.sut import Field2D

        ds, dt = self.d_s(), self.d_t()
        return Field2D(value=self, d_s=ds, d_t=dt)


def poly_poisson(f: Poly2, g: Poly2) -> Poly2:
    """Exact orbit bracket t (f_s g_t - f_t g_s) for polynomial fields."""
    t = Poly2({(0, 1): 1.0})
    return t * (f.d_s() * g.d_t() - f.d_t() * g.d_s())
