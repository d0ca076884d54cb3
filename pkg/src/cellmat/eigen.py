"""Independent spectral oracles.

Three routes that never share code with the structural reduction: a cyclic
Jacobi eigensolver for symmetric matrices, the Faddeev-LeVerrier trace
recursion for characteristic polynomials, and Durand-Kerner simultaneous
iteration for the roots of small monic polynomials.  The last two compose
into ``eig_small_general``, the solver used on the nonsymmetric core that the
grouped reduction produces.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .cell import PositiveVector, Spectrum, _coerce_vector
from .errors import ConvergenceError, DomainError

__all__ = [
    "Polynomial",
    "PairSums",
    "eig_symmetric",
    "char_poly",
    "poly_roots",
    "eig_small_general",
]

CHAR_POLY_MAX_ORDER = 32


@dataclass(frozen=True)
class Polynomial:
    """Real-coefficient polynomial, coefficients in ascending degree order."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if not coeffs:
            raise DomainError("polynomial needs at least one coefficient")
        if not all(math.isfinite(c) for c in coeffs):
            raise DomainError("polynomial coefficients must be finite")
        if len(coeffs) > 1 and coeffs[-1] == 0.0:
            raise DomainError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1.0

    def __call__(self, z):
        """Horner evaluation at a real or complex point."""
        acc = 0.0 + 0.0j if isinstance(z, complex) else 0.0
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def evaluation_scale(self, z) -> float:
        """Sum of |c_i| |z|^i, a magnitude bound for rounding in __call__."""
        azs = abs(z)
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * azs + abs(c)
        return acc


@dataclass(frozen=True)
class PairSums:
    """The three pairwise sums of a length-3 generating vector.

    For ``a = (a1, a2, a3)``: ``alpha = a1+a2``, ``beta = a1+a3``,
    ``gamma = a2+a3``.  The characteristic polynomial of the 3x3 cell matrix
    is ``x^3 - (alpha^2 + beta^2 + gamma^2) x - 2 alpha beta gamma``.
    """

    alpha: float
    beta: float
    gamma: float

    @classmethod
    def from_vector(cls, x: PositiveVector) -> "PairSums":
        x = _coerce_vector(x)
        if x.n != 3:
            raise DomainError(f"pair sums need a length-3 vector, got length {x.n}")
        a1, a2, a3 = x.entries
        return cls(alpha=a1 + a2, beta=a1 + a3, gamma=a2 + a3)

    def char_poly(self) -> Polynomial:
        a, b, g = self.alpha, self.beta, self.gamma
        return Polynomial((-2.0 * a * b * g, -(a * a + b * b + g * g), 0.0, 1.0))


def _check_symmetric(a: np.ndarray, rtol: float = 1e-12) -> None:
    scale = max(1.0, float(np.abs(a).max()))
    if float(np.abs(a - a.T).max()) > rtol * scale:
        raise DomainError("matrix is not symmetric")


def eig_symmetric(m, tol: float = 1e-12, max_sweeps: int = 50) -> Spectrum:
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius norm drops below
    ``tol * ||M||_F``.  Rotations whose pivot is already below the sweep
    threshold are skipped; a full sweep of skips implies convergence.  Raises
    ``ConvergenceError`` after ``max_sweeps`` sweeps, and cross-checks the
    eigenvalue sum against the trace (1e-10 relative) before returning.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("matrix is not square")
    _check_symmetric(a)
    n = a.shape[0]
    trace = float(np.trace(a))
    fro = float(np.sqrt((a * a).sum()))
    if n == 1 or fro == 0.0:
        return Spectrum(tuple(np.diag(a)))

    goal = tol * fro
    skip = goal / (2.0 * n)
    converged = False
    for _ in range(max_sweeps):
        off = a - np.diag(np.diag(a))
        if float(np.sqrt((off * off).sum())) <= goal:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
    else:
        off = a - np.diag(np.diag(a))
        converged = float(np.sqrt((off * off).sum())) <= goal
    if not converged:
        raise ConvergenceError(
            f"Jacobi iteration did not converge within {max_sweeps} sweeps"
        )
    values = tuple(float(v) for v in np.diag(a))
    drift = abs(sum(values) - trace)
    if drift > 1e-10 * max(1.0, sum(abs(v) for v in values)):
        raise ConvergenceError(
            f"eigenvalue sum drifted from the trace by {drift!r}; input is pathological"
        )
    return Spectrum(values)


def char_poly(m) -> Polynomial:
    """Monic characteristic polynomial ``det(xI - M)`` by the
    Faddeev-LeVerrier trace recursion.

    Guarded to order <= 32: the recursion's coefficients lose accuracy
    rapidly beyond small orders, and every intended caller hands it a small
    core matrix.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("matrix is not square")
    n = a.shape[0]
    if n > CHAR_POLY_MAX_ORDER:
        raise DomainError(f"order {n} exceeds the characteristic-polynomial guard "
                          f"({CHAR_POLY_MAX_ORDER})")
    # p(x) = x^n + c[1] x^(n-1) + ... + c[n]
    c = [0.0] * (n + 1)
    mk = a.copy()
    c[1] = -float(np.trace(mk))
    for k in range(2, n + 1):
        mk = a @ (mk + c[k - 1] * np.eye(n))
        c[k] = -float(np.trace(mk)) / k
    ascending = [c[n - d] for d in range(n)] + [1.0]
    return Polynomial(tuple(ascending))


def _quadratic_roots(b: float, c: float) -> tuple[complex, complex]:
    """Roots of x^2 + bx + c, computed stably."""
    disc = b * b - 4.0 * c
    if disc >= 0.0:
        s = math.sqrt(disc)
        q = -0.5 * (b + math.copysign(s, b)) if b != 0.0 else 0.5 * s
        if q == 0.0:
            return (0.0 + 0.0j, 0.0 + 0.0j)
        return (complex(q), complex(c / q))
    s = math.sqrt(-disc)
    return (complex(-b / 2.0, s / 2.0), complex(-b / 2.0, -s / 2.0))


def poly_roots(p: Polynomial, tol: float = 1e-10, max_iter: int = 500) -> tuple[complex, ...]:
    """All complex roots of a monic polynomial.

    Degrees 1 and 2 use closed forms.  Higher degrees run Durand-Kerner
    simultaneous iteration from a circle of radius ``1 + max|coefficient|``
    (the Cauchy bound) with start angles offset by 0.4 rad to avoid symmetric
    stagnation.  Iterates are polished until every residual satisfies
    ``|p(r)| <= tol * scale(r)`` where ``scale`` bounds Horner rounding;
    raises ``ConvergenceError`` after ``max_iter`` iterations.  Roots are
    returned sorted by (real, imaginary) part.
    """
    if not isinstance(p, Polynomial):
        p = Polynomial(tuple(p))
    if p.degree < 1:
        raise DomainError("root finding needs degree >= 1")
    if not p.is_monic:
        raise DomainError("root finding expects a monic polynomial")
    deg = p.degree
    if deg == 1:
        roots = [complex(-p.coefficients[0])]
    elif deg == 2:
        roots = list(_quadratic_roots(p.coefficients[1], p.coefficients[0]))
    else:
        radius = 1.0 + max(abs(c) for c in p.coefficients[:-1])
        z = [radius * cmath.exp(1j * (2.0 * math.pi * j / deg + 0.4)) for j in range(deg)]
        converged = False
        polish = 0
        for _ in range(max_iter):
            new_z = []
            for j in range(deg):
                denom = 1.0 + 0.0j
                for k in range(deg):
                    if k != j:
                        denom *= z[j] - z[k]
                if denom == 0:
                    denom = complex(1e-300)
                new_z.append(z[j] - p(z[j]) / denom)
            z = new_z
            if converged:
                # two more sweeps after the residual gate: simple roots
                # converge quadratically, so this lands at limiting accuracy
                polish += 1
                if polish >= 2:
                    break
            else:
                converged = all(
                    abs(p(r)) <= tol * max(1.0, p.evaluation_scale(r)) for r in z
                )
        if not converged:
            raise ConvergenceError(
                f"Durand-Kerner did not converge within {max_iter} iterations"
            )
        roots = z
    return tuple(sorted(roots, key=lambda r: (r.real, r.imag)))


def eig_small_general(m, tol: float = 1e-8) -> Spectrum:
    """Real spectrum of a small general matrix via its characteristic polynomial.

    Composes :func:`char_poly` and :func:`poly_roots`, then rejects the input
    if any root carries an imaginary part above ``tol * max(1, |root|)``.
    """
    roots = poly_roots(char_poly(m))
    for r in roots:
        if abs(r.imag) > tol * max(1.0, abs(r)):
            raise DomainError(
                f"matrix has a genuinely complex eigenvalue {r!r}; "
                "no real spectrum exists within tolerance"
            )
    return Spectrum(tuple(r.real for r in roots))
