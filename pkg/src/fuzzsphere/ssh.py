"""Spin spherical harmonics, their generator matrices, and rotations.

The primary evaluator is the Jacobi-polynomial closed form with the
negative-index reflection folded into the half-power prefactors, so values
stay finite (and correct) at the poles.  The binomial double-sum form is
kept as an independent oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .algebra import binomial, factorial, parity_sign
from .quad import SpherePoint
from .specfun import JacobiParams, jacobi
from .wigner import Su2Element, wigner_D

__all__ = [
    "SshParams",
    "SpherePoint",
    "OperatorMatrix",
    "ssh_eval",
    "ssh_eval_binomial",
    "lambda_matrices",
    "lambda_plus",
    "lambda_minus",
    "rotation_operator",
    "family_rotation_element",
    "ssh_conjugation_check",
]

FOUR_PI = 4 * math.pi

# i**t for twice-valued exponents: realizes (-1)**x exactly at x = t/2.
_QUARTER_PHASES = (1 + 0j, 1j, -1 + 0j, -1j)


def half_power_of_minus_one(twice: int) -> complex:
    """exp(i pi x) for x = twice/2, exact on the unit circle."""
    return _QUARTER_PHASES[twice % 4]


@dataclass(frozen=True)
class SshParams:
    """Spin family labels (2j, 2sigma) plus the free phase angle psi."""

    two_j: int
    two_sigma: int
    psi: float = 0.0

    def __post_init__(self) -> None:
        if self.two_j < 0:
            raise ValueError(f"negative spin 2j={self.two_j}")
        if abs(self.two_sigma) > self.two_j:
            raise ValueError(
                f"|2sigma|={abs(self.two_sigma)} exceeds 2j={self.two_j}"
            )
        if (self.two_j - self.two_sigma) % 2:
            raise ValueError(
                f"2sigma={self.two_sigma} parity differs from 2j={self.two_j}"
            )

    @property
    def is_half_integer(self) -> bool:
        return self.two_j % 2 == 1

    @property
    def dim(self) -> int:
        return self.two_j + 1

    @property
    def phi_period(self) -> float:
        return 4 * math.pi if self.is_half_integer else 2 * math.pi

    def projections(self) -> range:
        """Twice-values of mu from -j to j, ascending."""
        return range(-self.two_j, self.two_j + 1, 2)


class OperatorMatrix:
    """Dense complex operator on the (2j+1)-dimensional spin space.

    Rows and columns are indexed by the magnetic number in ascending order;
    row index = (2mu + 2j)/2.  Instances are treated as immutable values.
    """

    __slots__ = ("two_j", "entries", "hermitian")

    def __init__(self, two_j: int, entries: np.ndarray, hermitian: bool = False):
        dim = two_j + 1
        entries = np.asarray(entries, dtype=complex)
        if entries.shape != (dim, dim):
            raise ValueError(f"expected shape {(dim, dim)}, got {entries.shape}")
        self.two_j = two_j
        self.entries = entries
        self.hermitian = hermitian

    @staticmethod
    def zeros(two_j: int) -> "OperatorMatrix":
        return OperatorMatrix(two_j, np.zeros((two_j + 1, two_j + 1), dtype=complex), True)

    @staticmethod
    def identity(two_j: int) -> "OperatorMatrix":
        return OperatorMatrix(two_j, np.eye(two_j + 1, dtype=complex), True)

    def index_of(self, two_mu: int) -> int:
        if (two_mu + self.two_j) % 2 or abs(two_mu) > self.two_j:
            raise ValueError(f"invalid projection 2mu={two_mu} for 2j={self.two_j}")
        return (two_mu + self.two_j) // 2

    def entry(self, two_mu_row: int, two_mu_col: int) -> complex:
        return complex(self.entries[self.index_of(two_mu_row), self.index_of(two_mu_col)])

    def _wrap(self, arr: np.ndarray, hermitian: bool = False) -> "OperatorMatrix":
        return OperatorMatrix(self.two_j, arr, hermitian)

    def _check(self, other: "OperatorMatrix") -> None:
        if self.two_j != other.two_j:
            raise ValueError(
                f"dimension mismatch: 2j={self.two_j} vs {other.two_j}"
            )

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return self._wrap(self.entries + other.entries)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return self._wrap(self.entries - other.entries)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return self._wrap(self.entries @ other.entries)

    def scaled(self, c: complex) -> "OperatorMatrix":
        return self._wrap(c * self.entries)

    def dagger(self) -> "OperatorMatrix":
        return self._wrap(self.entries.conj().T, self.hermitian)

    def commutator(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        return self._wrap(self.entries @ other.entries - other.entries @ self.entries)

    def max_abs_diff(self, other: "OperatorMatrix") -> float:
        self._check(other)
        return float(np.max(np.abs(self.entries - other.entries)))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries)))

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.entries))

    def operator_norm(self) -> float:
        """Largest singular value by direct dense decomposition."""
        return float(np.linalg.svd(self.entries, compute_uv=False)[0])

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def hermitized(self) -> "OperatorMatrix":
        """Average with the adjoint and flag Hermitian."""
        return self._wrap((self.entries + self.entries.conj().T) / 2.0, True)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def __repr__(self) -> str:
        return f"OperatorMatrix(two_j={self.two_j}, hermitian={self.hermitian})"


def _norm_ratio(two_j: int, two_mu: int, two_sigma: int) -> float:
    """sqrt[(j-mu)!(j+mu)! / ((j-sigma)!(j+sigma)!)], exact under the root."""
    num = factorial((two_j - two_mu) // 2) * factorial((two_j + two_mu) // 2)
    den = factorial((two_j - two_sigma) // 2) * factorial((two_j + two_sigma) // 2)
    return math.sqrt(num / den)


def ssh_eval(params: SshParams, two_mu: int, x: SpherePoint) -> complex:
    """Value of the spin-sigma harmonic with projection mu at x.

    Jacobi-form evaluation; the reflection for negative polynomial indices
    is folded so the half-powers of (1 +- cos theta) keep nonnegative
    exponents and the poles evaluate by their finite limits.
    """
    tj, ts = params.two_j, params.two_sigma
    if (two_mu - tj) % 2:
        raise ValueError(f"2mu={two_mu} parity differs from 2j={tj}")
    if abs(two_mu) > tj:
        raise ValueError(f"|2mu|={abs(two_mu)} exceeds 2j={tj}")

    c = math.cos(x.theta)
    n = (tj - two_mu) // 2
    alpha = (two_mu - ts) // 2
    beta = (two_mu + ts) // 2
    em = alpha  # doubled exponent of (1 - cos theta)
    ep = beta  # doubled exponent of (1 + cos theta)

    factor = 1.0
    # Fold a negative first index: the reflection's ((c-1)/2)^l absorbs the
    # negative (1-c) exponent, leaving (1-c)^(l/2).
    if alpha < 0:
        ell = -alpha
        factor *= (-1) ** ell * 2.0 ** (-ell) * binomial(n + beta, ell) / binomial(n, ell)
        n -= ell
        alpha = ell
        em = ell
    # Fold a negative second index through the parity flip to -c, then the
    # same reflection; (1+c)^(B/2+k) = (1+c)^(k/2).
    negate_arg = False
    if beta < 0:
        k = -beta
        factor *= (-1) ** (n + k) * 2.0 ** (-k) * binomial(n + alpha, k) / binomial(n, k)
        n -= k
        alpha, beta = k, alpha
        ep = k
        negate_arg = True

    arg = -c if negate_arg else c
    poly = jacobi(JacobiParams(n, alpha, beta), arg) if n >= 0 else 0.0
    # 1 -+ cos theta via half angles: exact integer powers, no cancellation
    # at the poles (em, ep are nonnegative after folding).
    sh = math.sin(x.theta / 2.0)
    ch = math.cos(x.theta / 2.0)
    body = factor * poly * 2.0 ** ((em + ep) / 2.0) * sh**em * ch**ep

    phase = (
        half_power_of_minus_one(two_mu)
        * cmath.exp(1j * (ts / 2.0) * params.psi)
        * cmath.exp(1j * (two_mu / 2.0) * x.phi)
    )
    norm = math.sqrt((tj + 1) / FOUR_PI) * _norm_ratio(tj, two_mu, ts) * 2.0 ** (-two_mu / 2.0)
    return phase * norm * body


def ssh_eval_binomial(params: SshParams, two_mu: int, x: SpherePoint) -> complex:
    """Independent binomial-sum evaluator (test oracle).

    The tangent half-angle series is expanded into sin/cos half-angle
    powers, which keeps it regular at both poles.
    """
    tj, ts = params.two_j, params.two_sigma
    if (two_mu - tj) % 2:
        raise ValueError(f"2mu={two_mu} parity differs from 2j={tj}")
    if abs(two_mu) > tj:
        raise ValueError(f"|2mu|={abs(two_mu)} exceeds 2j={tj}")
    j_minus_s = (tj - ts) // 2
    j_plus_s = (tj + ts) // 2
    s_minus_mu = (ts - two_mu) // 2
    ch = math.cos(x.theta / 2.0)
    sh = math.sin(x.theta / 2.0)
    total = 0.0
    for t in range(max(0, -s_minus_mu), min(j_minus_s, (tj + two_mu) // 2) + 1):
        p = 2 * t + s_minus_mu
        coef = binomial(j_minus_s, t) * binomial(j_plus_s, t + s_minus_mu)
        if coef == 0:
            continue
        total += (-1) ** t * coef * ch ** (tj - p) * sh**p
    phase = (
        half_power_of_minus_one(ts)
        * cmath.exp(1j * (ts / 2.0) * params.psi)
        * cmath.exp(1j * (two_mu / 2.0) * x.phi)
    )
    norm = math.sqrt((tj + 1) / FOUR_PI) * _norm_ratio(tj, two_mu, ts)
    return phase * norm * total


def lambda_plus(params: SshParams) -> OperatorMatrix:
    """Raising generator: entries sqrt((j-mu)(j+mu+1)) one below the diagonal
    of the target projection, ascending-mu convention."""
    tj = params.two_j
    m = np.zeros((tj + 1, tj + 1), dtype=complex)
    for col, tmu in enumerate(range(-tj, tj - 1, 2)):
        val = math.sqrt(((tj - tmu) // 2) * ((tj + tmu) // 2 + 1))
        m[col + 1, col] = val
    return OperatorMatrix(tj, m)


def lambda_minus(params: SshParams) -> OperatorMatrix:
    return lambda_plus(params).dagger()


def lambda_matrices(params: SshParams) -> tuple[OperatorMatrix, OperatorMatrix, OperatorMatrix]:
    """Hermitian generators (L1, L2, L3) on the spin-j space."""
    tj = params.two_j
    lp = lambda_plus(params)
    lm = lambda_minus(params)
    l1 = OperatorMatrix(tj, (lp.entries + lm.entries) / 2.0, True)
    l2 = OperatorMatrix(tj, (lp.entries - lm.entries) / 2j, True)
    l3 = OperatorMatrix(
        tj, np.diag([tmu / 2.0 for tmu in params.projections()]).astype(complex), True
    )
    return l1, l2, l3


def rotation_operator(params: SshParams, xi: Su2Element) -> OperatorMatrix:
    """Unitary rotation matrix in the harmonic basis: entries D^j_{nu mu}(xi)."""
    tj = params.two_j
    m = np.empty((tj + 1, tj + 1), dtype=complex)
    for r, tnu in enumerate(params.projections()):
        for c, tmu in enumerate(params.projections()):
            m[r, c] = wigner_D(tj, tnu, tmu, xi)
    return OperatorMatrix(tj, m)


def family_rotation_element(axis, angle: float) -> Su2Element:
    """Group element whose representation matrix moves the harmonic family
    along the rotation (axis, angle): Y_mu(R^T x) = sum_nu Y_nu(x) D_{nu mu}.

    This is the conjugate of the adjoint-action element; the relation is
    exact for sigma = 0 and for rotations about the 3-axis, and holds up to
    a point-dependent spin phase otherwise (an obstruction of the harmonic
    section, not of the representation).  Coherent states and quantized
    operators transform exactly with it for every sigma.
    """
    from .wigner import su2_from_rotation

    return su2_from_rotation(axis, angle).conjugate_element()


def ssh_conjugation_check(params: SshParams, two_mu: int, x: SpherePoint) -> float:
    """Residual of the conjugation symmetry relating (sigma, mu) to
    (-sigma, -mu), evaluated at psi = 0."""
    base = SshParams(params.two_j, params.two_sigma, 0.0)
    flipped = SshParams(params.two_j, -params.two_sigma, 0.0)
    lhs = ssh_eval(base, two_mu, x).conjugate()
    sign = parity_sign((params.two_sigma - two_mu) // 2)
    rhs = sign * ssh_eval(flipped, -two_mu, x)
    return abs(lhs - rhs)
