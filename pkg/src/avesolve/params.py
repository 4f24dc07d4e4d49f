"""Closed-form parameter theory for the two AVE iterations.

Everything here is a scalar function of the iteration parameter (omega for
the SOR-like scheme, tau for the fixed-point scheme) and of
nu = ||A^{-1}||_2. The convergence ranges come from requiring the spectral
radius of the 2x2 bounding matrix (W for SOR-like, U for FPI) to stay
below one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BracketFailure, DomainError


@dataclass(frozen=True)
class ParamRange:
    """Open interval of admissible parameters; may be empty."""

    lower: float = 0.0
    upper: float = 0.0
    empty: bool = False

    def __post_init__(self):
        if not self.empty and not self.lower < self.upper:
            raise DomainError("nonempty range requires lower < upper")

    def contains(self, value: float) -> bool:
        return not self.empty and self.lower < value < self.upper


def _check_nu(nu: float) -> None:
    if not 0.0 < nu < 1.0:
        raise DomainError(f"nu = {nu} outside (0, 1); the sufficient theory does not apply")


def range_sor_new(nu: float) -> ParamRange:
    """Admissible omega for the SOR-like iteration: (0, (2 - 2*sqrt(nu)) / (1 - nu))."""
    _check_nu(nu)
    return ParamRange(0.0, (2.0 - 2.0 * math.sqrt(nu)) / (1.0 - nu))


def range_fpi_new(nu: float) -> ParamRange:
    """Admissible tau for the fixed-point iteration: (0, 2 / (nu + 1))."""
    _check_nu(nu)
    return ParamRange(0.0, 2.0 / (nu + 1.0))


def range_fpi_old(nu: float) -> ParamRange:
    """Legacy FPI range; empty once nu >= sqrt(2)/2."""
    _check_nu(nu)
    if nu >= math.sqrt(2.0) / 2.0:
        return ParamRange(empty=True)
    s = math.sqrt(1.0 - nu * nu)
    return ParamRange((1.0 - s) / (1.0 - nu), (1.0 + s) / (1.0 + nu))


def check_kema_condition(omega: float, nu: float) -> bool:
    """Legacy sufficient condition for the SOR-like iteration (quartic in |1-omega|)."""
    if omega <= 0 or nu <= 0:
        raise DomainError("omega and nu must be positive")
    if not omega < 2.0:
        return False
    a = abs(1.0 - omega)
    d = omega * omega * nu
    return a**4 - 3 * a**2 - 2 * a * d - 2 * d**2 + 1 > 0


def rho_W(omega: float, nu: float) -> float:
    """Spectral radius of W = [[|1-w|, w*nu], [w*|1-w|, w^2*nu + |1-w|]]."""
    return 0.5 * g_nu_sor(omega, nu)


def g_nu_sor(omega: float, nu: float) -> float:
    """2 * rho(W) as a function of omega; minimized at omega = 1."""
    if omega <= 0 or nu <= 0:
        raise DomainError("omega and nu must be positive")
    a = abs(1.0 - omega)
    # 4*a*nu + (w*nu)^2 >= 0 for all inputs, so no case split is needed.
    return 2.0 * a + omega * omega * nu + omega * math.sqrt(4.0 * a * nu + omega * omega * nu * nu)


def rho_U(tau: float, nu: float) -> float:
    """Spectral radius of the triangular U: tau*nu + |1 - tau|."""
    if tau <= 0 or nu <= 0:
        raise DomainError("tau and nu must be positive")
    return tau * nu + abs(1.0 - tau)


def optimal_sor(nu: float) -> float:
    """Minimizer of g_nu over the new SOR range; identically 1."""
    _check_nu(nu)
    return 1.0


def optimal_fpi(nu: float) -> float:
    """Minimizer of rho(U) over the new FPI range; identically 1."""
    _check_nu(nu)
    return 1.0


def _g1(omega: float, nu: float) -> float:
    # Derivative-based expression whose root in (0,1) is the prior-work optimum.
    p = 3.0 * (omega - 1.0) ** 2 + 2.0 * nu**2 * omega**4 + 2.0 * nu * omega**2 * (1.0 - omega)
    q = 6.0 * (omega - 1.0) + 8.0 * nu**2 * omega**3 + 2.0 * nu * (2.0 * omega - 3.0 * omega**2)
    return q + (p * q - 8.0 * (omega - 1.0) ** 3) / math.sqrt(p * p - 4.0 * (omega - 1.0) ** 4)


def chen_opt_omega(nu: float, tol: float = 1e-10) -> float:
    """Prior-work optimal omega: 1 for nu <= 1/4, otherwise the bisection root in (0,1)."""
    _check_nu(nu)
    if not 0.0 < tol <= 1e-4:
        raise DomainError("tol must lie in (0, 1e-4]")
    if nu <= 0.25:
        return 1.0
    # Endpoints pulled inside (0,1) to dodge the removable singularity at omega = 1.
    lo, hi = 1e-8, 1.0 - 1e-8
    f_lo, f_hi = _g1(lo, nu), _g1(hi, nu)
    if f_lo * f_hi > 0:
        raise BracketFailure(lo, f_lo, hi, f_hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = _g1(mid, nu)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ParamEnvelope:
    """All ranges and optimal parameters derived from a single nu in (0, 1)."""

    nu: float
    range_sor_new: ParamRange
    range_fpi_new: ParamRange
    range_fpi_old: ParamRange
    omega_nopt: float
    tau_opt: float
    omega_chen_opt: float

    @classmethod
    def from_nu(cls, nu: float) -> "ParamEnvelope":
        _check_nu(nu)
        return cls(
            nu=nu,
            range_sor_new=range_sor_new(nu),
            range_fpi_new=range_fpi_new(nu),
            range_fpi_old=range_fpi_old(nu),
            omega_nopt=optimal_sor(nu),
            tau_opt=optimal_fpi(nu),
            omega_chen_opt=chen_opt_omega(nu),
        )
