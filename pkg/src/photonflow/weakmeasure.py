"""Calcite weak measurement of the local momentum.

A thin birefringent crystal walks the x-polarized component of the beam
off by a small lateral displacement delta_x while leaving the
y-component in place.  For an analytic field the perturbed components
can be evaluated exactly:

    E'_x(x, z) = e_x psi(x - delta_x, z)
    E'_y(x, z) = e_y psi(x, z)

The polarization pointer is then read out through the normalized Stokes
parameters.  For the default diagonal input e = (1, 1)/sqrt(2), whose
Stokes vector is (0, 1, 0), the first-order response is

    S' ~ (delta_x im_p_x, 1, delta_x re_p_x) / norm,

so dividing the measured S'_3 and S'_1 maps by delta_x reconstructs the
real and imaginary parts of the local momentum's x-component.

In a physical crystal delta_x derives from the birefringent phase
phi(alpha) around the incidence angle alpha0, delta_x = (d phi/d k_x);
no crystal dispersion data is modeled here, so delta_x is taken directly
as input and the overall phase offset is fixed to zero.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegeneratePointerError, ParameterError, SingularPointError
from .fields import FieldSpec, GaussianPairSpec, evaluate
from .observables import ComplexMomentum, PolarizationState


@dataclass(frozen=True)
class CalciteSpec:
    """Pointer displacement and input polarization of the crystal stage."""

    delta_x: float
    pol: PolarizationState = field(default_factory=PolarizationState.linear_diag)

    def __post_init__(self):
        if not math.isfinite(self.delta_x):
            raise ParameterError(f"delta_x must be finite, got {self.delta_x!r}")


@dataclass(frozen=True)
class StokesVector:
    s1: float
    s2: float
    s3: float

    def __post_init__(self):
        for name, value in (("s1", self.s1), ("s2", self.s2), ("s3", self.s3)):
            if not math.isfinite(value) or abs(value) > 1.0 + 1e-9:
                raise ParameterError(f"{name} must lie in [-1, 1], got {value!r}")
        if self.norm_sq > 1.0 + 1e-12:
            raise ParameterError(
                f"Stokes vector norm^2 = {self.norm_sq!r} exceeds 1")

    @property
    def norm_sq(self) -> float:
        return self.s1 ** 2 + self.s2 ** 2 + self.s3 ** 2

    def as_tuple(self) -> tuple:
        return (self.s1, self.s2, self.s3)


def apply_calcite(spec: FieldSpec, cal: CalciteSpec, point):
    """Perturbed field components (E'_x, E'_y) at a point.

    The x-component is evaluated at the laterally shifted position; the
    shift acts on the first coordinate for every family.  Warns when the
    shift is no longer small against a Gaussian field's waist, since the
    first-order readout degrades there.
    """
    if isinstance(spec, GaussianPairSpec) and abs(cal.delta_x) > spec.w0_mm / 100.0:
        warnings.warn(
            f"delta_x = {cal.delta_x} mm exceeds w0/100 = {spec.w0_mm / 100.0} mm; "
            "the first-order Stokes readout may be inaccurate", stacklevel=2)
    coords = np.asarray(point, dtype=float)
    if coords.shape != (spec.ndim,):
        raise ParameterError(
            f"{type(spec).__name__} expects a point with {spec.ndim} coordinates")
    shifted = coords.copy()
    shifted[0] -= cal.delta_x
    ex = cal.pol.ex * evaluate(spec, shifted).psi
    ey = cal.pol.ey * evaluate(spec, coords).psi
    return ex, ey


def exact_stokes(ex: complex, ey: complex) -> StokesVector:
    """Normalized Stokes parameters of a two-component field point."""
    intensity = abs(ex) ** 2 + abs(ey) ** 2
    if intensity == 0.0:
        raise SingularPointError("zero intensity; Stokes parameters undefined")
    cross = ex.conjugate() * ey
    return StokesVector(
        s1=(abs(ex) ** 2 - abs(ey) ** 2) / intensity,
        s2=2.0 * cross.real / intensity,
        s3=2.0 * cross.imag / intensity,
    )


def predicted_stokes(mom: ComplexMomentum, cal: CalciteSpec) -> StokesVector:
    """First-order weak-value prediction for the diagonal input.

    (delta_x im_p_x, 1, delta_x re_p_x) renormalized to unit length, so
    it stays a valid fully-polarized Stokes vector at finite delta_x.
    """
    s1 = cal.delta_x * float(mom.im_p[0])
    s3 = cal.delta_x * float(mom.re_p[0])
    norm = math.sqrt(s1 * s1 + 1.0 + s3 * s3)
    return StokesVector(s1=s1 / norm, s2=1.0 / norm, s3=s3 / norm)


def momentum_from_stokes(s: StokesVector, cal: CalciteSpec):
    """Invert the pointer readout: (re_p_x, im_p_x) = (S'_3, S'_1)/delta_x.

    The reconstructed value is the momentum at the midpoint between the
    shifted and unshifted components, x - delta_x/2; the readout is
    second-order accurate there and only first-order accurate at x.
    """
    if cal.delta_x == 0.0:
        raise DegeneratePointerError("delta_x = 0 cannot be inverted")
    return (s.s3 / cal.delta_x, s.s1 / cal.delta_x)
