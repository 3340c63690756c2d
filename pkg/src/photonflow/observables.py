"""Local (weak-value) observables of a field sample.

The complex local momentum is p = -i grad(psi)/psi, reported in rad/mm.
Its real part is the phase gradient that drives trajectories, its
imaginary part the negative log-amplitude gradient.  Poynting quantities
use the uniform-transverse-polarization reduction: the orbital current is
Im[psi* grad psi]/(2 omega), the spin current S3 grad|psi|^2 x z-hat /
(4 omega), and the energy density |psi|^2 / 2, all with omega = k.

Vectors returned by the Poynting routines are always 3-vectors (x, y, z);
planar fields embed with y = 0, which is also where their spin current
lives since nothing depends on y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, SingularPointError
from .fields import FieldSample, FieldSpec, evaluate

# A sample counts as singular when its amplitude is below this fraction of
# the largest amplitude on the active domain.  Grid pipelines pass the
# resulting absolute floor down to the pointwise operations.
SINGULAR_REL_THRESHOLD = 1e-12


def embed3(components, ndim: int) -> np.ndarray:
    """Lift per-coordinate values into an (x, y, z) 3-vector.

    Planar fields order their coordinates (x, z); the missing y slot is
    filled with zeros of matching shape.
    """
    comps = list(components)
    if ndim == 2:
        zero = np.zeros_like(np.asarray(comps[0]))
        comps = [comps[0], zero, comps[1]]
    elif ndim != 3:
        raise ParameterError(f"expected 2 or 3 components, got {ndim}")
    return np.stack([np.asarray(c) for c in comps], axis=-1)


@dataclass(frozen=True)
class PolarizationState:
    """Uniform transverse polarization e = (e_x, e_y), unit norm."""

    ex: complex
    ey: complex

    def __post_init__(self):
        norm_sq = abs(self.ex) ** 2 + abs(self.ey) ** 2
        if abs(norm_sq - 1.0) > 1e-12:
            raise ParameterError(
                f"polarization must be unit norm, got |e|^2 = {norm_sq!r}; "
                "use PolarizationState.of to normalize")

    @classmethod
    def of(cls, ex, ey) -> "PolarizationState":
        norm = math.sqrt(abs(ex) ** 2 + abs(ey) ** 2)
        if norm == 0.0:
            raise ParameterError("polarization vector must be nonzero")
        return cls(complex(ex) / norm, complex(ey) / norm)

    @classmethod
    def linear_diag(cls) -> "PolarizationState":
        return cls.of(1.0, 1.0)

    @classmethod
    def linear_x(cls) -> "PolarizationState":
        return cls(1.0 + 0j, 0j)

    @classmethod
    def linear_y(cls) -> "PolarizationState":
        return cls(0j, 1.0 + 0j)

    @classmethod
    def circular(cls, handedness: int = +1) -> "PolarizationState":
        if handedness not in (+1, -1):
            raise ParameterError("handedness must be +1 or -1")
        return cls.of(1.0, 1j * handedness)

    @property
    def s1(self) -> float:
        return abs(self.ex) ** 2 - abs(self.ey) ** 2

    @property
    def s2(self) -> float:
        return 2.0 * (self.ex.conjugate() * self.ey).real

    @property
    def s3(self) -> float:
        return 2.0 * (self.ex.conjugate() * self.ey).imag

    def stokes(self) -> tuple:
        return (self.s1, self.s2, self.s3)


@dataclass(frozen=True)
class ComplexMomentum:
    """p = -i grad ln psi at one point; p has one entry per coordinate."""

    p: np.ndarray
    k: float

    @property
    def re_p(self) -> np.ndarray:
        """Current part, equal to the phase gradient."""
        return self.p.real

    @property
    def im_p(self) -> np.ndarray:
        """Osmotic part, equal to -grad ln A."""
        return self.p.imag


@dataclass(frozen=True)
class PoyntingDecomposition:
    """Orbital/spin split of the Poynting vector plus the energy density."""

    P_O: np.ndarray
    P_S: np.ndarray
    W: float

    @property
    def P(self) -> np.ndarray:
        return self.P_O + self.P_S


def local_momentum(sample: FieldSample, amp_floor: float = 0.0) -> ComplexMomentum:
    """Complex local momentum of a sample.

    amp_floor is the absolute singularity threshold for this domain
    (typically SINGULAR_REL_THRESHOLD times the domain's peak amplitude);
    at or below it the momentum is undefined and SingularPointError is
    raised rather than returning divergent numbers.
    """
    if sample.amplitude <= amp_floor or sample.amplitude == 0.0:
        raise SingularPointError(
            f"amplitude {sample.amplitude!r} at/below singularity floor {amp_floor!r}")
    return ComplexMomentum(p=-1j * sample.grad_psi / sample.psi, k=sample.k)


def poynting_decomposition(spec: FieldSpec, pol: PolarizationState, point) -> PoyntingDecomposition:
    sample = evaluate(spec, point)
    omega = sample.k  # c = 1
    flux = sample.psi.conjugate() * sample.grad_psi
    p_o = embed3(flux.imag, spec.ndim) / (2.0 * omega)
    grad_i = embed3(2.0 * flux.real, spec.ndim)  # grad |psi|^2
    p_s = pol.s3 * np.array([grad_i[1], -grad_i[0], 0.0]) / (4.0 * omega)
    return PoyntingDecomposition(P_O=p_o, P_S=p_s, W=0.5 * sample.amplitude ** 2)


def momentum_ratio(dec: PoyntingDecomposition, w_floor: float = 0.0) -> np.ndarray:
    """P_O / W; equals re_p/k at every non-singular point."""
    if dec.W <= w_floor or dec.W == 0.0:
        raise SingularPointError(f"energy density {dec.W!r} at/below floor {w_floor!r}")
    return dec.P_O / dec.W


def group_velocity(mom: ComplexMomentum) -> np.ndarray:
    """Local group velocity re_p/k in units of c."""
    return mom.re_p / mom.k
