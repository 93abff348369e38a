"""
Propagator 1-forms on pairs of points.

Components are returned in the order (d/dx1, d/dy1, d/dx2, d/dy2) for
z1 = x1 + i y1 (edge source) and z2 = x2 + i y2 (edge target).

    STANDARD          (1/2pi) d arg((z1 - z2) / (conj(z1) - z2))
    LOGARITHMIC       (1/2pi i) d log((z1 - z2) / (conj(z1) - z2))
    FOUR_COLORED_LOG  (1/2pi i) d log(A C / (B E)) - (1/pi i) d log|C / E|

with A = z1 - z2, B = conj(z1) - z2, C = conj(z1) + z2, E = z1 + z2 on the
closed first quadrant. The standard form is the real part of the
logarithmic one.
"""
from enum import Enum
from typing import Callable, Dict, List, Tuple

import numpy as np

from errors import DomainError
from .tolerances import BOUNDARY_OFFSET, CLOSEDNESS_STEP

TWO_PI = 2.0 * np.pi

# Derivatives of z1 - z2, conj(z1) - z2, conj(z1) + z2, z1 + z2 along (x1, y1, x2, y2)
D_A = np.array([1.0, 1.0j, -1.0, -1.0j])
D_B = np.array([1.0, -1.0j, -1.0, -1.0j])
D_C = np.array([1.0, -1.0j, 1.0, 1.0j])
D_E = np.array([1.0, 1.0j, 1.0, 1.0j])


class Propagator(Enum):
    STANDARD = "standard"
    LOGARITHMIC = "logarithmic"
    FOUR_COLORED_LOG = "four-colored-log"

    @classmethod
    def from_name(cls, name: str) -> "Propagator":
        aliases = {"log": cls.LOGARITHMIC, "four-colored": cls.FOUR_COLORED_LOG}
        key = name.strip().lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            choices = ", ".join(p.value for p in cls)
            raise DomainError(f"Unknown propagator {name!r}; choose from {choices}") from None


def _dlog(derivative: np.ndarray, value: np.ndarray) -> np.ndarray:
    return derivative * (1.0 / value)[..., None]


def propagator_components(p: Propagator, z1, z2) -> np.ndarray:
    """Vectorized components, shape (..., 4); no domain checks"""
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    log_ratio = _dlog(D_A, z1 - z2) - _dlog(D_B, np.conj(z1) - z2)
    if p is Propagator.STANDARD:
        return log_ratio.imag / TWO_PI
    if p is Propagator.LOGARITHMIC:
        return log_ratio / (TWO_PI * 1j)
    mirror = _dlog(D_C, np.conj(z1) + z2) - _dlog(D_E, z1 + z2)
    return (log_ratio + mirror) / (TWO_PI * 1j) - mirror.real / (np.pi * 1j)


def propagator_value(p: Propagator, z1: complex, z2: complex) -> Tuple[complex, complex, complex, complex]:
    """
    The four components of the 1-form at (z1, z2).

    Raises:
        DomainError: coincident points, points outside the closed upper
            half-plane (first quadrant for FOUR_COLORED_LOG) or z1 = -z2
    """
    z1, z2 = complex(z1), complex(z2)
    if z1 == z2:
        raise DomainError(f"Coincident points z1 = z2 = {z1}")
    if z1.imag < 0 or z2.imag < 0:
        raise DomainError(f"Points must lie in the closed upper half-plane, got {z1}, {z2}")
    if z1.conjugate() == z2:
        raise DomainError(f"Singular configuration conj(z1) = z2 = {z2}")
    if p is Propagator.FOUR_COLORED_LOG:
        if z1.real < 0 or z2.real < 0:
            raise DomainError(f"Points must lie in the closed first quadrant, got {z1}, {z2}")
        if z1 == -z2 or z1.conjugate() == -z2:
            raise DomainError(f"Singular configuration z1 = -z2 at {z1}, {z2}")
    components = propagator_components(p, z1, z2)
    return tuple(complex(c) for c in components)


# ============================================================================
# PROPERTY CHECKS
# ============================================================================

def discrete_curl(p: Propagator, z1: complex, z2: complex, step: float = CLOSEDNESS_STEP) -> float:
    """max |d_a w_b - d_b w_a| over coordinate pairs, by central differences"""
    point = np.array([z1.real, z1.imag, z2.real, z2.imag])

    def components(coords: np.ndarray) -> np.ndarray:
        return propagator_components(p, coords[0] + 1j * coords[1], coords[2] + 1j * coords[3])

    jacobian = np.zeros((4, 4), dtype=complex)  # jacobian[a, b] = d_a w_b
    for a in range(4):
        shift = np.zeros(4)
        shift[a] = step
        jacobian[a] = (components(point + shift) - components(point - shift)) / (2 * step)
    return float(np.max(np.abs(jacobian - jacobian.T)))


def _random_quadrant_point(rng: np.random.Generator) -> complex:
    # at distance >= 1/2 from both axes
    return complex(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0))


def _random_pair(rng: np.random.Generator) -> Tuple[complex, complex]:
    while True:
        u1, u2 = _random_quadrant_point(rng), _random_quadrant_point(rng)
        if abs(u1 - u2) > 0.2:
            return u1, u2


def four_colored_boundary_residuals(
    rng: np.random.Generator, offset: float = BOUNDARY_OFFSET
) -> Dict[str, float]:
    """
    Residuals of the boundary properties of FOUR_COLORED_LOG at one random
    configuration, `offset` away from the boundary:

      collapse-real      both points -> p on R+ with z = p + offset*u:
                         pulled back to (u1, u2) equals LOGARITHMIC(u1, u2)
      collapse-imaginary both points -> ip on iR+ with z = ip - i*offset*u:
                         pulled back equals LOGARITHMIC(u2, u1)
      source-on-real     source on R+: tangential components vanish
      target-on-imag     target on iR+: tangential components vanish
      origin-source / origin-target
                         one point at the origin: the other point's
                         components vanish
      pole               z1 = z2 + rho e^{i phi}: the phi-component tends to
                         1/(2 pi)
    """
    fc = Propagator.FOUR_COLORED_LOG
    residuals: Dict[str, float] = {}

    u1, u2 = _random_pair(rng)
    p = rng.uniform(0.5, 2.0)

    z = propagator_components(fc, p + offset * u1, p + offset * u2)
    pulled = offset * z  # dz/du = offset, coordinates rescale uniformly
    expected = propagator_components(Propagator.LOGARITHMIC, u1, u2)
    residuals["collapse-real"] = float(np.max(np.abs(pulled - expected)))

    z = propagator_components(fc, 1j * p - 1j * offset * u1, 1j * p - 1j * offset * u2)
    # x = offset*t, y = p - offset*s for u = s + i t
    pulled = np.array([-offset * z[1], offset * z[0], -offset * z[3], offset * z[2]])
    swapped = propagator_components(Propagator.LOGARITHMIC, u2, u1)
    expected = np.array([swapped[2], swapped[3], swapped[0], swapped[1]])
    residuals["collapse-imaginary"] = float(np.max(np.abs(pulled - expected)))

    w = _random_quadrant_point(rng)
    z = propagator_components(fc, p + 1j * offset, w)
    residuals["source-on-real"] = float(np.max(np.abs(z[[0, 2, 3]])))

    z = propagator_components(fc, w, offset + 1j * p)
    residuals["target-on-imag"] = float(np.max(np.abs(z[[0, 1, 3]])))

    angle = rng.uniform(0.1, np.pi / 2 - 0.1)
    corner = offset * np.exp(1j * angle)
    residuals["origin-source"] = float(np.max(np.abs(propagator_components(fc, corner, w)[[2, 3]])))
    residuals["origin-target"] = float(np.max(np.abs(propagator_components(fc, w, corner)[[0, 1]])))

    phi = rng.uniform(0.0, 2 * np.pi)
    base = _random_quadrant_point(rng)
    z = propagator_components(fc, base + offset * np.exp(1j * phi), base)
    # d/dphi of z1 = base + rho e^{i phi}: (-rho sin phi, rho cos phi) in (x1, y1)
    along_phi = -offset * np.sin(phi) * z[0] + offset * np.cos(phi) * z[1]
    residuals["pole"] = float(abs(along_phi - 1.0 / TWO_PI))
    return residuals


def pullback_residuals(rng: np.random.Generator, offset: float = BOUNDARY_OFFSET) -> Dict[str, float]:
    """
    STANDARD vanishes when its source approaches R (tangential components
    x1, x2, y2); LOGARITHMIC equals STANDARD when its target approaches R
    (tangential components x1, y1, x2).
    """
    w = complex(rng.uniform(-2, 2), rng.uniform(0.5, 2.0))
    x = rng.uniform(-2, 2)
    z = propagator_components(Propagator.STANDARD, x + 1j * offset, w)
    vanish = float(np.max(np.abs(z[[0, 2, 3]])))
    std = propagator_components(Propagator.STANDARD, w, x + 1j * offset)
    log = propagator_components(Propagator.LOGARITHMIC, w, x + 1j * offset)
    coincide = float(np.max(np.abs((log - std)[[0, 1, 2]])))
    return {"standard-source-on-real": vanish, "log-target-on-real": coincide}


PROPERTY_CHECKS: List[Callable] = [four_colored_boundary_residuals, pullback_residuals]
