"""Orthogonal coordinate systems and their measure factors.

A coordinate q_i carries a weight w_i(q_i) so that the volume element
factorizes as sqrt(|g|) = prod_i w_i (positive orthant convention).  The
measure factor of one coordinate is f_i = sqrt(w_i); the drift it induces
in the canonical momentum is g_i = f_i'/f_i = w_i'/(2 w_i).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from .errors import ConfigurationError, SingularityError

__all__ = [
    "Weight",
    "WEIGHTS",
    "CoordinateSpec",
    "CoordinateSystem",
    "MeasureFactor",
    "measure_factor",
    "make_cartesian",
    "make_spherical",
    "make_cylindrical",
    "make_plane_polar",
    "preset_systems",
]

Topology = Literal["line", "half-line", "compact-periodic", "compact-nonperiodic"]
Kind = Literal["linear", "angular"]


@dataclass(frozen=True)
class Weight:
    """A coordinate weight w(q) with its first two derivatives."""

    ident: str
    value: Callable
    deriv: Callable
    second_deriv: Callable


def _w_one(q):
    return q * 0.0 + 1.0


def _w_zero(q):
    return q * 0.0


def _w_q(q):
    return q * 1.0


def _w_q_squared(q):
    return q * q


def _w_two_q(q):
    return 2.0 * q


def _w_two(q):
    return q * 0.0 + 2.0


def _w_sin(q):
    return np.sin(q)


def _w_cos(q):
    return np.cos(q)


def _w_neg_sin(q):
    return -np.sin(q)


WEIGHTS: dict[str, Weight] = {
    "one": Weight("one", _w_one, _w_zero, _w_zero),
    "q": Weight("q", _w_q, _w_one, _w_zero),
    "q^2": Weight("q^2", _w_q_squared, _w_two_q, _w_two),
    "sin": Weight("sin", _w_sin, _w_cos, _w_neg_sin),
}


@dataclass(frozen=True)
class CoordinateSpec:
    """One orthogonal coordinate: domain, topology, weight and kind."""

    name: str
    lower: float
    upper: float
    topology: Topology
    weight: Weight
    kind: Kind

    def __post_init__(self) -> None:
        if not self.lower < self.upper:
            raise ConfigurationError(
                f"coordinate {self.name!r} needs lower < upper, got "
                f"({self.lower}, {self.upper})"
            )
        if self.topology not in ("line", "half-line", "compact-periodic", "compact-nonperiodic"):
            raise ConfigurationError(f"unknown topology {self.topology!r}")
        if self.kind not in ("linear", "angular"):
            raise ConfigurationError(f"unknown coordinate kind {self.kind!r}")


def _encode_bound(value: float):
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


@dataclass(frozen=True)
class CoordinateSystem:
    """An ordered tuple of coordinates making up an orthogonal system."""

    name: str
    coords: tuple[CoordinateSpec, ...]

    @property
    def dim(self) -> int:
        return len(self.coords)

    def volume_weight(self, point: Sequence[float]) -> float:
        """sqrt(|g|) at ``point``: the product of coordinate weights."""
        if len(point) != self.dim:
            raise ConfigurationError(
                f"point has {len(point)} components, system {self.name!r} has {self.dim}"
            )
        out = 1.0
        for spec, q in zip(self.coords, point):
            out *= float(spec.weight.value(q))
        return out

    def to_json_dict(self) -> dict:
        """JSON-safe description; infinite bounds encode as 'inf'/'-inf'."""
        return {
            "name": self.name,
            "coordinates": [
                {
                    "name": s.name,
                    "lower": _encode_bound(s.lower),
                    "upper": _encode_bound(s.upper),
                    "topology": s.topology,
                    "weight": s.weight.ident,
                    "kind": s.kind,
                }
                for s in self.coords
            ],
        }


class MeasureFactor:
    """Measure factor f = sqrt(w) of one coordinate and the drift it induces."""

    def __init__(self, spec: CoordinateSpec):
        self.spec = spec
        self._w = spec.weight

    def value(self, q):
        """f(q) = sqrt(w(q))."""
        return np.sqrt(self._w.value(q))

    def drift(self, q):
        """g(q) = f'/f = w'/(2w); raises where the weight vanishes."""
        w = self._w.value(q)
        if np.any(np.asarray(w) == 0.0):
            raise SingularityError(
                f"drift of coordinate {self.spec.name!r} is singular where the weight vanishes"
            )
        return self._w.deriv(q) / (2.0 * w)

    def drift_deriv(self, q):
        """g'(q) = w''/(2w) - (w')^2/(2 w^2)."""
        w = self._w.value(q)
        if np.any(np.asarray(w) == 0.0):
            raise SingularityError(
                f"drift of coordinate {self.spec.name!r} is singular where the weight vanishes"
            )
        wp = self._w.deriv(q)
        return self._w.second_deriv(q) / (2.0 * w) - wp * wp / (2.0 * w * w)


def measure_factor(spec: CoordinateSpec) -> MeasureFactor:
    """Measure factor object for one coordinate."""
    return MeasureFactor(spec)


def make_cartesian() -> CoordinateSystem:
    """Cartesian (x, y, z): unit weights, zero drift on every axis."""
    axis = lambda nm: CoordinateSpec(nm, -math.inf, math.inf, "line", WEIGHTS["one"], "linear")
    return CoordinateSystem("cartesian", (axis("x"), axis("y"), axis("z")))


def make_spherical() -> CoordinateSystem:
    """Spherical (r, theta, phi): weights r^2, sin(theta), 1."""
    return CoordinateSystem(
        "spherical",
        (
            CoordinateSpec("r", 0.0, math.inf, "half-line", WEIGHTS["q^2"], "linear"),
            CoordinateSpec("theta", 0.0, math.pi, "compact-nonperiodic", WEIGHTS["sin"], "angular"),
            CoordinateSpec("phi", 0.0, 2.0 * math.pi, "compact-periodic", WEIGHTS["one"], "angular"),
        ),
    )


def make_cylindrical() -> CoordinateSystem:
    """Cylindrical (rho, phi, z): weights rho, 1, 1."""
    return CoordinateSystem(
        "cylindrical",
        (
            CoordinateSpec("rho", 0.0, math.inf, "half-line", WEIGHTS["q"], "linear"),
            CoordinateSpec("phi", 0.0, 2.0 * math.pi, "compact-periodic", WEIGHTS["one"], "angular"),
            CoordinateSpec("z", -math.inf, math.inf, "line", WEIGHTS["one"], "linear"),
        ),
    )


def make_plane_polar() -> CoordinateSystem:
    """Plane polar (r, phi): weights r, 1."""
    return CoordinateSystem(
        "plane-polar",
        (
            CoordinateSpec("r", 0.0, math.inf, "half-line", WEIGHTS["q"], "linear"),
            CoordinateSpec("phi", 0.0, 2.0 * math.pi, "compact-periodic", WEIGHTS["one"], "angular"),
        ),
    )


def preset_systems() -> dict[str, CoordinateSystem]:
    """All four built-in systems, keyed by name."""
    systems = (make_cartesian(), make_spherical(), make_cylindrical(), make_plane_polar())
    return {s.name: s for s in systems}
