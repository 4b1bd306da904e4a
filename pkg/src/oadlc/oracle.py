"""Independent reference evaluators used by the test suite.

Two deliberately different code paths from the production models:

* a generic series/parallel spring-network reducer built on exact
  compensated summation, and
* a re-evaluation of the closed-form plate moduli in 50-digit arbitrary
  precision with Horner-form polynomials.

Nothing here is exposed through the CLI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .core import EquivalentModuli, LayerSpec, _unit_lengths
from .errors import DomainError

DPS = 50

SERIES = "series"
PARALLEL = "parallel"


@dataclass(frozen=True)
class SpringChain:
    """An ordered collection of spring stiffnesses with one topology."""

    elements: tuple[float, ...]
    topology: str

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(float(k) for k in self.elements))
        if not self.elements:
            raise DomainError("spring chain must be non-empty")
        if any(not math.isfinite(k) or k <= 0 for k in self.elements):
            raise DomainError("every spring stiffness must be positive")
        if self.topology not in (SERIES, PARALLEL):
            raise DomainError(f"topology must be 'series' or 'parallel', got {self.topology!r}")


def reduce_chain(chain: SpringChain) -> float:
    """Equivalent stiffness of the chain.

    math.fsum is exactly rounded, so the result is independent of element
    order.
    """
    if chain.topology == PARALLEL:
        return math.fsum(chain.elements)
    return 1.0 / math.fsum(1.0 / k for k in chain.elements)


def _moduli_mp(layer: LayerSpec):
    """Closed-form moduli in mp arithmetic (Horner polynomials)."""
    mat = layer.material
    E = mp.mpf(mat.E)
    nu = mp.mpf(mat.nu)
    t = mp.mpf(mat.t)
    W = mp.mpf(layer.W)
    alpha = mp.mpf(layer.alpha)
    if nu >= 1:
        raise DomainError(f"closed forms require nu < 1, got {mat.nu}")
    s = mp.sin(alpha / 2)
    c = mp.cos(alpha / 2)
    t2 = t * t
    W2 = W * W
    one_m_nu2 = (1 - nu) * (1 + nu)

    # 3v^4 + 2v^3 - v - 3 and -v^4 + 2v^3 + 4v^2 - 2v - 3 in Horner form
    p1 = ((3 * nu + 2) * nu * nu - 1) * nu - 3
    p2 = ((((-nu + 2) * nu + 4) * nu - 2) * nu) - 3
    e_cx = E * (t2 * ((nu - 2) * nu - 1) * s) / (p1 * t2 * s * s + p2 * W2 * c)
    e_cy = E * ((nu - 2) * nu - 3) / (4 * (nu * nu - 1) * s)
    e_bx = E * (W2 * (mp.cos(alpha) + 1) * s + t2 * one_m_nu2 * s * s) / (
        2 * one_m_nu2 * (W2 * c * c + t2 * s * s))
    e_by = E * (s + W2 * c * c / (t2 * one_m_nu2 * s))
    return e_cx, e_cy, e_bx, e_by


def reference_moduli(layer: LayerSpec) -> EquivalentModuli:
    """High-precision re-evaluation of the triangular-cell moduli."""
    with mp.workdps(DPS):
        e_cx, e_cy, e_bx, e_by = _moduli_mp(layer)
        return EquivalentModuli(float(e_cx), float(e_cy), float(e_bx), float(e_by))


def reference_layer_inplane(layer: LayerSpec, unit_count: str = "n") -> tuple[float, float]:
    """Brute-force spring reduction of the layer's in-plane stiffness:
    each unit cell becomes one spring, then the generic reducer combines
    them."""
    with mp.workdps(DPS):
        e_cx, e_cy, _, _ = _moduli_mp(layer)
        t = mp.mpf(layer.material.t)
        ws = mp.mpf(layer.W) * mp.sin(mp.mpf(layer.alpha) / 2)
        lengths = _unit_lengths(layer, unit_count)
        chord_units = tuple(float(e_cx * mp.mpf(L) * t / ws) for L in lengths)
        span_units = tuple(float(e_cy * ws * t / mp.mpf(L)) for L in lengths)
    return (reduce_chain(SpringChain(chord_units, SERIES)),
            reduce_chain(SpringChain(span_units, PARALLEL)))


def reference_layer_bending(layer: LayerSpec, unit_count: str = "n") -> tuple[float, float]:
    """Brute-force spring reduction of the layer's bending stiffness."""
    with mp.workdps(DPS):
        _, _, e_bx, e_by = _moduli_mp(layer)
        t3 = mp.mpf(layer.material.t) ** 3
        ws = mp.mpf(layer.W) * mp.sin(mp.mpf(layer.alpha) / 2)
        lengths = _unit_lengths(layer, unit_count)
        chord_units = tuple(float(e_bx * mp.mpf(L) * t3 / (12 * ws)) for L in lengths)
        span_units = tuple(float(e_by * t3 * ws / (12 * mp.mpf(L))) for L in lengths)
    return (reduce_chain(SpringChain(chord_units, SERIES)),
            reduce_chain(SpringChain(span_units, PARALLEL)))


def reference_assembly_inplane(layer1: LayerSpec, layer2: LayerSpec, eta: float,
                               unit_count: str = "n") -> float:
    K_C1, K_S1 = reference_layer_inplane(layer1, unit_count)
    K_C2, K_S2 = reference_layer_inplane(layer2, unit_count)
    c = math.cos(eta)
    s = math.sin(eta)
    return (K_S1 + K_C2) * c * c + (K_S2 + K_C1) * s * s


def reference_assembly_bending(layer1: LayerSpec, layer2: LayerSpec, eta: float,
                               unit_count: str = "n") -> float:
    D_C1, D_S1 = reference_layer_bending(layer1, unit_count)
    D_C2, D_S2 = reference_layer_bending(layer2, unit_count)
    c = math.cos(eta)
    s = math.sin(eta)
    return (D_S1 + D_C2) * c * c + (D_S2 + D_C1) * s * s
