"""Equivalent-plate stiffness models for corrugated layers and their
orthogonal double-layer assemblies.

A corrugated sheet with a triangular profile is replaced by a flat plate
with effective membrane moduli (E_cx, E_cy) and bending moduli
(E_bx, E_by).  Layer stiffnesses follow from series/parallel spring
composition over the unit cells, and the two-layer assembly combines the
layers' spanwise/chordwise stiffnesses along an arbitrary in-plane
direction eta.

All quantities are SI.  Angles are radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Lower guard against degenerate (fully closed) folds, radians.
ALPHA_MIN = 1e-9


def sin_half(alpha: float) -> float:
    return math.sin(0.5 * alpha)


def cos_half(alpha: float) -> float:
    # Complement form keeps the flat-sheet limit exact: at alpha == pi the
    # argument is exactly 0, so the fold depth vanishes identically instead
    # of leaving an O(1e-16) residue that gets amplified by (W/t)^2 terms.
    return math.sin(0.5 * (math.pi - alpha))


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def _finite(x) -> bool:
    return isinstance(x, (int, float)) and math.isfinite(x)


@dataclass(frozen=True)
class Material:
    """Isotropic constitutive sheet material.

    E    Young's modulus, Pa
    nu   Poisson's ratio
    t    sheet thickness, m
    rho  density, kg/m^3 (0 allowed when mass is not of interest)
    """

    E: float
    nu: float
    t: float
    rho: float = 0.0

    def __post_init__(self):
        _require(_finite(self.E) and self.E > 0, f"E must be positive, got {self.E}")
        _require(_finite(self.nu) and 0.0 <= self.nu < 0.5,
                 f"nu must be in [0, 0.5), got {self.nu}")
        _require(_finite(self.t) and self.t > 0, f"t must be positive, got {self.t}")
        _require(_finite(self.rho) and self.rho >= 0,
                 f"rho must be non-negative, got {self.rho}")


@dataclass(frozen=True)
class LayerSpec:
    """One corrugated layer: material plus corrugation geometry.

    W              panel width, m
    alpha          fold angle, rad; alpha -> pi is the flat-sheet limit
    n              number of creases (>= 1)
    L              crease lengths, m, one per unit cell (len == n)
    panel_heights  optional developed heights of the n+1 panels, m; when
                   omitted the crease lengths are extended by repeating the
                   last entry (exact for uniform layouts)
    """

    material: Material
    W: float
    alpha: float
    n: int
    L: tuple[float, ...]
    panel_heights: tuple[float, ...] | None = None

    def __post_init__(self):
        _require(isinstance(self.material, Material), "material must be a Material")
        _require(_finite(self.W) and self.W > 0, f"W must be positive, got {self.W}")
        _require(_finite(self.alpha), "alpha must be finite")
        _require(self.alpha > 0, f"alpha must be positive, got {self.alpha}")
        _require(self.alpha <= math.pi,
                 f"alpha must not exceed pi (flat limit), got {self.alpha}")
        if self.alpha < ALPHA_MIN:
            object.__setattr__(self, "alpha", ALPHA_MIN)
        _require(isinstance(self.n, int) and self.n >= 1,
                 f"n must be an integer >= 1, got {self.n}")
        object.__setattr__(self, "L", tuple(float(x) for x in self.L))
        _require(len(self.L) == self.n,
                 f"need exactly n={self.n} crease lengths, got {len(self.L)}")
        _require(all(_finite(x) and x > 0 for x in self.L),
                 "every crease length must be positive")
        if self.panel_heights is not None:
            object.__setattr__(
                self, "panel_heights", tuple(float(x) for x in self.panel_heights))
            _require(len(self.panel_heights) == self.n + 1,
                     f"need n+1={self.n + 1} panel heights, got {len(self.panel_heights)}")
            _require(all(_finite(x) and x > 0 for x in self.panel_heights),
                     "every panel height must be positive")

    def panels(self) -> tuple[float, ...]:
        """Developed heights of the n+1 panels."""
        if self.panel_heights is not None:
            return self.panel_heights
        return self.L + (self.L[-1],)


def square_layer(material: Material, W: float, alpha: float, n: int) -> LayerSpec:
    """Uniform square layout: every crease length equals the folded
    chordwise extent (n+1) * W * sin(alpha/2)."""
    _require(_finite(W) and W > 0, f"W must be positive, got {W}")
    _require(_finite(alpha) and 0 < alpha <= math.pi,
             f"alpha must be in (0, pi], got {alpha}")
    _require(isinstance(n, int) and n >= 1, f"n must be an integer >= 1, got {n}")
    L = (n + 1) * W * sin_half(alpha)
    return LayerSpec(material, W, alpha, n, (L,) * n, panel_heights=(L,) * (n + 1))


def circular_layer(material: Material, W: float, alpha: float, n: int,
                   R: float) -> LayerSpec:
    """Circular layout of radius R: the folded footprint is centered on the
    disk, crease lengths are the chords at the fold lines, and each panel is
    clipped to the chord at its own center."""
    _require(_finite(R) and R > 0, f"R must be positive, got {R}")
    _require(isinstance(n, int) and n >= 1, f"n must be an integer >= 1, got {n}")
    pitch = W * sin_half(alpha)
    span = (n + 1) * pitch
    half = 0.5 * span

    def chord(c: float) -> float:
        d2 = R * R - c * c
        _require(d2 > 0, f"fold layout does not fit the disk (offset {c:.6g} m, R {R:.6g} m)")
        return 2.0 * math.sqrt(d2)

    creases = tuple(chord(j * pitch - half) for j in range(1, n + 1))
    panels = tuple(chord((j - 0.5) * pitch - half) for j in range(1, n + 2))
    return LayerSpec(material, W, alpha, n, creases, panel_heights=panels)


@dataclass(frozen=True)
class EquivalentModuli:
    """Effective moduli of the equivalent flat plate, Pa."""

    E_cx: float
    E_cy: float
    E_bx: float
    E_by: float


@dataclass(frozen=True)
class PlateMatrices:
    """Entries of the in-plane (A, N/m) and bending (D, N*m) stiffness
    matrices of an orthotropic plate.  Off-diagonal symmetry (A21 = A12,
    D21 = D12) is implicit."""

    A11: float
    A12: float
    A22: float
    A66: float
    D11: float
    D12: float
    D22: float
    D66: float

    def __post_init__(self):
        for name in ("A11", "A12", "A22", "A66", "D11", "D12", "D22", "D66"):
            _require(_finite(getattr(self, name)), f"{name} must be finite")
        _require(self.A11 > 0 and self.A11 * self.A22 - self.A12 ** 2 > 0,
                 "A block must be positive definite")
        _require(self.D11 > 0 and self.D11 * self.D22 - self.D12 ** 2 > 0,
                 "D block must be positive definite")


def moduli_from_plate_matrices(p: PlateMatrices, t: float) -> EquivalentModuli:
    """Convert plate-matrix entries to equivalent moduli of a plate of
    thickness t."""
    _require(_finite(t) and t > 0, f"t must be positive, got {t}")
    det_a = p.A11 * p.A22 - p.A12 ** 2
    det_d = p.D11 * p.D22 - p.D12 ** 2
    return EquivalentModuli(
        E_cx=det_a / (t * p.A22),
        E_cy=det_a / (t * p.A11),
        E_bx=12.0 * det_d / (t ** 3 * p.D22),
        E_by=12.0 * det_d / (t ** 3 * p.D11),
    )


def triangular_moduli(layer: LayerSpec) -> EquivalentModuli:
    """Closed-form equivalent moduli of a triangular (V-profile) unit cell."""
    mat = layer.material
    E, nu, t, W, alpha = mat.E, mat.nu, mat.t, layer.W, layer.alpha
    _require(nu < 1.0, f"closed forms require nu < 1, got {nu}")
    s = sin_half(alpha)
    c = cos_half(alpha)
    t2 = t * t
    W2 = W * W
    one_m_nu2 = 1.0 - nu * nu

    E_cx = E * (t2 * (nu ** 2 - 2 * nu - 1) * s) / (
        (3 * nu ** 4 + 2 * nu ** 3 - nu - 3) * t2 * s ** 2
        + (-nu ** 4 + 2 * nu ** 3 + 4 * nu ** 2 - 2 * nu - 3) * W2 * c)
    E_cy = E * (nu ** 2 - 2 * nu - 3) / (4 * (nu ** 2 - 1) * s)
    E_bx = E * (W2 * (math.cos(alpha) + 1) * s + t2 * one_m_nu2 * s ** 2) / (
        2 * one_m_nu2 * (W2 * c ** 2 + t2 * s ** 2))
    E_by = E * (s + W2 * c ** 2 / (t2 * one_m_nu2 * s))
    return EquivalentModuli(E_cx, E_cy, E_bx, E_by)


def _unit_lengths(layer: LayerSpec, unit_count: str) -> tuple[float, ...]:
    """Crease lengths the stiffness sums run over.

    The spring sums run over the n unit cells; the "n+1" convention counts
    one unit per panel instead and repeats the last crease length for the
    extra term (exact for uniform layouts).
    """
    if unit_count == "n":
        return layer.L
    if unit_count == "n+1":
        return layer.L + (layer.L[-1],)
    raise DomainError(f"unit_count must be 'n' or 'n+1', got {unit_count!r}")


def layer_inplane(layer: LayerSpec, unit_count: str = "n") -> tuple[float, float]:
    """In-plane stiffness of one layer: chordwise K_C (unit cells in
    series) and spanwise K_S (unit cells in parallel), N/m."""
    m = triangular_moduli(layer)
    t = layer.material.t
    ws = layer.W * sin_half(layer.alpha)
    lengths = _unit_lengths(layer, unit_count)
    K_C = 1.0 / math.fsum(ws / (m.E_cx * L * t) for L in lengths)
    K_S = math.fsum(m.E_cy * t * ws / L for L in lengths)
    return K_C, K_S


def layer_bending(layer: LayerSpec, unit_count: str = "n") -> tuple[float, float]:
    """Out-of-plane stiffness of one layer: D_C about the chordwise axis
    (series) and D_S about the spanwise axis (parallel), N*m."""
    m = triangular_moduli(layer)
    t3 = layer.material.t ** 3
    ws = layer.W * sin_half(layer.alpha)
    lengths = _unit_lengths(layer, unit_count)
    D_C = 1.0 / math.fsum(12.0 * ws / (m.E_bx * L * t3) for L in lengths)
    D_S = math.fsum(m.E_by * t3 * ws / (12.0 * L) for L in lengths)
    return D_C, D_S


@dataclass(frozen=True)
class Assembly:
    """Two corrugated layers stacked with layer 2's creases orthogonal to
    layer 1's, joined by edge connectors (connector stiffness neglected)."""

    layer1: LayerSpec
    layer2: LayerSpec

    def __post_init__(self):
        _require(isinstance(self.layer1, LayerSpec), "layer1 must be a LayerSpec")
        _require(isinstance(self.layer2, LayerSpec), "layer2 must be a LayerSpec")


def identical_assembly(layer: LayerSpec) -> Assembly:
    return Assembly(layer, layer)


def assembly_inplane(a: Assembly, eta: float, unit_count: str = "n") -> float:
    """In-plane stiffness of the assembly along direction eta (rad,
    pi-periodic; eta = 0 is layer 1's spanwise direction), N/m."""
    K_C1, K_S1 = layer_inplane(a.layer1, unit_count)
    K_C2, K_S2 = layer_inplane(a.layer2, unit_count)
    c = math.cos(eta)
    s = math.sin(eta)
    return (K_S1 + K_C2) * c * c + (K_S2 + K_C1) * s * s


def assembly_bending(a: Assembly, eta: float, unit_count: str = "n") -> float:
    """Out-of-plane stiffness of the assembly about direction eta, N*m."""
    D_C1, D_S1 = layer_bending(a.layer1, unit_count)
    D_C2, D_S2 = layer_bending(a.layer2, unit_count)
    c = math.cos(eta)
    s = math.sin(eta)
    return (D_S1 + D_C2) * c * c + (D_S2 + D_C1) * s * s


def pipeline_K(a: Assembly, eta: float, unit_count: str = "n") -> float:
    """Full in-plane pipeline: moduli -> layer springs -> assembly."""
    return assembly_inplane(a, eta, unit_count)


def pipeline_D(a: Assembly, eta: float, unit_count: str = "n") -> float:
    """Full out-of-plane pipeline: moduli -> layer springs -> assembly."""
    return assembly_bending(a, eta, unit_count)


def folded_dimensions(layer: LayerSpec) -> tuple[float, float]:
    """Folded chordwise extent (n+1) * W * sin(alpha/2) and the folded
    thickness 2 * W * cos(alpha/2) of the double-layer stack, m."""
    return ((layer.n + 1) * layer.W * sin_half(layer.alpha),
            2.0 * layer.W * cos_half(layer.alpha))


def layer_flat_area(layer: LayerSpec) -> float:
    """Developed (laid-flat) sheet area: panel width times each panel's
    height, summed over the n+1 panels, m^2."""
    return layer.W * math.fsum(layer.panels())


def layer_mass(layer: LayerSpec) -> float:
    """Mass of one layer's developed sheet, kg."""
    return layer.material.rho * layer.material.t * layer_flat_area(layer)


def mass(a: Assembly, connector_allowance: float = 0.0) -> float:
    """Assembly mass from developed flat areas, kg.

    connector_allowance adds a fractional margin for the edge connectors,
    which the sheet-area model does not otherwise include.
    """
    _require(_finite(connector_allowance) and connector_allowance >= 0,
             f"connector_allowance must be >= 0, got {connector_allowance}")
    return (1.0 + connector_allowance) * (layer_mass(a.layer1) + layer_mass(a.layer2))


@dataclass(frozen=True)
class StiffnessReport:
    """Full stiffness/mass/geometry summary of an assembly (SI units).

    Per-layer entries are (layer1, layer2) pairs.  folded_length is layer
    1's chordwise extent; folded_thickness is the stacked fold depth
    W1*cos(alpha1/2) + W2*cos(alpha2/2).
    """

    K_C: tuple[float, float]
    K_S: tuple[float, float]
    D_C: tuple[float, float]
    D_S: tuple[float, float]
    K_eta: float
    D_eta: float
    eta: float
    mass: float
    folded_length: float
    folded_thickness: float


def build_report(a: Assembly, eta: float = 0.0, connector_allowance: float = 0.0,
                 unit_count: str = "n") -> StiffnessReport:
    """Evaluate the complete stiffness pipeline for one assembly."""
    K_C1, K_S1 = layer_inplane(a.layer1, unit_count)
    K_C2, K_S2 = layer_inplane(a.layer2, unit_count)
    D_C1, D_S1 = layer_bending(a.layer1, unit_count)
    D_C2, D_S2 = layer_bending(a.layer2, unit_count)
    c = math.cos(eta)
    s = math.sin(eta)
    length1, _ = folded_dimensions(a.layer1)
    thickness = (a.layer1.W * cos_half(a.layer1.alpha)
                 + a.layer2.W * cos_half(a.layer2.alpha))
    return StiffnessReport(
        K_C=(K_C1, K_C2),
        K_S=(K_S1, K_S2),
        D_C=(D_C1, D_C2),
        D_S=(D_S1, D_S2),
        K_eta=(K_S1 + K_C2) * c * c + (K_S2 + K_C1) * s * s,
        D_eta=(D_S1 + D_C2) * c * c + (D_S2 + D_C1) * s * s,
        eta=eta,
        mass=mass(a, connector_allowance),
        folded_length=length1,
        folded_thickness=thickness,
    )
