"""Configuration ingestion for the CLI.

One YAML file with nested blocks; every physical quantity carries its unit
in the key name (W_mm, E_GPa, D_min_mNm, ...) because unit mix-ups are the
dominant failure mode in this domain.  Unknown keys are rejected.  CLI
`--set section.key=value` overrides file values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import yaml

from . import units
from .core import Assembly, LayerSpec, Material, circular_layer, square_layer
from .errors import ConfigError, DomainError
from .optimize import CIRCULAR, SQUARE, DesignConstraints
from .pattern import MOUNTAIN, VALLEY

# The validation fixture material (a 0.125 mm polyester film); its density
# is a typical datasheet value, not a measured one.
DEFAULT_MATERIAL = {"E_GPa": 2.7, "nu": 0.43, "t_mm": 0.125, "rho_g_cm3": 1.39}

DEFAULT_W_BOUNDS_MM = (1.0, 50.0)
DEFAULT_N_BOUNDS = (1, 200)
DEFAULT_ALPHA_BOUNDS_DEG = (5.0, 175.0)

SWEEP_KEYS = ("W_mm", "n", "alpha_deg")


@dataclass(frozen=True)
class AssemblyConfig:
    """Geometry of one (identical-layer) assembly, SI units."""

    W: float
    alpha: float
    n: int
    eta: float
    layout: str
    R: float | None

    def build_layer(self, material: Material) -> LayerSpec:
        if self.layout == CIRCULAR:
            return circular_layer(material, self.W, self.alpha, self.n, self.R)
        return square_layer(material, self.W, self.alpha, self.n)

    def build(self, material: Material) -> Assembly:
        layer = self.build_layer(material)
        return Assembly(layer, layer)


@dataclass(frozen=True)
class ModelConfig:
    unit_count: str = "n"
    connector_allowance: float = 0.0


@dataclass(frozen=True)
class SweepConfig:
    vary: str
    values: tuple


@dataclass(frozen=True)
class OutputConfig:
    out_dir: str = "out"
    tabs: bool = True
    tab_depth_mm: float = 5.0
    start_crease: str = MOUNTAIN
    kerf_mm: float = 0.0
    emit_csv: bool = False


@dataclass(frozen=True)
class DesignConfig:
    material: Material
    assembly: AssemblyConfig | None
    constraints: DesignConstraints | None
    model: ModelConfig
    sweep: SweepConfig | None
    output: OutputConfig
    resolved: dict  # defaults materialized, I/O units; embedded in records


class _Block:
    """One mapping block with typed, unit-checked key access."""

    def __init__(self, name: str, data: dict | None):
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError(f"{name}: expected a mapping, got {type(data).__name__}")
        self.name = name
        self.data = dict(data)

    def _get(self, key, default, required):
        if key in self.data:
            return self.data.pop(key)
        if required:
            raise ConfigError(f"{self.name}.{key}: required key missing")
        return default

    def num(self, key, default=None, required=False, minimum=None):
        v = self._get(key, default, required)
        if v is None:
            return None
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ConfigError(f"{self.name}.{key}: expected a finite number, got {v!r}")
        if minimum is not None and v < minimum:
            raise ConfigError(f"{self.name}.{key}: must be >= {minimum}, got {v}")
        return float(v)

    def integer(self, key, default=None, required=False, minimum=None):
        v = self._get(key, default, required)
        if v is None:
            return None
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"{self.name}.{key}: expected an integer, got {v!r}")
        if minimum is not None and v < minimum:
            raise ConfigError(f"{self.name}.{key}: must be >= {minimum}, got {v}")
        return v

    def text(self, key, default=None, required=False, choices=None):
        v = self._get(key, default, required)
        if v is None:
            return None
        if not isinstance(v, str):
            raise ConfigError(f"{self.name}.{key}: expected a string, got {v!r}")
        if choices is not None and v not in choices:
            raise ConfigError(f"{self.name}.{key}: expected one of {choices}, got {v!r}")
        return v

    def boolean(self, key, default=None):
        v = self._get(key, default, False)
        if not isinstance(v, bool):
            raise ConfigError(f"{self.name}.{key}: expected true/false, got {v!r}")
        return v

    def pair(self, key, default=None, integer=False):
        v = self._get(key, default, False)
        if v is None:
            return None
        if isinstance(v, tuple):
            v = list(v)
        if not isinstance(v, list) or len(v) != 2:
            raise ConfigError(f"{self.name}.{key}: expected a [lo, hi] pair, got {v!r}")
        out = []
        for item in v:
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise ConfigError(f"{self.name}.{key}: expected numbers, got {item!r}")
            if integer and not isinstance(item, int):
                raise ConfigError(f"{self.name}.{key}: expected integers, got {item!r}")
            out.append(item if integer else float(item))
        return tuple(out)

    def values_list(self, key, required=False):
        v = self._get(key, None, required)
        if v is None:
            return None
        if not isinstance(v, list) or not v:
            raise ConfigError(f"{self.name}.{key}: expected a non-empty list, got {v!r}")
        for item in v:
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise ConfigError(f"{self.name}.{key}: expected numbers, got {item!r}")
        return tuple(v)

    def finish(self):
        if self.data:
            unknown = ", ".join(sorted(self.data))
            raise ConfigError(f"{self.name}: unknown key(s): {unknown}")


def _parse_material(block: _Block) -> tuple[Material, dict]:
    e_gpa = block.num("E_GPa", DEFAULT_MATERIAL["E_GPa"])
    nu = block.num("nu", DEFAULT_MATERIAL["nu"])
    t_mm = block.num("t_mm", DEFAULT_MATERIAL["t_mm"])
    rho = block.num("rho_g_cm3", DEFAULT_MATERIAL["rho_g_cm3"])
    block.finish()
    try:
        material = Material(E=units.gpa_to_pa(e_gpa), nu=nu,
                            t=units.mm_to_m(t_mm), rho=units.g_cm3_to_kg_m3(rho))
    except DomainError as err:
        raise ConfigError(f"material: {err}") from err
    return material, {"E_GPa": e_gpa, "nu": nu, "t_mm": t_mm, "rho_g_cm3": rho}


def _parse_assembly(block: _Block) -> tuple[AssemblyConfig, dict]:
    w_mm = block.num("W_mm", required=True)
    n = block.integer("n", required=True, minimum=1)
    alpha_deg = block.num("alpha_deg", required=True)
    eta_deg = block.num("eta_deg", 0.0)
    layout = block.text("layout", SQUARE, choices=(SQUARE, CIRCULAR))
    r_mm = block.num("R_mm")
    block.finish()
    if layout == CIRCULAR and r_mm is None:
        raise ConfigError("assembly.R_mm: required for the circular layout")
    cfg = AssemblyConfig(
        W=units.mm_to_m(w_mm),
        alpha=units.deg_to_rad(alpha_deg),
        n=n,
        eta=units.deg_to_rad(eta_deg),
        layout=layout,
        R=units.mm_to_m(r_mm) if r_mm is not None else None,
    )
    resolved = {"W_mm": w_mm, "n": n, "alpha_deg": alpha_deg, "eta_deg": eta_deg,
                "layout": layout}
    if r_mm is not None:
        resolved["R_mm"] = r_mm
    return cfg, resolved


def _parse_constraints(block: _Block) -> tuple[DesignConstraints, dict]:
    l_fab = block.num("L_fab_mm", required=True, minimum=0.0)
    l_min = block.num("L_min_mm", required=True, minimum=0.0)
    l_max = block.num("L_max_mm", required=True, minimum=0.0)
    t_min = block.num("t_min_mm", required=True, minimum=0.0)
    t_max = block.num("t_max_mm", required=True, minimum=0.0)
    k_min = block.num("K_min_N_mm", minimum=0.0)
    d_min = block.num("D_min_mNm", minimum=0.0)
    w_bounds = block.pair("W_bounds_mm", DEFAULT_W_BOUNDS_MM)
    n_bounds = block.pair("n_bounds", DEFAULT_N_BOUNDS, integer=True)
    a_bounds = block.pair("alpha_bounds_deg", DEFAULT_ALPHA_BOUNDS_DEG)
    eta_deg = block.num("eta_deg", 0.0)
    layout = block.text("layout", SQUARE, choices=(SQUARE, CIRCULAR))
    r_mm = block.num("R_mm")
    block.finish()
    if layout == CIRCULAR and r_mm is None:
        raise ConfigError("constraints.R_mm: required for the circular layout")
    try:
        constraints = DesignConstraints(
            L_fab=units.mm_to_m(l_fab),
            L_min=units.mm_to_m(l_min),
            L_max=units.mm_to_m(l_max),
            t_min=units.mm_to_m(t_min),
            t_max=units.mm_to_m(t_max),
            K_min=units.npmm_to_npm(k_min) if k_min is not None else None,
            D_min=units.mnm_to_nm(d_min) if d_min is not None else None,
            W_bounds=(units.mm_to_m(w_bounds[0]), units.mm_to_m(w_bounds[1])),
            n_bounds=n_bounds,
            alpha_bounds=(units.deg_to_rad(a_bounds[0]), units.deg_to_rad(a_bounds[1])),
            eta=units.deg_to_rad(eta_deg),
            layout=layout,
            R=units.mm_to_m(r_mm) if r_mm is not None else None,
        )
    except DomainError as err:
        raise ConfigError(f"constraints: {err}") from err
    resolved = {
        "L_fab_mm": l_fab, "L_min_mm": l_min, "L_max_mm": l_max,
        "t_min_mm": t_min, "t_max_mm": t_max,
        "K_min_N_mm": k_min, "D_min_mNm": d_min,
        "W_bounds_mm": list(w_bounds), "n_bounds": list(n_bounds),
        "alpha_bounds_deg": list(a_bounds), "eta_deg": eta_deg, "layout": layout,
    }
    if r_mm is not None:
        resolved["R_mm"] = r_mm
    return constraints, resolved


def _parse_model(block: _Block) -> tuple[ModelConfig, dict]:
    unit_count = block.text("unit_count", "n", choices=("n", "n+1"))
    allowance = block.num("connector_allowance", 0.0, minimum=0.0)
    block.finish()
    return (ModelConfig(unit_count=unit_count, connector_allowance=allowance),
            {"unit_count": unit_count, "connector_allowance": allowance})


def _parse_sweep(block: _Block) -> tuple[SweepConfig, dict]:
    vary = block.text("vary", required=True, choices=SWEEP_KEYS)
    values = block.values_list("values", required=True)
    block.finish()
    if vary == "n":
        for v in values:
            if not isinstance(v, int) or v < 1:
                raise ConfigError(f"sweep.values: crease counts must be integers >= 1, got {v!r}")
    return SweepConfig(vary=vary, values=values), {"vary": vary, "values": list(values)}


def _parse_output(block: _Block) -> tuple[OutputConfig, dict]:
    out_dir = block.text("out_dir", "out")
    tabs = block.boolean("tabs", True)
    tab_depth = block.num("tab_depth_mm", 5.0)
    start = block.text("start_crease", MOUNTAIN, choices=(MOUNTAIN, VALLEY))
    kerf = block.num("kerf_mm", 0.0, minimum=0.0)
    emit_csv = block.boolean("emit_csv", False)
    block.finish()
    if tabs and tab_depth <= 0:
        raise ConfigError(f"output.tab_depth_mm: must be positive, got {tab_depth}")
    cfg = OutputConfig(out_dir=out_dir, tabs=tabs, tab_depth_mm=tab_depth,
                       start_crease=start, kerf_mm=kerf, emit_csv=emit_csv)
    resolved = {"out_dir": out_dir, "tabs": tabs, "tab_depth_mm": tab_depth,
                "start_crease": start, "kerf_mm": kerf, "emit_csv": emit_csv}
    return cfg, resolved


def _apply_overrides(data: dict, overrides) -> dict:
    for item in overrides or ():
        if "=" not in item:
            raise ConfigError(f"override {item!r}: expected section.key=value")
        path, _, raw_value = item.partition("=")
        parts = path.strip().split(".")
        if len(parts) != 2 or not all(parts):
            raise ConfigError(f"override {item!r}: expected section.key=value")
        try:
            value = yaml.safe_load(raw_value)
        except yaml.YAMLError as err:
            raise ConfigError(f"override {item!r}: bad value ({err})") from err
        section, key = parts
        data.setdefault(section, {})
        if not isinstance(data[section], dict):
            raise ConfigError(f"override {item!r}: section {section!r} is not a mapping")
        data[section][key] = value
    return data


def parse_config(source, overrides=()) -> DesignConfig:
    """Parse a YAML config file (path or mapping) into a DesignConfig."""
    if isinstance(source, dict):
        data = dict(source)
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                data = yaml.safe_load(fh)
        except OSError as err:
            raise ConfigError(f"cannot read config file: {err}") from err
        except yaml.YAMLError as err:
            raise ConfigError(f"config is not valid YAML: {err}") from err
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError("config root must be a mapping of blocks")

    data = _apply_overrides(data, overrides)

    known = {"material", "assembly", "constraints", "model", "sweep", "output"}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown top-level block(s): {', '.join(unknown)}")

    material, mat_res = _parse_material(_Block("material", data.get("material")))
    model, model_res = _parse_model(_Block("model", data.get("model")))
    output, out_res = _parse_output(_Block("output", data.get("output")))

    assembly = None
    resolved = {"material": mat_res, "model": model_res, "output": out_res}
    if "assembly" in data:
        assembly, res = _parse_assembly(_Block("assembly", data["assembly"]))
        resolved["assembly"] = res
    constraints = None
    if "constraints" in data:
        constraints, res = _parse_constraints(_Block("constraints", data["constraints"]))
        resolved["constraints"] = res
    sweep = None
    if "sweep" in data:
        sweep, res = _parse_sweep(_Block("sweep", data["sweep"]))
        resolved["sweep"] = res

    return DesignConfig(material=material, assembly=assembly,
                        constraints=constraints, model=model, sweep=sweep,
                        output=output, resolved=resolved)
