"""Design toolkit for orthogonally assembled double-layered corrugated
(OADLC) mechanisms.

Closed-form equivalent-plate stiffness models, a constrained minimum-weight
design search over (W, alpha, n), and ready-to-cut 2D fold-pattern output.

    from oadlc import Material, square_layer, identical_assembly, pipeline_D

    film = Material(E=2.7e9, nu=0.43, t=0.125e-3, rho=1390.0)
    layer = square_layer(film, W=8e-3, alpha=math.radians(84), n=8)
    D = pipeline_D(identical_assembly(layer), eta=0.0)
"""

from .core import (Assembly, EquivalentModuli, LayerSpec, Material,
                   PlateMatrices, StiffnessReport, assembly_bending,
                   assembly_inplane, build_report, circular_layer,
                   folded_dimensions, identical_assembly, layer_bending,
                   layer_flat_area, layer_inplane, layer_mass, mass,
                   moduli_from_plate_matrices, pipeline_D, pipeline_K,
                   square_layer, triangular_moduli)
from .errors import (ConfigError, DomainError, FabricationError,
                     InfeasibleError, OadlcError)
from .optimize import (CandidateRow, ConstraintCheck, DesignConstraints,
                       DesignSolution, FeasibilityReport, check_feasible,
                       exhaustive_search, naive_designs_report, optimize)
from .pattern import (FoldPattern, Tab, TabSpec, assembly_kit,
                      generate_assembly_kit, generate_layer_pattern, read_svg,
                      svg_text, write_svg)

__version__ = "0.1.0"

__all__ = [
    "Assembly", "CandidateRow", "ConfigError", "ConstraintCheck",
    "DesignConstraints", "DesignSolution", "DomainError", "EquivalentModuli",
    "FabricationError", "FeasibilityReport", "FoldPattern", "InfeasibleError",
    "LayerSpec", "Material", "OadlcError", "PlateMatrices", "StiffnessReport",
    "Tab", "TabSpec", "assembly_bending", "assembly_inplane", "assembly_kit",
    "build_report", "check_feasible", "circular_layer", "exhaustive_search",
    "folded_dimensions", "generate_assembly_kit", "generate_layer_pattern",
    "identical_assembly", "layer_bending", "layer_flat_area", "layer_inplane",
    "layer_mass", "mass", "moduli_from_plate_matrices", "naive_designs_report",
    "optimize", "pipeline_D", "pipeline_K", "read_svg", "square_layer",
    "svg_text", "triangular_moduli", "write_svg",
]
