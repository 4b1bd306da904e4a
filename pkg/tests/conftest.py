import json
import math
import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from oadlc import DesignConstraints, LayerSpec, Material

DATA_DIR = Path(__file__).parent / "data"

# 0.125 mm polyester film used throughout the validation fixtures
FILM = Material(E=2.7e9, nu=0.43, t=0.125e-3, rho=1390.0)

# Gripper case study: cutter envelope 250 mm, folded footprint 48-60 mm,
# stack thickness 10-12.5 mm, bending floor 80 mN*m along eta = 0.
GRIPPER_CONSTRAINTS = DesignConstraints(
    L_fab=0.250, L_min=0.048, L_max=0.060, t_min=0.010, t_max=0.0125,
    D_min=0.080)

# Reference designs (W m, n, alpha rad); case 1 is the published optimum.
REFERENCE_CASES = [
    (8e-3, 8, math.radians(84.0)),
    (6e-3, 31, math.radians(29.0)),
    (6e-3, 37, math.radians(25.0)),
    (6e-3, 35, math.radians(32.0)),
    (6e-3, 40, math.radians(30.0)),
]


@pytest.fixture
def film():
    return FILM


@pytest.fixture
def gripper_constraints():
    return GRIPPER_CONSTRAINTS


@pytest.fixture
def reference_cases():
    with open(DATA_DIR / "reference_cases.json", encoding="utf-8") as fh:
        return json.load(fh)


def random_layer(rng: random.Random, non_uniform: bool | None = None) -> LayerSpec:
    """One random valid layer; non_uniform=None mixes both kinds."""
    material = Material(
        E=rng.uniform(0.5e9, 20e9),
        nu=rng.uniform(0.0, 0.49),
        t=rng.uniform(0.05e-3, 0.5e-3),
        rho=rng.uniform(800.0, 2500.0),
    )
    W = rng.uniform(2e-3, 30e-3)
    alpha = rng.uniform(math.radians(15.0), math.radians(177.0))
    n = rng.randint(1, 24)
    if non_uniform is None:
        non_uniform = rng.random() < 0.5
    if non_uniform:
        L = tuple(rng.uniform(5e-3, 120e-3) for _ in range(n))
    else:
        L = ((n + 1) * W * math.sin(alpha / 2),) * n
    return LayerSpec(material, W, alpha, n, L)


# --- hypothesis strategies -------------------------------------------------

def materials():
    return st.builds(
        Material,
        E=st.floats(min_value=1e8, max_value=5e10),
        nu=st.floats(min_value=0.0, max_value=0.49),
        t=st.floats(min_value=2e-5, max_value=1e-3),
        rho=st.floats(min_value=0.0, max_value=5e3),
    )


@st.composite
def layers(draw, max_n=12):
    material = draw(materials())
    W = draw(st.floats(min_value=1e-3, max_value=4e-2))
    alpha = draw(st.floats(min_value=math.radians(10.0), max_value=math.radians(178.0)))
    n = draw(st.integers(min_value=1, max_value=max_n))
    L = tuple(draw(st.lists(st.floats(min_value=2e-3, max_value=2e-1),
                            min_size=n, max_size=n)))
    return LayerSpec(material, W, alpha, n, L)
