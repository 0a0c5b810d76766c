import math

import numpy as np
import pytest
from hypothesis import strategies as st

from leoint.core import EARTH, KeplerianElements, keplerian_to_polar_nodal
from leoint.harness import BUILTINS


def random_leo_elements(rng, n, e_max=0.07, a=(6600.0, 7400.0)):
    """Bound LEO elements with inclination uniform in cos I."""
    out = []
    for _ in range(n):
        out.append(
            KeplerianElements(
                rng.uniform(*a),
                rng.uniform(0.0, e_max),
                math.acos(rng.uniform(-1.0, 1.0)),
                rng.uniform(0.0, 2 * math.pi),
                rng.uniform(0.0, 2 * math.pi),
                rng.uniform(0.0, 2 * math.pi),
            )
        )
    return out


leo_elements = st.builds(
    KeplerianElements,
    a=st.floats(6600.0, 7400.0),
    e=st.floats(0.0, 0.07),
    inc=st.floats(0.0, math.pi),
    raan=st.floats(0.0, 2 * math.pi),
    argp=st.floats(0.0, 2 * math.pi),
    mean_anomaly=st.floats(0.0, 2 * math.pi),
)


@pytest.fixture
def rng():
    return np.random.default_rng(20160815)


@pytest.fixture
def spot4():
    return BUILTINS["spot4"]


@pytest.fixture
def spot4_pn(spot4):
    return keplerian_to_polar_nodal(spot4.elements, EARTH)
