import pytest

from noisysimon import (
    SimonFunction,
    compile_simon_circuit,
    default_noise,
    melbourne_topology,
    search_min_configuration,
)


@pytest.fixture(scope="session")
def graph():
    return melbourne_topology()


@pytest.fixture(scope="session")
def noise():
    return default_noise()


@pytest.fixture(scope="session")
def compiled(graph):
    """(function, min configuration, norm, optimized circuit) per n."""
    out = {}
    for n in range(2, 8):
        f = SimonFunction.default(n)
        cfg, cn = search_min_configuration(f, graph)
        out[n] = (f, cfg, cn, compile_simon_circuit(f, graph, cfg))
    return out
