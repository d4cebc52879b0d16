import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from vecchrom import graphs
from vecchrom.graphs import Graph, graph_from_edges
from vecchrom.identities import cached_param
from vecchrom.sdp import SolverConfig

settings.register_profile(
    "suite",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def star(k: int) -> Graph:
    """The star K_{1,k} with center 0."""
    return graph_from_edges(k + 1, [(0, i + 1) for i in range(k)], f"K_1_{k}")


def random_graph(n: int, seed: int, p: float = 0.5) -> Graph:
    return graphs.erdos_renyi(n, p, seed=seed, label=f"gnp_{n}_s{seed}")


@st.composite
def small_graph(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    m = n * (n - 1) // 2
    bits = draw(st.lists(st.booleans(), min_size=m, max_size=m))
    adj = np.zeros((n, n), dtype=bool)
    adj[np.triu_indices(n, k=1)] = bits
    adj |= adj.T
    return Graph(n, adj)


@pytest.fixture(scope="session")
def cfg():
    # suite-scale settings: cone residuals of a first-order method on
    # degenerate product instances sit around 1e-7..1e-6; value accuracy
    # is governed by gap_tol, which stays at its default
    return SolverConfig(tol=1e-6, max_iter=150000)


@pytest.fixture(scope="session")
def param_cache():
    """Shared memo of ParamResults; doubles as the record the acceptance
    gap criterion sweeps over."""
    return {}


@pytest.fixture(scope="session")
def theta(param_cache, cfg):
    def run(G):
        return cached_param(G, "theta_bar", cfg, param_cache)

    return run


@pytest.fixture(scope="session")
def chivec(param_cache, cfg):
    def run(G):
        return cached_param(G, "chi_vec", cfg, param_cache)

    return run


@pytest.fixture(scope="session")
def corpus():
    """Named small graphs every chain/sandwich test sweeps over."""
    out = []
    for n in range(2, 9):
        out.append(graphs.generate("complete", n))
    for n in range(3, 10):
        out.append(graphs.generate("cycle", n))
    out.append(graphs.generate("path", 3))
    out.append(graphs.generate("path", 4))
    out.append(star(3))
    out.append(graphs.generate("petersen"))
    for n in range(2, 7):
        out.append(graphs.generate("omega", n))
    for i, n in enumerate((5, 6, 6, 7, 7, 8)):
        out.append(random_graph(n, seed=100 + i))
    return out
