import numpy as np
import pytest

from conftest import random_graph
from vecchrom import graphs
from vecchrom.errors import CapacityError, DimensionError, VecchromError
from vecchrom.identities import (
    chain_checks,
    chi_cartesian_exact,
    hedetniemi_checks,
    product_checks,
    run_suite,
    sabidussi_checks,
    union_checks,
)

SQRT5 = np.sqrt(5.0)


def test_sabidussi_k3_k4(cfg, param_cache):
    checks = sabidussi_checks(
        graphs.generate("complete", 3), graphs.generate("complete", 4), cfg,
        cache=param_cache,
    )
    by_name = {c.name: c for c in checks}
    theta = by_name["theta_bar(G[]H) = max"]
    assert theta.passed and abs(theta.lhs - 4.0) <= 1e-3
    chi = by_name["chi(G[]H) = max"]
    assert chi.passed and chi.lhs == 4


def test_hedetniemi_c5_k3(cfg, param_cache):
    checks = hedetniemi_checks(
        graphs.generate("cycle", 5), graphs.generate("complete", 3), cfg,
        cache=param_cache,
    )
    (check,) = checks
    assert check.passed
    assert abs(check.lhs - SQRT5) <= 1e-3


def test_products_c5_c5(cfg, param_cache):
    checks = product_checks(
        graphs.generate("cycle", 5), graphs.generate("cycle", 5), cfg,
        cache=param_cache,
    )
    assert len(checks) == 2
    for check in checks:
        assert check.passed
        assert abs(check.lhs - 5.0) <= 1e-3


def test_union_bound(cfg, param_cache):
    G = random_graph(6, seed=201)
    H = random_graph(6, seed=202)
    (check,) = union_checks(G, H, cfg, cache=param_cache)
    assert check.passed
    assert check.comparison == "le"


def test_union_needs_same_order(cfg):
    with pytest.raises(DimensionError):
        union_checks(graphs.generate("cycle", 4), graphs.generate("cycle", 5), cfg)


def test_chain_checks(cfg, param_cache):
    checks = chain_checks(graphs.generate("petersen"), cfg, cache=param_cache)
    assert all(c.passed for c in checks)
    names = [c.name for c in checks]
    assert any("spectral" in n for n in names)
    assert any("chi_vec <= theta_bar" in n for n in names)
    assert any("theta_bar <= chi" in n for n in names)


def test_run_suite_dispatch(cfg, param_cache):
    checks = run_suite("chain", graphs.generate("complete", 3),
                       graphs.generate("cycle", 4), cfg, cache=param_cache)
    assert all(c.passed for c in checks)
    with pytest.raises(VecchromError):
        run_suite("nonsense", graphs.generate("complete", 3),
                  graphs.generate("cycle", 4), cfg)


def test_capacity_guard(cfg):
    big = graphs.generate("empty", 40)
    with pytest.raises(CapacityError):
        sabidussi_checks(big, big, cfg, sdp_cap=100)


def test_identity_check_serialization(cfg, param_cache):
    checks = hedetniemi_checks(
        graphs.generate("complete", 2), graphs.generate("complete", 3), cfg,
        cache=param_cache,
    )
    data = checks[0].as_dict()
    assert {"name", "lhs", "rhs", "residual", "tolerance", "passed", "comparison"} <= set(data)


def test_chi_cartesian_factor_bound_verifies_coloring():
    G = random_graph(7, seed=301)
    H = random_graph(7, seed=302)
    value, method = chi_cartesian_exact(G, H, cap=30)
    assert method == "factor-bound"
    from vecchrom.params import chromatic_number

    assert value == max(chromatic_number(G), chromatic_number(H))
