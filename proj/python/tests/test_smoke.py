import numpy as np
import pytest
from scipy.optimize import Bounds, LinearConstraint, milp

import mgswap


def small_station(batteries=2, positions=1):
    sc = mgswap.default_scenario()
    b = sc["bss"]
    b["n_batteries"] = batteries
    b["n_positions"] = positions
    b["p_ch_rated"] = positions * b["per_battery_p_ch"]
    b["p_dc_rated"] = positions * b["per_battery_p_dc"]
    b["c_max"] = batteries * b["per_battery_c_max"]
    b["c_min"] = batteries * b["per_battery_c_min"]
    b["c_init"] = 0.5 * (b["c_min"] + b["c_max"])
    return sc


def test_addition_convolution_matches_numpy():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.random(rng.integers(1, 9))
        b = rng.random(rng.integers(1, 9))
        a, b = a / a.sum(), b / b.sum()
        np.testing.assert_allclose(mgswap.atc(2.5, a.tolist(), b.tolist()), np.convolve(a, b), atol=1e-12)


def test_subtraction_clamps_at_zero():
    # max(d - c, 0) with d uniform on {0, q}, c fixed at q: all mass at zero.
    assert mgswap.stc(1.0, [0.5, 0.5], [0.0, 1.0]) == pytest.approx([1.0, 0.0])


def test_scenario_round_trip_and_errors():
    sc = mgswap.default_scenario()
    assert mgswap.normalize_scenario(sc) == sc
    sc["bss"]["eta_ch"] = -1.0
    with pytest.raises(ValueError, match="bss.eta_ch"):
        mgswap.normalize_scenario(sc)


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_station_program_agrees_with_scipy(seed):
    rng = np.random.default_rng(seed)
    sc = small_station()
    periods = 3
    prices = rng.uniform(0.1, 2.0, periods).round(3).tolist()
    modes = rng.integers(0, 2, periods).tolist()
    arrivals = rng.integers(0, 3, periods).tolist()

    p = mgswap.station_milp(sc, prices, modes, arrivals)
    A = np.array(p["A"])
    rhs = np.array(p["rhs"])
    lo = np.full(len(rhs), -np.inf)
    hi = np.full(len(rhs), np.inf)
    for i, s in enumerate(p["sense"]):
        if s in ("<=", "=="):
            hi[i] = rhs[i]
        if s in (">=", "=="):
            lo[i] = rhs[i]
    sign = -1.0 if p["maximize"] else 1.0
    ref = milp(
        sign * np.array(p["c"]),
        constraints=LinearConstraint(A, lo, hi),
        integrality=np.array(p["integral"], dtype=int),
        bounds=Bounds(p["lower"], p["upper"]),
        options={"mip_rel_gap": 0.0},
    )
    assert ref.success
    mine = mgswap.solve_station(sc, prices, modes, arrivals)
    assert mine["status"] == "optimal"
    assert mine["objective"] == pytest.approx(sign * ref.fun + p["offset"], abs=1e-6)


def test_joint_solve_smoke():
    r = mgswap.solve_joint(iterations=1)
    assert r["records"] == 1
    names = [s["name"] for s in r["strategies"]]
    assert len(names) == 3
    assert len(r["solution"]["lower"]["traded"]) == 24


def test_infeasible_load_raises():
    sc = mgswap.default_scenario()
    sc["load_mean"] = [1000.0] * 24
    with pytest.raises(mgswap.InfeasibleError, match="retrying at alpha"):
        mgswap.solve_joint(sc, iterations=1)
