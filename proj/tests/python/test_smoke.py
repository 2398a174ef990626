import math

import numpy as np
import pytest

import motzkin_chain as mc


def test_entropy_two_sites():
    assert mc.entanglement_entropy(1, 1, 1.0) == pytest.approx(math.log(2), rel=1e-14)
    assert mc.entanglement_entropy(1, 1, 1.0, base2=True) == pytest.approx(1.0)


def test_profile_fields():
    p = mc.profile(4, 2, 0.7)
    assert p.n == 4
    assert math.exp(p.log_m[0]) == pytest.approx(10.7664)
    assert sum(p.sector_weight(m) for m in range(p.n + 1)) == pytest.approx(1.0)
    assert p.peak_height() == 0


def test_hamiltonian_and_ground_state():
    spec = mc.ChainSpec.uniform(4, 2, 2.0)
    h = mc.build_hamiltonian(spec)
    assert h.shape == (625, 625)
    v = mc.ground_state_vector(spec)
    assert np.linalg.norm(h @ v) < 1e-10
    report = mc.diagonalize_low(spec, 2)
    assert report.null_dim == 1
    assert mc.residual(spec, v) < 1e-10


def test_tuned_angles_round_trip():
    spec = mc.ChainSpec.tuned_angles(6, seed=4)
    assert spec.t is None
    again = mc.ChainSpec.from_config(spec.to_config())
    assert again.to_config() == spec.to_config()
    assert mc.diagonalize_low(spec).null_dim == 1


def test_svd_matches_recurrence_at_t_squared():
    spec = mc.ChainSpec.uniform(6, 2, 1.5)
    groups, values = mc.schmidt_by_svd(spec)
    p = mc.ground_state_profile(3, 2, 1.5)
    for m, mult, value in groups:
        assert mult == 2**m
        assert value == pytest.approx(p.p[m], rel=1e-8)
    assert sum(values) == pytest.approx(1.0)


def test_sweep_and_fit():
    csv = mc.sweep_csv("grid=2,1\nn=100:1000:20\n", jobs=2)
    header, *rows = csv.strip().splitlines()
    assert header == "s,t,n,entropy_nats,mstar,logN,status"
    assert all(r.endswith(",ok") for r in rows)
    fits = {m: mc.fit(csv, m)["residual"] for m in ("linear", "sqrt", "log", "constant")}
    assert min(fits, key=fits.get) == "sqrt"


def test_errors_map_to_value_error():
    with pytest.raises(ValueError):
        mc.entanglement_entropy(0, 1, 1.0)
    with pytest.raises(ValueError):
        mc.build_hamiltonian(mc.ChainSpec.uniform(3, 1, 1.0))
    with pytest.raises(ValueError):
        mc.tail_start_m0(1, 2.0)
