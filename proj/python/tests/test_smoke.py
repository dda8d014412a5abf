import math

import pytest

import sgqgan


def test_state_basics():
    h = sgqgan.normalize([2, 0])
    assert h == [1, 0]
    assert sgqgan.overlap([1, 0], [0, 1]) == 0.0
    t2 = sgqgan.builtin_targets()["psi_t2"]
    assert sgqgan.overlap(t2, [1, 0]) == pytest.approx(0.8070944599442009, abs=1e-12)
    assert sgqgan.bloch_coords([1, 1j]) == pytest.approx([0, 1, 0], abs=1e-12)
    d = sgqgan.apply_unitary(sgqgan.hwp(math.pi / 8), [1, 0])
    assert sgqgan.overlap(d, [1, 1]) == pytest.approx(1.0, abs=1e-12)


def test_errors_carry_their_kind():
    with pytest.raises(sgqgan.Error) as info:
        sgqgan.normalize([0, 0])
    assert info.value.kind == "ZeroVector"
    with pytest.raises(ValueError):
        sgqgan.coincidence_prob_dip(1.5)


def test_interference():
    assert sgqgan.coincidence_prob_dip(0.81) == pytest.approx(0.095, abs=1e-15)
    assert sgqgan.coincidence_prob_multiphase([1.0], [math.pi], [0.0]) == 1.0
    assert sgqgan.coincidence_prob_multiphase([0.5, 0.5], [1.0, 2.0], [0.0, 0.0], tau=1e6) == 0.5


def test_gains():
    g = sgqgan.GainSchedule()
    assert g.alpha(0) == 3.0
    assert g.beta(0) == pytest.approx(0.1)


def test_learn_state():
    r = sgqgan.learn_state("psi_t1", trials=20)
    assert len(r["series"]) == 20
    assert len(r["mean"]) == 20
    assert r["final_mean"] >= 0.98
    assert sgqgan.learn_state("psi_t4", trials=5, seed=3) == sgqgan.learn_state("psi_t4", trials=5, seed=3)


def test_characterize():
    r = sgqgan.characterize(sgqgan.waveplates("hwp:22.5"))
    assert r["process_fidelity"] >= 0.99
    assert r["valid"]
    assert len(r["chi"]) == 4


def test_estimate_phases():
    psi = sgqgan.uniform_psi(10, seed=4)
    r = sgqgan.estimate_phases(psi, iterations=500, trials=4)
    assert r["final_mean"] >= 0.98
    assert sgqgan.accuracy(psi, r["final_phases"][0]) == pytest.approx(r["series"][0][-1])


def test_config_roundtrip(tmp_path):
    cfg = sgqgan.resolve_config({"command": "learn-state", "target": "psi_t3"})
    assert cfg["iterations"] == 20 and cfg["trials"] == 100
    with pytest.raises(sgqgan.Error, match=r"\$\.foo"):
        sgqgan.resolve_config({"command": "learn-state", "foo": 1})
    out = sgqgan.run_config({"command": "learn-state", "trials": 3, "output": str(tmp_path / "r_")})
    assert str(tmp_path / "r_aggregate.csv") in out["files"]
