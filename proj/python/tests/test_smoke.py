import math

import numpy as np
import pytest

import noisefid as nf


def test_protocols():
    assert nf.protocol_ids() == ["b92", "bbm", "qka1", "qka2", "lm05", "pp", "qd1", "qd2"]


def test_spot_values():
    assert nf.average_fidelity("b92", "AD", {"eta": 0.5}) == pytest.approx(0.926776695, abs=1e-9)
    assert nf.average_fidelity("qd2", "AD", {"eta": 0.5}) == pytest.approx(0.5625, abs=1e-12)
    assert nf.average_fidelity("bbm", "CR", {"theta": math.pi / 4}) == pytest.approx(0.5)
    assert nf.average_fidelity("qd1", "identity") == pytest.approx(1.0)


def test_closed_form_matches_engine():
    for eta in np.linspace(0, 1, 11):
        assert nf.closed_form("qsdc1/AD", {"eta": eta}) == pytest.approx(
            nf.average_fidelity("lm05", "AD", {"eta": eta}), abs=1e-12
        )
    assert len(nf.closed_form_keys()) == 48


def test_kraus_sets_are_trace_preserving():
    for ops in (nf.kraus_ad(0.3), nf.kraus_pd(0.3), nf.kraus_pauli(0.1, 0.2, 0.3, 0.4),
                nf.kraus_sgad(0.2, 0.3, 0.4, 0.5, 1.0)):
        total = sum(e.conj().T @ e for e in ops)
        np.testing.assert_allclose(total, np.eye(2), atol=1e-12)
    u = nf.collective_rotation(0.7)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-12)
    assert nf.collective_dephasing(math.pi)[1, 1] == pytest.approx(-1)


def test_rates():
    assert nf.sgad_rates(1.0, 0.0, 0.5, 1.0, 0.5) == (0.0, 0.0, 0.0)
    n = 1 / math.expm1(1.0)
    assert nf.sgad_rates(1.0, 2.0, 0.0, 1.0, (n + 1) / (2 * n + 1))[1] == 0.0
    with pytest.raises(ValueError):
        nf.sgad_rates(1.0, 0.01, 1.0, 1.0, 0.5)


def test_sweep_rows():
    rows = nf.sweep("b92", "AD", [("eta", "0:1:0.5")], threads=2)
    assert [r["eta"] for r in rows] == [0.0, 0.5, 1.0]
    assert rows[2]["fidelity_numeric"] == pytest.approx(0.75)
    assert rows[1]["abs_diff"] < 1e-12


def test_errors():
    with pytest.raises(ValueError):
        nf.average_fidelity("nope", "AD", {"eta": 0.1})
    with pytest.raises(nf.ConfigError):
        nf.average_fidelity("b92", "AD", {})
    with pytest.raises(ValueError):
        nf.average_fidelity("b92", "AD", {"eta": 2.0})


def test_validate_and_compare():
    assert all(ok for _, ok, _ in nf.validate())
    report = nf.compare_report(grid=5)
    assert len(report["keys"]) == 48
    assert "RESULT:" in report["text"]
