"""HTTP endpoints: happy paths equal direct library calls; errors map to
{"detail": {"kind", "message"}} with 400, while schema violations keep the
framework's 422 list shape."""

import pytest

from plmodel import __version__
from plmodel.dataset import SynthSpec, dumps_csv, parse_csv, synthesize
from plmodel.fitting import fit_ci
from plmodel.models import CiParams, XpdExtension, evaluate
from plmodel.report import fit_report, registry_report


def _synth_csv(params, freqs, count, sigma, seed, pol="vv"):
    ds = synthesize(
        SynthSpec(params, tuple(freqs), (1.0, 100.0), count, sigma, seed, polarization=pol)
    )
    return ds, dumps_csv(ds)


class TestHealth:
    def test_ok(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok", "version": __version__}


class TestFit:
    def test_matches_direct_library_fit(self, client):
        ds, csv_text = _synth_csv(CiParams(2.9), (6.75, 28.0), 200, 8.0, 11)
        resp = client.post("/fit", json={"csv_text": csv_text, "model": "ci"})
        assert resp.status_code == 200
        body = resp.json()
        fit = fit_ci(ds)
        assert body["result"] == fit.to_dict()
        # no intercept in this family, so the residual mean is small but not 0
        assert body["stats"]["sigma"] == pytest.approx(fit.sigma, abs=1e-12)
        assert body["stats"]["max_abs"] >= body["stats"]["sigma"]

    def test_band_filter_applied(self, client):
        _, csv_text = _synth_csv(CiParams(2.0), (6.75, 142.0), 100, 0.0, 7)
        resp = client.post(
            "/fit",
            json={"csv_text": csv_text, "model": "ci", "band": [100.0, 150.0]},
        )
        assert resp.status_code == 200
        assert resp.json()["result"]["n_samples"] == 100

    def test_cross_polarized_fit(self, client):
        base = CiParams(1.3)
        _, co_csv = _synth_csv(base, (6.75, 16.95), 150, 0.0, 3)
        _, cross_csv = _synth_csv(
            XpdExtension(base, 18.5), (6.75, 16.95), 150, 0.0, 4, pol="vh"
        )
        header, rest = cross_csv.split("\n", 1)
        merged = co_csv + rest  # one file with both polarizations
        resp = client.post("/fit", json={"csv_text": merged, "model": "cix"})
        assert resp.status_code == 200
        result = resp.json()["result"]
        assert result["model"] == "cix"
        assert result["xpd"] == pytest.approx(18.5, abs=1e-9)

    def test_pol_conflicts_with_cross_fit(self, client):
        _, csv_text = _synth_csv(CiParams(1.3), (6.75,), 10, 0.0, 1)
        resp = client.post(
            "/fit", json={"csv_text": csv_text, "model": "cix", "pol": "vh"}
        )
        assert resp.status_code == 400
        assert resp.json()["detail"]["kind"] == "input"

    def test_pin_f0_restricted(self, client):
        _, csv_text = _synth_csv(CiParams(1.3), (6.75,), 10, 0.0, 1)
        resp = client.post(
            "/fit", json={"csv_text": csv_text, "model": "ci", "pin_f0": 12.0}
        )
        assert resp.status_code == 400
        detail = resp.json()["detail"]
        assert detail["kind"] == "input"
        assert "pin_f0" in detail["message"]

    def test_unidentifiable_kind(self, client):
        _, csv_text = _synth_csv(CiParams(2.0), (28.0,), 50, 0.0, 5)
        resp = client.post("/fit", json={"csv_text": csv_text, "model": "abg"})
        assert resp.status_code == 400
        detail = resp.json()["detail"]
        assert detail["kind"] == "unidentifiable"
        assert "gamma" in detail["message"]

    def test_bad_csv_reports_row(self, client):
        bad = "freq_ghz,distance_m,env,pol,pl_db,campaign\n28.0,zero,LOS,VV,70.0,x\n"
        resp = client.post("/fit", json={"csv_text": bad, "model": "ci"})
        assert resp.status_code == 400
        detail = resp.json()["detail"]
        assert detail["kind"] == "input"
        assert "row 2" in detail["message"]

    def test_schema_violation_stays_422(self, client):
        resp = client.post("/fit", json={"csv_text": "x"})  # model missing
        assert resp.status_code == 422
        assert isinstance(resp.json()["detail"], list)


class TestEval:
    def test_params_form(self, client):
        resp = client.post(
            "/eval", json={"params": {"model": "ci", "n": 1.8}, "f": 142.0, "d": 20.0}
        )
        assert resp.status_code == 200
        expected = float(evaluate(CiParams(1.8), 142.0, 20.0))
        assert resp.json()["path_loss_db"] == pytest.approx(expected, abs=1e-12)

    def test_registry_key_form(self, client):
        resp = client.post(
            "/eval",
            json={"registry_key": "ci:single_142:los:vv", "f": 142.0, "d": 20.0},
        )
        assert resp.status_code == 200
        expected = float(evaluate(CiParams(1.8), 142.0, 20.0))
        assert resp.json()["path_loss_db"] == pytest.approx(expected, abs=1e-12)

    def test_fi_needs_no_frequency(self, client):
        resp = client.post(
            "/eval",
            json={"params": {"model": "fi", "alpha": 98.9, "beta": 0.8}, "d": 39.2},
        )
        assert resp.status_code == 200
        assert resp.json()["path_loss_db"] == pytest.approx(111.64628853616367, abs=1e-12)

    def test_ci_requires_frequency(self, client):
        resp = client.post("/eval", json={"params": {"model": "ci", "n": 2.0}, "d": 10.0})
        assert resp.status_code == 400
        assert resp.json()["detail"]["kind"] == "input"

    def test_both_sources_rejected(self, client):
        resp = client.post(
            "/eval",
            json={
                "params": {"model": "ci", "n": 2.0},
                "registry_key": "ci:single_142:los:vv",
                "f": 142.0,
                "d": 10.0,
            },
        )
        assert resp.status_code == 400
        assert "exactly one" in resp.json()["detail"]["message"]

    def test_neither_source_rejected(self, client):
        resp = client.post("/eval", json={"f": 142.0, "d": 10.0})
        assert resp.status_code == 400

    def test_unknown_registry_key(self, client):
        resp = client.post(
            "/eval", json={"registry_key": "fi:fr3_7_24:los:vv", "d": 10.0}
        )
        assert resp.status_code == 400
        assert "no published entry" in resp.json()["detail"]["message"]

    def test_distance_below_reference(self, client):
        resp = client.post(
            "/eval", json={"params": {"model": "ci", "n": 2.0}, "f": 28.0, "d": 0.5}
        )
        assert resp.status_code == 400


class TestSynth:
    _REQ = {
        "params": {"model": "ci", "n": 2.9},
        "freqs": [6.75, 28.0],
        "count": 40,
        "sigma": 10.5,
        "seed": 42,
    }

    def test_deterministic(self, client):
        a = client.post("/synth", json=self._REQ)
        b = client.post("/synth", json=self._REQ)
        assert a.status_code == b.status_code == 200
        assert a.json() == b.json()
        assert a.json()["n_samples"] == 80

    def test_matches_library_synthesis(self, client):
        resp = client.post("/synth", json=self._REQ)
        ds = synthesize(
            SynthSpec(CiParams(2.9), (6.75, 28.0), (1.0, 100.0), 40, 10.5, 42)
        )
        assert resp.json()["csv_text"] == dumps_csv(ds)

    def test_noiseless_rows_sit_on_curve(self, client):
        req = dict(self._REQ, sigma=0.0, count=10)
        ds = parse_csv(client.post("/synth", json=req).json()["csv_text"])
        for s in ds.samples:
            expected = float(evaluate(CiParams(2.9), s.frequency, s.distance))
            assert s.path_loss == pytest.approx(expected, abs=1e-12)

    def test_env_pol_labels(self, client):
        req = dict(self._REQ, env="nlos", pol="vh", count=5)
        ds = parse_csv(client.post("/synth", json=req).json()["csv_text"])
        assert {s.environment.value for s in ds.samples} == {"NLOS"}
        assert {s.polarization.value for s in ds.samples} == {"VH"}

    def test_schema_rejects_empty_freqs(self, client):
        resp = client.post("/synth", json=dict(self._REQ, freqs=[]))
        assert resp.status_code == 422


class TestCompare:
    def test_outside_verdict(self, client):
        _, csv_text = _synth_csv(CiParams(1.4), (28.0,), 400, 3.0, 13)
        resp = client.post(
            "/compare", json={"csv_text": csv_text, "against": "3gpp-inh-los"}
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["verdict"] == "OUTSIDE"
        assert body["parameter"] == "n"
        assert body["reference"] == pytest.approx(1.73)
        assert body["model"] == "ci"

    def test_inside_verdict(self, client):
        _, csv_text = _synth_csv(CiParams(1.73), (28.0,), 400, 3.0, 13)
        resp = client.post(
            "/compare", json={"csv_text": csv_text, "against": "3gpp-inh-los"}
        )
        body = resp.json()
        lo, hi = body["ci95"]
        assert lo <= 1.73 <= hi
        assert body["verdict"] == "INSIDE"

    def test_opt1_compares_fi_slope(self, client):
        _, csv_text = _synth_csv(CiParams(3.83 / 1.0), (28.0,), 50, 0.0, 2)
        resp = client.post(
            "/compare", json={"csv_text": csv_text, "against": "3gpp-inh-nlos-opt1"}
        )
        body = resp.json()
        assert body["model"] == "fi"
        assert body["parameter"] == "beta"
        assert body["reference"] == pytest.approx(3.83)
        assert body["verdict"] == "INSIDE"  # exact noiseless slope match

    def test_unknown_reference_rejected_by_schema(self, client):
        _, csv_text = _synth_csv(CiParams(2.0), (28.0,), 10, 0.0, 1)
        resp = client.post(
            "/compare", json={"csv_text": csv_text, "against": "3gpp-uma-los"}
        )
        assert resp.status_code == 422


class TestReport:
    def test_registry_md_equals_library(self, client):
        resp = client.post("/report", json={"registry": "table4", "fmt": "md"})
        assert resp.status_code == 200
        assert resp.text is not None
        assert resp.json()["text"] == registry_report("table4", "md")

    def test_fit_report_round_trip(self, client):
        ds, csv_text = _synth_csv(CiParams(2.9), (28.0,), 100, 5.0, 9)
        fit_flat = client.post(
            "/fit", json={"csv_text": csv_text, "model": "ci"}
        ).json()["result"]
        resp = client.post("/report", json={"fit": fit_flat, "fmt": "md"})
        assert resp.json()["text"] == fit_report(fit_flat, "md")

    def test_series_includes_curve_and_points(self, client):
        ds, csv_text = _synth_csv(CiParams(2.9), (28.0,), 20, 0.0, 9)
        fit_flat = client.post(
            "/fit", json={"csv_text": csv_text, "model": "ci"}
        ).json()["result"]
        resp = client.post(
            "/report",
            json={"fit": fit_flat, "csv_text": csv_text, "fmt": "json", "series": True},
        )
        assert resp.status_code == 200
        assert '"curve"' in resp.json()["text"]

    def test_series_with_registry_rejected(self, client):
        resp = client.post("/report", json={"registry": "table1", "series": True})
        assert resp.status_code == 400

    def test_both_sources_rejected(self, client):
        resp = client.post(
            "/report", json={"registry": "table1", "fit": {"model": "ci", "n": 2.0}}
        )
        assert resp.status_code == 400
        assert "exactly one" in resp.json()["detail"]["message"]

    def test_unknown_filter_token(self, client):
        resp = client.post("/report", json={"registry": "table9"})
        assert resp.status_code == 400
        assert resp.json()["detail"]["kind"] == "input"


class TestRegistry:
    def test_list_all(self, client):
        resp = client.get("/registry")
        assert resp.status_code == 200
        assert len(resp.json()["entries"]) == 50

    def test_filters(self, client):
        resp = client.get("/registry", params={"model": "ci", "env": "los", "pol": "vv"})
        entries = resp.json()["entries"]
        assert len(entries) == 8
        assert all(e["model"] == "ci" and e["env"] == "los" for e in entries)

    def test_source_filter(self, client):
        resp = client.get("/registry", params={"source": "table4"})
        assert len(resp.json()["entries"]) == 6

    def test_bad_band_token(self, client):
        resp = client.get("/registry", params={"band": "single_999"})
        assert resp.status_code == 400

    def test_lookup(self, client):
        resp = client.get("/registry/lookup", params={"key": "ci:single_142:los:vv"})
        assert resp.status_code == 200
        entry = resp.json()["entry"]
        assert entry["n"] == 1.8
        assert entry["sigma"] == 3.0

    def test_lookup_missing(self, client):
        resp = client.get(
            "/registry/lookup", params={"key": "cix:wide_0_5_150:los:vh"}
        )
        assert resp.status_code == 400
        assert "no published entry" in resp.json()["detail"]["message"]


class TestEquivalence:
    def test_all_claims_hold(self, client):
        resp = client.get("/equivalence")
        assert resp.status_code == 200
        claims = resp.json()["claims"]
        assert len(claims) == 8
        for claim in claims:
            assert claim["holds"] is True, claim["name"]
            assert claim["worst_gap_db"] <= 1e-9
