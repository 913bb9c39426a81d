import json

import pytest

from qrv import catalog
from qrv.errors import BadParameter, UnknownIdentity
from qrv.report import VerificationReport

FAST_IDS = [i for i in catalog.CATALOG if not i.startswith("EQV:")]


def test_ids_unique_and_statuses_known():
    ids = list(catalog.CATALOG)
    assert len(ids) == len(set(ids))
    assert all(r.status in catalog.STATUSES for r in catalog.CATALOG.values())


@pytest.mark.parametrize("h", range(1, 12))
def test_status_labels(h):
    expected = "conjectural" if h in (4, 5, 8, 9) else "proved"
    assert catalog.get(f"C:H{h}").status == expected


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        catalog.get("NOPE")
    with pytest.raises(UnknownIdentity):
        catalog.run_all(ids=["C:H1", "NOPE"])


def test_bad_order():
    with pytest.raises(BadParameter):
        catalog.run("C:H1", 0)


def test_run_h2_and_h9():
    r = catalog.run("C:H2", 100)
    assert r.passed and r.order == 100 and r.status == "proved"
    r9 = catalog.run("C:H9", 100)
    assert r9.passed and r9.status == "conjectural"


@pytest.mark.parametrize("rid", FAST_IDS)
def test_every_record_at_low_order(rid):
    r = catalog.run(rid, 60)
    assert r.passed, r.text_line()


def test_default_orders():
    assert catalog.default_order(catalog.get("C:H1")) == 200
    assert catalog.default_order(catalog.get("WZ:J10")) == 300
    assert catalog.default_order(catalog.get("FE:E:H1Rec")) == 150


def test_env_override(monkeypatch):
    monkeypatch.setenv("QRV_DEFAULT_ORDER", "40")
    assert catalog.run("C:H1").order == 40
    monkeypatch.setenv("QRV_DEFAULT_ORDER", "zero")
    with pytest.raises(BadParameter):
        catalog.run("C:H1")
    monkeypatch.setenv("QRV_DEFAULT_ORDER", "-3")
    with pytest.raises(BadParameter):
        catalog.run("C:H1")


def test_json_round_trip():
    r = catalog.run("C:H3", 50)
    back = VerificationReport.from_dict(json.loads(r.to_json()))
    assert back == r


def test_failure_report_round_trip():
    rec = catalog.get("C:H1")
    broken = catalog.IdentityRecord("BROKEN", "proved", rec.lhs_builder, catalog.get("C:H6").rhs_builder)
    m = broken.check(40)
    assert m is not None
    r = VerificationReport("BROKEN", "proved", 40, False, m, 0)
    assert VerificationReport.from_dict(json.loads(r.to_json())) == r
    assert "FAIL" in r.text_line()


def test_run_all_parallel_matches_serial():
    ids = ["C:H1", "C:H7", "T:H4", "PROP1[a=2,b=3]", "WZ:J10"]
    strip = lambda rs: [(r.id, r.passed, r.order, r.first_mismatch) for r in rs]
    serial = catalog.run_all(50, 1, ids)
    parallel = catalog.run_all(50, 2, ids)
    assert strip(serial) == strip(parallel)
    assert [r.id for r in serial] == ids


def test_oracle_matches_products():
    recs = catalog.product_records()
    assert recs
    for rec in recs:
        assert catalog.oracle_mismatch(rec, 80) is None, rec.id
