import copy
from pathlib import Path

import pytest

from pnbundles.catalog import (CatalogError, load_catalog, parse_catalog,
                               parse_node, serialize_catalog, verify_all,
                               verify_entry)
from pnbundles.sheaves import Cohomology

CATALOG_PATH = Path(__file__).resolve().parents[1] / "catalog" / "catalog.json"


@pytest.fixture(scope="module")
def catalog():
    return load_catalog(CATALOG_PATH)


def test_round_trip_byte_identical(catalog):
    text = CATALOG_PATH.read_text(encoding="utf-8")
    assert serialize_catalog(parse_catalog(text)) == text


def test_catalog_covers_required_constructions(catalog):
    ids = {e["id"] for e in catalog["entries"]}
    required = {
        "p3-line-4", "p3-ncorr-twist", "p3-instanton2-instance",
        "p3-mixed-kernel", "p3-two-row-kernel", "p3-five-gen-kernel",
        "p3-quadric-kernel-twist", "p3-monad-rank6", "p4-rank5-kernel-twist",
        "p5-cotangent-2", "p2-c2-5-split", "p2-c1-5-line",
        "p3-instanton4-instance", "p3-kernel-onto-cotangent",
        "p3-pair-kernel-edge-clear", "p3-webrow-kernel",
    }
    assert required <= ids
    assert len(catalog["entries"]) >= 20


def test_empty_catalog_passes():
    rep = verify_all({"prime": 32003, "entries": []})
    assert rep.ok
    assert rep.entries == []


def test_corrupted_chern_fails_exactly_one(catalog):
    broken = copy.deepcopy(catalog)
    target = next(e for e in broken["entries"] if e["id"] == "p3-mixed-kernel")
    target["expected"]["chern"]["c"][1] += 1
    rep = verify_all(broken, trials=20, seed=5)
    bad = [e for e in rep.entries if not e.ok]
    assert len(bad) == 1 and bad[0].entry_id == "p3-mixed-kernel"


def test_parse_error_recorded_not_raised():
    entry = {"id": "broken", "n": 3,
             "construction": {"ker": {"matrix": {"src": [1], "tgt": [3],
                                                 "rows": [["x0"]]}}}}
    rep = verify_entry(entry, Cohomology(), trials=5, seed=1)
    assert not rep.ok
    assert rep.error is not None


def test_unknown_node_kind_rejected():
    with pytest.raises(CatalogError):
        parse_node({"mystery": []}, 4, 32003)
    with pytest.raises(CatalogError):
        parse_node({"sum": [1], "extra": 2}, 4, 32003)


def test_verify_report_shape(catalog):
    small = {"prime": 32003,
             "entries": [e for e in catalog["entries"]
                         if e["id"] in ("p3-line-4", "pencil-case-6")]}
    rep = verify_all(small, trials=10, seed=2)
    assert rep.ok
    data = rep.to_dict()
    assert {e["id"] for e in data["entries"]} == {"p3-line-4", "pencil-case-6"}
    assert all(c["ok"] for e in data["entries"] for c in e["checks"])
    text = rep.render()
    assert "2/2 entries verified" in text
