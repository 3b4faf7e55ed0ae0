"""Printed homotopy and lifting data, checked against the assembled differential."""

import json

from fk3hh.algebra import DATA_DIR
from fk3hh.facts import verify_cup_identities, verify_homotopies, verify_liftings


def test_every_printed_homotopy_component_holds(R):
    rep = verify_homotopies(R)
    assert rep.failed == []
    assert rep.skipped == []
    assert rep.passed == 43


def test_every_printed_lifting_correction_holds(R):
    rep = verify_liftings(R)
    assert rep.failed == []
    assert rep.skipped == []
    assert rep.passed == 68


def test_periodicity_level_corrections_are_checked(R):
    rep = verify_liftings(R)
    omega = [c for c in rep.checks if c.generator.startswith("omega")]
    assert len(omega) == 4 and all(c.status == "pass" for c in omega)


def test_tampered_homotopy_is_caught(R, tmp_path):
    data = json.loads((DATA_DIR / "facts_homotopies.json").read_text())
    entry = data["homotopies"][0]["values"][0]
    entry["image"][0][0] = "2" if entry["image"][0][0] != "2" else "3"
    path = tmp_path / "h.json"
    path.write_text(json.dumps(data))
    rep = verify_homotopies(R, path)
    assert rep.failed


def test_tampered_lifting_is_caught(R, tmp_path):
    data = json.loads((DATA_DIR / "facts_liftings.json").read_text())
    data["liftings"][1]["values"][0]["image"][0][0] = "5"
    path = tmp_path / "l.json"
    path.write_text(json.dumps(data))
    assert verify_liftings(R, path).failed


def test_cup_identity_suite(P):
    rep = verify_cup_identities(P)
    assert rep.failed == []
    assert rep.passed == 30


def test_product_relations_used_in_proofs(P):
    # [PAPER] X8 X13 = 6 X3 X14, X8 X3 = 0 and X_i X_j = 0 for i in 4..7, j in 1..3
    assert P.evaluate("X_8*X_13") == P.evaluate("6*X_3*X_14")
    assert P.evaluate("X_8*X_3").is_zero()
    for i in range(4, 8):
        for j in range(1, 4):
            assert P.evaluate(f"X_{i}*X_{j}").is_zero()
