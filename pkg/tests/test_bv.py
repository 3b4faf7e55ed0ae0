"""Non-existence of an operator generating the bracket."""

import pytest

from fk3hh.brackets import bv_obstruction


@pytest.fixture(scope="module")
def report(B):
    return bv_obstruction(B)


def test_system_is_infeasible_with_verified_certificate(report):
    assert not report.feasible
    assert report.certificate_verified
    assert report.certificate


def test_every_chain_step_holds(report):
    assert [s["claim"] for s in report.chain if not s["ok"]] == []
    assert len(report.chain) >= 10


def test_chain_reaches_the_contradiction(report):
    claims = [s["claim"] for s in report.chain]
    assert any("Delta(X_4) X_8 + 4 X_4 = 0" in c for c in claims)
    assert any("linearly independent" in c for c in claims)


def test_delta_of_grading_class(report):
    # [PAPER] Delta(X8) X3 = [X8, X3] = -4 X3 forces Delta(X8) = -4
    step = next(s for s in report.chain if s["claim"] == "Delta(X_8) = -4")
    assert step["ok"] and step["value"] == "-4"


def test_only_the_top_pair_is_skipped(report):
    assert report.skipped_pairs == [(14, 14)]


def test_zero_bracket_would_be_generated_by_zero_operator(session):
    # negative control: with every bracket replaced by zero, Delta = 0 is a solution
    from fk3hh.brackets import Brackets

    class ZeroBrackets(Brackets):
        def generator_bracket(self, i, j):
            r = super().generator_bracket(i, j)
            r.value = r.value.scale(self.F(0))
            return r

    Z = ZeroBrackets(session.G, session.P)
    rep = bv_obstruction(Z)
    assert rep.feasible and rep.certificate is None
