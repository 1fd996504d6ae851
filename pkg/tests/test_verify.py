import pytest
from conftest import loops

from rigi.corpus import CorpusSpec
from rigi.graph import ColoredGraph
from rigi.groups import Z, cyclic
from rigi.sparsity import FamilyMismatchError
from rigi.verify import (
    PROPOSITIONS,
    UnknownPropositionError,
    default_corpus,
    proposition,
    verify_corpus,
    verify_graphs,
)


@pytest.mark.parametrize("pid", sorted(PROPOSITIONS))
def test_small_corpora_have_no_failures(pid):
    overrides = {"count": 60, "seed": 2} if pid == "oracle-colored-laman" else {}
    report = verify_corpus(pid, default_corpus(pid, max_n=2, **overrides))
    assert report.tested > 0
    assert report.ok, report.to_json()["failures"][:1]


def test_unknown_proposition():
    with pytest.raises(UnknownPropositionError):
        proposition("nope")
    with pytest.raises(KeyError):
        verify_graphs("nope", [])


def test_failures_carry_the_graph():
    g = loops((1, 0))
    report = verify_graphs("z2-sparsity-equiv", [g, g], sides=lambda h: (True, False))
    assert not report.ok and report.tested == 2 and report.holds == 0
    out = report.to_json()
    assert out["failures"][1] == {"graph": g.to_json(), "index": 1, "lhs": True, "rhs": False}
    assert ColoredGraph.from_json(out["failures"][0]["graph"]) == g
    assert list(out) == sorted(out)


def test_group_mismatch():
    with pytest.raises(FamilyMismatchError):
        verify_graphs("z2-sparsity-equiv", [ColoredGraph.build(Z, 1, [(0, 0, 1)])])


def test_cone_lift_fails_at_k2():
    report = verify_corpus("cone-lift", CorpusSpec(cyclic(2), max_n=2, max_m=3))
    assert not report.ok
    assert all(f.lhs != f.rhs for f in report.failures)
    assert verify_corpus("cone-lift", CorpusSpec(cyclic(5), max_n=2, max_m=3)).ok


def test_holds_counts_tight_cases():
    report = verify_graphs("ross-by-adding", [ColoredGraph(loops((1, 0)).tag, 1), loops((1, 0))])
    assert report.tested == 2 and report.holds == 1 and report.ok
