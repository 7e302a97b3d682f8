from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hypertree_conditions
from hyperricci import DirectedHypergraph, FamilySpec, curvature, generate, hypertree_kappa, verify_family
from hyperricci.generators import FamilyError, NOMINAL_KAPPA, with_random_weights


def test_ricci1_unit_is_three_cycle():
    H = generate(FamilySpec("ricci1-tripartite", [1, 1, 1]))
    assert [(e.tail, e.head) for e in H.edges] == [(("a1",), ("b1",)), (("b1",), ("c1",)), (("c1",), ("a1",))]
    assert verify_family(H, 1).passed


@pytest.mark.parametrize(
    "family,sizes,kappa",
    [("flat-bipartite", [2, 2], 0), ("ricci-neg2-quadripartite", [1, 1, 1, 1], -2), ("flat-tripartite", [2, 3, 1], 0)],
)
def test_nominal_examples(family, sizes, kappa):
    assert verify_family(generate(FamilySpec(family, sizes)), kappa).passed


def test_grouped_granularity_builds_hyperedges():
    H = generate(FamilySpec("flat-bipartite", [4, 3], granularity=(2, 3)))
    assert [(len(e.tail), len(e.head)) for e in H.edges] == [(2, 3), (2, 3)]
    assert verify_family(H, 0).passed


def test_negative_control_lists_failures():
    report = verify_family(generate(FamilySpec("flat-bipartite", [2, 2])), 1)
    assert not report.passed and len(report.failures) == 4


def test_internal_edge_breaks_nominal_value():
    base = generate(FamilySpec("ricci1-tripartite", [2, 1, 1]))
    H = DirectedHypergraph.build(base.vertices, [(e.tail, e.head) for e in base.edges] + [(["a1"], ["a2"])])
    assert not verify_family(H, NOMINAL_KAPPA["ricci1-tripartite"]).passed


@pytest.mark.parametrize(
    "spec",
    [
        dict(family="flat-bipartite", sizes=[1, 2, 3]),
        dict(family="nope", sizes=[1]),
        dict(family="flat-bipartite", sizes=[0, 1]),
        dict(family="ricci1-tripartite", sizes=[2, 2, 2], granularity=(1, 2)),
        dict(family="hyperloop", sizes=[1, 2, 3]),
        dict(family="hypertree", sizes=[3, 2]),
    ],
)
def test_spec_errors(spec):
    with pytest.raises(FamilyError):
        FamilySpec(**spec)


def test_hyperloop_family():
    for n in (1, 2, 3):
        for p in (0, 1, 2):
            H = generate(FamilySpec("hyperloop", [n, p]))
            assert H.edge("e1").tail_set == H.edge("e1").head_set
            assert curvature(H, "e1").kappa == 1


def test_generation_is_deterministic():
    a = generate(FamilySpec("hypertree", [7], seed=42))
    assert a == generate(FamilySpec("hypertree", [7], seed=42))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 7))
def test_hypertrees_satisfy_both_conditions(seed, n_edges):
    H = generate(FamilySpec("hypertree", [n_edges, 3, 3], seed=seed))
    assert hypertree_conditions(H) == (True, True)
    assert verify_family(H, hypertree_kappa).passed


def test_hypertree_validator_detects_each_condition():
    two_paths = DirectedHypergraph.build([], [(["a"], ["b", "c"]), (["b"], ["d"]), (["c"], ["d"])])
    assert hypertree_conditions(two_paths) == (False, True)
    cycle = DirectedHypergraph.build([], [(["a"], ["b"]), (["b"], ["a"])])
    assert hypertree_conditions(cycle)[1] is False


def test_weighted_hypertree_formula():
    H = with_random_weights(generate(FamilySpec("hypertree", [5], seed=1)), seed=2)
    assert verify_family(H, lambda G, e: hypertree_kappa(G, e, weighted=True), weighted=True).passed
    assert hypertree_kappa(H, "e1", weighted=True) == curvature(H, "e1", weighted=True).kappa


def test_random_weights_are_positive_rationals():
    H = with_random_weights(generate(FamilySpec("flat-bipartite", [2, 2])), seed=3)
    assert all(isinstance(e.weight, F) and e.weight > 0 for e in H.edges)
    assert all(v.weight > 0 for v in H.vertices.values())
