"""Pipeline oracles on the theta-track t11.

The small inputs and their expected outputs are derived by hand from the
t11 gluing table (recorded in test_homotopy_engine.py's docstring):

* trigon chase: the arc [vertical dual, B(h,t), carried, deep dual] needs two
  pushes; the B(h,t) hands off to an S(h,v,2), whose push threads a branch
  tie and leaves every interior snippet efficient.
* penultimate-bigon arc: [S(h,t,1), B(t,t), S(h,t,1)] collapses to the
  single switch tie (0,0)->(2,0).
* the length-2 closed curve [B(t,t), S(t,t,0)] is null-homotopic: the seam
  step closes the surviving snippet into the trivial loop of branch a.
* the length-2 closed curve [same-locus deep dual winding 4, S(v,v,0)] is
  the first boundary power: duplicating, merging (winds 4 + 4) and seaming
  (minus the duplicated 4) leaves the closed face snippet winding 4.
* the carried 4-loop is already efficient and must come back unchanged.
"""

from __future__ import annotations

import json
import random

import pytest

from trackform.curve_ops import ARC, CLOSED, Curve, measure, validate_curve
from trackform.fixtures import load_fixture
from trackform.generate import (
    boundary_power,
    doubled_back,
    peripheral_bounce,
    random_arc,
    random_closed,
    trivial_loop,
)
from trackform.pipelines import (
    EFFICIENT,
    INSIDE_EFFICIENT,
    SINGLE_SNIPPET,
    Run,
    big_arc,
    efficient_position,
    reduce_to_two,
    single_bad,
    terminal_summary,
    trig_arc,
)
from trackform.snippet_core import Snippet, classify


@pytest.fixture(scope="module")
def t11():
    return load_fixture("t11")


@pytest.fixture(scope="module")
def s04():
    return load_fixture("s04")


@pytest.fixture(scope="module")
def carried_loop(t11):
    r = t11.region_id
    return Curve(CLOSED, (
        Snippet(r["br:a"], (3, 0), (1, 0)),
        Snippet(r["sw:v1"], (1, 0), (3, 0)),
        Snippet(r["br:b"], (1, 0), (3, 0)),
        Snippet(r["sw:v0"], (3, 0), (1, 0)),
    ))


# --- hand-derived span algorithm oracles -----------------------------------


def test_trig_arc_two_step_chase(t11):
    r = t11.region_id
    arc = Curve(ARC, (
        Snippet(r["face:0"], (3, 2), (1, 2), 2),
        Snippet(r["br:a"], (0, 0), (1, 0)),
        Snippet(r["sw:v1"], (1, 0), (3, 1)),
        Snippet(r["face:0"], (2, 0), (3, 3), -3),
    ))
    run = Run(arc, t11)
    trig_arc(run)
    assert run.curve == Curve(ARC, (
        Snippet(r["face:0"], (3, 2), (1, 0), 2),
        Snippet(r["br:b"], (2, 0), (0, 0)),
        Snippet(r["face:0"], (3, 0), (3, 3), -4),
    ))
    assert run.homs == 2
    rules = [e["rule"] for e in run.events]
    assert rules == ["B(h,t)", "S(h,v,2)"]


def test_trig_arc_leaves_endpoint_trigon_alone(t11):
    r = t11.region_id
    arc = Curve(ARC, (
        Snippet(r["face:0"], (3, 2), (1, 2), 2),
        Snippet(r["br:a"], (0, 0), (1, 0)),
        Snippet(r["sw:v1"], (1, 0), (3, 1)),
    ))
    run = Run(arc, t11)
    trig_arc(run)
    assert run.curve == Curve(ARC, (
        Snippet(r["face:0"], (3, 2), (1, 1), 2),
        Snippet(r["sw:v1"], (2, 0), (3, 1)),
    ))
    # the surviving S(h,v,2) sits at the arc end: outside the interior
    assert run.homs == 1
    assert [classify(s, t11).type for s in run.curve.snippets][1] == "S(h,v,2)"


def test_big_arc_collapses_penultimate_bigon(t11):
    r = t11.region_id
    arc = Curve(ARC, (
        Snippet(r["sw:v0"], (0, 0), (1, 0)),
        Snippet(r["br:a"], (3, 0), (3, 0), 0),
        Snippet(r["sw:v0"], (1, 0), (2, 0)),
    ))
    run = Run(arc, t11)
    big_arc(run)
    assert run.curve == Curve(ARC, (Snippet(r["sw:v0"], (0, 0), (2, 0)),))
    assert run.homs == 1


def test_reduce_to_two_sweeps_interior(t11):
    r = t11.region_id
    arc = Curve(ARC, (
        Snippet(r["sw:v0"], (0, 0), (1, 0)),
        Snippet(r["br:a"], (3, 0), (3, 0), 0),
        Snippet(r["sw:v0"], (1, 0), (1, 0), 0),
        Snippet(r["br:a"], (3, 0), (1, 0)),
    ))
    run = Run(arc, t11)
    reduce_to_two(run)
    assert run.curve == Curve(ARC, (
        Snippet(r["sw:v0"], (0, 0), (1, 0)),
        Snippet(r["br:a"], (3, 0), (1, 0)),
    ))
    # the interior of the result is empty, hence efficient
    assert [p for p in run.bads() if 0 < p < run.n - 1] == []


# --- end-to-end drivers ----------------------------------------------------


def test_efficient_position_fixes_carried_loop(t11, carried_loop):
    res = efficient_position(carried_loop, t11)
    assert res.status == EFFICIENT
    assert res.curve == carried_loop
    assert res.homs == 0


def test_efficient_position_contracts_trivial_pair(t11):
    r = t11.region_id
    curve = Curve(CLOSED, (
        Snippet(r["br:a"], (3, 0), (3, 0), 0),
        Snippet(r["sw:v0"], (1, 0), (1, 0), 0),
    ))
    res = efficient_position(curve, t11)
    assert res.status == SINGLE_SNIPPET
    assert res.curve == Curve(CLOSED, (Snippet(r["br:a"], None, None, 0),))
    info = terminal_summary(res, t11)
    assert info["class"] == "inessential"


def test_efficient_position_reads_off_boundary_power(t11):
    r = t11.region_id
    curve = Curve(CLOSED, (
        Snippet(r["face:0"], (0, 0), (0, 0), 4),
        Snippet(r["sw:v0"], (3, 1), (3, 1), 0),
    ))
    res = efficient_position(curve, t11)
    assert res.status == SINGLE_SNIPPET
    assert res.curve == Curve(CLOSED, (Snippet(r["face:0"], None, None, 4),))
    info = terminal_summary(res, t11)
    assert info["class"] == "peripheral"
    assert info["power"] == 1


def test_efficient_position_arc_keeps_bad_endpoint(t11):
    r = t11.region_id
    arc = Curve(ARC, (
        Snippet(r["sw:v0"], (0, 0), (1, 0)),
        Snippet(r["br:a"], (3, 0), (3, 0), 0),
        Snippet(r["sw:v0"], (1, 0), (1, 0), 0),
        Snippet(r["br:a"], (3, 0), (1, 0)),
    ))
    res = efficient_position(arc, t11)
    assert res.status == INSIDE_EFFICIENT
    assert res.curve == Curve(ARC, (
        Snippet(r["sw:v0"], (0, 0), (1, 0)),
        Snippet(r["br:a"], (3, 0), (1, 0)),
    ))


def test_terminal_summary_of_builders(t11):
    for k in (1, 2, 3, -2):
        res = efficient_position(boundary_power(t11, 5, k), t11)
        assert res.status == SINGLE_SNIPPET
        info = terminal_summary(res, t11)
        assert info["class"] == "peripheral"
        assert info["power"] == k
    res = efficient_position(trivial_loop(t11, 2), t11)
    assert terminal_summary(res, t11)["class"] == "inessential"


def test_peripheral_bounce_reduces_to_power(t11):
    for k in (1, 2, -1):
        res = efficient_position(peripheral_bounce(t11, 5, k), t11)
        assert res.status == SINGLE_SNIPPET
        info = terminal_summary(res, t11)
        assert info["class"] == "peripheral"
        assert info["power"] == k


def test_doubled_back_curves_contract(t11):
    for seed in range(6):
        curve = doubled_back(t11, random.Random(seed), 3)
        res = efficient_position(curve, t11)
        assert res.status == SINGLE_SNIPPET
        info = terminal_summary(res, t11)
        assert info["class"] == "inessential"


# --- a weight-one bigon dispatch, on a hand-built 14-snippet curve ---------


@pytest.fixture(scope="module")
def weight_one_curve(t11):
    r = t11.region_id
    f, v0, v1, a, b, d = (r["face:0"], r["sw:v0"], r["sw:v1"],
                          r["br:a"], r["br:b"], r["br:d"])
    curve = Curve(CLOSED, (
        Snippet(v0, (3, 0), (3, 1)),        # S(t,v,1): the only bad snippet
        Snippet(f, (0, 0), (1, 2), -3),     # deep dual
        Snippet(a, (0, 0), (2, 0)),         # tie
        Snippet(f, (3, 2), (1, 3), 2),      # vertical dual
        Snippet(v0, (0, 0), (2, 0)),        # tie
        Snippet(f, (3, 1), (1, 0), 2),      # vertical dual
        Snippet(b, (2, 0), (0, 0)),         # tie
        Snippet(f, (3, 0), (1, 1), 2),      # vertical dual
        Snippet(v1, (2, 0), (0, 0)),        # tie
        Snippet(f, (3, 3), (0, 0), -3),     # deep dual
        Snippet(v0, (3, 1), (1, 0)),        # carried
        Snippet(a, (3, 0), (1, 0)),         # carried
        Snippet(v1, (1, 0), (3, 0)),        # carried
        Snippet(b, (1, 0), (3, 0)),         # carried
    ))
    validate_curve(curve, t11)
    return curve


def test_weight_one_curve_has_unique_bad(t11, weight_one_curve):
    kinds = [classify(s, t11) for s in weight_one_curve.snippets]
    bad = [i for i, c in enumerate(kinds) if c.bad]
    assert bad == [0]
    assert kinds[0].type == "S(t,v,1)"


def test_single_bad_resolves_weight_one(t11, weight_one_curve):
    run = Run(weight_one_curve, t11)
    before = run.report()
    single_bad(run)
    assert run.bads() == [] or run.n == 1
    phases = {e["phase"] for e in run.events}
    assert "weight_one_bigon" in phases
    after = run.report()
    s = t11.s_N
    # contract: resolving the weight-one bigon moves reduced length by at
    # most +2s - 5 (trigon outcome) and decreases it when a bigon remains
    assert after.len_red <= before.len_red + 2 * s - 5


def test_efficient_position_weight_one_terminates(t11, weight_one_curve):
    res = efficient_position(weight_one_curve, t11)
    assert res.status in (EFFICIENT, SINGLE_SNIPPET)
    validate_curve(res.curve, t11)


# --- determinism, counters, and sweeps -------------------------------------


def test_pipeline_is_deterministic(t11, weight_one_curve):
    r1 = efficient_position(weight_one_curve, t11)
    r2 = efficient_position(weight_one_curve, t11)
    assert r1.curve == r2.curve
    assert json.dumps(r1.events, sort_keys=True) == \
        json.dumps(r2.events, sort_keys=True)


def test_counters_match_full_recount(t11):
    # the incrementally maintained counters must agree with a full remeasure
    # at every terminal state, across a spread of random inputs
    for seed in range(12):
        curve = random_closed(t11, random.Random(seed), 8)
        res = efficient_position(curve, t11)
        assert res.report == measure(res.curve, t11)


def test_random_closed_sweep(t11):
    for seed in range(25):
        curve = random_closed(t11, random.Random(seed), 10)
        res = efficient_position(curve, t11)
        assert res.status in (EFFICIENT, SINGLE_SNIPPET)
        validate_curve(res.curve, t11)
        if res.status == EFFICIENT:
            assert all(not classify(s, t11).bad for s in res.curve.snippets)


def test_random_arc_sweep(t11):
    for seed in range(25):
        arc = random_arc(t11, random.Random(seed), 9)
        res = efficient_position(arc, t11)
        assert res.status in (EFFICIENT, INSIDE_EFFICIENT, SINGLE_SNIPPET)
        validate_curve(res.curve, t11)
        bad = [i for i, s in enumerate(res.curve.snippets)
               if classify(s, t11).bad]
        assert all(i in (0, len(res.curve.snippets) - 1) for i in bad)


def test_random_sweep_other_tracks(s04):
    for seed in range(12):
        curve = random_closed(s04, random.Random(seed), 8)
        res = efficient_position(curve, s04)
        assert res.status in (EFFICIENT, SINGLE_SNIPPET)
        validate_curve(res.curve, s04)


def test_all_fixture_tracks_smoke():
    for name in ("t11", "s12", "s04", "t11d"):
        nb = load_fixture(name)
        for seed in range(6):
            curve = random_closed(nb, random.Random(seed), 6)
            res = efficient_position(curve, nb)
            assert res.status in (EFFICIENT, SINGLE_SNIPPET)
            validate_curve(res.curve, nb)
