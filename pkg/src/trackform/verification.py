"""Independent checkers for efficiency, trace soundness, and reachability.

Three layers of defence against a wrong pipeline:

* `check_efficient` re-decides per-snippet efficiency from the region
  incidence data alone — stepping locus by locus around boundary cycles and
  counting corner gaps — without calling the classifier's walk machinery, so
  a bug there cannot hide.

* `audit_trace` replays a recorded run event by event.  Each rewrite is
  re-executed and every recorded field must match; on top of that the audit
  asserts the per-rule contracts: window locality, length deltas, inner
  efficiency, slide winding deltas, and — on chase steps whose neighbours
  are efficient — membership in the trigon hand-off graph with its exact
  carried/dual deltas and turn preservation.  Forged rules, shifted windows,
  doctored counters, or a tampered final curve all raise `AuditFailure`
  naming the event and clause.

* `exhaustive_oracle` closes a small curve under *all* legal pushes
  (breadth-first, deduplicating closed curves up to rotation) and reports
  whether a fully efficient state or a one-snippet state is reachable,
  cross-validating the pipeline's terminal status on desk-scale instances.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .curve_ops import ARC, CLOSED, Curve, glue_seam, measure, reverse
from .errors import AuditFailure, NotApplicable, TrackformError
from .homotopy_engine import (EXPECTED_J, TRIGON_GRAPH, hom)
from .snippet_core import TRIGON_TYPES, Snippet, classify
from .track_model import ANNULUS, BOUNDARY, TieNeighbourhood

__all__ = [
    "EfficiencyReport",
    "AuditReport",
    "OracleVerdict",
    "check_efficient",
    "audit_trace",
    "exhaustive_oracle",
    "oracle_agrees",
]


# -- independent efficiency checker -----------------------------------------


@dataclass(frozen=True)
class EfficiencyReport:
    ok: bool
    verdicts: tuple[bool, ...]  # True = the snippet is in efficient position
    first_failure: int | None


def _stepped_corners(nb: TieNeighbourhood, region: int, a, b) -> int:
    """Corners passed stepping counter-clockwise from locus a to locus b."""
    ci, pa = nb.locus_cycle(region, a)
    cj, pb = nb.locus_cycle(region, b)
    if ci != cj:
        raise NotApplicable("endpoints on different boundary cycles")
    n = len(nb.cycle_loci(region, ci))
    c = 0
    for i in range((pb - pa) % n):
        if nb.gap_is_corner(region, ci, (pa + i) % n):
            c += 1
    return c


def _snippet_efficient(s: Snippet, nb: TieNeighbourhood) -> bool:
    """Decide efficiency from first principles.

    A snippet is bad exactly when it cuts off a piece of its region whose
    boundary, besides the snippet itself, passes at most one corner: such a
    piece has positive index.  A two-corner piece is an index-zero dual
    strip and anything longer is negative."""
    r = nb.regions[s.region]
    if s.closed:
        # bounds a disc (positive index) or runs parallel to the surface
        # boundary (index zero): never efficient
        return False
    if r.kind == ANNULUS:
        on_boundary = [nb.side_label(s.region, l) == BOUNDARY
                       for l in (s.start, s.end)]
        if all(on_boundary):
            return False  # cuts a strip against the surface boundary
        if any(on_boundary):
            return True  # runs from the track across to the surface boundary
        # the hugged piece of a wound snippet passes |wind| corners
        return abs(s.wind) >= 2
    c_r = _stepped_corners(nb, s.region, s.start, s.end)
    c_l = _stepped_corners(nb, s.region, s.end, s.start)
    return min(c_r, c_l) >= 2


def check_efficient(curve: Curve, nb: TieNeighbourhood) -> EfficiencyReport:
    verdicts = tuple(_snippet_efficient(s, nb) for s in curve.snippets)
    first = None
    for i, v in enumerate(verdicts):
        if not v:
            first = i
            break
    return EfficiencyReport(ok=first is None, verdicts=verdicts,
                            first_failure=first)


# -- trace audit ------------------------------------------------------------


@dataclass(frozen=True)
class AuditReport:
    ok: bool
    events: int
    checks: int


# Exact whole-curve (carried, dual-on-turn-side, dual-on-opposite-side)
# deltas of a chase step, keyed by (rule, surviving bad type).
_CHASE_DELTAS: dict[tuple[str, str], tuple[int, int, int]] = {
    ("B(h,t)", "S(h,t,1)"): (-1, 0, 0),
    ("B(h,t)", "S(h,t,3)"): (-1, 0, 0),
    ("B(h,t)", "S(h,v,2)"): (-1, 0, 0),
    ("B(h,t)", "R(h,v)"): (0, -1, 0),
    ("S(h,t,1)", "B(h,t)"): (-1, 0, 0),
    ("S(h,t,3)", "B(h,t)"): (-1, 0, 1),
    ("S(h,v,2)", "R(h,v)"): (0, -1, 0),
}


class _Audit:
    def __init__(self, trace, before: Curve, after: Curve,
                 nb: TieNeighbourhood) -> None:
        self.trace = trace
        self.before = before
        self.after = after
        self.nb = nb
        self.checks = 0
        self.index = -1

    def fail(self, clause: str, detail: str = "") -> None:
        msg = f"event {self.index}: {clause}"
        if detail:
            msg += f" ({detail})"
        raise AuditFailure(msg, event_index=self.index, clause=clause)

    def check(self, cond: bool, clause: str, detail: str = "") -> None:
        self.checks += 1
        if not cond:
            self.fail(clause, detail)

    def run(self) -> AuditReport:
        cur = self.before
        open_wind: int | None = None
        for self.index, ev in enumerate(self.trace):
            op = ev.get("op")
            if op == "hom":
                cur = self._replay_hom(cur, ev)
            elif op == "rotate":
                self.check(cur.kind == CLOSED, "op", "rotate on an arc")
                r = ev["by"] % len(cur.snippets)
                snap = cur.snippets
                cur = Curve(CLOSED, snap[r:] + snap[:r])
            elif op == "reverse":
                cur = reverse(cur)
            elif op == "open":
                self.check(cur.kind == CLOSED and not cur.snippets[0].closed,
                           "op", "open needs a closed curve of open snippets")
                self.check(ev["orig_wind"] == cur.snippets[0].wind,
                           "open-wind", "recorded seam winding is not the "
                           "basepoint snippet's")
                open_wind = cur.snippets[0].wind
                cur = Curve(ARC, cur.snippets + (cur.snippets[0],))
            elif op == "seam":
                self.check(open_wind is not None, "op", "seam without open")
                self.check(ev["orig_wind"] == open_wind, "seam-wind",
                           "seam winding differs from the opening event")
                cur = glue_seam(cur, open_wind, self.nb)
                open_wind = None
            else:
                self.fail("op", f"unknown op {op!r}")
            self._check_counters(cur, ev)
        self.index = len(self.trace)
        if cur.kind != self.after.kind or \
                cur.snippets != self.after.snippets:
            self.fail("final", "replayed terminal curve differs")
        self.checks += 1
        return AuditReport(ok=True, events=len(self.trace),
                           checks=self.checks)

    def _check_counters(self, cur: Curve, ev: dict) -> None:
        rec = ev.get("c")
        if rec is None:
            self.fail("counters", "event carries no counters")
        m = measure(cur, self.nb)
        full = [m.len_corn, m.len_block, m.carr, m.dual_R, m.dual_L,
                m.bad_count]
        self.check(list(rec) == full, "counters",
                   f"recorded {list(rec)} != recomputed {full}")

    def _replay_hom(self, cur: Curve, ev: dict) -> Curve:
        nb = self.nb
        n0 = len(cur.snippets)
        k_orig = (ev["k"] + ev.get("rot", 0)) % n0
        try:
            out, e2 = hom(cur, k_orig, nb)
        except TrackformError as exc:
            self.fail("not-bad", f"recorded push is illegal here: {exc}")
        self.check(e2.rotation == ev.get("rot", 0), "rot",
                   f"replayed rotation {e2.rotation}")
        self.check(e2.k == ev["k"], "k", f"replayed k {e2.k}")
        self.check(e2.rule == ev["rule"], "rule",
                   f"replayed rule {e2.rule}")
        self.check(e2.turn == ev.get("turn"), "turn",
                   f"replayed turn {e2.turn}")
        self.check(e2.j == ev["j"], "j", f"replayed j {e2.j}")
        self.check([e2.len_before, e2.len_after] == list(ev["n"]), "length",
                   f"replayed lengths {[e2.len_before, e2.len_after]}")
        self.check([e2.window_start, e2.window_len] == list(ev["win"]),
                   "window",
                   f"replayed window {[e2.window_start, e2.window_len]}")
        rcur = cur
        if e2.rotation:
            snap = cur.snippets
            rcur = Curve(CLOSED, snap[e2.rotation:] + snap[:e2.rotation])
        self._check_contracts(rcur, out, e2)
        return out

    def _check_contracts(self, rcur: Curve, out: Curve, e2) -> None:
        nb = self.nb
        n0, n1 = e2.len_before, e2.len_after
        ws, wl = e2.window_start, e2.window_len
        j, rule = e2.j, e2.rule

        # length delta is determined by the tiling points on the cut piece
        if n0 == 2 and rcur.kind == CLOSED:
            self.check(n1 - n0 == (j - 2 if j >= 1 else -1), "length",
                       "two-snippet closed rewrite length delta")
        else:
            self.check(n1 - n0 == j - 2, "length",
                       f"delta {n1 - n0} with j={j}")

        # j is pinned per rule; the comp-region bigon/trigon walks are
        # bounded by the tiling size
        if rule in EXPECTED_J:
            self.check(j in EXPECTED_J[rule], "j",
                       f"rule {rule} cannot have j={j}")
        elif rule == "R(h,v)":
            self.check(0 <= j <= nb.s_N, "j", f"R(h,v) walk of {j} points")
        else:
            self.check(0 <= j <= 2 * nb.s_N, "j",
                       f"{rule} walk of {j} points")

        if wl == n1:  # whole-curve rewrite of a two-snippet closed curve
            return

        # locality: nothing outside the replacement window moved
        self.check(rcur.snippets[:ws] == out.snippets[:ws], "locality",
                   "prefix changed")
        self.check(rcur.snippets[ws + 3:] == out.snippets[ws + wl:],
                   "locality", "suffix changed")

        pre = rcur.snippets[ws:ws + 3]
        post = out.snippets[ws:ws + wl]
        if j >= 1:
            # slid neighbours keep their far endpoint and region; their
            # winding moves by at most one corner crossing
            self.check(post[0].region == pre[0].region
                       and post[0].start == pre[0].start
                       and abs(post[0].wind - pre[0].wind) <= 1,
                       "slide", "previous snippet slid illegally")
            self.check(post[-1].region == pre[2].region
                       and post[-1].end == pre[2].end
                       and abs(post[-1].wind - pre[2].wind) <= 1,
                       "slide", "next snippet slid illegally")
            for s in post[1:-1]:
                self.check(not classify(s, nb).bad, "inner-bad",
                           "replacement interior snippet is bad")
        else:
            self.check(post[0].region == pre[0].region, "slide",
                       "merge left its region")

        # chase step: a lone bad trigon between efficient neighbours obeys
        # the hand-off graph with exact carried/dual deltas
        if rule in TRIGON_TYPES and not classify(pre[0], nb).bad \
                and not classify(pre[2], nb).bad:
            bad_out = [classify(s, nb) for s in post
                       if classify(s, nb).bad]
            self.check(len(bad_out) <= 1, "chase-multiplicity",
                       f"{len(bad_out)} bad snippets out of one trigon")
            dc, dt, do = self._window_deltas(pre, post, e2.turn)
            if bad_out:
                t2 = bad_out[0].type
                self.check(t2 in TRIGON_GRAPH[rule], "graph-edge",
                           f"{rule} -> {t2} is not a hand-off")
                self.check(bad_out[0].turn == e2.turn, "turn",
                           "hand-off flipped the turn")
                if rule == "R(h,v)":
                    self.check((dc, dt, do) == (j - 1, 0, 0), "chase-delta",
                               f"R(h,v) step changed ({dc},{dt},{do})")
                else:
                    self.check((dc, dt, do) == _CHASE_DELTAS[(rule, t2)],
                               "chase-delta",
                               f"{rule} -> {t2} changed ({dc},{dt},{do})")
            else:
                self.check(dc == (j - 1 if rule == "R(h,v)" else 0)
                           and abs(dt) <= 1 and abs(do) <= 1,
                           "chase-delta",
                           f"terminal step changed ({dc},{dt},{do})")

    def _window_deltas(self, pre, post, turn):
        nb = self.nb

        def tally(snips):
            carr = dr = dl = 0
            for s in snips:
                c = classify(s, nb)
                if c.verdict == "Carried":
                    carr += 1
                if c.vertical_dual or c.horizontal_dual:
                    if c.turn == "Right":
                        dr += 1
                    elif c.turn == "Left":
                        dl += 1
            return carr, dr, dl

        c0, r0, l0 = tally(pre)
        c1, r1, l1 = tally(post)
        dt = (r1 - r0) if turn == "Right" else (l1 - l0)
        do = (l1 - l0) if turn == "Right" else (r1 - r0)
        return c1 - c0, dt, do


def audit_trace(trace, before: Curve, after: Curve,
                nb: TieNeighbourhood) -> AuditReport:
    """Replay a recorded run and verify every event against its contracts.

    Raises AuditFailure naming the first failing event and clause."""
    return _Audit(trace, before, after, nb).run()


# -- exhaustive search oracle -----------------------------------------------


@dataclass(frozen=True)
class OracleVerdict:
    conclusive: bool
    efficient_reachable: bool
    single_reachable: bool
    states: int
    reason: str | None = None


def _state_key(curve: Curve):
    rep = tuple((s.region, s.start or (-1, -1), s.end or (-1, -1), s.wind)
                for s in curve.snippets)
    if curve.kind == ARC:
        return (ARC, rep)
    n = len(rep)
    return (CLOSED, min(rep[i:] + rep[:i] for i in range(n)))


def exhaustive_oracle(curve: Curve, nb: TieNeighbourhood,
                      max_len: int | None = None,
                      cap_states: int = 50_000) -> OracleVerdict:
    """Close the curve under all legal pushes and report what is reachable.

    Visits every curve obtainable by pushing bad snippets (interior ones for
    arcs), up to `max_len` snippets and `cap_states` distinct states; winding
    numbers are allowed to drift by at most 3*s_N from the input.  A search
    cut short is reported inconclusive rather than guessed — except that a
    reached one-snippet state is already a positive witness."""
    s_N = nb.s_N
    if max_len is None:
        max_len = len(curve.snippets) + 3 * s_N
    w0 = max((abs(s.wind) for s in curve.snippets), default=0)
    wind_cap = w0 + 3 * s_N

    seen = {_state_key(curve)}
    queue = deque([curve])
    efficient_found = False
    single_found = False
    pruned = False
    states = 0
    while queue:
        cur = queue.popleft()
        states += 1
        n = len(cur.snippets)
        bads = [i for i, s in enumerate(cur.snippets)
                if classify(s, nb).bad]
        if not bads:
            efficient_found = True
        elif n == 1:
            # a lone bad snippet is the contracted (inessential or
            # peripheral) terminal form: a positive witness
            single_found = True
            return OracleVerdict(True, efficient_found, True, states)
        if cur.kind == ARC:
            bads = [i for i in bads if 0 < i < n - 1]
        for k in bads:
            child, _ev = hom(cur, k, nb)
            if len(child.snippets) > max_len or any(
                    abs(s.wind) > wind_cap for s in child.snippets):
                pruned = True
                continue
            key = _state_key(child)
            if key in seen:
                continue
            if len(seen) >= cap_states:
                return OracleVerdict(False, efficient_found, single_found,
                                     states, reason="state cap")
            seen.add(key)
            queue.append(child)
    if pruned and not single_found:
        return OracleVerdict(False, efficient_found, single_found, states,
                             reason="length or winding cap")
    return OracleVerdict(True, efficient_found, single_found, states)


def oracle_agrees(verdict: OracleVerdict, status: str) -> bool:
    """Does a conclusive oracle verdict agree with a pipeline status on the
    single-snippet-vs-not question (and efficiency, where decided)?"""
    from .pipelines import EFFICIENT, SINGLE_SNIPPET
    if status == SINGLE_SNIPPET:
        return verdict.single_reachable
    if verdict.single_reachable:
        return False
    if status == EFFICIENT:
        return verdict.efficient_reachable
    return True
