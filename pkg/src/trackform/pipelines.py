"""Drive a curve or arc into efficient position by elementary homotopies.

The strategy works outside-in.  A sweep (`reduce_to_two`) grows a prefix of
the curve one snippet at a time, each step collapsing the newest interior
bigon and chasing trigons out of the prefix interior, so that afterwards only
the two outermost positions can hold bad snippets.  For closed curves a seam
step (`reduce_to_one`) then duplicates the basepoint snippet, cleans the
opened arc, and glues the two halves of the duplicate back together, leaving
at most one bad snippet.  A final case analysis (`single_bad`) removes that
survivor: most bigon types vanish in one push; the horizontal bigons need
follow-up pushes chosen by the shape of their neighbourhood (narrow or wide
complement bigons, blocked branch bigons); whenever a push hands the problem
to a trigon, a plain chase (`trig_curve`) finishes.

Every push goes through `Run`, which owns the working curve, enforces the
global rewrite budget, maintains the length counters incrementally from the
rewrite windows, and records one trace event per operation.  The recorded
events are self-contained: an auditor can replay them from the input curve
and byte-compare every intermediate state.

Termination is certified by step budgets: each loop asserts twice its proven
bound and raises `BudgetExceeded` rather than run away.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curve_ops import (
    ARC,
    CLOSED,
    Curve,
    LengthReport,
    _window_is_blocker,
    glue_seam,
    is_blocker,
    measure,
    reverse,
    validate_curve,
)
from .errors import BadInput, BudgetExceeded
from .homotopy_engine import RewriteEvent, hom
from .snippet_core import classify, corner_length, is_bigon, is_trigon
from .track_model import TieNeighbourhood

__all__ = [
    "EFFICIENT",
    "SINGLE_SNIPPET",
    "INSIDE_EFFICIENT",
    "Run",
    "Result",
    "trig_arc",
    "trig_curve",
    "big_arc",
    "reduce_to_two",
    "reduce_to_one",
    "all_but",
    "weight_one",
    "weight_two",
    "two_trigons",
    "hor_bigon_comp",
    "hor_bigon_branch",
    "single_bad",
    "efficient_position",
    "terminal_summary",
]

EFFICIENT = "Efficient"
SINGLE_SNIPPET = "SingleSnippet"
INSIDE_EFFICIENT = "InsideEfficient"

# Bigon types removed by a single push with no follow-up.
EASY_BIGONS = frozenset(
    {"B(t,t)", "S(h,h,0)", "S(t,t,0)", "S(v,v,0)", "R(v,v)"})


def _snippet_counts(s, nb) -> tuple[int, int, int, int, int]:
    c = classify(s, nb)
    corn = corner_length(s, nb)
    dual = c.vertical_dual or c.horizontal_dual
    return (
        corn,
        1 if c.verdict == "Carried" else 0,
        1 if dual and c.turn == "Right" else 0,
        1 if dual and c.turn == "Left" else 0,
        1 if c.bad else 0,
    )


class Run:
    """The working frame of one homotopy run: curve, counters, trace."""

    def __init__(self, curve: Curve, nb: TieNeighbourhood,
                 max_homs: int | None = None) -> None:
        validate_curve(curve, nb)
        self.nb = nb
        self.curve = curve
        self.events: list[dict] = []
        # one (loop name, steps used, size parameter, lo, tail, first event
        # index, end event index) row per span-loop invocation, so budget
        # audits can check the proven 1x bounds and replay each loop's own
        # events against its own span
        self.budget_log: list[tuple[str, int, int, int, int, int, int]] = []
        self.homs = 0
        self.max_homs = max_homs
        self._orig_wind: int | None = None
        self._recount()

    # -- state queries ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.curve.snippets)

    @property
    def kind(self) -> str:
        return self.curve.kind

    def cls_at(self, i: int):
        return classify(self.curve.snippets[i], self.nb)

    def corn_at(self, i: int) -> int:
        return corner_length(self.curve.snippets[i], self.nb)

    def bads(self) -> list[int]:
        return list(self._bads)

    def report(self) -> LengthReport:
        c = self._c
        return LengthReport(len=self.n, len_corn=c[0], len_block=c[1],
                            carr=c[2], dual_R=c[3], dual_L=c[4],
                            bad_count=c[5])

    # -- counter maintenance ------------------------------------------------

    def _recount(self) -> None:
        m = measure(self.curve, self.nb)
        self._c = [m.len_corn, m.len_block, m.carr, m.dual_R, m.dual_L,
                   m.bad_count]
        self._bads = [i for i, s in enumerate(self.curve.snippets)
                      if classify(s, self.nb).bad]

    def _check_budget(self) -> None:
        if self.max_homs is not None and self.homs >= self.max_homs:
            raise BudgetExceeded(
                f"global rewrite budget of {self.max_homs} pushes exhausted")

    def _blockers_near(self, curve: Curve, starts: range) -> int:
        nb = self.nb
        snap = curve.snippets
        n = len(snap)
        if n < 3:
            return 0
        if curve.kind == CLOSED:
            idxs = {i % n for i in starts}
        else:
            idxs = {i for i in starts if 0 <= i <= n - 3}
        total = 0
        for i in idxs:
            w = [snap[(i + d) % n] for d in range(3)]
            classes = tuple(classify(x, nb) for x in w)
            kinds = tuple(nb.regions[x.region].kind for x in w)
            if _window_is_blocker(classes, kinds):
                total += 1
        return total

    def _apply_window(self, before: Curve, ev: RewriteEvent) -> None:
        """Update counters and bad positions from one rewrite window.

        `before` must already carry the rotation the rewrite applied."""
        out = self.curve
        n0, n1 = ev.len_before, ev.len_after
        ws, wl = ev.window_start, ev.window_len
        if wl == n1 or n0 <= 4:
            self._recount()
            return
        nb = self.nb
        c = self._c
        c[1] -= self._blockers_near(before, range(ws - 2, ws + 3))
        for p in range(ws, ws + 3):
            corn, carr, dr, dl, bd = _snippet_counts(before.snippets[p], nb)
            c[0] -= corn
            c[2] -= carr
            c[3] -= dr
            c[4] -= dl
            c[5] -= bd
        for p in range(ws, ws + wl):
            corn, carr, dr, dl, bd = _snippet_counts(out.snippets[p], nb)
            c[0] += corn
            c[2] += carr
            c[3] += dr
            c[4] += dl
            c[5] += bd
        c[1] += self._blockers_near(out, range(ws - 2, ws + wl))
        shift = n1 - n0
        bads = [p for p in self._bads if p < ws]
        bads += [p + shift for p in self._bads if p > ws + 2]
        bads += [p for p in range(ws, ws + wl)
                 if classify(out.snippets[p], nb).bad]
        self._bads = sorted(set(bads))

    # -- operations (each records one trace event) --------------------------

    def hom_at(self, k: int, phase: str) -> RewriteEvent:
        self._check_budget()
        before = self.curve
        out, ev = hom(before, k, self.nb)
        self.homs += 1
        if ev.rotation:
            snap = before.snippets
            before = Curve(CLOSED, snap[ev.rotation:] + snap[:ev.rotation])
            n0 = len(snap)
            self._bads = sorted((p - ev.rotation) % n0 for p in self._bads)
        self.curve = out
        self._apply_window(before, ev)
        self.events.append({
            "op": "hom", "phase": phase, "k": ev.k, "rot": ev.rotation,
            "rule": ev.rule, "turn": ev.turn, "j": ev.j,
            "n": [ev.len_before, ev.len_after],
            "win": [ev.window_start, ev.window_len],
            "c": list(self._c),
        })
        return ev

    def rotate(self, r: int, phase: str) -> None:
        if self.kind != CLOSED:
            raise BadInput("only closed curves rotate")
        r %= self.n
        if r == 0:
            return
        snap = self.curve.snippets
        self.curve = Curve(CLOSED, snap[r:] + snap[:r])
        self._bads = sorted((p - r) % len(snap) for p in self._bads)
        self.events.append({"op": "rotate", "phase": phase, "by": r,
                            "c": list(self._c)})

    def reverse_(self, phase: str) -> None:
        self.curve = reverse(self.curve)
        self._recount()
        self.events.append({"op": "reverse", "phase": phase,
                            "c": list(self._c)})

    def open_dup(self, phase: str) -> None:
        """Open a closed curve into an arc by duplicating its basepoint
        snippet at the far end; the seam step undoes the duplication."""
        if self.kind != CLOSED:
            raise BadInput("only closed curves open at a seam")
        s0 = self.curve.snippets[0]
        if s0.closed:
            raise BadInput("cannot open a curve at a closed snippet")
        self._orig_wind = s0.wind
        self.curve = Curve(ARC, self.curve.snippets + (s0,))
        self._recount()
        self.events.append({"op": "open", "phase": phase,
                            "orig_wind": self._orig_wind,
                            "c": list(self._c)})

    def seam(self, phase: str) -> None:
        if self.kind != ARC or self._orig_wind is None:
            raise BadInput("seam closes an arc opened by open_dup")
        w = self._orig_wind
        self.curve = glue_seam(self.curve, w, self.nb)
        self._orig_wind = None
        self._recount()
        self.events.append({"op": "seam", "phase": phase, "orig_wind": w,
                            "c": list(self._c)})


# -- span algorithms --------------------------------------------------------


def trig_arc(run: Run, lo: int = 0, tail: int = 0,
             phase: str = "trig_arc") -> None:
    """Push every bad snippet out of the span interior.

    The span covers positions [lo, n - 1 - tail]; its two end positions are
    never rewritten.  The span boundary stays put while interior pushes
    shrink or grow the curve, so `tail` keeps addressing the same suffix."""
    s = run.nb.s_N
    interior = max(run.n - tail - lo - 2, 0)
    limit = 2 * (interior + 1) * (s + 2)
    steps = 0
    e0 = len(run.events)
    try:
        while True:
            hi = run.n - 1 - tail
            ks = [p for p in run.bads() if lo < p < hi]
            if not ks:
                return
            steps += 1
            if steps > limit:
                raise BudgetExceeded(
                    f"trigon chase exceeded {limit} pushes on a span of "
                    f"{interior} interior snippets")
            run.hom_at(ks[0], phase)
    finally:
        run.budget_log.append(("trig_arc", steps, interior, lo, tail,
                               e0, len(run.events)))


def big_arc(run: Run, lo: int = 0, tail: int = 0,
            phase: str = "big_arc") -> None:
    """Collapse a bigon at the penultimate span position, then chase."""
    hi = run.n - 1 - tail
    if hi - lo + 1 > 2 and is_bigon(run.cls_at(hi - 1)):
        run.hom_at(hi - 1, phase)
    trig_arc(run, lo, tail, phase)


def reduce_to_two(run: Run, phase: str = "reduce_to_two") -> None:
    """Sweep the curve so only the outermost two positions stay bad."""
    n0 = run.n
    if n0 <= 2:
        return
    for k in range(3, n0):
        big_arc(run, 0, n0 - k, phase)
    big_arc(run, 0, 0, phase)


def reduce_to_one(run: Run, phase: str = "reduce_to_one") -> None:
    """Merge the two adjacent bad positions of a swept closed curve."""
    if run.kind != CLOSED:
        raise BadInput("the seam step applies to closed curves")
    if run.n < 2:
        return
    run.open_dup(phase)
    big_arc(run, 0, 0, phase)
    run.seam(phase)


# -- the single-bad-snippet case analysis -----------------------------------


def all_but(run: Run, k: int, phase: str = "all_but") -> None:
    """Remove any bigon except the horizontal types R(h,h) and B(h,h)."""
    t = run.cls_at(k).type
    if t == "S(t,v,1)":
        weight_one(run, k)
    elif t == "S(t,t,2)":
        weight_two(run, k)
    else:
        assert t in EASY_BIGONS, t
        run.hom_at(k, phase)


def weight_one(run: Run, k: int, phase: str = "weight_one_bigon") -> None:
    """Push an S(t,v,1) bigon; collapse the annulus trigon it may leave."""
    ev = run.hom_at(k, phase)
    assert ev.len_before > 2, "a weight-one bigon cannot close a 2-curve"
    ws = ev.window_start
    for p in (ws, ws + 1):
        if run.cls_at(p).type == "R(h,v)":
            run.hom_at(p, phase)
            return


def weight_two(run: Run, k: int, phase: str = "weight_two_bigon") -> None:
    """Push an S(t,t,2) bigon and clean up after it.

    The push leaves a vertical dual flanked by two annulus trigons; chasing
    from just past the dual sweeps one trigon around the curve.  If it comes
    back as a bigon against the other trigon, one more push removes both."""
    if run.n == 2:
        ev = run.hom_at(k, phase)
        run.hom_at((ev.k - 1) % run.n, phase)
        return
    ev = run.hom_at(k, phase)
    run.rotate(ev.k, phase)
    trig_arc(run, 0, 0, phase)
    if is_bigon(run.cls_at(run.n - 1)):
        run.hom_at(run.n - 1, phase)


def two_trigons(run: Run, phase: str = "two_trigons") -> None:
    """Resolve a closed curve whose only bads are an adjacent S(h,t,1) or
    S(h,t,3) at position 0 and a B(h,t) at position 1, turning the same
    way."""
    t0 = run.cls_at(0).type
    assert t0 in ("S(h,t,1)", "S(h,t,3)"), t0
    assert run.cls_at(1).type == "B(h,t)"
    if t0 == "S(h,t,3)":
        run.hom_at(1, phase)
        if not run.cls_at(1).bad:
            return
        run.hom_at(1, phase)
        if run.cls_at(0).type == "S(t,t,0)":
            run.hom_at(0, phase)
            return
        trig_arc(run, 1, 0, phase)
        if run.cls_at(run.n - 1).type == "R(h,v)":
            ev = run.hom_at(run.n - 1, phase)
            run.hom_at(ev.window_start + ev.window_len - 1, phase)
            return
        if not run.cls_at(1).bad:
            return
    run.hom_at(1, phase)
    run.hom_at(0, phase)


def hor_bigon_comp(run: Run, k: int, phase: str = "hor_bigon_comp") -> None:
    """Remove an R(h,h) bigon in a complementary region."""
    assert run.cls_at(k).type == "R(h,h)"
    if run.n == 2:
        run.hom_at(k, phase)
        b = run.bads()
        if run.n > 1 and b:
            assert len(b) == 1, b
            all_but(run, b[0])
        return
    ev = run.hom_at(k, phase)
    ws = ev.window_start
    if ev.j == 0:
        # narrow: the merge lands flat against the far side of a rectangle
        t = run.cls_at(ws).type
        assert t in ("B(h,h)", "S(h,h,0)"), t
        return
    if run.cls_at(ws).type in ("B(h,h)", "S(h,h,0)"):
        return
    _hor_bigon_wide(run, ev)


def _hor_bigon_wide(run: Run, ev: RewriteEvent,
                    phase: str = "hor_bigon_wide") -> None:
    """Continue after pushing a wide R(h,h): the window opened a fan of
    trigons; chase them around the curve and resolve what returns."""
    run.rotate(ev.k, phase)
    trig_arc(run, 0, 1, phase)
    if not any(p <= run.n - 2 for p in run.bads()):
        return
    if run.cls_at(run.n - 2).type == "R(h,v)":
        run.hom_at(run.n - 2, phase)
        b = run.bads()
        if run.n > 1 and b:
            assert len(b) == 1, b
            all_but(run, b[0])
        return
    if run.cls_at(run.n - 1).type in ("S(h,t,1)", "S(h,t,3)"):
        run.rotate(run.n - 1, phase)
        two_trigons(run)
        return
    # mirror image of the previous case: flip, resolve, flip back
    run.reverse_(phase)
    run.rotate(run.n - 1, phase)
    two_trigons(run)
    run.reverse_(phase)


def hor_bigon_branch(run: Run, k: int,
                     phase: str = "hor_bigon_branch") -> None:
    """Remove a B(h,h) bigon in a branch rectangle.

    One push suffices unless both neighbours are vertical duals of opposite
    turns guarded by blockers on both sides; that double-blocked shape takes
    three pushes.  When exactly one neighbour is a short complement snippet,
    the push turns the bigon into an R(h,h) handled by `hor_bigon_comp`."""
    assert run.cls_at(k).type == "B(h,h)"
    nb = run.nb
    n = run.n
    if n == 2:
        run.hom_at(k, phase)
        return
    two_sn = 2 * nb.s_N
    km, kp = (k - 1) % n, (k + 1) % n
    cm, cp = run.corn_at(km), run.corn_at(kp)
    if cm == two_sn or cp == two_sn:
        run.hom_at(k, phase)
        return
    clm, clp = run.cls_at(km), run.cls_at(kp)
    if (clm.vertical_dual and clp.vertical_dual
            and clm.turn is not None and clm.turn == clp.turn):
        run.hom_at(k, phase)
        return
    if cm > 1 and cp > 1:
        run.hom_at(k, phase)
        return
    if cm == 1 and cp == 1:
        if not (is_blocker(run.curve, nb, (k - 3) % n)
                and is_blocker(run.curve, nb, kp)):
            run.hom_at(k, phase)
            return
        e1 = run.hom_at(k, phase)
        e2 = run.hom_at(e1.window_start, phase)
        run.hom_at(e2.window_start, phase)
        return
    run.hom_at(k, phase)
    b = run.bads()
    if run.n > 1 and b:
        assert len(b) == 1, b
        assert run.cls_at(b[0]).type == "R(h,h)"
        hor_bigon_comp(run, b[0])


def trig_curve(run: Run, phase: str = "trig_curve") -> None:
    """Chase bad snippets around a closed curve until none remain."""
    s = run.nb.s_N
    red0 = max(run.report().len_red, 0)
    limit = 2 * (red0 + 2 * s + 2) * (s + 2)
    steps = 0
    e0 = len(run.events)
    try:
        while run.n > 1:
            b = run.bads()
            if not b:
                return
            steps += 1
            if steps > limit:
                raise BudgetExceeded(
                    f"closed trigon chase exceeded {limit} pushes")
            run.hom_at(b[0], phase)
    finally:
        run.budget_log.append(("trig_curve", steps, red0, 0, 0,
                               e0, len(run.events)))


def single_bad(run: Run, phase: str = "single_bad") -> None:
    """Remove the last bad snippet of a closed curve."""
    red0 = max(run.report().len_red, 0)
    limit = 2 * (red0 + 1) + 1
    iters = 0
    e0 = len(run.events)
    try:
        while run.n > 1:
            b = run.bads()
            if not b:
                return
            iters += 1
            if iters > limit:
                raise BudgetExceeded(
                    f"single-bad resolution exceeded {limit} rounds")
            k = b[0]
            t = run.cls_at(k).type
            if t in EASY_BIGONS or t in ("S(t,v,1)", "S(t,t,2)"):
                all_but(run, k)
            elif t == "R(h,h)":
                hor_bigon_comp(run, k)
            elif t == "B(h,h)":
                hor_bigon_branch(run, k)
            if run.n <= 1:
                return
            if any(is_trigon(run.cls_at(p)) for p in run.bads()):
                trig_curve(run)
                return
    finally:
        run.budget_log.append(("single_bad", iters, red0, 0, 0,
                               e0, len(run.events)))


# -- driver -----------------------------------------------------------------


@dataclass(frozen=True)
class Result:
    """Outcome of one full homotopy run."""
    status: str
    curve: Curve
    events: list = field(repr=False)
    homs: int = 0
    report: LengthReport | None = None
    budget_log: list = field(repr=False, default_factory=list)


def efficient_position(curve: Curve, nb: TieNeighbourhood,
                       max_homs: int | None = None) -> Result:
    """Homotope the curve or arc into efficient position, or contract it to
    a single snippet exposing its homotopy class."""
    s = nb.s_N
    n0 = len(curve.snippets)
    cap = max_homs if max_homs is not None \
        else 2 * (6 * s * (s + 2) + 8) * (n0 + 2) ** 2
    run = Run(curve, nb, max_homs=cap)
    if run.kind == ARC:
        reduce_to_two(run)
    else:
        if run.n > 2:
            reduce_to_two(run)
        if run.n > 1:
            reduce_to_one(run)
            single_bad(run)
    validate_curve(run.curve, nb)
    return Result(status=_terminal_status(run), curve=run.curve,
                  events=run.events, homs=run.homs, report=run.report(),
                  budget_log=run.budget_log)


def _terminal_status(run: Run) -> str:
    b = run.bads()
    if not b:
        return EFFICIENT
    if run.n == 1:
        return SINGLE_SNIPPET
    assert run.kind == ARC and all(p in (0, run.n - 1) for p in b), \
        "terminal curve still has interior bad snippets"
    return INSIDE_EFFICIENT


def terminal_summary(result: Result, nb: TieNeighbourhood) -> dict:
    """Human-facing reading of a terminal state: essential curves stay in
    efficient position; single snippets are read off as inessential or as a
    power of a boundary component."""
    info: dict = {"status": result.status,
                  "len": len(result.curve.snippets)}
    if result.status == EFFICIENT:
        info["class"] = "essential"
        return info
    if result.status == INSIDE_EFFICIENT:
        info["class"] = "essential"
        info["note"] = "endpoints fixed as given; interior efficient"
        return info
    s = result.curve.snippets[0]
    cls = classify(s, nb)
    info["region"] = nb.regions[s.region].name
    if cls.type == "PeripheralCurve":
        n2 = nb.total_corners(s.region, nb.polygon_cycle(s.region))
        info["class"] = "peripheral"
        info["power"] = s.wind // n2
        info["boundary"] = nb.boundary_components.index(
            (s.region, nb.boundary_side(s.region)))
    else:
        info["class"] = "inessential"
    return info
