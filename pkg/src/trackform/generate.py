"""Seeded generators for immersed curves and arcs on a tie neighbourhood.

The random walks step through the gluing: each snippet ends on a glued edge
segment, whose partner fixes the start of the next snippet.  Exits and
windings are drawn from a caller-supplied ``random.Random``, so every
generator is deterministic in the seed.

Besides the uniform walks there are builders for inputs with a known
homotopy class: single closed snippets (inessential loops), boundary powers
read off a face winding, bounce representatives of boundary powers, and
doubled-back curves that retrace themselves (null-homotopic by
construction).
"""

from __future__ import annotations

import random

from .curve_ops import ARC, CLOSED, Curve, reverse, validate_curve
from .errors import BadInput, GenerationFailed
from .snippet_core import Snippet, valid_winds
from .track_model import ANNULUS, BOUNDARY, Locus, TieNeighbourhood

__all__ = [
    "crossable_loci",
    "random_arc",
    "random_closed",
    "trivial_loop",
    "boundary_power",
    "peripheral_bounce",
    "doubled_back",
]


def crossable_loci(nb: TieNeighbourhood, region: int) -> list[Locus]:
    """Loci on glued sides of a region — the places a curve may cross."""
    out: list[Locus] = []
    for si, side in enumerate(nb.regions[region].sides):
        for gi in range(side.n_segments):
            locus = (si, gi)
            if nb.side_label(region, locus) == BOUNDARY:
                continue
            out.append(locus)
    return out


def _boundary_loci(nb: TieNeighbourhood, region: int) -> list[Locus]:
    out: list[Locus] = []
    for si, side in enumerate(nb.regions[region].sides):
        for gi in range(side.n_segments):
            locus = (si, gi)
            if nb.side_label(region, locus) == BOUNDARY:
                out.append(locus)
    return out


def _pick_wind(nb: TieNeighbourhood, region: int, start: Locus, end: Locus,
               rng: random.Random, spread: int) -> int:
    """A valid winding for the snippet, biased towards small magnitudes."""
    probe = Snippet(region, start, end, 0)
    fams = valid_winds(probe, nb)
    if fams is None:
        return 0
    m_r, m_l, n2 = fams
    d = min(rng.randrange(spread + 1), rng.randrange(spread + 1))
    if start == end:
        sign = rng.choice((1, -1))
        return sign * d * n2
    if rng.random() < 0.5:
        return m_r + n2 * d
    return -(m_l + n2 * d)


def _step(nb: TieNeighbourhood, region: int, start: Locus,
          rng: random.Random, spread: int,
          end_pool: list[Locus] | None = None) -> Snippet:
    pool = end_pool if end_pool is not None else crossable_loci(nb, region)
    end = rng.choice(pool)
    wind = _pick_wind(nb, region, start, end, rng, spread)
    return Snippet(region, start, end, wind)


def random_arc(nb: TieNeighbourhood, rng: random.Random, length: int,
               proper: bool = False, spread: int = 2) -> Curve:
    """A random arc of the requested snippet length.

    With ``proper=True`` the endpoints are placed on the surface boundary
    (requires a track whose complement meets the boundary); otherwise they
    sit on interior tiling edges.
    """
    if length < 1:
        raise BadInput("arc length must be >= 1")
    regions = range(len(nb.regions))
    if proper:
        starts = [(r, l) for r in regions for l in _boundary_loci(nb, r)]
        if not starts:
            raise BadInput("track has no surface boundary inside its faces")
    else:
        starts = [(r, l) for r in regions for l in crossable_loci(nb, r)]
    region, start = rng.choice(starts)
    snippets: list[Snippet] = []
    for i in range(length):
        last = i == length - 1
        if last and proper:
            pool = _boundary_loci(nb, region) or None
            if pool is None:
                last = False  # keep walking on a region with no boundary side
        if last and proper:
            s = _step(nb, region, start, rng, spread, end_pool=pool)
        else:
            s = _step(nb, region, start, rng, spread)
        snippets.append(s)
        if i < length - 1:
            nxt = nb.partner(s.region, s.end)
            assert nxt is not None
            region, start = nxt
    arc = Curve(ARC, tuple(snippets))
    validate_curve(arc, nb)
    return arc


def random_closed(nb: TieNeighbourhood, rng: random.Random, length: int,
                  spread: int = 2, patience: int = 256) -> Curve:
    """A random closed curve of roughly the requested snippet length.

    The walk runs freely for ``length - 1`` steps and then continues until
    it re-enters the region containing the gluing partner of its starting
    locus, where it closes up.  The result is therefore at least ``length``
    snippets long, usually exactly that.
    """
    if length < 2:
        raise BadInput("closed walks need length >= 2")
    starts = [(r, l) for r in range(len(nb.regions))
              for l in crossable_loci(nb, r)]
    region0, start0 = rng.choice(starts)
    back = nb.partner(region0, start0)
    assert back is not None
    close_region, close_locus = back
    region, start = region0, start0
    snippets: list[Snippet] = []
    for _ in range(length - 1):
        s = _step(nb, region, start, rng, spread)
        snippets.append(s)
        region, start = nb.partner(s.region, s.end)
    for _ in range(patience):
        if region == close_region:
            break
        pool = crossable_loci(nb, region)
        into_target = [l for l in pool
                       if nb.partner(region, l)[0] == close_region]
        s = _step(nb, region, start, rng, spread,
                  end_pool=into_target or pool)
        snippets.append(s)
        region, start = nb.partner(s.region, s.end)
    else:
        raise GenerationFailed("walk failed to return to its starting edge")
    wind = _pick_wind(nb, region, start, close_locus, rng, spread)
    snippets.append(Snippet(region, start, close_locus, wind))
    curve = Curve(CLOSED, tuple(snippets))
    validate_curve(curve, nb)
    return curve


def trivial_loop(nb: TieNeighbourhood, region: int) -> Curve:
    """The null-homotopic loop contained in one region."""
    loop = Curve(CLOSED, (Snippet(region, None, None, 0),))
    validate_curve(loop, nb)
    return loop


def boundary_power(nb: TieNeighbourhood, region: int, power: int) -> Curve:
    """The closed snippet winding ``power`` times around an annulus face."""
    r = nb.regions[region]
    if r.kind != ANNULUS:
        raise BadInput(f"region {r.name} is not an annulus face")
    n2 = nb.total_corners(region, nb.polygon_cycle(region))
    curve = Curve(CLOSED, (Snippet(region, None, None, power * n2),))
    validate_curve(curve, nb)
    return curve


def peripheral_bounce(nb: TieNeighbourhood, region: int, power: int) -> Curve:
    """A two-snippet representative of a boundary power: a same-locus face
    snippet winding ``power`` times around the annulus, bouncing off the
    region behind one of the face's glued edges."""
    if power == 0:
        raise BadInput("power must be nonzero")
    r = nb.regions[region]
    if r.kind != ANNULUS:
        raise BadInput(f"region {r.name} is not an annulus face")
    n2 = nb.total_corners(region, nb.polygon_cycle(region))
    locus = nb.cycle_loci(region, nb.polygon_cycle(region))[0]
    other_region, other_locus = nb.partner(region, locus)
    curve = Curve(CLOSED, (
        Snippet(region, locus, locus, power * n2),
        Snippet(other_region, other_locus, other_locus, 0),
    ))
    validate_curve(curve, nb)
    return curve


def doubled_back(nb: TieNeighbourhood, rng: random.Random,
                 length: int, spread: int = 2) -> Curve:
    """A closed curve that walks out and retraces itself — null-homotopic
    by construction.  Snippet length is 2 * length + 2."""
    out = random_arc(nb, rng, length, spread=spread)
    back = reverse(out)
    far_region, far_locus = nb.partner(out.snippets[-1].region,
                                       out.snippets[-1].end)
    home_region, home_locus = nb.partner(out.snippets[0].region,
                                         out.snippets[0].start)
    curve = Curve(CLOSED, (
        *out.snippets,
        Snippet(far_region, far_locus, far_locus, 0),
        *back.snippets,
        Snippet(home_region, home_locus, home_locus, 0),
    ))
    validate_curve(curve, nb)
    return curve


def gen_random_curve(nb: TieNeighbourhood, target_len: int,
                     seed: int) -> Curve:
    """Seeded closed-curve generator: deterministic in (track, target_len,
    seed).  A target of 1 yields a trivial loop in the first region."""
    if target_len < 1:
        raise BadInput("target_len must be >= 1")
    if target_len == 1:
        return trivial_loop(nb, 0)
    return random_closed(nb, random.Random(seed), target_len)
