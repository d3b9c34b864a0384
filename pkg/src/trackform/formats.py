"""File formats: .track descriptions, .curve JSON, and .trace event logs.

Track files are line-oriented: `key: value` pairs, `#` comments, blank lines
ignored.  Keys: `format` (track/1), `genus`, `boundary`, `branches` (names
separated by spaces), one `switch NAME: large BR.END smalls BR.END BR.END`
line per switch (top small listed first), and one
`face disc:`/`face annulus:` line per complementary region whose value is the
boundary word (face on the left): tokens `BR.l`/`BR.r` for branch horizontal
edges, `SW.t`/`SW.b` for switch horizontal edges, `SW.c` for cusps.
"""
from __future__ import annotations

import json
import re
from typing import Any, Iterable

from .errors import BadInput, ParseError
from .track_model import FaceDesc, SwitchDesc, TrainTrackDesc

TRACK_FORMAT = "track/1"
CURVE_FORMAT = "curve/1"
TRACE_FORMAT = "trace/1"

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _check_name(name: str, line: int, what: str) -> str:
    if not _NAME_RE.match(name):
        raise ParseError(f"bad {what} name {name!r}", line=line)
    return name


def _parse_end(tok: str, line: int) -> tuple[str, int]:
    stem, _, end = tok.rpartition(".")
    if not stem or end not in ("0", "1"):
        raise ParseError(f"expected BRANCH.0 or BRANCH.1, got {tok!r}", line=line)
    return stem, int(end)


def parse_track(text: str) -> TrainTrackDesc:
    genus: int | None = None
    boundary: int | None = None
    branches: tuple[str, ...] | None = None
    switches: list[SwitchDesc] = []
    faces: list[FaceDesc] = []
    saw_format = False

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", line=ln)
        key, value = key.strip(), value.strip()
        if key == "format":
            if value != TRACK_FORMAT:
                raise ParseError(f"unsupported format {value!r}", line=ln)
            saw_format = True
        elif key == "genus":
            genus = _parse_int(value, ln, "genus")
        elif key == "boundary":
            boundary = _parse_int(value, ln, "boundary")
        elif key == "branches":
            branches = tuple(_check_name(t, ln, "branch") for t in value.split())
        elif key.startswith("switch "):
            name = _check_name(key[len("switch "):].strip(), ln, "switch")
            toks = value.split()
            if len(toks) != 5 or toks[0] != "large" or toks[2] != "smalls":
                raise ParseError(
                    "switch line must read 'large BR.E smalls BR.E BR.E'", line=ln)
            switches.append(SwitchDesc(
                name=name,
                large=_parse_end(toks[1], ln),
                smalls=(_parse_end(toks[3], ln), _parse_end(toks[4], ln)),
            ))
        elif key.startswith("face "):
            kind = key[len("face "):].strip()
            if kind not in ("disc", "annulus"):
                raise ParseError(f"face kind must be disc or annulus, got {kind!r}", line=ln)
            word = tuple(value.split())
            if not word:
                raise ParseError("empty face word", line=ln)
            faces.append(FaceDesc(kind=kind, word=word))
        else:
            raise ParseError(f"unknown key {key!r}", line=ln)

    if not saw_format:
        raise ParseError("missing 'format: track/1' line", line=1)
    if genus is None or boundary is None or branches is None:
        raise ParseError("missing genus, boundary, or branches line", line=1)
    return TrainTrackDesc(genus=genus, boundary=boundary, branches=branches,
                          switches=tuple(switches), faces=tuple(faces))


def _parse_int(value: str, line: int, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {value!r}", line=line) from None


def format_track(desc: TrainTrackDesc) -> str:
    out = [f"format: {TRACK_FORMAT}",
           f"genus: {desc.genus}",
           f"boundary: {desc.boundary}",
           f"branches: {' '.join(desc.branches)}"]
    for sw in desc.switches:
        out.append(
            f"switch {sw.name}: large {sw.large[0]}.{sw.large[1]}"
            f" smalls {sw.smalls[0][0]}.{sw.smalls[0][1]}"
            f" {sw.smalls[1][0]}.{sw.smalls[1][1]}")
    for f in desc.faces:
        out.append(f"face {f.kind}: {' '.join(f.word)}")
    return "\n".join(out) + "\n"


# -- curve files ------------------------------------------------------------

_KIND_TO_JSON = {"Closed": "closed", "Arc": "arc"}
_KIND_FROM_JSON = {v: k for k, v in _KIND_TO_JSON.items()}


def serialize_curve(curve, nb, track: str | None = None) -> str:
    """Canonical curve/1 JSON: snippets by region name, winding omitted when
    zero; byte-deterministic (sorted keys, two-space indent)."""
    from .curve_ops import validate_curve

    validate_curve(curve, nb)
    recs = []
    for s in curve.snippets:
        rec: dict[str, Any] = {
            "region": nb.regions[s.region].name,
            "start": list(s.start) if s.start is not None else None,
            "end": list(s.end) if s.end is not None else None,
        }
        if s.wind:
            rec["wind"] = s.wind
        recs.append(rec)
    doc: dict[str, Any] = {"format": CURVE_FORMAT,
                           "kind": _KIND_TO_JSON[curve.kind],
                           "snippets": recs}
    name = track if track is not None else getattr(nb, "name", None)
    if name is not None:
        doc["track"] = name
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_curve(text: str, nb) -> "Curve":
    """Parse curve/1 JSON against a tie neighbourhood, validating loci,
    windings, and the gluing chain (AdjacencyError names the snippet)."""
    from .curve_ops import Curve, validate_curve
    from .snippet_core import Snippet

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"curve file is not JSON: {exc.msg}",
                         line=exc.lineno, col=exc.colno) from None
    if not isinstance(doc, dict) or doc.get("format") != CURVE_FORMAT:
        raise ParseError(f"expected a {CURVE_FORMAT} document")
    kind = doc.get("kind")
    if kind not in _KIND_FROM_JSON:
        raise ParseError(f"curve kind must be 'closed' or 'arc', got {kind!r}")
    want = getattr(nb, "name", None)
    track = doc.get("track")
    if track is not None and want is not None and track != want:
        raise ParseError(
            f"curve is for track {track!r}, not {want!r}")
    recs = doc.get("snippets")
    if not isinstance(recs, list) or not recs:
        raise ParseError("curve needs a non-empty snippets list")
    snippets = []
    for i, rec in enumerate(recs):
        if not isinstance(rec, dict):
            raise ParseError(f"snippet {i} is not an object")
        rname = rec.get("region")
        rid = nb.region_id.get(rname)
        if rid is None:
            raise ParseError(f"snippet {i}: unknown region {rname!r}")
        start, end = rec.get("start"), rec.get("end")

        def locus(v, which):
            if v is None:
                return None
            if (not isinstance(v, list) or len(v) != 2
                    or not all(isinstance(x, int) for x in v)):
                raise ParseError(
                    f"snippet {i}: {which} must be [side, segment] or null")
            return (v[0], v[1])

        wind = rec.get("wind", 0)
        if not isinstance(wind, int):
            raise ParseError(f"snippet {i}: winding must be an integer")
        snippets.append(Snippet(rid, locus(start, "start"),
                                locus(end, "end"), wind))
    curve = Curve(_KIND_FROM_JSON[kind], tuple(snippets))
    validate_curve(curve, nb)
    return curve


# -- trace files ------------------------------------------------------------


def serialize_trace(events: Iterable[dict], **meta: Any) -> str:
    """trace/1: one header line, then one JSON record per event.  Compact
    separators and sorted keys make the bytes deterministic."""
    head: dict[str, Any] = {"format": TRACE_FORMAT}
    head.update(meta)
    lines = [json.dumps(head, sort_keys=True, separators=(",", ":"))]
    for ev in events:
        lines.append(json.dumps(ev, sort_keys=True, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> tuple[dict, list[dict]]:
    """Parse trace/1 text into (header metadata, event list)."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty trace file", line=1)
    out = []
    for ln, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            out.append(json.loads(raw))
        except json.JSONDecodeError as exc:
            raise ParseError(f"trace line is not JSON: {exc.msg}",
                             line=ln, col=exc.colno) from None
    head = out[0] if out else None
    if not isinstance(head, dict) or head.get("format") != TRACE_FORMAT:
        raise ParseError(f"expected a {TRACE_FORMAT} header line", line=1)
    return head, out[1:]
