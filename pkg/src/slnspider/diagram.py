"""Sliced diagrams in a disk.

A diagram is a bottom boundary word (left to right) plus a stack of
elementary layers applied bottom to top.  Every strand end carries a
label and an arrow direction "up"/"down", meaning the arrow drawn on
that vertical segment points up or down the page.  Layer kinds:

    cup    creates two adjacent ends of one bent strand
    cap    consumes two adjacent ends (same label, opposite dirs)
    vcross two adjacent strands pass through each other (cobweb only)
    tag    a bivalent vertex: the strand's label conjugates and its
           arrow reverses; a side marker points left or right
    merge  two web strands fuse (labels add)
    split  one web strand divides

Cup flow "lr" means the arrow runs down the left leg and up the right
(so it creates ends (down, up)); "rl" is the reverse.  Cap flow is
implied by the dirs it consumes.

Diagrams are validated on construction and immutable afterwards, so
they are safe to share across threads.  Structural equality is exact
equality of the bottom word and layer list; nothing here knows about
the rewrite relations, which live with the web/cobweb clients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .scalar import LaurentScalar

UP = "up"
DOWN = "down"
LEFT = "left"
RIGHT = "right"

WEB = "web"
COBWEB = "cobweb"


def flip_dir(d: str) -> str:
    return DOWN if d == UP else UP


def flip_side(s: str) -> str:
    return RIGHT if s == LEFT else LEFT


class DiagramError(Exception):
    pass


class IllFormed(DiagramError):
    """A layer does not compose with the boundary word below it."""

    def __init__(self, layer_index: int, reason: str):
        self.layer_index = layer_index
        self.reason = reason
        super().__init__(f"layer {layer_index}: {reason}")


class BadLabel(IllFormed):
    """A strand label is out of range or violates flow conservation."""


class FlowViolation(IllFormed):
    """Arrow directions at a generator are inconsistent."""


class BoundaryMismatch(DiagramError):
    pass


@dataclass(frozen=True)
class StrandEnd:
    label: Any  # int for webs, Root for cobwebs
    dir: str

    def reversed(self) -> "StrandEnd":
        return StrandEnd(self.label, flip_dir(self.dir))


@dataclass(frozen=True)
class Layer:
    gen: str
    pos: int
    label: Any = None  # cup: label of both legs
    flow: str | None = None  # cup: "lr" | "rl"
    side: str | None = None  # tag: "left" | "right"
    left: int | None = None  # split: label of the left output


def _conjugate(kind: str, n: int, label: Any) -> Any:
    if kind == WEB:
        return n - label
    return label.conj()


def layer_in_arity(layer: Layer) -> int:
    return {"cup": 0, "cap": 2, "vcross": 2, "tag": 1, "merge": 2, "split": 1}[layer.gen]


def layer_out_arity(layer: Layer) -> int:
    return {"cup": 2, "cap": 0, "vcross": 2, "tag": 1, "merge": 1, "split": 2}[layer.gen]


def apply_layer(n: int, kind: str, word: tuple[StrandEnd, ...], layer: Layer,
                index: int = -1) -> tuple[StrandEnd, ...]:
    """Apply one layer to a boundary word, checking all generator constraints."""
    p = layer.pos
    g = layer.gen
    ar = layer_in_arity(layer)
    if p < 0 or p + ar > len(word):
        raise IllFormed(index, f"{g} at {p} out of range for word of length {len(word)}")

    if g == "cup":
        if layer.flow not in ("lr", "rl"):
            raise IllFormed(index, f"cup needs flow 'lr' or 'rl', got {layer.flow!r}")
        _check_label(n, kind, layer.label, index)
        dirs = (DOWN, UP) if layer.flow == "lr" else (UP, DOWN)
        new = (StrandEnd(layer.label, dirs[0]), StrandEnd(layer.label, dirs[1]))
        return word[:p] + new + word[p:]

    if g == "cap":
        a, b = word[p], word[p + 1]
        if a.label != b.label:
            raise BadLabel(index, f"cap joins mismatched labels {a.label!r}/{b.label!r}")
        if a.dir == b.dir:
            raise FlowViolation(index, "cap needs opposite arrow directions")
        return word[:p] + word[p + 2:]

    if g == "vcross":
        if kind != COBWEB:
            raise IllFormed(index, "virtual crossings only occur in cobwebs")
        return word[:p] + (word[p + 1], word[p]) + word[p + 2:]

    if g == "tag":
        if layer.side not in (LEFT, RIGHT):
            raise IllFormed(index, f"tag needs side 'left' or 'right', got {layer.side!r}")
        e = word[p]
        if kind == WEB and not (1 <= e.label <= n - 1):
            raise BadLabel(index, f"tag pairs labels k and n-k; label {e.label} invalid")
        out = StrandEnd(_conjugate(kind, n, e.label), flip_dir(e.dir))
        return word[:p] + (out,) + word[p + 1:]

    if g == "merge":
        if kind != WEB:
            raise IllFormed(index, "merge is a web generator")
        a, b = word[p], word[p + 1]
        if a.dir != b.dir:
            raise FlowViolation(index, "merge needs equal arrow directions")
        s = a.label + b.label
        if s > n:
            raise BadLabel(index, f"merge of {a.label}+{b.label} exceeds n={n}")
        return word[:p] + (StrandEnd(s, a.dir),) + word[p + 2:]

    if g == "split":
        if kind != WEB:
            raise IllFormed(index, "split is a web generator")
        a = word[p]
        if layer.left is None or not (1 <= layer.left <= a.label - 1):
            raise BadLabel(index, f"split of {a.label} needs 1 <= left <= {a.label - 1}")
        out = (StrandEnd(layer.left, a.dir), StrandEnd(a.label - layer.left, a.dir))
        return word[:p] + out + word[p + 1:]

    raise IllFormed(index, f"unknown generator {g!r}")


def _check_label(n: int, kind: str, label: Any, index: int) -> None:
    if kind == WEB:
        if not isinstance(label, int) or not (1 <= label <= n):
            raise BadLabel(index, f"web label {label!r} not in 1..{n}")
    else:
        i, j = label  # a Root
        ok = 1 <= i <= n and 1 <= j <= n and i != j
        if not ok:
            raise BadLabel(index, f"cobweb root {label!r} invalid for n={n}")


@dataclass(frozen=True)
class SlicedDiagram:
    n: int
    kind: str
    bottom: tuple[StrandEnd, ...]
    layers: tuple[Layer, ...]
    levels: tuple[tuple[StrandEnd, ...], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in (WEB, COBWEB):
            raise DiagramError(f"kind must be 'web' or 'cobweb', got {self.kind!r}")
        for i, e in enumerate(self.bottom):
            _check_label(self.n, self.kind, e.label, -1)
            if e.dir not in (UP, DOWN):
                raise DiagramError(f"bottom end {i} has bad dir {e.dir!r}")
        levels = [tuple(self.bottom)]
        word = tuple(self.bottom)
        for i, layer in enumerate(self.layers):
            word = apply_layer(self.n, self.kind, word, layer, i)
            levels.append(word)
        object.__setattr__(self, "levels", tuple(levels))

    @property
    def top(self) -> tuple[StrandEnd, ...]:
        return self.levels[-1]

    def is_closed(self) -> bool:
        return not self.bottom and not self.top

    def with_layers(self, layers: Sequence[Layer]) -> "SlicedDiagram":
        return SlicedDiagram(self.n, self.kind, self.bottom, tuple(layers))

    def reversed(self) -> "SlicedDiagram":
        """Reverse every arrow.  Cup flows swap; tags and crossings stay put."""
        bottom = tuple(e.reversed() for e in self.bottom)
        layers = []
        for l in self.layers:
            if l.gen == "cup":
                layers.append(Layer("cup", l.pos, label=l.label,
                                    flow="rl" if l.flow == "lr" else "lr"))
            else:
                layers.append(l)
        return SlicedDiagram(self.n, self.kind, bottom, tuple(layers))

    def key(self) -> str:
        return serialize(self)

    def __str__(self) -> str:
        ends = ",".join(f"{e.label}{'^' if e.dir == UP else 'v'}" for e in self.bottom)
        gens = ";".join(_layer_str(l) for l in self.layers)
        return f"<{self.kind} n={self.n} [{ends}] {gens}>"


def _layer_str(l: Layer) -> str:
    extra = ""
    if l.gen == "cup":
        extra = f",{l.label},{l.flow}"
    elif l.gen == "tag":
        extra = f",{l.side[0]}"
    elif l.gen == "split":
        extra = f",{l.left}"
    return f"{l.gen}@{l.pos}{extra}"


def validate(d: SlicedDiagram) -> None:
    """Recheck every layer; raises IllFormed on the first failure.

    Construction already validates, so this is mainly for documentation
    and for callers holding diagrams of unknown provenance.
    """
    word = tuple(d.bottom)
    for i, layer in enumerate(d.layers):
        word = apply_layer(d.n, d.kind, word, layer, i)


def compose(d1: SlicedDiagram, d2: SlicedDiagram) -> SlicedDiagram:
    """Stack d2 on top of d1."""
    if d1.n != d2.n or d1.kind != d2.kind or d1.top != d2.bottom:
        raise BoundaryMismatch(
            f"cannot stack: top {[str(e.label) for e in d1.top]} vs "
            f"bottom {[str(e.label) for e in d2.bottom]}")
    return SlicedDiagram(d1.n, d1.kind, d1.bottom, d1.layers + d2.layers)


# ---------------------------------------------------------------------------
# Curve tracing


@dataclass
class Curve:
    """A maximal strand path through cups, caps, tags and crossings.

    ``segments`` lists segment ids in parameterization order, and
    ``passes`` whether the parameterization runs up or down each one.
    ``events`` holds the transitions between consecutive segments; for
    a closed curve the last event joins the final segment back to the
    first.  Event tuples:

        ("cup", layer, passage)   passage "lr" or "rl"
        ("cap", layer, passage)
        ("tag", layer, side, passage)   passage "up" or "down"
        ("cross", layer)
    """

    closed: bool
    segments: list[int]
    passes: list[str]
    events: list[tuple]
    endpoints: tuple | None  # (end0, end1) for open curves


@dataclass
class TracedDiagram:
    diagram: SlicedDiagram
    seg_label: dict[int, Any]
    seg_dir: dict[int, str]
    level_segs: list[list[int]]  # segment ids at each level
    curves: list[Curve]
    seg_curve: dict[int, int]  # segment id -> curve index


def trace_curves(d: SlicedDiagram) -> TracedDiagram:
    """Partition the diagram's strand segments into maximal curves."""
    seg_label: dict[int, Any] = {}
    seg_dir: dict[int, str] = {}
    next_id = 0

    def new_seg(end: StrandEnd) -> int:
        nonlocal next_id
        seg_label[next_id] = end.label
        seg_dir[next_id] = end.dir
        next_id += 1
        return next_id - 1

    # lower/upper attachment of each segment
    birth: dict[int, tuple] = {}
    death: dict[int, tuple] = {}

    word = [new_seg(e) for e in d.bottom]
    for i, s in enumerate(word):
        birth[s] = ("boundary", "bottom", i)
    level_segs = [list(word)]

    for li, (layer, lvl) in enumerate(zip(d.layers, d.levels[1:])):
        p = layer.pos
        g = layer.gen
        if g == "cup":
            a, b = new_seg(lvl[p]), new_seg(lvl[p + 1])
            birth[a] = ("cup", li, "left", b)
            birth[b] = ("cup", li, "right", a)
            word[p:p] = [a, b]
        elif g == "cap":
            a, b = word[p], word[p + 1]
            death[a] = ("cap", li, "left", b)
            death[b] = ("cap", li, "right", a)
            del word[p:p + 2]
        elif g == "vcross":
            a, b = word[p], word[p + 1]
            a2, b2 = new_seg(lvl[p + 1]), new_seg(lvl[p])
            death[a] = ("cross", li, a2)
            death[b] = ("cross", li, b2)
            birth[a2] = ("cross", li, a)
            birth[b2] = ("cross", li, b)
            word[p], word[p + 1] = b2, a2
        elif g == "tag":
            a = word[p]
            b = new_seg(lvl[p])
            death[a] = ("tag", li, b)
            birth[b] = ("tag", li, a)
            word[p] = b
        elif g == "merge":
            a, b = word[p], word[p + 1]
            c = new_seg(lvl[p])
            death[a] = ("vertex", li, 0)
            death[b] = ("vertex", li, 1)
            birth[c] = ("vertex", li, 2)
            word[p:p + 2] = [c]
        elif g == "split":
            a = word[p]
            b, c = new_seg(lvl[p]), new_seg(lvl[p + 1])
            death[a] = ("vertex", li, 0)
            birth[b] = ("vertex", li, 1)
            birth[c] = ("vertex", li, 2)
            word[p:p + 1] = [b, c]
        level_segs.append(list(word))

    for i, s in enumerate(word):
        death[s] = ("boundary", "top", i)

    # Walk curves.  From a segment we leave through one of its two
    # attachments; cups, caps, tags and crossings link to a partner
    # segment, everything else ends the curve.
    def partner(att: tuple, seg: int) -> tuple[int | None, tuple | None]:
        kind = att[0]
        if kind == "cup":
            _, li, side, other = att
            return other, ("cup", li, "lr" if side == "left" else "rl")
        if kind == "cap":
            _, li, side, other = att
            return other, ("cap", li, "lr" if side == "left" else "rl")
        if kind == "tag":
            _, li, other = att
            side = d.layers[li].side
            up = death.get(seg) == att  # leaving through the top of seg
            return other, ("tag", li, side, "up" if up else "down")
        if kind == "cross":
            _, li, other = att
            return other, ("cross", li)
        return None, None

    curves: list[Curve] = []
    seg_curve: dict[int, int] = {}
    visited: set[int] = set()

    def _att_event_match(att: tuple, ev: tuple) -> bool:
        # does entering a segment via attachment `att` correspond to event ev?
        if att[0] in ("boundary", "vertex"):
            return False
        return att[0] == ev[0] and att[1] == ev[1]

    def walk(start: int, first_att: tuple):
        """Follow the curve from `start`, leaving through first_att."""
        segs = [start]
        passes = [UP if first_att == death[start] else DOWN]
        events: list[tuple] = []
        att = first_att
        seg = start
        while True:
            nxt, ev = partner(att, seg)
            if nxt is None:
                return segs, passes, events, att
            events.append(ev)
            segs.append(nxt)
            seg = nxt
            # leave through the attachment that is not the one we came by
            b, dth = birth[seg], death[seg]
            if _att_event_match(b, ev):
                att = dth
                passes.append(UP)
            else:
                att = b
                passes.append(DOWN)
            if seg == start and att == first_att:
                # closed loop: drop the duplicated start
                return segs[:-1], passes[:-1], events, None

    def record(c: Curve) -> None:
        idx = len(curves)
        curves.append(c)
        for t in c.segments:
            visited.add(t)
            seg_curve[t] = idx

    # open curves first: start at endpoints
    for s in seg_label:
        if s in visited:
            continue
        att0, att1 = birth[s], death[s]
        if att0[0] in ("boundary", "vertex"):
            segs, passes, events, last = walk(s, att1)
            record(Curve(closed=False, segments=segs, passes=passes, events=events,
                         endpoints=(_endpoint(att0), _endpoint(last))))
        elif att1[0] in ("boundary", "vertex"):
            segs, passes, events, last = walk(s, att0)
            record(Curve(closed=False, segments=segs, passes=passes, events=events,
                         endpoints=(_endpoint(att1), _endpoint(last))))

    # remaining segments lie on closed curves
    for s in sorted(seg_label):
        if s in visited:
            continue
        segs, passes, events, _ = walk(s, death[s])
        record(Curve(closed=True, segments=segs, passes=passes, events=events,
                     endpoints=None))

    return TracedDiagram(d, seg_label, seg_dir, level_segs, curves, seg_curve)


def _endpoint(att: tuple) -> tuple:
    if att[0] == "boundary":
        return att
    if att[0] == "vertex":
        return att
    raise DiagramError(f"not an endpoint attachment: {att!r}")


# ---------------------------------------------------------------------------
# Structural isotopy


def exchangeable(d: SlicedDiagram, i: int) -> bool:
    return _exchange_positions(d, i) is not None


def _exchange_positions(d: SlicedDiagram, i: int) -> tuple[Layer, Layer] | None:
    lo, hi = d.layers[i], d.layers[i + 1]
    a, ca, pa = lo.pos, layer_in_arity(lo), layer_out_arity(lo)
    b, cb, pb = hi.pos, layer_in_arity(hi), layer_out_arity(hi)
    if b >= a + pa:
        new_hi = Layer(hi.gen, b - pa + ca, hi.label, hi.flow, hi.side, hi.left)
        return (new_hi, lo)
    if b + cb <= a:
        new_lo = Layer(lo.gen, a + pb - cb, lo.label, lo.flow, lo.side, lo.left)
        return (hi, new_lo)
    return None


def exchange_layers(d: SlicedDiagram, i: int) -> SlicedDiagram:
    """Swap layers i and i+1 when they act on disjoint strand ranges."""
    swapped = _exchange_positions(d, i)
    if swapped is None:
        raise DiagramError(f"layers {i} and {i + 1} overlap; cannot exchange")
    layers = list(d.layers)
    layers[i:i + 2] = swapped
    return d.with_layers(layers)


def zigzag_at(d: SlicedDiagram, i: int) -> SlicedDiagram | None:
    """Straighten a cup at layer i immediately capped on one shared leg."""
    if i + 1 >= len(d.layers):
        return None
    lo, hi = d.layers[i], d.layers[i + 1]
    if lo.gen != "cup" or hi.gen != "cap":
        return None
    if hi.pos not in (lo.pos - 1, lo.pos + 1):
        return None
    layers = list(d.layers)
    del layers[i:i + 2]
    try:
        return d.with_layers(layers)
    except IllFormed:
        return None


def straighten_zigzags(d: SlicedDiagram) -> SlicedDiagram:
    changed = True
    while changed:
        changed = False
        for i in range(len(d.layers) - 1):
            nd = zigzag_at(d, i)
            if nd is not None:
                d = nd
                changed = True
                break
    return d


# ---------------------------------------------------------------------------
# Linear combinations


class LinComb:
    """A formal sum of diagrams with LaurentScalar coefficients.

    All diagrams must share one boundary.  Terms are collected by exact
    structural equality and kept sorted by serialization key.
    """

    def __init__(self, terms: Iterable[tuple[LaurentScalar, SlicedDiagram]] = ()):
        acc: dict[str, tuple[LaurentScalar, SlicedDiagram]] = {}
        boundary = None
        for coef, diag in terms:
            b = (diag.n, diag.kind, diag.bottom, diag.top)
            if boundary is None:
                boundary = b
            elif boundary != b:
                raise BoundaryMismatch("terms of a LinComb must share a boundary")
            k = diag.key()
            if k in acc:
                coef = acc[k][0] + coef
            acc[k] = (coef, diag)
        self.terms: list[tuple[LaurentScalar, SlicedDiagram]] = [
            (c, g) for _, (c, g) in sorted(acc.items()) if not c.is_zero()
        ]

    def __add__(self, other: "LinComb") -> "LinComb":
        return LinComb(self.terms + other.terms)

    def scale(self, s: LaurentScalar) -> "LinComb":
        return LinComb([(s * c, g) for c, g in self.terms])

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return [(c, g.key()) for c, g in self.terms] == \
               [(c, g.key()) for c, g in other.terms]

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)


# ---------------------------------------------------------------------------
# JSON serialization


def end_to_json(kind: str, e: StrandEnd) -> dict:
    label = list(e.label) if kind == COBWEB else e.label
    return {"label": label, "dir": e.dir}


def layer_to_json(kind: str, l: Layer) -> dict:
    out: dict[str, Any] = {"gen": l.gen, "pos": l.pos}
    if l.gen == "cup":
        out["label"] = list(l.label) if kind == COBWEB else l.label
        out["flow"] = l.flow
    elif l.gen == "tag":
        out["side"] = l.side
    elif l.gen == "split":
        out["left"] = l.left
    return out


def to_json_obj(d: SlicedDiagram) -> dict:
    return {
        "n": d.n,
        "kind": d.kind,
        "bottom": [end_to_json(d.kind, e) for e in d.bottom],
        "layers": [layer_to_json(d.kind, l) for l in d.layers],
    }


def serialize(d: SlicedDiagram) -> str:
    return json.dumps(to_json_obj(d), separators=(",", ":"), sort_keys=True)


def lincomb_to_json_obj(lc: LinComb) -> list:
    return [{"coefficient": c.to_triples(), "diagram": to_json_obj(g)} for c, g in lc]
