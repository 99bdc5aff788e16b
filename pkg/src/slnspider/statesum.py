"""The state-sum map from webs to linear combinations of cobwebs.

A state assigns a subset of {1..n} to every strand: cardinality equals
the strand label, the two inputs of a fuse vertex carry disjoint sets
whose union labels the output, and the two strands at a tagged vertex
carry complementary sets.

Under a state, a strand with set K turns into the parallel cable of
roots (i, j) with i in K, j not in K, kept in lexicographic order at
every cross-section.  Vertices become local cobweb fragments:

* fuse with sets K, L: roots pointing outside K|L pass through, and
  each (i, j) with i in K, j in L meets its conjugate at a tagged cap,
  tag toward the vanished fused strand;
* divide: mirror image with tagged cups, tag away from the source;
* tagged web vertex: a battery of cobweb tags on the web vertex's side;
* cups and caps: concentric cabled cups and caps.

Whatever reordering the fragments need is spelled out with virtual
crossings via a fixed bubble sort, so the image is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .cobweb import Root
from .diagram import (COBWEB, DOWN, LEFT, UP, WEB, Layer, SlicedDiagram,
                      StrandEnd, TracedDiagram, trace_curves)
from .web import has_n_strands


class InconsistentBoundary(Exception):
    pass


class StateMismatch(Exception):
    pass


def cable(K: Iterable[int], n: int) -> list[Root]:
    """Roots (i, j) with i in K, j outside, in lexicographic order."""
    ks = sorted(set(K))
    if any(not 1 <= i <= n for i in ks):
        raise StateMismatch(f"set {ks} not within 1..{n}")
    comp = [j for j in range(1, n + 1) if j not in set(ks)]
    return [Root(i, j) for i in ks for j in comp]


def cable_ends(K: Iterable[int], n: int, dir: str) -> list[StrandEnd]:
    return [StrandEnd(r, dir) for r in cable(K, n)]


@dataclass(frozen=True)
class State:
    """Subset assignment per strand segment of a traced web."""

    assignment: dict[int, frozenset]

    def of(self, seg: int) -> frozenset:
        return self.assignment[seg]


# ---------------------------------------------------------------------------
# State enumeration


def _curve_parities(traced: TracedDiagram) -> dict[int, int]:
    """Tags flip the assigned set to its complement along a curve."""
    parity: dict[int, int] = {}
    for c in traced.curves:
        par = 0
        parity[c.segments[0]] = 0
        for ev, seg in zip(c.events, c.segments[1:]):
            if ev[0] == "tag":
                par ^= 1
            parity[seg] = par
    return parity


def _vertex_constraints(traced: TracedDiagram) -> list[tuple[str, int, int, int]]:
    """(kind, whole, left, right) segment triples at trivalent vertices."""
    d = traced.diagram
    out = []
    for li, layer in enumerate(d.layers):
        if layer.gen not in ("merge", "split"):
            continue
        below = traced.level_segs[li]
        above = traced.level_segs[li + 1]
        p = layer.pos
        if layer.gen == "merge":
            out.append(("merge", above[p], below[p], below[p + 1]))
        else:
            out.append(("split", below[p], above[p], above[p + 1]))
    return out


def enumerate_states(d: SlicedDiagram, boundary_data=None,
                     traced: TracedDiagram | None = None) -> list[State]:
    """All states consistent with the boundary data, deterministically ordered.

    ``boundary_data`` lists one set per boundary position, bottom word
    first and then top word; None leaves the boundary free.
    """
    if d.kind != WEB:
        raise StateMismatch("states live on webs")
    if has_n_strands(d):
        raise StateMismatch("normalize the web first: delete strands labeled n")
    traced = traced or trace_curves(d)
    n = d.n
    parity = _curve_parities(traced)
    reps = [c.segments[0] for c in traced.curves]

    def as_rep_value(seg: int, value: frozenset) -> frozenset:
        return value if parity[seg] == 0 else frozenset(range(1, n + 1)) - value

    pinned: dict[int, frozenset] = {}
    boundary_segs = [traced.level_segs[0][i] for i in range(len(d.bottom))] + \
                    [traced.level_segs[-1][i] for i in range(len(d.top))]
    boundary_labels = [e.label for e in d.bottom] + [e.label for e in d.top]
    if boundary_data is not None:
        if len(boundary_data) != len(boundary_segs):
            raise InconsistentBoundary(
                f"need {len(boundary_segs)} boundary sets, got {len(boundary_data)}")
        for pos, (seg, value) in enumerate(zip(boundary_segs, boundary_data)):
            value = frozenset(value)
            if len(value) != boundary_labels[pos]:
                raise InconsistentBoundary(
                    f"boundary position {pos} needs a set of size "
                    f"{boundary_labels[pos]}, got {sorted(value)}")
            rep = traced.curves[traced.seg_curve[seg]].segments[0]
            rv = as_rep_value(seg, value)
            if pinned.setdefault(rep, rv) != rv:
                return []

    constraints = _vertex_constraints(traced)

    def seg_value(assign: dict[int, frozenset], seg: int):
        rep = traced.curves[traced.seg_curve[seg]].segments[0]
        if rep not in assign:
            return None
        return as_rep_value(seg, assign[rep])  # parity is its own inverse

    def consistent(assign: dict[int, frozenset]) -> bool:
        for kind, whole, a, b in constraints:
            va, vb, vw = seg_value(assign, a), seg_value(assign, b), \
                seg_value(assign, whole)
            if va is not None and vb is not None and va & vb:
                return False
            if va is not None and vb is not None and vw is not None \
                    and va | vb != vw:
                return False
            if vw is not None and va is not None and not va <= vw:
                return False
            if vw is not None and vb is not None and not vb <= vw:
                return False
        return True

    states: list[State] = []
    labels = {rep: traced.seg_label[rep] for rep in reps}

    def dfs(idx: int, assign: dict[int, frozenset]):
        if idx == len(reps):
            full = {}
            for c in traced.curves:
                for seg in c.segments:
                    full[seg] = seg_value(assign, seg)
            states.append(State(full))
            return
        rep = reps[idx]
        if rep in assign:
            if consistent(assign):
                dfs(idx + 1, assign)
            return
        for combo in combinations(range(1, n + 1), labels[rep]):
            assign[rep] = frozenset(combo)
            if consistent(assign):
                dfs(idx + 1, assign)
            del assign[rep]

    if consistent(pinned):
        dfs(0, dict(pinned))
    return states


# ---------------------------------------------------------------------------
# Building the image cobweb of a state


def _emit_sort(ranks: list[int], off: int, out: list[Layer]) -> list[int]:
    items = list(ranks)
    changed = True
    while changed:
        changed = False
        for x in range(len(items) - 1):
            if items[x] > items[x + 1]:
                items[x], items[x + 1] = items[x + 1], items[x]
                out.append(Layer("vcross", off + x))
                changed = True
    return items


def _merge_image(n: int, K: frozenset, L: frozenset, dir: str, off: int,
                 out: list[Layer]) -> None:
    union = K | L
        # classify the two cables against the fused set
    thrK = [r for r in cable(K, n) if r.j not in L]
    thrL = [r for r in cable(L, n) if r.j not in K]
    pairs = [(i, j) for i in sorted(K) for j in sorted(L)]
    current = cable(K, n) + cable(L, n)
    rank: dict[Root, int] = {}
    for x, r in enumerate(thrK):
        rank[r] = x
    for m, (i, j) in enumerate(pairs):
        rank[Root(i, j)] = len(thrK) + 2 * m
        rank[Root(j, i)] = len(thrK) + 2 * m + 1
    for x, r in enumerate(thrL):
        rank[r] = len(thrK) + 2 * len(pairs) + x
    _emit_sort([rank[r] for r in current], off, out)
    q = off + len(thrK)
    for _ in pairs:
        out.append(Layer("tag", q, side=LEFT))
        out.append(Layer("cap", q))
    target = cable(union, n)
    remaining = thrK + thrL
    pos_of = {r: x for x, r in enumerate(target)}
    _emit_sort([pos_of[r] for r in remaining], off, out)


def _split_image(n: int, K: frozenset, L: frozenset, dir: str, off: int,
                 out: list[Layer]) -> None:
    union = K | L
    whole = cable(union, n)
    pairs = [(i, j) for i in sorted(K) for j in sorted(L)]
    q = off + len(whole)
    flow = "lr" if dir == UP else "rl"
    for i, j in pairs:
        out.append(Layer("cup", q, label=Root(j, i), flow=flow))
        out.append(Layer("tag", q, side=LEFT))
        q += 2
    current = whole[:]
    for i, j in pairs:
        current += [Root(i, j), Root(j, i)]
    target = cable(K, n) + cable(L, n)
    pos_of = {r: x for x, r in enumerate(target)}
    _emit_sort([pos_of[r] for r in current], off, out)


def _tag_image(n: int, K: frozenset, side: str, off: int, out: list[Layer]) -> None:
    c = len(cable(K, n))
    for m in range(c):
        out.append(Layer("tag", off + m, side=side))
    current = [r.conj() for r in cable(K, n)]
    target = cable(frozenset(range(1, n + 1)) - K, n)
    pos_of = {r: x for x, r in enumerate(target)}
    _emit_sort([pos_of[r] for r in current], off, out)


def _cup_image(n: int, K: frozenset, flow: str, off: int, out: list[Layer]) -> None:
    roots = cable(K, n)
    c = len(roots)
    for m, r in enumerate(roots):
        out.append(Layer("cup", off + m, label=r, flow=flow))
    # the turned-back side comes out nested, i.e. reversed
    _emit_sort(list(range(c - 1, -1, -1)), off + c, out)


def _cap_image(n: int, K: frozenset, off: int, out: list[Layer]) -> None:
    c = len(cable(K, n))
    _emit_sort(list(range(c - 1, -1, -1)), off + c, out)
    for m in range(c):
        out.append(Layer("cap", off + c - 1 - m))


def vertex_image(n: int, gen: str, sets: tuple[frozenset, ...], dir: str = UP,
                 side: str = LEFT, flow: str = "lr") -> SlicedDiagram:
    """The local cobweb fragment one web generator maps to, in isolation.

    For merge/split, ``sets`` holds (K, L) for the two thin strands; for
    tag and cup and cap, the single strand's set.
    """
    out: list[Layer] = []
    if gen == "merge":
        K, L = sets
        if K & L:
            raise StateMismatch("fuse inputs must be disjoint")
        bottom = cable_ends(K, n, dir) + cable_ends(L, n, dir)
        _merge_image(n, K, L, dir, 0, out)
    elif gen == "split":
        K, L = sets
        if K & L:
            raise StateMismatch("divide outputs must be disjoint")
        bottom = cable_ends(K | L, n, dir)
        _split_image(n, K, L, dir, 0, out)
    elif gen == "tag":
        (K,) = sets
        bottom = cable_ends(K, n, dir)
        _tag_image(n, K, side, 0, out)
    elif gen == "cup":
        (K,) = sets
        bottom = []
        _cup_image(n, K, flow, 0, out)
    elif gen == "cap":
        (K,) = sets
        d0 = DOWN if flow == "rl" else UP
        bottom = cable_ends(K, n, d0) + list(reversed(cable_ends(K, n, _flip(d0))))
        _cap_image(n, K, 0, out)
    else:
        raise StateMismatch(f"no image rule for generator {gen!r}")
    return SlicedDiagram(n, COBWEB, tuple(bottom), tuple(out))


def _flip(d: str) -> str:
    return DOWN if d == UP else UP


def state_image(d: SlicedDiagram, state: State,
                traced: TracedDiagram | None = None) -> SlicedDiagram:
    """Assemble the full image cobweb of one state."""
    traced = traced or trace_curves(d)
    n = d.n
    sets = state.assignment
    out: list[Layer] = []
    blocks = [len(cable(sets[s], n)) for s in traced.level_segs[0]]
    bottom: list[StrandEnd] = []
    for s, e in zip(traced.level_segs[0], d.bottom):
        bottom += cable_ends(sets[s], n, e.dir)

    def off(word_pos: int) -> int:
        return sum(blocks[:word_pos])

    for li, layer in enumerate(d.layers):
        p = layer.pos
        below = traced.level_segs[li]
        above = traced.level_segs[li + 1]
        o = off(p)
        g = layer.gen
        if g == "merge":
            K, L = sets[below[p]], sets[below[p + 1]]
            _merge_image(n, K, L, d.levels[li][p].dir, o, out)
            blocks[p:p + 2] = [len(cable(K | L, n))]
        elif g == "split":
            K, L = sets[above[p]], sets[above[p + 1]]
            _split_image(n, K, L, d.levels[li + 1][p].dir, o, out)
            blocks[p:p + 1] = [len(cable(K, n)), len(cable(L, n))]
        elif g == "tag":
            K = sets[below[p]]
            _tag_image(n, K, layer.side, o, out)
            blocks[p] = len(cable(sets[above[p]], n))
        elif g == "cup":
            K = sets[above[p]]
            _cup_image(n, K, layer.flow, o, out)
            blocks[p:p] = [len(cable(K, n))] * 2
        elif g == "cap":
            K = sets[below[p]]
            _cap_image(n, K, o, out)
            del blocks[p:p + 2]
        else:
            raise StateMismatch(f"unexpected web generator {g}")
    return SlicedDiagram(n, COBWEB, tuple(bottom), tuple(out))


def map_web(d: SlicedDiagram, boundary_data=None):
    """Sum of image cobwebs over all states matching the boundary data."""
    from .diagram import LinComb
    from .scalar import ONE

    traced = trace_curves(d)
    states = enumerate_states(d, boundary_data, traced=traced)
    return LinComb([(ONE, state_image(d, st, traced=traced)) for st in states])
