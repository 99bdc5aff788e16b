"""Cobwebs: root-labeled strands with virtual crossings and tagged vertices.

A cobweb strand is labeled by a root (i, j), i != j, positive when
i > j.  The only vertices are bivalent tags joining (i, j) to (j, i)
and virtual crossings.  Two independent computations live here:

* ``evaluate`` reads the closed-form invariant off a diagram: orient
  every curve along its positive-root segments, sum quarter turns at
  cups and caps, count tags sitting to the left of the traversal, and
  return (-1)^s q^t.

* ``apply_relation`` / ``reduce_oracle`` rewrite diagrams step by step
  using the local relations (tag switch and cancel, bubble burst,
  smoothing, detour moves), accumulating the scalar factors the
  relations declare.  The oracle never consults ``evaluate``, so
  agreement between the two is a real cross-check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .diagram import (COBWEB, DOWN, LEFT, RIGHT, UP, Layer, SlicedDiagram,
                      StrandEnd, TracedDiagram, exchange_layers, exchangeable,
                      flip_side, straighten_zigzags, trace_curves, zigzag_at)
from .scalar import LaurentScalar, ONE, q_sign


class Root(NamedTuple):
    i: int
    j: int

    def conj(self) -> "Root":
        return Root(self.j, self.i)

    @property
    def positive(self) -> bool:
        return self.i > self.j

    def __str__(self) -> str:
        return f"a[{self.i},{self.j}]"


class InconsistentOrientation(Exception):
    """A curve's labels do not admit a positivity-aligned traversal."""


class PatternMismatch(Exception):
    pass


class BudgetExhausted(Exception):
    pass


def cobweb(n: int, bottom: Iterable[StrandEnd], layers: Iterable[Layer]) -> SlicedDiagram:
    return SlicedDiagram(n, COBWEB, tuple(bottom), tuple(layers))


# ---------------------------------------------------------------------------
# The canonical evaluation


def orient_curves(traced: TracedDiagram) -> list[int]:
    """Traversal direction of each curve relative to its parameterization.

    Returns +1 or -1 per curve: the traversal agrees with the arrows on
    positive-root segments and opposes them on negative ones.  A valid
    diagram can never mix the two requirements on one curve, since both
    the label's positivity and the arrow flip together at a tag.
    """
    out = []
    for c in traced.curves:
        sigma = None
        for seg, pas in zip(c.segments, c.passes):
            root = traced.seg_label[seg]
            along_arrow = pas == traced.seg_dir[seg]
            want = 1 if along_arrow == root.positive else -1
            if sigma is None:
                sigma = want
            elif sigma != want:
                raise InconsistentOrientation(
                    f"curve through segment {seg} has no consistent traversal")
        out.append(sigma if sigma is not None else 1)
    return out


@dataclass(frozen=True)
class CobwebInvariant:
    """Boundary word plus the sign parity s and doubled turning 2t."""

    boundary: tuple
    sign_parity: int
    doubled_turning: int

    def value(self) -> LaurentScalar:
        return LaurentScalar.monomial(-1 if self.sign_parity else 1,
                                      self.doubled_turning)


def invariant(d: SlicedDiagram) -> CobwebInvariant:
    if d.kind != COBWEB:
        raise ValueError("only cobwebs evaluate")
    traced = trace_curves(d)
    sigmas = orient_curves(traced)
    s = 0
    turning = 0  # in quarter-turn-pair units: each cup/cap is +-1 here = +-1/2 turn
    for c, sigma in zip(traced.curves, sigmas):
        for ev in c.events:
            kind = ev[0]
            if kind in ("cup", "cap"):
                passage = ev[2] if sigma == 1 else ("rl" if ev[2] == "lr" else "lr")
                if kind == "cup":
                    turning += 1 if passage == "lr" else -1
                else:
                    turning += 1 if passage == "rl" else -1
            elif kind == "tag":
                _, _, side, pas = ev
                if sigma == -1:
                    pas = UP if pas == DOWN else DOWN
                side_rel = side if pas == UP else flip_side(side)
                if side_rel == LEFT:
                    s += 1
    return CobwebInvariant(boundary=(d.bottom, d.top), sign_parity=s % 2,
                           doubled_turning=turning)


def evaluate(d: SlicedDiagram) -> LaurentScalar:
    """The scalar (-1)^s q^t of a cobweb, relative to its boundary word."""
    return invariant(d).value()


def tag_count(d: SlicedDiagram) -> int:
    return sum(1 for l in d.layers if l.gen == "tag")


def crossing_count(d: SlicedDiagram) -> int:
    return sum(1 for l in d.layers if l.gen == "vcross")


# ---------------------------------------------------------------------------
# Local rewrites
#
# apply_relation(d, name, pos) -> (d', factor) with value(d) = factor*value(d').
# `pos` is a layer index; intro moves take a (layer_index, strand_pos) pair.


def _layers(d: SlicedDiagram) -> list[Layer]:
    return list(d.layers)


def _replace(d: SlicedDiagram, i: int, count: int, new: list[Layer]) -> SlicedDiagram:
    ls = _layers(d)
    ls[i:i + count] = new
    return d.with_layers(ls)


def _opposite_smooth_layers(below: tuple[StrandEnd, StrandEnd], p: int) -> list[Layer]:
    # crossing of one up and one down strand reconnects into a cap under a cup
    a, b = below
    flow_cup = "lr" if (b.dir, a.dir) == (DOWN, UP) else "rl"
    return [Layer("cap", p), Layer("cup", p, label=a.label, flow=flow_cup)]


def apply_relation(d: SlicedDiagram, name: str, pos) -> tuple[SlicedDiagram, LaurentScalar]:
    ls = d.layers

    def need(cond: bool, msg: str):
        if not cond:
            raise PatternMismatch(f"{name} at {pos}: {msg}")

    if name == "tag_switch":
        i = pos
        need(0 <= i < len(ls) and ls[i].gen == "tag", "no tag here")
        new = Layer("tag", ls[i].pos, side=flip_side(ls[i].side))
        return _replace(d, i, 1, [new]), LaurentScalar.monomial(-1, 0)

    if name == "tag_cancel":
        i = pos
        need(i + 1 < len(ls) and ls[i].gen == "tag" and ls[i + 1].gen == "tag",
             "no adjacent tag pair")
        need(ls[i].pos == ls[i + 1].pos, "tags on different strands")
        need(ls[i].side == ls[i + 1].side, "tags on opposite sides")
        return _replace(d, i, 2, []), ONE

    if name == "tag_intro":
        i, p, side = pos
        need(0 <= i <= len(ls), "bad layer index")
        need(0 <= p < len(d.levels[i]), "bad strand position")
        return _replace(d, i, 0, [Layer("tag", p, side=side),
                                  Layer("tag", p, side=side)]), ONE

    if name == "bubble":
        i = pos
        need(i + 1 < len(ls) and ls[i].gen == "cup" and ls[i + 1].gen == "cap",
             "no cup/cap pair")
        need(ls[i].pos == ls[i + 1].pos, "cap does not close this cup")
        root: Root = ls[i].label
        diff = root.i - root.j
        factor = q_sign(diff) if ls[i].flow == "lr" else q_sign(-diff)
        return _replace(d, i, 2, []), factor

    if name == "smooth":
        i = pos
        need(0 <= i < len(ls) and ls[i].gen == "vcross", "no crossing here")
        p = ls[i].pos
        below = d.levels[i]
        a, b = below[p], below[p + 1]
        need(a.label == b.label, "strands carry different labels")
        if a.dir == b.dir:
            return _replace(d, i, 1, []), ONE
        return _replace(d, i, 1, _opposite_smooth_layers((a, b), p)), ONE

    if name == "vr2":
        i = pos
        need(i + 1 < len(ls) and ls[i].gen == "vcross" and ls[i + 1].gen == "vcross",
             "no crossing pair")
        need(ls[i].pos == ls[i + 1].pos, "crossings at different positions")
        return _replace(d, i, 2, []), ONE

    if name == "vr2_intro":
        i, p = pos
        need(0 <= i <= len(ls), "bad layer index")
        need(0 <= p and p + 2 <= len(d.levels[i]), "bad strand position")
        return _replace(d, i, 0, [Layer("vcross", p), Layer("vcross", p)]), ONE

    if name == "vr3":
        i = pos
        need(i + 2 < len(ls) and all(l.gen == "vcross" for l in ls[i:i + 3]),
             "no crossing triple")
        p, q, r = ls[i].pos, ls[i + 1].pos, ls[i + 2].pos
        need(p == r and abs(q - p) == 1, "not a braid pattern")
        new = [Layer("vcross", q), Layer("vcross", p), Layer("vcross", q)]
        return _replace(d, i, 3, new), ONE

    if name == "slide_tag_up":
        i = pos
        need(i + 1 < len(ls) and ls[i].gen == "tag" and ls[i + 1].gen == "vcross",
             "no tag under crossing")
        t, p = ls[i].pos, ls[i + 1].pos
        need(t in (p, p + 1), "tag not on a crossing strand")
        new_t = p + 1 if t == p else p
        new = [Layer("vcross", p), Layer("tag", new_t, side=ls[i].side)]
        return _replace(d, i, 2, new), ONE

    if name == "slide_tag_down":
        i = pos
        need(i + 1 < len(ls) and ls[i].gen == "vcross" and ls[i + 1].gen == "tag",
             "no tag above crossing")
        p, t = ls[i].pos, ls[i + 1].pos
        need(t in (p, p + 1), "tag not on a crossing strand")
        new_t = p + 1 if t == p else p
        new = [Layer("tag", new_t, side=ls[i + 1].side), Layer("vcross", p)]
        return _replace(d, i, 2, new), ONE

    if name == "slide_cup":
        i = pos
        need(i + 1 < len(ls) and ls[i].gen == "cup" and ls[i + 1].gen == "vcross",
             "no cup under crossing")
        c, v = ls[i].pos, ls[i + 1].pos
        need(abs(c - v) == 1, "crossing must touch one cup leg")
        new = [Layer("cup", v, label=ls[i].label, flow=ls[i].flow), Layer("vcross", c)]
        return _replace(d, i, 2, new), ONE

    if name == "slide_cap":
        i = pos
        need(i + 1 < len(ls) and ls[i].gen == "vcross" and ls[i + 1].gen == "cap",
             "no crossing under cap")
        v, c = ls[i].pos, ls[i + 1].pos
        need(abs(c - v) == 1, "crossing must touch one cap leg")
        new = [Layer("vcross", c), Layer("cap", v)]
        return _replace(d, i, 2, new), ONE

    if name == "zigzag":
        i = pos
        nd = zigzag_at(d, i)
        need(nd is not None, "no zigzag here")
        return nd, ONE

    if name == "tag_around_cup":
        # tag slides through the bottom of its own cup; pure isotopy
        i = pos
        need(i + 1 < len(ls) and ls[i].gen == "cup" and ls[i + 1].gen == "tag",
             "no tagged cup")
        c, t = ls[i].pos, ls[i + 1].pos
        need(t in (c, c + 1), "tag not on a cup leg")
        root: Root = ls[i].label
        flow = "rl" if ls[i].flow == "lr" else "lr"
        new_t = c + 1 if t == c else c
        new = [Layer("cup", c, label=root.conj(), flow=flow),
               Layer("tag", new_t, side=flip_side(ls[i + 1].side))]
        return _replace(d, i, 2, new), ONE

    if name == "tag_around_cap":
        i = pos
        need(i + 1 < len(ls) and ls[i].gen == "tag" and ls[i + 1].gen == "cap",
             "no tagged cap")
        t, c = ls[i].pos, ls[i + 1].pos
        need(t in (c, c + 1), "tag not on a cap leg")
        new_t = c + 1 if t == c else c
        new = [Layer("tag", new_t, side=flip_side(ls[i].side)), Layer("cap", c)]
        return _replace(d, i, 2, new), ONE

    raise PatternMismatch(f"unknown relation {name!r}")


RELATION_NAMES = [
    "tag_switch", "tag_cancel", "bubble", "smooth",
    "vr2", "vr3", "slide_tag_up", "slide_tag_down",
    "slide_cup", "slide_cap", "zigzag",
    "tag_around_cup", "tag_around_cap",
]


def applicable_moves(d: SlicedDiagram, include_intros: bool = False) -> list[tuple[str, object]]:
    """All (name, position) pairs apply_relation would accept on d."""
    out: list[tuple[str, object]] = []
    for name in RELATION_NAMES:
        for i in range(len(d.layers)):
            try:
                apply_relation(d, name, i)
            except PatternMismatch:
                continue
            out.append((name, i))
    if include_intros:
        for i in range(len(d.layers) + 1):
            width = len(d.levels[i])
            for p in range(width):
                out.append(("tag_intro", (i, p, LEFT)))
                out.append(("tag_intro", (i, p, RIGHT)))
                if p + 2 <= width:
                    out.append(("vr2_intro", (i, p)))
    return out


# ---------------------------------------------------------------------------
# Canonical layer order (structural isotopy, no factors)


_GEN_RANK = {"cap": 0, "tag": 1, "vcross": 2, "cup": 3, "merge": 4, "split": 5}


def _sort_key(l: Layer) -> tuple:
    return (l.pos, _GEN_RANK[l.gen])


def normalize(d: SlicedDiagram) -> SlicedDiagram:
    """Exchange-sort disjoint layers and straighten zigzags; value-preserving."""
    changed = True
    while changed:
        changed = False
        d = straighten_zigzags(d)
        for i in range(len(d.layers) - 1):
            if not exchangeable(d, i):
                continue
            nd = exchange_layers(d, i)
            if _sort_key(nd.layers[i]) < _sort_key(d.layers[i]):
                d = nd
                changed = True
                break
    return d


# ---------------------------------------------------------------------------
# The rewrite oracle


@dataclass
class ReduceResult:
    diagram: SlicedDiagram
    factor: LaurentScalar  # value(input) = factor * value(output)
    applications: int
    log: list[tuple[str, object]] = field(default_factory=list)


def _bring_adjacent(d: SlicedDiagram, i: int, j: int) -> tuple[SlicedDiagram, int] | None:
    """Exchange layer j downward until it sits directly above layer i.

    Only succeeds when layer j commutes with everything in between.
    Returns the re-sliced diagram and the index of the lower layer.
    """
    cur = d
    at = j
    while at > i + 1:
        if not exchangeable(cur, at - 1):
            return None
        cur = exchange_layers(cur, at - 1)
        at -= 1
    return cur, i


def _bring_adjacent_up(d: SlicedDiagram, i: int, j: int) -> tuple[SlicedDiagram, int] | None:
    """Exchange layer i upward until it sits directly below layer j."""
    cur = d
    at = i
    while at < j - 1:
        if not exchangeable(cur, at):
            return None
        cur = exchange_layers(cur, at)
        at += 1
    return cur, j - 1


def _adjacent_variants(d: SlicedDiagram, i: int, j: int):
    got = _bring_adjacent(d, i, j)
    if got is not None:
        yield got
    got = _bring_adjacent_up(d, i, j)
    if got is not None:
        yield got


def _reduction_at(d: SlicedDiagram, i: int) -> tuple[str, int] | None:
    """Strictly simplifying move anchored at adjacent layers (i, i+1)."""
    ls = d.layers
    if i + 1 < len(ls) and zigzag_at(d, i) is not None:
        return ("zigzag", i)
    if ls[i].gen == "vcross":
        if i + 1 < len(ls) and ls[i + 1].gen == "vcross" and ls[i].pos == ls[i + 1].pos:
            return ("vr2", i)
        p = ls[i].pos
        below = d.levels[i]
        if below[p].label == below[p + 1].label:
            return ("smooth", i)
    if i + 1 >= len(ls):
        return None
    if ls[i].gen == "tag" and ls[i + 1].gen == "tag" and ls[i].pos == ls[i + 1].pos:
        if ls[i].side == ls[i + 1].side:
            return ("tag_cancel", i)
        return ("tag_switch+cancel", i)
    if ls[i].gen == "cup" and ls[i + 1].gen == "cap" and ls[i].pos == ls[i + 1].pos:
        return ("bubble", i)
    if ls[i].gen == "cap" and ls[i + 1].gen == "cup" and ls[i].pos == ls[i + 1].pos:
        below = d.levels[i]
        p = ls[i].pos
        same_root = below[p].label == ls[i + 1].label
        same_dirs = (below[p].dir == DOWN) == (ls[i + 1].flow == "lr")
        if same_root and same_dirs:
            return ("saddle", i)
    return None


_PAIRABLE = {("tag", "tag"), ("cup", "cap"), ("cap", "cup"), ("vcross", "vcross")}


def _find_reduction(d: SlicedDiagram) -> tuple[SlicedDiagram, tuple[str, int]] | None:
    """A simplifying move, re-slicing by exchanges to expose it if needed."""
    for i in range(len(d.layers)):
        move = _reduction_at(d, i)
        if move is not None:
            return d, move
    for i in range(len(d.layers)):
        for j in range(i + 2, len(d.layers)):
            if (d.layers[i].gen, d.layers[j].gen) not in _PAIRABLE:
                continue
            for nd, k in _adjacent_variants(d, i, j):
                move = _reduction_at(nd, k)
                if move is not None:
                    return nd, move
    return None


def _apply_reducing(d: SlicedDiagram, move: tuple[str, object]):
    """Execute a reducing move; returns (d', factor, apps, log)."""
    name, i = move
    if name == "tag_switch+cancel":
        d1, f1 = apply_relation(d, "tag_switch", i)
        d2, f2 = apply_relation(d1, "tag_cancel", i)
        return d2, f1 * f2, 2, [("tag_switch", i), ("tag_cancel", i)]
    if name == "saddle":
        return _eliminate_saddle(d, i)
    d2, f = apply_relation(d, name, i)
    apps = 0 if name == "zigzag" else 1
    return d2, f, apps, [(name, i)]


def _eliminate_saddle(d: SlicedDiagram, i: int):
    """Cap directly under a cup on the same strands, same root.

    Rewrites to two vertical strands by the scripted derivation: slide
    the cup below the cap (two virtual crossings appear), smooth both,
    and burst the bubble that remains.  Four counted applications.
    """
    cap, cup = d.layers[i], d.layers[i + 1]
    p = cap.pos
    log: list[tuple[str, object]] = []
    factor = ONE
    # re-slice so the cup comes first (disjoint supports once reordered)
    d = _replace(d, i, 2, [Layer("cup", p, label=cup.label, flow=cup.flow),
                           Layer("cap", p + 2)])
    for name, where in (("vr2_intro", (i + 1, p + 1)), ("smooth", i + 1),
                        ("zigzag", i), ("smooth", i + 1), ("bubble", i),
                        ("zigzag", i)):
        d, f = apply_relation(d, name, where)
        factor = factor * f
        if name != "zigzag":
            log.append((name, where))
    return d, factor, 4, log


_MOBILITY = ["vr3", "slide_tag_up", "slide_tag_down", "slide_cup", "slide_cap",
             "tag_around_cup", "tag_around_cap"]

_MOBILE_PAIRS = {("tag", "vcross"), ("vcross", "tag"), ("cup", "vcross"),
                 ("vcross", "cap"), ("cup", "tag"), ("tag", "cap"),
                 ("vcross", "vcross")}


def _mobility_neighbors(d: SlicedDiagram):
    """Counted detour moves, exposed by free re-slicing where needed."""
    seen: set[str] = set()

    def attempt(base: SlicedDiagram, name: str, i: int):
        try:
            nd, _ = apply_relation(base, name, i)
        except PatternMismatch:
            return None
        k = nd.key()
        if k in seen:
            return None
        seen.add(k)
        return nd

    for name in _MOBILITY:
        for i in range(len(d.layers)):
            nd = attempt(d, name, i)
            if nd is not None:
                yield (name, i), nd
    for i in range(len(d.layers)):
        for j in range(i + 2, len(d.layers)):
            if (d.layers[i].gen, d.layers[j].gen) not in _MOBILE_PAIRS:
                continue
            for base, k in _adjacent_variants(d, i, j):
                for name in _MOBILITY:
                    nd = attempt(base, name, k)
                    if nd is not None:
                        yield (name, k), nd


def reduce_oracle(d: SlicedDiagram, budget: int = 10000) -> ReduceResult:
    """Greedy reduction with a breadth-first unsticking search.

    Applies simplifying rewrites until none fire; when stuck with
    crossings or tags still present, searches bounded sequences of
    detour moves for a position where a simplifying rewrite applies.
    Raises BudgetExhausted if the budget of counted applications runs
    out before the search gives up.
    """
    factor = ONE
    apps = 0
    log: list[tuple[str, object]] = []
    d = normalize(d)
    while True:
        found = _find_reduction(d)
        if found is not None:
            ready, move = found
            d, f, used, sublog = _apply_reducing(ready, move)
            factor = factor * f
            apps += used
            log.extend(sublog)
            if apps > budget:
                raise BudgetExhausted(f"over {budget} applications")
            d = normalize(d)
            continue
        # stuck: look for detour sequences that enable a reduction
        got = _unstick(d, budget - apps)
        if got is None:
            break
        path, nd = got
        apps += len(path)
        log.extend(path)
        if apps > budget:
            raise BudgetExhausted(f"over {budget} applications")
        d = nd
    return ReduceResult(diagram=d, factor=factor, applications=apps, log=log)


def _unstick(d: SlicedDiagram, budget: int, max_depth: int = 6,
             max_nodes: int = 4000):
    """Breadth-first search over counted detour moves (with free re-slicing
    folded into the neighbor generator) until a reduction becomes available.

    Returns (path, diagram); the path lists the counted moves only.
    """
    if budget <= 0:
        return None
    seen = {normalize(d).key()}
    frontier: list[tuple[SlicedDiagram, list]] = [(d, [])]
    nodes = 0
    for _ in range(min(max_depth, budget)):
        nxt: list[tuple[SlicedDiagram, list]] = []
        for cur, path in frontier:
            for move, nd in _mobility_neighbors(cur):
                nodes += 1
                if nodes > max_nodes:
                    return None
                nd = normalize(nd)
                k = nd.key()
                if k in seen:
                    continue
                seen.add(k)
                newpath = path + [move]
                if _find_reduction(nd) is not None:
                    return newpath, nd
                nxt.append((nd, newpath))
        frontier = nxt
        if not frontier:
            return None
    return None


# ---------------------------------------------------------------------------
# Random diagram generation (for fuzzing and oracle cross-checks)


def all_roots(n: int) -> list[Root]:
    return [Root(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def random_closed_cobweb(rng: random.Random, n: int, steps: int = 8) -> SlicedDiagram:
    """A random closed cobweb built from cups, tags and crossings, then
    closed with caps.  Tags are inserted during closing whenever the
    next pair needs its labels or arrows reconciled."""
    roots = all_roots(n)
    layers: list[Layer] = []
    word: list[StrandEnd] = []

    def emit(layer: Layer):
        nonlocal word
        layers.append(layer)
        word = list(SlicedDiagram(n, COBWEB, tuple(), tuple(layers)).top)

    for _ in range(steps):
        choices = ["cup"]
        if len(word) >= 2:
            choices += ["vcross", "tag", "cap"]
        kind = rng.choice(choices)
        if kind == "cup":
            emit(Layer("cup", rng.randrange(len(word) + 1),
                       label=rng.choice(roots), flow=rng.choice(["lr", "rl"])))
        elif kind == "vcross":
            emit(Layer("vcross", rng.randrange(len(word) - 1)))
        elif kind == "tag":
            emit(Layer("tag", rng.randrange(len(word)), side=rng.choice([LEFT, RIGHT])))
        else:
            spots = [p for p in range(len(word) - 1)
                     if word[p].label == word[p + 1].label and word[p].dir != word[p + 1].dir]
            if spots:
                emit(Layer("cap", rng.choice(spots)))
    # close everything
    while word:
        spots = [p for p in range(len(word) - 1)
                 if word[p].label == word[p + 1].label and word[p].dir != word[p + 1].dir]
        if spots:
            emit(Layer("cap", rng.choice(spots)))
            continue
        fixable = [p for p in range(len(word) - 1)
                   if word[p].label == word[p + 1].label.conj()
                   and word[p].dir == word[p + 1].dir]
        if fixable:
            emit(Layer("tag", rng.choice(fixable), side=rng.choice([LEFT, RIGHT])))
            continue
        # bring a matching partner next to position 0
        target = word[0]
        mate = None
        for p in range(1, len(word)):
            e = word[p]
            if (e.label == target.label and e.dir != target.dir) or \
                    (e.label == target.label.conj() and e.dir == target.dir):
                mate = p
                break
        if mate is None:
            # flip the head strand and retry
            emit(Layer("tag", 0, side=rng.choice([LEFT, RIGHT])))
            continue
        for p in range(mate - 1, 0, -1):
            emit(Layer("vcross", p))
    return SlicedDiagram(n, COBWEB, tuple(), tuple(layers))


def random_open_cobweb(rng: random.Random, n: int, strands: int = 3,
                       steps: int = 6) -> SlicedDiagram:
    roots = all_roots(n)
    bottom = tuple(StrandEnd(rng.choice(roots), rng.choice([UP, DOWN]))
                   for _ in range(strands))
    d = SlicedDiagram(n, COBWEB, bottom, tuple())
    layers: list[Layer] = []
    word = list(bottom)
    for _ in range(steps):
        choices = ["cup", "tag"] if word else ["cup"]
        if len(word) >= 2:
            choices.append("vcross")
            if any(word[p].label == word[p + 1].label and word[p].dir != word[p + 1].dir
                   for p in range(len(word) - 1)):
                choices.append("cap")
        kind = rng.choice(choices)
        if kind == "cup":
            layer = Layer("cup", rng.randrange(len(word) + 1),
                          label=rng.choice(roots), flow=rng.choice(["lr", "rl"]))
        elif kind == "tag":
            layer = Layer("tag", rng.randrange(len(word)),
                          side=rng.choice([LEFT, RIGHT]))
        elif kind == "vcross":
            layer = Layer("vcross", rng.randrange(len(word) - 1))
        else:
            spots = [p for p in range(len(word) - 1)
                     if word[p].label == word[p + 1].label and word[p].dir != word[p + 1].dir]
            layer = Layer("cap", rng.choice(spots))
        layers.append(layer)
        d = SlicedDiagram(n, COBWEB, bottom, tuple(layers))
        word = list(d.top)
    return d
