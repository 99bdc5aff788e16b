"""Webs: oriented strands labeled 1..n-1 with trivalent flow vertices.

Trivalent vertices either fuse two strands (labels add) or divide one;
bivalent tag vertices pair labels k and n-k with both arrows in or both
out.  Strands may carry the label n before normalization, with the
convention that every such strand is deleted; a trivalent vertex losing
its n-strand becomes a tagged bivalent vertex, tag toward the deleted
strand.

This module also transcribes the defining relation pictures into fixed
sliced form and instantiates them for every admissible label choice.
Each template carries linear combinations for its two sides over one
shared boundary word.  Arrow-reversed variants are generated
mechanically.  A mirrored version of the square relation is included as
well; it is what bursting the right-hand square of the double-square
fixture uses, and the harness verifies it exhaustively like the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .diagram import (BadLabel, DOWN, IllFormed, LEFT, LinComb, RIGHT, UP,
                      Layer, SlicedDiagram, StrandEnd, WEB, to_json_obj,
                      validate)
from .scalar import LaurentScalar, ONE, quantum_integer


def web(n: int, bottom: Iterable[StrandEnd], layers: Iterable[Layer]) -> SlicedDiagram:
    return SlicedDiagram(n, WEB, tuple(bottom), tuple(layers))


def validate_web(d: SlicedDiagram) -> None:
    """Webs validate on construction; recheck and reject cobwebs."""
    if d.kind != WEB:
        raise BadLabel(-1, "not a web")
    validate(d)


# ---------------------------------------------------------------------------
# Deleting strands labeled n


def has_n_strands(d: SlicedDiagram) -> bool:
    if any(e.label == d.n for e in d.bottom):
        return True
    return any(e.label == d.n for lvl in d.levels for e in lvl)


def delete_n_strands(d: SlicedDiagram) -> SlicedDiagram:
    """Remove every strand labeled n.

    A merge producing an n-strand becomes a tagged cap (tag toward the
    vanished strand above); a split consuming one becomes a tagged cup
    (tag toward the vanished strand below).  Cups, caps and boundary
    ends labeled n vanish outright.  Idempotent.
    """
    n = d.n
    alive = [e.label != n for e in d.bottom]
    bottom = tuple(e for e in d.bottom if e.label != n)
    out: list[Layer] = []

    def tpos(p: int) -> int:
        return sum(1 for q in range(p) if alive[q])

    for li, layer in enumerate(d.layers):
        p = layer.pos
        word = d.levels[li]
        np = tpos(p)
        g = layer.gen
        if g == "cup":
            if layer.label == n:
                alive[p:p] = [False, False]
            else:
                out.append(Layer("cup", np, label=layer.label, flow=layer.flow))
                alive[p:p] = [True, True]
        elif g == "cap":
            if word[p].label == n:
                del alive[p:p + 2]
            else:
                out.append(Layer("cap", np))
                del alive[p:p + 2]
        elif g == "tag":
            out.append(Layer("tag", np, side=layer.side))
        elif g == "merge":
            a, b = word[p], word[p + 1]
            if a.label + b.label == n:
                # output deleted; the inputs now meet at a tagged cap
                out.append(Layer("tag", np, side=LEFT))
                out.append(Layer("cap", np))
                alive[p:p + 2] = [False]
            else:
                out.append(Layer("merge", np))
                alive[p:p + 2] = [True]
        elif g == "split":
            a = word[p]
            if a.label == n:
                dd = a.dir
                flow = "lr" if dd == UP else "rl"
                out.append(Layer("cup", np, label=n - layer.left, flow=flow))
                out.append(Layer("tag", np, side=LEFT))
                alive[p:p + 1] = [True, True]
            else:
                out.append(Layer("split", np, left=layer.left))
                alive[p:p + 1] = [True, True]
        else:  # pragma: no cover - webs have no crossings
            raise IllFormed(li, f"unexpected web generator {g}")

    return SlicedDiagram(n, WEB, bottom, tuple(out))


# ---------------------------------------------------------------------------
# The relation catalog


@dataclass(frozen=True)
class RelationInstance:
    name: str
    params: tuple[tuple[str, int], ...]
    lhs: LinComb
    rhs: LinComb

    @property
    def full_name(self) -> str:
        ps = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({ps})"

    def reversed(self) -> "RelationInstance":
        return RelationInstance(
            self.name + "_rev", self.params,
            LinComb([(c, g.reversed()) for c, g in self.lhs]),
            LinComb([(c, g.reversed()) for c, g in self.rhs]))

    def boundary(self) -> tuple:
        term = (self.lhs.terms or self.rhs.terms)[0][1]
        return (term.bottom, term.top)


def _norm(d: SlicedDiagram) -> SlicedDiagram:
    return delete_n_strands(d) if has_n_strands(d) else d


def _lc(*terms: tuple[LaurentScalar, SlicedDiagram]) -> LinComb:
    return LinComb([(c, _norm(g)) for c, g in terms])


def minus_one_power(e: int) -> LaurentScalar:
    return LaurentScalar.monomial(-1 if e % 2 else 1, 0)


def tag_switch_instance(n: int, k: int) -> RelationInstance:
    bottom = [StrandEnd(n - k, DOWN)]
    lhs = web(n, bottom, [Layer("tag", 0, side=RIGHT)])
    rhs = web(n, bottom, [Layer("tag", 0, side=LEFT)])
    return RelationInstance("tag_switch", (("k", k),),
                            _lc((ONE, lhs)),
                            _lc((minus_one_power(k * (n - k)), rhs)))


def tag_cancel_instance(n: int, k: int) -> RelationInstance:
    bottom = [StrandEnd(k, UP)]
    lhs = web(n, bottom, [Layer("tag", 0, side=RIGHT), Layer("tag", 0, side=RIGHT)])
    rhs = web(n, bottom, [])
    return RelationInstance("tag_cancel", (("k", k),),
                            _lc((ONE, lhs)), _lc((ONE, rhs)))


def i_equals_h_instance(n: int, k: int, l: int, m: int) -> RelationInstance:
    # k enters at the top left, bent down to join the fuses via a cup
    bottom = [StrandEnd(l, UP), StrandEnd(m, UP)]
    lhs = web(n, bottom, [Layer("merge", 0),
                          Layer("cup", 0, label=k, flow="lr"),
                          Layer("merge", 1)])
    rhs = web(n, bottom, [Layer("cup", 0, label=k, flow="lr"),
                          Layer("merge", 1),
                          Layer("merge", 1)])
    return RelationInstance("i_equals_h", (("k", k), ("l", l), ("m", m)),
                            _lc((ONE, lhs)), _lc((ONE, rhs)))


def digon_instance(n: int, k: int) -> RelationInstance:
    bottom = [StrandEnd(k, UP)]
    if k == 1:
        # the far side of the digon carries no flow; its two vertices
        # survive as a pair of tagged vertices on the strand
        lhs = web(n, bottom, [Layer("tag", 0, side=LEFT), Layer("tag", 0, side=LEFT)])
    else:
        lhs = web(n, bottom, [Layer("split", 0, left=k - 1), Layer("merge", 0)])
    rhs = web(n, bottom, [])
    return RelationInstance("digon", (("k", k),),
                            _lc((ONE, lhs)),
                            _lc((quantum_integer(k), rhs)))


def square_instance(n: int, k: int) -> RelationInstance:
    bottom = [StrandEnd(k, UP), StrandEnd(1, UP)]
    if k == 1:
        lhs = web(n, bottom, [Layer("merge", 0), Layer("split", 0, left=1)])
    else:
        lhs = web(n, bottom, [Layer("split", 0, left=k - 1), Layer("merge", 1),
                              Layer("split", 1, left=1), Layer("merge", 0)])
    fuse = web(n, bottom, [Layer("merge", 0), Layer("split", 0, left=k)])
    idid = web(n, bottom, [])
    return RelationInstance("square", (("k", k),),
                            _lc((ONE, lhs)),
                            _lc((ONE, fuse), (quantum_integer(k - 1), idid)))


def square_mirror_instance(n: int, k: int) -> RelationInstance:
    bottom = [StrandEnd(1, UP), StrandEnd(k, UP)]
    if k == 1:
        lhs = web(n, bottom, [Layer("merge", 0), Layer("split", 0, left=1)])
    else:
        lhs = web(n, bottom, [Layer("split", 1, left=1), Layer("merge", 0),
                              Layer("split", 0, left=1), Layer("merge", 1)])
    fuse = web(n, bottom, [Layer("merge", 0), Layer("split", 0, left=1)])
    idid = web(n, bottom, [])
    return RelationInstance("square_mirror", (("k", k),),
                            _lc((ONE, lhs)),
                            _lc((ONE, fuse), (quantum_integer(k - 1), idid)))


RELATION_FAMILIES = ("tag_switch", "tag_cancel", "i_equals_h", "digon",
                     "square", "square_mirror")


def relation_instances(n: int, names: Iterable[str] | None = None,
                       with_reversed: bool = True) -> list[RelationInstance]:
    """Every admissible instance of the relation catalog at rank n."""
    if n < 2:
        raise ValueError("need n >= 2")
    wanted = set(names) if names is not None else set(RELATION_FAMILIES)
    unknown = wanted - set(RELATION_FAMILIES)
    if unknown:
        raise ValueError(f"unknown relation names: {sorted(unknown)}")
    out: list[RelationInstance] = []
    if "tag_switch" in wanted:
        out += [tag_switch_instance(n, k) for k in range(1, n)]
    if "tag_cancel" in wanted:
        out += [tag_cancel_instance(n, k) for k in range(1, n)]
    if "i_equals_h" in wanted:
        out += [i_equals_h_instance(n, k, l, m)
                for k in range(1, n) for l in range(1, n) for m in range(1, n)
                if k + l + m <= n]
    if "digon" in wanted:
        out += [digon_instance(n, k) for k in range(1, n + 1)]
    if "square" in wanted:
        out += [square_instance(n, k) for k in range(1, n)]
    if "square_mirror" in wanted:
        out += [square_mirror_instance(n, k) for k in range(1, n)]
    if with_reversed:
        out += [inst.reversed() for inst in list(out)]
    return out


def catalog_json(n: int) -> list[dict]:
    entries = []
    for inst in relation_instances(n):
        entries.append({
            "name": inst.name,
            "params": dict(inst.params),
            "lhs": [{"coefficient": c.to_triples(), "diagram": to_json_obj(g)}
                    for c, g in inst.lhs],
            "rhs": [{"coefficient": c.to_triples(), "diagram": to_json_obj(g)}
                    for c, g in inst.rhs],
        })
    return entries


# ---------------------------------------------------------------------------
# Named fixtures


def circle_web(n: int, label: int = 1) -> SlicedDiagram:
    """A counterclockwise closed circle with one strand label."""
    return web(n, [], [Layer("cup", 0, label=label, flow="lr"), Layer("cap", 0)])


def double_square_web(n: int, k: int, l: int) -> SlicedDiagram:
    """Two squares sharing a middle strand; either square can burst.

    Boundary: k and l enter at the bottom, k and l leave at the top.
    Requires 2 <= k, l <= n - 1 so both burst results stay in range.
    """
    if not (2 <= k <= n - 1 and 2 <= l <= n - 1):
        raise BadLabel(-1, f"double square needs 2 <= k, l <= n-1, got {k},{l}")
    bottom = [StrandEnd(k, UP), StrandEnd(l, UP)]
    return web(n, bottom, [
        Layer("split", 1, left=1),      # l -> 1, l-1
        Layer("split", 0, left=k - 1),  # k -> k-1, 1
        Layer("merge", 1),              # 1 + 1 -> 2 (the shared strand)
        Layer("split", 1, left=1),      # 2 -> 1, 1
        Layer("merge", 0),              # k-1 + 1 -> k
        Layer("merge", 1),              # 1 + l-1 -> l
    ])


def double_square_burst_left(n: int, k: int, l: int) -> LinComb:
    bottom = [StrandEnd(k, UP), StrandEnd(l, UP)]
    fuse = web(n, bottom, [
        Layer("split", 1, left=1),
        Layer("merge", 0), Layer("split", 0, left=k),
        Layer("merge", 1),
    ])
    pass_through = web(n, bottom, [
        Layer("split", 1, left=1), Layer("merge", 1),
    ])
    return _lc((ONE, fuse), (quantum_integer(k - 1), pass_through))


def double_square_burst_right(n: int, k: int, l: int) -> LinComb:
    bottom = [StrandEnd(k, UP), StrandEnd(l, UP)]
    fuse = web(n, bottom, [
        Layer("split", 0, left=k - 1),
        Layer("merge", 1), Layer("split", 1, left=1),
        Layer("merge", 0),
    ])
    pass_through = web(n, bottom, [
        Layer("split", 0, left=k - 1), Layer("merge", 0),
    ])
    return _lc((ONE, fuse), (quantum_integer(l - 1), pass_through))
