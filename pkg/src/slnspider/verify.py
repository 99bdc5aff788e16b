"""Exhaustive machine checks that the state-sum map respects every relation.

For each relation instance and each assignment of boundary sets that
admits at least one state on at least one side, both sides map to sums
of cobwebs over states; the evaluated totals must agree exactly.  The
harness also re-derives the saddle, curl and reversed-bubble identities
with the rewrite oracle, bursts the double-square fixture both ways,
fuzzes evaluation invariance under random rewrites, and checks the
orientation-reversal symmetry.

Reversing every arrow and substituting q -> q^(-1) sends a diagram's
value to (-1)^T times its image, where T is the diagram's tag count.
Totals of a relation instance therefore transform by bar with an extra
sign when the images carry an odd number of tags; the symmetry check
asserts exactly that law (and plain bar-equality on even instances).
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .cobweb import (BudgetExhausted, Root, all_roots, applicable_moves,
                     apply_relation, cobweb, evaluate, random_closed_cobweb,
                     reduce_oracle)
from .diagram import (DOWN, LinComb, UP, Layer, SlicedDiagram, StrandEnd,
                      trace_curves)
from .scalar import LaurentScalar, ONE, q_sign
from .statesum import enumerate_states, state_image
from .web import (RelationInstance, double_square_burst_left,
                  double_square_burst_right, double_square_web,
                  relation_instances)


@dataclass(frozen=True)
class VerificationReport:
    relation: str
    n: int
    datum: str
    lhs_value: LaurentScalar
    rhs_value: LaurentScalar

    @property
    def verdict(self) -> bool:
        return self.lhs_value == self.rhs_value

    def line(self) -> str:
        flag = "pass" if self.verdict else "FAIL"
        return (f"{flag}  n={self.n}  {self.relation}  [{self.datum}]  "
                f"lhs = {self.lhs_value}  rhs = {self.rhs_value}")


def _datum_str(datum) -> str:
    return ";".join("{" + ",".join(map(str, sorted(s))) + "}" for s in datum)


def boundary_data(n: int, instance: RelationInstance):
    """Every assignment of subsets to the boundary positions, by position
    label cardinality, in lexicographic order."""
    bottom, top = instance.boundary()
    labels = [e.label for e in bottom] + [e.label for e in top]
    pools = [[frozenset(c) for c in itertools.combinations(range(1, n + 1), k)]
             for k in labels]
    return itertools.product(*pools)


def side_total(side: LinComb, datum) -> LaurentScalar:
    total = LaurentScalar.zero()
    for coef, diag in side:
        traced = trace_curves(diag)
        for st in enumerate_states(diag, datum, traced=traced):
            total = total + coef * evaluate(state_image(diag, st, traced=traced))
    return total


def _has_state(side: LinComb, datum) -> bool:
    return any(enumerate_states(diag, datum) for _, diag in side)


def verify_relation(n: int, instance: RelationInstance) -> list[VerificationReport]:
    """One report per admissible boundary datum of the instance."""
    reports = []
    for datum in boundary_data(n, instance):
        if not (_has_state(instance.lhs, datum) or _has_state(instance.rhs, datum)):
            continue
        lv = side_total(instance.lhs, datum)
        rv = side_total(instance.rhs, datum)
        reports.append(VerificationReport(
            relation=instance.full_name, n=n, datum=_datum_str(datum),
            lhs_value=lv, rhs_value=rv))
    return reports


def verify_catalog(n: int, names=None, with_reversed: bool = True,
                   threads: int | None = None) -> list[VerificationReport]:
    instances = relation_instances(n, names=names, with_reversed=with_reversed)
    if threads is None:
        threads = int(os.environ.get("SPIDER_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = pool.map(lambda inst: verify_relation(n, inst), instances)
            out = [r for chunk in chunks for r in chunk]
    else:
        out = [r for inst in instances for r in verify_relation(n, inst)]
    return out


# ---------------------------------------------------------------------------
# Derived consequences


def saddle_lhs(n: int, root: Root) -> SlicedDiagram:
    bottom = [StrandEnd(root, DOWN), StrandEnd(root, UP)]
    return cobweb(n, bottom, [Layer("cap", 0),
                              Layer("cup", 0, label=root, flow="lr")])


def curl_strand(n: int, root: Root) -> SlicedDiagram:
    return cobweb(n, [StrandEnd(root, UP)],
                  [Layer("cup", 0, label=root, flow="lr"),
                   Layer("vcross", 1), Layer("cap", 0)])


def clockwise_loop(n: int, root: Root) -> SlicedDiagram:
    return cobweb(n, [], [Layer("cup", 0, label=root, flow="rl"), Layer("cap", 0)])


@dataclass
class ConsequenceReport:
    name: str
    detail: str
    ok: bool

    def line(self) -> str:
        return f"{'pass' if self.ok else 'FAIL'}  {self.name}  {self.detail}"


def verify_consequences(n: int, saddle_app_limit: int = 5) -> list[ConsequenceReport]:
    out: list[ConsequenceReport] = []
    for root in all_roots(n):
        expect = q_sign(root.i - root.j)
        res = reduce_oracle(saddle_lhs(n, root))
        ok = (not res.diagram.layers and res.factor == expect
              and res.applications <= saddle_app_limit)
        out.append(ConsequenceReport(
            "saddle", f"{root}: factor {res.factor} in {res.applications} steps", ok))

        v = evaluate(curl_strand(n, root))
        out.append(ConsequenceReport("curl", f"{root}: {v}", v == expect))

        w = evaluate(clockwise_loop(n, root))
        out.append(ConsequenceReport(
            "negative_bubble", f"{root}: {w}", w == q_sign(root.j - root.i)))
    return out


def verify_double_square(n: int) -> list[VerificationReport]:
    """Bursting either square of the shared-strand fixture agrees."""
    reports = []
    for k in range(2, n):
        for l in range(2, n):
            whole = double_square_web(n, k, l)
            from .web import delete_n_strands, has_n_strands
            if has_n_strands(whole):
                whole = delete_n_strands(whole)
            whole_lc = LinComb([(ONE, whole)])
            left = double_square_burst_left(n, k, l)
            right = double_square_burst_right(n, k, l)
            labels = [k, l, k, l]
            pools = [[frozenset(c) for c in itertools.combinations(range(1, n + 1), kk)]
                     for kk in labels]
            for datum in itertools.product(*pools):
                if not (_has_state(left, datum) or _has_state(right, datum)
                        or _has_state(whole_lc, datum)):
                    continue
                lv = side_total(left, datum)
                rv = side_total(right, datum)
                wv = side_total(whole_lc, datum)
                rep = VerificationReport(
                    relation=f"double_square(k={k},l={l})", n=n,
                    datum=_datum_str(datum), lhs_value=lv, rhs_value=rv)
                reports.append(rep)
                reports.append(VerificationReport(
                    relation=f"double_square_whole(k={k},l={l})", n=n,
                    datum=_datum_str(datum), lhs_value=wv, rhs_value=lv))
    return reports


# ---------------------------------------------------------------------------
# Invariance fuzzing


@dataclass
class FuzzReport:
    iterations: int
    applications_checked: int
    reductions_checked: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def fuzz_invariance(seed: int, iterations: int, n_choices=(2, 3),
                    hits_per_diagram: int = 20, max_steps: int = 9,
                    check_oracle: bool = True, budget: int = 8000) -> FuzzReport:
    """Random closed cobwebs, random relation applications, exact checks.

    Every application must preserve the evaluation up to its declared
    factor, and every diagram must reduce to the empty one with scalar
    equal to its evaluation.
    """
    import random as _random

    rng = _random.Random(seed)
    report = FuzzReport(iterations=iterations, applications_checked=0,
                        reductions_checked=0)
    for it in range(iterations):
        n = rng.choice(list(n_choices))
        d = random_closed_cobweb(rng, n, steps=rng.randrange(2, max_steps))
        v = evaluate(d)
        cur, cv = d, v
        for _ in range(hits_per_diagram):
            moves = applicable_moves(cur, include_intros=True)
            if not moves:
                break
            name, pos = rng.choice(moves)
            nxt, f = apply_relation(cur, name, pos)
            nv = evaluate(nxt)
            report.applications_checked += 1
            if cv != f * nv:
                report.failures.append(
                    f"seed={seed} iter={it}: {name}@{pos} broke invariance")
                break
            cur, cv = nxt, nv
        if check_oracle:
            try:
                res = reduce_oracle(d, budget=budget)
            except BudgetExhausted:
                report.failures.append(f"seed={seed} iter={it}: budget exhausted")
                continue
            report.reductions_checked += 1
            if res.diagram.layers or res.factor != v:
                report.failures.append(
                    f"seed={seed} iter={it}: oracle got {res.factor} "
                    f"with {len(res.diagram.layers)} layers left, wanted {v}")
    return report


# ---------------------------------------------------------------------------
# Orientation-reversal symmetry


def image_tag_parity(d: SlicedDiagram) -> int:
    """Parity of the tag count of any state image of the web d."""
    total = 0
    for li, layer in enumerate(d.layers):
        word = d.levels[li]
        if layer.gen == "merge":
            total += word[layer.pos].label * word[layer.pos + 1].label
        elif layer.gen == "split":
            above = d.levels[li + 1]
            total += above[layer.pos].label * above[layer.pos + 1].label
        elif layer.gen == "tag":
            k = word[layer.pos].label
            total += k * (d.n - k)
    return total % 2


def instance_tag_parity(inst: RelationInstance) -> int:
    parities = {image_tag_parity(g) for side in (inst.lhs, inst.rhs) for _, g in side}
    if len(parities) != 1:
        raise AssertionError(f"mixed tag parity in {inst.full_name}")
    return parities.pop()


@dataclass(frozen=True)
class SymmetryReport:
    relation: str
    n: int
    datum: str
    reversed_passes: bool
    bar_law_holds: bool
    parity: int

    @property
    def verdict(self) -> bool:
        return self.reversed_passes and self.bar_law_holds

    def line(self) -> str:
        law = "bar" if self.parity == 0 else "-bar"
        flag = "pass" if self.verdict else "FAIL"
        return f"{flag}  n={self.n}  {self.relation}  [{self.datum}]  law={law}"


def verify_symmetry(n: int, names=None) -> list[SymmetryReport]:
    """Arrow reversal: reversed instances pass, totals transform by
    (-1)^T bar where T is the image tag count."""
    out = []
    for inst in relation_instances(n, names=names, with_reversed=False):
        rev = inst.reversed()
        parity = instance_tag_parity(inst)
        sign = ONE if parity == 0 else LaurentScalar.monomial(-1, 0)
        for datum in boundary_data(n, inst):
            if not (_has_state(inst.lhs, datum) or _has_state(inst.rhs, datum)):
                continue
            lv, rv = side_total(inst.lhs, datum), side_total(inst.rhs, datum)
            lvr, rvr = side_total(rev.lhs, datum), side_total(rev.rhs, datum)
            out.append(SymmetryReport(
                relation=inst.full_name, n=n, datum=_datum_str(datum),
                reversed_passes=(lvr == rvr),
                bar_law_holds=(lvr == sign * lv.bar() and rvr == sign * rv.bar()),
                parity=parity))
    return out
