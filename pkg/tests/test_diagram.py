import json
import random

import pytest

from slnspider.cobweb import Root, evaluate, random_closed_cobweb, \
    random_open_cobweb
from slnspider.diagram import (BoundaryMismatch, COBWEB, DOWN, IllFormed, LEFT,
                               LinComb, UP, Layer, SlicedDiagram, StrandEnd,
                               compose, exchange_layers, exchangeable,
                               serialize, straighten_zigzags, to_json_obj,
                               trace_curves, validate)
from slnspider.scalar import ONE, LaurentScalar


def cob(n, bottom, layers):
    return SlicedDiagram(n, COBWEB, tuple(bottom), tuple(layers))


R21 = Root(2, 1)
R12 = Root(1, 2)


class TestValidate:
    def test_empty_diagram(self):
        d = cob(2, [], [])
        validate(d)
        assert d.is_closed()

    def test_identity_stack(self):
        d = cob(2, [StrandEnd(R21, UP), StrandEnd(R12, DOWN)], [])
        validate(d)
        assert d.top == d.bottom

    def test_cap_label_mismatch(self):
        with pytest.raises(IllFormed):
            cob(3, [StrandEnd(R21, UP), StrandEnd(Root(3, 1), DOWN)],
                [Layer("cap", 0)])

    def test_cap_direction_mismatch(self):
        with pytest.raises(IllFormed):
            cob(2, [StrandEnd(R21, UP), StrandEnd(R21, UP)], [Layer("cap", 0)])

    def test_position_out_of_range(self):
        with pytest.raises(IllFormed) as exc:
            cob(2, [StrandEnd(R21, UP)], [Layer("tag", 3, side=LEFT)])
        assert exc.value.layer_index == 0

    def test_merge_is_web_only(self):
        with pytest.raises(IllFormed):
            cob(2, [StrandEnd(R21, UP), StrandEnd(R21, UP)], [Layer("merge", 0)])


class TestCompose:
    def test_identity_composition(self):
        d = cob(2, [StrandEnd(R21, UP)], [Layer("tag", 0, side=LEFT)])
        ident = cob(2, d.top, [])
        assert compose(d, ident).layers == d.layers

    def test_cup_then_cap_closes(self):
        lower = cob(2, [], [Layer("cup", 0, label=R21, flow="lr")])
        upper = cob(2, lower.top, [Layer("cap", 0)])
        whole = compose(lower, upper)
        assert whole.is_closed()
        assert len(trace_curves(whole).curves) == 1

    def test_mismatch(self):
        a = cob(2, [], [Layer("cup", 0, label=R21, flow="lr")])
        b = cob(2, [StrandEnd(R12, UP)], [])
        with pytest.raises(BoundaryMismatch):
            compose(a, b)

    def test_associative(self):
        rng = random.Random(5)
        for _ in range(25):
            d = random_open_cobweb(rng, 3, strands=2, steps=6)
            k = len(d.layers) // 3
            a = cob(3, d.bottom, d.layers[:k])
            b = cob(3, a.top, d.layers[k:2 * k])
            c = cob(3, b.top, d.layers[2 * k:])
            assert compose(compose(a, b), c) == compose(a, compose(b, c))


class TestTraceCurves:
    def test_single_strand(self):
        t = trace_curves(cob(2, [StrandEnd(R21, UP)], []))
        assert len(t.curves) == 1
        c = t.curves[0]
        assert not c.closed and c.events == []
        assert c.endpoints == (("boundary", "bottom", 0), ("boundary", "top", 0))

    def test_closed_circle(self):
        d = cob(2, [], [Layer("cup", 0, label=R21, flow="lr"), Layer("cap", 0)])
        t = trace_curves(d)
        assert len(t.curves) == 1
        c = t.curves[0]
        assert c.closed
        assert sorted(ev[0] for ev in c.events) == ["cap", "cup"]

    def test_virtual_crossing_two_curves(self):
        d = cob(2, [StrandEnd(R21, UP), StrandEnd(R12, DOWN)], [Layer("vcross", 0)])
        t = trace_curves(d)
        assert len(t.curves) == 2
        for c in t.curves:
            assert [ev[0] for ev in c.events] == ["cross"]

    def test_partition(self):
        rng = random.Random(11)
        for _ in range(30):
            d = random_open_cobweb(rng, 3, strands=3, steps=7)
            t = trace_curves(d)
            covered = sorted(s for c in t.curves for s in c.segments)
            assert covered == sorted(t.seg_label)


class TestIsotopy:
    def test_exchange_preserves_value(self):
        rng = random.Random(3)
        done = 0
        while done < 40:
            d = random_closed_cobweb(rng, 3, steps=7)
            v = evaluate(d)
            for i in range(len(d.layers) - 1):
                if exchangeable(d, i):
                    assert evaluate(exchange_layers(d, i)) == v
                    done += 1

    def test_exchange_involutive(self):
        d = cob(2, [StrandEnd(R21, UP)],
                [Layer("tag", 0, side=LEFT), Layer("cup", 1, label=R12, flow="rl")])
        assert exchangeable(d, 0)
        back = exchange_layers(exchange_layers(d, 0), 0)
        assert back == d

    def test_zigzag_straightening(self):
        d = cob(2, [StrandEnd(R21, UP)],
                [Layer("cup", 1, label=R21, flow="lr"), Layer("cap", 0)])
        flat = straighten_zigzags(d)
        assert flat.layers == ()
        assert flat.top == d.top
        assert evaluate(d) == evaluate(flat) == ONE


class TestLinComb:
    def test_collects_like_terms(self):
        d = cob(2, [StrandEnd(R21, UP)], [])
        q = LaurentScalar.q_power(1)
        lc = LinComb([(ONE, d), (q, d)])
        assert len(lc) == 1
        assert lc.terms[0][0] == ONE + q

    def test_drops_zero(self):
        d = cob(2, [StrandEnd(R21, UP)], [])
        lc = LinComb([(ONE, d), (-ONE, d)])
        assert lc.is_zero()

    def test_mixed_boundary_rejected(self):
        a = cob(2, [StrandEnd(R21, UP)], [])
        b = cob(2, [StrandEnd(R12, UP)], [])
        with pytest.raises(BoundaryMismatch):
            LinComb([(ONE, a), (ONE, b)])

    def test_addition_commutative(self):
        a = cob(2, [StrandEnd(R21, UP)], [])
        b = cob(2, [StrandEnd(R21, UP)],
                [Layer("tag", 0, side=LEFT), Layer("tag", 0, side=LEFT)])
        q = LaurentScalar.q_power(2)
        assert LinComb([(ONE, a)]) + LinComb([(q, b)]) == \
               LinComb([(q, b)]) + LinComb([(ONE, a)])


class TestJson:
    def test_round_trip_exact(self):
        rng = random.Random(9)
        from slnspider.cli import parse
        for _ in range(40):
            d = random_open_cobweb(rng, 3, strands=2, steps=6)
            text = serialize(d)
            assert parse(text) == d
            assert serialize(parse(text)) == text

    def test_schema_fields(self):
        d = cob(2, [], [Layer("cup", 0, label=R21, flow="lr"), Layer("cap", 0)])
        obj = to_json_obj(d)
        assert obj["kind"] == "cobweb" and obj["n"] == 2
        assert obj["layers"][0] == {"gen": "cup", "pos": 0, "label": [2, 1],
                                    "flow": "lr"}
        json.dumps(obj)
