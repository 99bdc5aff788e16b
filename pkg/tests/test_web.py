import pytest

from slnspider.diagram import (BadLabel, DOWN, FlowViolation, LEFT, UP,
                               Layer, StrandEnd)
from slnspider.scalar import ONE, LaurentScalar, quantum_integer
from slnspider.web import (circle_web, delete_n_strands, double_square_web,
                           has_n_strands, i_equals_h_instance, catalog_json,
                           relation_instances, square_instance, validate_web,
                           web)


class TestValidateWeb:
    def test_small_merge_ok(self):
        d = web(3, [StrandEnd(1, UP), StrandEnd(1, UP)], [Layer("merge", 0)])
        validate_web(d)
        assert d.top == (StrandEnd(2, UP),)

    def test_merge_overflow(self):
        with pytest.raises(BadLabel):
            web(3, [StrandEnd(2, UP), StrandEnd(2, UP)], [Layer("merge", 0)])

    def test_merge_direction_clash(self):
        with pytest.raises(FlowViolation):
            web(3, [StrandEnd(1, UP), StrandEnd(1, DOWN)], [Layer("merge", 0)])

    def test_tag_pairs_complementary_labels(self):
        d = web(3, [StrandEnd(1, UP)], [Layer("tag", 0, side=LEFT)])
        assert d.top == (StrandEnd(2, DOWN),)

    def test_tag_rejects_label_n(self):
        with pytest.raises(BadLabel):
            web(3, [StrandEnd(3, UP)], [Layer("tag", 0, side=LEFT)])

    def test_label_out_of_range(self):
        with pytest.raises(BadLabel):
            web(3, [StrandEnd(4, UP)], [])

    def test_split_needs_proper_part(self):
        with pytest.raises(BadLabel):
            web(3, [StrandEnd(2, UP)], [Layer("split", 0, left=2)])


class TestDeleteN:
    def test_untouched_without_n(self):
        d = web(3, [StrandEnd(2, UP)],
                [Layer("split", 0, left=1), Layer("merge", 0)])
        assert delete_n_strands(d) == d

    def test_boundary_merge_becomes_tagged_cap(self):
        # k and n-k fuse into an n-strand that exits the disk
        d = web(3, [StrandEnd(1, UP), StrandEnd(2, UP)], [Layer("merge", 0)])
        nd = delete_n_strands(d)
        assert not has_n_strands(nd)
        assert nd.bottom == d.bottom and nd.top == ()
        assert [l.gen for l in nd.layers] == ["tag", "cap"]

    def test_boundary_split_becomes_tagged_cup(self):
        d = web(3, [StrandEnd(3, UP)], [Layer("split", 0, left=1)])
        nd = delete_n_strands(d)
        assert nd.bottom == ()
        assert nd.top == (StrandEnd(1, UP), StrandEnd(2, UP))
        assert [l.gen for l in nd.layers] == ["cup", "tag"]

    def test_interior_n_edge_tags_both_vertices(self):
        d = web(3, [StrandEnd(1, UP), StrandEnd(2, UP)],
                [Layer("merge", 0), Layer("split", 0, left=2)])
        nd = delete_n_strands(d)
        assert [l.gen for l in nd.layers] == ["tag", "cap", "cup", "tag"]
        assert nd.top == (StrandEnd(2, UP), StrandEnd(1, UP))

    def test_bare_n_strand_vanishes(self):
        d = web(3, [StrandEnd(3, UP), StrandEnd(1, UP)], [])
        nd = delete_n_strands(d)
        assert nd.bottom == (StrandEnd(1, UP),)

    def test_n_circle_vanishes(self):
        d = web(3, [], [Layer("cup", 0, label=3, flow="lr"), Layer("cap", 0)])
        assert delete_n_strands(d).layers == ()

    def test_idempotent(self):
        for inst in relation_instances(4):
            for _, g in list(inst.lhs) + list(inst.rhs):
                assert delete_n_strands(g) == g  # catalog is pre-normalized


class TestCatalog:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_instances_validate_and_share_boundaries(self, n):
        for inst in relation_instances(n):
            sides = list(inst.lhs) + list(inst.rhs)
            assert sides, inst.full_name
            b = (sides[0][1].bottom, sides[0][1].top)
            for _, g in sides:
                validate_web(g)
                assert not has_n_strands(g)
                assert (g.bottom, g.top) == b, inst.full_name

    def test_family_counts_n3(self):
        insts = relation_instances(3, with_reversed=False)
        names = {}
        for inst in insts:
            names.setdefault(inst.name, []).append(dict(inst.params))
        assert len(names["tag_switch"]) == 2   # k = 1, 2
        assert len(names["tag_cancel"]) == 2
        assert len(names["i_equals_h"]) == 1   # 1+1+1 <= 3
        assert len(names["digon"]) == 3        # k = 1, 2, 3
        assert len(names["square"]) == 2       # k = 1, 2
        assert len(names["square_mirror"]) == 2

    def test_reversed_variants_flip_arrows(self):
        inst = square_instance(3, 2)
        rev = inst.reversed()
        for (c1, g1), (c2, g2) in zip(inst.lhs, rev.lhs):
            assert c1 == c2
            assert g2.bottom == tuple(e.reversed() for e in g1.bottom)

    def test_tag_switch_coefficient(self):
        # n=3, k=1: (-1)^(1*2) = +1
        inst = [i for i in relation_instances(3, names=["tag_switch"],
                                              with_reversed=False)
                if dict(i.params)["k"] == 1][0]
        assert inst.rhs.terms[0][0] == ONE
        # n=2, k=1: (-1)^(1*1) = -1
        inst2 = relation_instances(2, names=["tag_switch"], with_reversed=False)[0]
        assert inst2.rhs.terms[0][0] == LaurentScalar.monomial(-1, 0)

    def test_square_second_coefficient(self):
        inst = square_instance(3, 2)
        coeffs = [c for c, _ in inst.rhs]
        assert quantum_integer(1) in coeffs

    def test_digon_n_closes_up(self):
        inst = [i for i in relation_instances(3, names=["digon"],
                                              with_reversed=False)
                if dict(i.params)["k"] == 3][0]
        lhs_web = inst.lhs.terms[0][1]
        assert lhs_web.is_closed()
        assert inst.rhs.terms[0][0] == quantum_integer(3)

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError):
            relation_instances(3, names=["pentagon"])

    def test_catalog_exports_json(self):
        import json
        entries = catalog_json(3)
        assert {e["name"] for e in entries} >= {"digon", "square", "tag_switch"}
        json.dumps(entries)


class TestFixtures:
    def test_circle_web(self):
        c = circle_web(4)
        assert c.is_closed()
        validate_web(c)

    @pytest.mark.parametrize("n,k,l", [(3, 2, 2), (4, 2, 3), (4, 3, 3)])
    def test_double_square_shape(self, n, k, l):
        d = double_square_web(n, k, l)
        validate_web(d)
        assert d.bottom == (StrandEnd(k, UP), StrandEnd(l, UP))
        assert d.top == d.bottom

    def test_double_square_label_guard(self):
        with pytest.raises(BadLabel):
            double_square_web(3, 1, 2)

    def test_i_equals_h_boundary(self):
        inst = i_equals_h_instance(4, 1, 1, 1)
        b, t = inst.boundary()
        assert b == (StrandEnd(1, UP), StrandEnd(1, UP))
        assert t == (StrandEnd(1, DOWN), StrandEnd(3, UP))

    def test_i_equals_h_full_rank_output_deleted(self):
        inst = i_equals_h_instance(4, 1, 1, 2)
        b, t = inst.boundary()
        assert b == (StrandEnd(1, UP), StrandEnd(2, UP))
        assert t == (StrandEnd(1, DOWN),)  # the rank-n product strand vanishes
