import json

import pytest

from slnspider.cli import ParseError, main, parse, serialize
from slnspider.cobweb import Root, cobweb
from slnspider.diagram import Layer, StrandEnd, to_json_obj
from slnspider.web import catalog_json, circle_web, relation_instances


def loop_json():
    d = cobweb(2, [], [Layer("cup", 0, label=Root(2, 1), flow="lr"),
                       Layer("cap", 0)])
    return json.dumps(to_json_obj(d))


class TestParse:
    def test_empty_diagram(self):
        d = parse('{"n": 2, "kind": "web", "bottom": [], "layers": []}')
        assert d.is_closed() and d.kind == "web"

    def test_round_trip_catalog(self):
        # serialize . parse . serialize is the identity on the corpus
        for n in (2, 3):
            for inst in relation_instances(n):
                for _, g in list(inst.lhs) + list(inst.rhs):
                    text = serialize(g)
                    assert parse(text) == g
                    assert serialize(parse(text)) == text

    def test_catalog_entries_parse(self):
        for entry in catalog_json(3):
            for side in ("lhs", "rhs"):
                for term in entry[side]:
                    parse(json.dumps(term["diagram"]))

    def test_bad_json(self):
        with pytest.raises(ParseError) as e:
            parse("{nope")
        assert "line 1" in e.value.location

    def test_position_out_of_range(self):
        with pytest.raises(ParseError):
            parse('{"n":2,"kind":"web","bottom":[],"layers":'
                  '[{"gen":"cap","pos":4}]}')

    def test_unknown_generator(self):
        with pytest.raises(ParseError) as e:
            parse('{"n":2,"kind":"web","bottom":[],"layers":'
                  '[{"gen":"twist","pos":0}]}')
        assert "gen" in e.value.location

    def test_web_label_must_be_int(self):
        with pytest.raises(ParseError):
            parse('{"n":2,"kind":"web","bottom":[{"label":[1,2],"dir":"up"}],'
                  '"layers":[]}')


class TestCommands:
    def test_eval_prints_scalar(self, tmp_path, capsys):
        f = tmp_path / "loop.json"
        f.write_text(loop_json())
        assert main(["eval", str(f)]) == 0
        assert capsys.readouterr().out.strip() == "q"

    def test_eval_rejects_webs(self, tmp_path):
        f = tmp_path / "w.json"
        f.write_text(serialize(circle_web(2)))
        assert main(["eval", str(f)]) == 2

    def test_map_writes_lincomb(self, tmp_path, capsys):
        f = tmp_path / "circle.json"
        f.write_text(serialize(circle_web(3)))
        out = tmp_path / "image.json"
        assert main(["map", str(f), "-o", str(out)]) == 0
        obj = json.loads(out.read_text())
        assert obj["n"] == 3 and len(obj["terms"]) == 3
        for term in obj["terms"]:
            assert term["coefficient"] == [[0, 1, 1]]
            parse(json.dumps(term["diagram"]))

    def test_map_with_boundary_data(self, tmp_path, capsys):
        from slnspider.web import digon_instance
        inst = digon_instance(3, 2)
        f = tmp_path / "digon.json"
        f.write_text(serialize(inst.lhs.terms[0][1]))
        data = tmp_path / "data.json"
        data.write_text(json.dumps({"sets": [[1, 2], [1, 2]]}))
        assert main(["map", str(f), "--data", str(data)]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert len(obj["terms"]) == 2

    def test_map_bad_cardinality(self, tmp_path):
        f = tmp_path / "circle.json"
        f.write_text(serialize(circle_web(3)))
        data = tmp_path / "data.json"
        data.write_text(json.dumps({"sets": [[1, 2]]}))
        assert main(["map", str(f), "--data", str(data)]) == 2

    def test_reduce_saddle(self, tmp_path, capsys):
        d = cobweb(2, [StrandEnd(Root(2, 1), "down"), StrandEnd(Root(2, 1), "up")],
                   [Layer("cap", 0), Layer("cup", 0, label=Root(2, 1), flow="lr")])
        f = tmp_path / "saddle.json"
        f.write_text(serialize(d))
        assert main(["reduce", str(f), "--format", "json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["scalar_text"] == "q" and obj["applications"] == 4
        assert obj["diagram"]["layers"] == []

    def test_reduce_budget_exhaustion_exit_one(self, tmp_path):
        f = tmp_path / "loop.json"
        f.write_text(loop_json())
        assert main(["reduce", str(f), "--budget", "0"]) == 1

    def test_verify_single_relation(self, capsys):
        assert main(["verify", "--n", "2", "--relation", "digon"]) == 0
        out = capsys.readouterr().out
        assert "0 failures" in out and "digon" in out

    def test_verify_json_format(self, capsys):
        assert main(["verify", "--n", "2", "--relation", "tag_switch",
                     "--format", "json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["failures"] == 0 and obj["total"] == len(obj["reports"])

    def test_verify_range_with_consequences(self, capsys):
        assert main(["verify", "--n", "2..2", "--relation", "tag_cancel",
                     "--consequences"]) == 0
        assert "saddle" in capsys.readouterr().out

    def test_verify_exit_one_on_failure(self, capsys, monkeypatch):
        import slnspider.cli as cli
        from slnspider.scalar import ONE, ZERO
        from slnspider.verify import VerificationReport

        def fake(n, names=None):
            return [VerificationReport("stub", n, "", ONE, ZERO)]

        monkeypatch.setattr(cli, "verify_catalog", fake)
        assert main(["verify", "--n", "2"]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_fuzz_clean_run(self, capsys):
        assert main(["fuzz", "--seed", "3", "--iters", "5"]) == 0
        assert "passed" in capsys.readouterr().out

    def test_fuzz_exit_one_on_failure(self, capsys, monkeypatch):
        import slnspider.cli as cli
        from slnspider.verify import FuzzReport

        def fake(seed, iterations, budget=0):
            return FuzzReport(iterations, 0, 0, failures=["seed=3 iter=0: boom"])

        monkeypatch.setattr(cli, "fuzz_invariance", fake)
        assert main(["fuzz", "--seed", "3", "--iters", "1"]) == 1

    def test_parse_error_exit_two(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text("{not json")
        assert main(["eval", str(f)]) == 2
        assert "parse error" in capsys.readouterr().err

    def test_missing_file_exit_two(self):
        assert main(["eval", "/nonexistent/diagram.json"]) == 2
