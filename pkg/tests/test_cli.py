import json
from fractions import Fraction

from weightedres import MultiOrder, mord_compare, parse_ideal
from weightedres.blowup import principalize
from weightedres.cli import main
from weightedres.lattice import LT
from weightedres.textio import (
    format_center,
    parse_center,
    parse_multiorder,
    parse_polynomial,
    trace_json,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_mord_verb(capsys):
    code, out = run(capsys, "mord", "x^5+x^3*y^3+y^7")
    assert code == 0
    assert json.loads(out) == {"mord": ["5", "7"]}


def test_round_verb(capsys):
    code, out = run(capsys, "round", "[x^5, y^(15/2)]")
    assert code == 0
    assert json.loads(out)["generators"] == [
        "x^5",
        "x^4*y^2",
        "x^3*y^3",
        "x^2*y^5",
        "x*y^6",
        "y^8",
    ]


def test_mord_of_a_unit(capsys):
    code, out = run(capsys, "mord", "1")
    assert code == 0
    assert json.loads(out) == {"mord": ["0"]}


def test_center_verb(capsys):
    code, out = run(capsys, "center", "x^5+x^3*y^3+y^8")
    payload = json.loads(out)
    assert code == 0
    assert payload["mord"] == ["5", "15/2"]
    assert payload["center"]["t"][1] == {"coord": "y", "exp": "15/2"}


def test_principalize_verb(capsys):
    code, out = run(capsys, "principalize", "x^2")
    payload = json.loads(out)
    assert code == 0
    assert payload["status"] == "principalized"
    assert len(payload["steps"]) == 1


def test_embed_resolve_verb(capsys):
    code, out = run(capsys, "embed-resolve", "x^2 - y^3", "--codim", "1")
    payload = json.loads(out)
    assert code == 0
    assert payload["status"] == "resolved"


def test_tube_and_rees_verbs(capsys):
    code, out = run(capsys, "tube", "(5,7)")
    assert code == 0
    assert json.loads(out)["rank"] == 23
    code, out = run(capsys, "rees", "[x^2]", "--root", "2")
    assert code == 0
    assert json.loads(out) == {"0": ["1"], "1": ["x"], "2": ["x^2"]}


def test_tschirnhaus_verb(capsys):
    code, out = run(capsys, "tschirnhaus", "x^5+x^3*y^3+y^7", "[x^5, y^7]")
    assert code == 0
    cert = json.loads(out)["certificate"]
    assert cert is not None
    assert [w["c_vector"] for w in cert["witnesses"]] == [[5], [0, 7]]


def test_staircase_text(capsys):
    code, out = run(capsys, "staircase", "(5,7)", "--format", "text")
    assert code == 0
    assert "staircase of (5, 7)" in out
    # the six staircase corners are marked (last line is the legend)
    grid = out.splitlines()[1:-1]
    assert sum(line.count("G") for line in grid) == 6


def test_staircase_overlay_svg(capsys):
    code, out = run(capsys, "staircase", "(14/5, 7/2)", "--overlay", "(3,3)", "--format", "svg")
    assert code == 0
    assert out.startswith("<svg") and "stroke-dasharray" in out and "</svg>" in out


def test_degenerate_staircase(capsys):
    code, out = run(capsys, "staircase", "(1,1)", "--format", "text")
    assert code == 0


def test_domain_error_exit_code(capsys):
    code, out = run(capsys, "tschirnhaus", "y", "[y^2]")
    assert code == 1
    assert json.loads(out)["error"]["code"] == "inadmissible"


def test_parse_error_exit_code(capsys):
    code, out = run(capsys, "mord", "x^5 +++ y")
    assert code == 2
    assert json.loads(out)["error"]["code"] == "parse-error"


def test_batch_mode(tmp_path, capsys):
    script = tmp_path / "commands.txt"
    script.write_text(
        "# a comment line\n"
        'mord "x^5+x^3*y^3+y^7"\n'
        'round "[x^2]"\n'
    )
    code, out = run(capsys, "batch", str(script))
    assert code == 0
    assert '"5"' in out and '"x^2"' in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out = run(capsys, "mord", "x^2", "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text()) == {"mord": ["2"]}


def test_degree_cap_from_environment(monkeypatch, capsys):
    from weightedres.errors import DEFAULT_DEGREE_CAP, set_degree_cap

    try:
        monkeypatch.setenv("WEIGHTEDRES_DEGREE_CAP", "8")
        code, out = run(capsys, "mord", "x^9 + y^10")
        assert code == 2
        assert json.loads(out)["error"]["code"] == "resource-cap"
        monkeypatch.delenv("WEIGHTEDRES_DEGREE_CAP")
        code, _ = run(capsys, "mord", "x^9 + y^10")
        assert code == 0
    finally:
        set_degree_cap(DEFAULT_DEGREE_CAP)


# -- round trips -------------------------------------------------------------------


def test_value_round_trips():
    for text in ("x^5 + x^3*y^3 + y^7", "1/2*x - y^4"):
        f = parse_polynomial(text, ("x", "y"))
        assert parse_polynomial(str(f), ("x", "y")) == f
    for text in ("(5, 7)", "(4, 16/3, 32/5)", "(0)"):
        d = parse_multiorder(text)
        assert parse_multiorder(str(d)) == d
    for text in ("[x^5, y^7]", "[x^5, y^(15/2)]", "[s1, s2 | x^5, y^7]"):
        J = parse_center(text)
        again = parse_center(format_center(J), J.ambient)
        assert again == J


def test_center_round_trip_through_a_coordinate_change():
    J = parse_center("[(x + y^2)^5, y^11]", variables=("x", "y"))
    again = parse_center(format_center(J), J.ambient)
    assert again == J


def test_center_round_trip_with_coefficients_and_shared_variables():
    # aligned variables are chosen without collisions and coefficients are
    # preserved, so constructed presentations reparse exactly
    J = parse_center("[(1/3*x + 2/3*y)^3, (x - y)^3]", variables=("x", "y"))
    assert parse_center(format_center(J), J.ambient) == J
    polys = [str(p) for p in J.coordinate_polynomials()]
    assert polys == ["1/3*x + 2/3*y", "x - y"]


def test_tube_rejects_widths_with_unit_entries(capsys):
    code, out = run(capsys, "tube", "(1, 2)")
    assert code == 1
    assert json.loads(out)["error"]["code"] == "domain-error"


def test_trace_json_replays_the_drop_verdict():
    trace = principalize(parse_ideal("x^5 + x^3*y^3 + y^7"))
    payload = trace_json(trace)
    # replay: every tracked invariant must lexicographically precede its step
    for step in payload["steps"]:
        before = MultiOrder([Fraction(e) for e in step["mord"]])
        for chart in step["charts"]:
            for pt in chart["tracked_points"]:
                after = MultiOrder([Fraction(e) for e in pt["mord_after"]])
                assert mord_compare(after, before) == LT
