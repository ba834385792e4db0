"""End-to-end command-line behavior: outputs, formats, and exit codes."""

import json

import pytest

from diffalg import DiffFieldConfig
from diffalg.cli import main
from diffalg.parsing import orepoly_str, parse_orepoly

GENERIC = """\
field: Q(t)
vars: z y
point: z = t, y = t
eqs: z*y' - y
"""

CONSTANT = """\
field: Q(t)
vars: z y
point: z = 1, y = 0
eqs: z*y' - y
"""

MODULE = """\
field: Q(t)
module: 2
gens: [1, t*d - 1]
element: [d, t*d^2 + d - 2]
"""


def run(capsys, tmp_path, text, *argv):
    path = tmp_path / "problem.txt"
    path.write_text(text)
    code = main([*argv[:1], str(path), *argv[1:]])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTangentCommand:
    def test_generic_point_text(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, GENERIC, "tangent")
        assert code == 0
        assert "dy' - 1/t*dy + 1/t*dz = 0" in out
        assert "dimension polynomial: t + 2" in out
        assert "differential dimension d = 1" in out
        assert "tangent space: K^1 x C^0" in out

    def test_constant_point_text(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, CONSTANT, "tangent")
        assert code == 0
        assert "dy' - dy = 0" in out
        assert "dimension polynomial: t + 2" in out
        assert "tangent space: K^1 x C^1" in out
        assert "torsion degrees [1]" in out

    def test_generic_point_json(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, GENERIC, "tangent",
                           "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["diff_dimension"] == 1
        assert payload["tangent"]["d"] == 1
        assert payload["tangent"]["k"] == 0
        assert payload["charset"] == ["dy' - 1/t*dy + 1/t*dz"]

    def test_point_off_variety_exits_3(self, capsys, tmp_path):
        bad = CONSTANT.replace("y = 0", "y = 1")
        code, _, err = run(capsys, tmp_path, bad, "tangent")
        assert code == 3
        assert "does not vanish" in err


class TestModuleCommands:
    def test_charset(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, MODULE, "charset")
        assert code == 0
        assert "characteristic set (1 elements):" in out
        # normalized monic in the leader coordinate
        assert "[1/t, d - 1/t]" in out

    def test_reduce(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, MODULE, "reduce")
        assert code == 0
        assert "member: no" in out

    def test_reduce_member(self, capsys, tmp_path):
        text = MODULE.replace("element: [d, t*d^2 + d - 2]",
                              "element: [d + 1, t*d^2 + t*d - 1]")
        # element = (d + 1) * gens[0] as a left combination
        code, out, _ = run(capsys, tmp_path, text, "reduce")
        assert code == 0
        assert "normal form: [0, 0]" in out
        assert "member: yes" in out

    def test_dimpoly(self, capsys, tmp_path):
        text = "field: Q(t)\nmodule: 2\ngens: [0, t*d - 1]\n"
        code, out, _ = run(capsys, tmp_path, text, "dimpoly")
        assert code == 0
        assert "dimension polynomial: t + 2" in out
        assert "below-leader count B = 1 (free term r = 2)" in out
        assert "free components: e1" in out

    def test_decompose(self, capsys, tmp_path):
        text = "field: Q(t)\nmodule: 2\ngens: [0, t*d - 1]\n"
        code, out, _ = run(capsys, tmp_path, text, "decompose")
        assert code == 0
        assert "d = 1, k = 1, torsion degrees [1]" in out
        assert "diagonal: ['t*d - 1']" in out

    def test_decompose_partial_exits_4(self, capsys, tmp_path):
        text = "field: Q(t1,t2)\nmodule: 1\ngens: [d1]\n"
        code, _, err = run(capsys, tmp_path, text, "decompose")
        assert code == 4
        assert err.startswith("error:")

    def test_order_bound_basis_dump(self, capsys, tmp_path):
        text = "field: Q(t)\nmodule: 2\ngens: [0, d]\n"
        code, out, _ = run(capsys, tmp_path, text, "charset",
                           "--order-bound", "2")
        assert code == 0
        assert "standard terms up to order 2 (4): e1, e1', e1'', e2" in out


class TestCountCommand:
    def test_constant_field_two_derivations(self, capsys, tmp_path):
        text = "field: Q derivations: 2\nleaders: [(1,1)]\n"
        code, out, _ = run(capsys, tmp_path, text, "count")
        assert code == 0
        assert out.strip() == "2*t + 1 (valid for t >= 2)"

    def test_multiple_components(self, capsys, tmp_path):
        text = "field: Q(t)\nleaders: [1]; [2]\n"
        code, out, _ = run(capsys, tmp_path, text, "count")
        assert code == 0
        assert out.strip() == "3 (valid for t >= 2)"


class TestErrorHandling:
    def test_division_by_zero_exits_2(self, capsys, tmp_path):
        bad = CONSTANT.replace("y = 0", "y = 1/0")
        code, _, err = run(capsys, tmp_path, bad, "tangent")
        assert code == 2
        assert "division by zero" in err

    def test_unknown_variable_exits_2(self, capsys, tmp_path):
        bad = GENERIC.replace("z*y' - y", "z*w' - y")
        code, _, err = run(capsys, tmp_path, bad, "tangent")
        assert code == 2
        assert "'w'" in err

    def test_missing_file_exits_2(self, capsys, tmp_path):
        code = main(["charset", str(tmp_path / "absent.txt")])
        captured = capsys.readouterr()
        assert code == 2 and captured.err.startswith("error:")

    def test_malformed_section_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, tmp_path, "field Q(t)\n", "charset")
        assert code == 2
        assert "section" in err


class TestDeterminism:
    def test_json_output_is_reproducible(self, capsys, tmp_path):
        outputs = set()
        for _ in range(2):
            code, out, _ = run(capsys, tmp_path, GENERIC, "tangent",
                               "--format", "json")
            assert code == 0
            outputs.add(out)
        assert len(outputs) == 1


class TestOperatorRoundTrip:
    @pytest.mark.parametrize("text", [
        "d^2 + t*d - 1",
        "t^2*d^3 - (1/2)*d + 3",
        "(t^2 - 1)*d",
        "0",
    ])
    def test_print_then_parse(self, text):
        config = DiffFieldConfig(1, 1)
        op = parse_orepoly(text, config)
        assert parse_orepoly(orepoly_str(op, config), config) == op

    def test_partial_round_trip(self):
        config = DiffFieldConfig(2, 2)
        op = parse_orepoly("d1*d2 + t1*d2^2 - t2", config)
        assert parse_orepoly(orepoly_str(op, config), config) == op
