import io
import json
import subprocess
import sys

import pytest

from pvkit.cli import Session, canonical_json, parse_program, run_text
from pvkit.cli.main import main
from pvkit.errors import ParseError


def run(script, **kw):
    out, err = io.StringIO(), io.StringIO()
    code = run_text(script, out=out, err=err, **kw)
    return code, out.getvalue(), err.getvalue()


def test_text_report():
    code, out, _ = run("ring shift Q(x)\neq E: y(x+1) = y(x)\ngroup E\n")
    assert code == 0
    assert "> group E\n  Galois group: trivial\n" in out


def test_json_lines_are_canonical():
    code, out, _ = run("ring shift Q(x)\neq N: y(x+1) = -y(x)\ngroup N\n", as_json=True)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    for line in lines:
        assert canonical_json(json.loads(line)) == line
    last = json.loads(lines[-1])
    assert last["command"] == "group N" and last["line"] == 3
    assert last["result"] == {"field": "Q", "invariant_factors": [2], "torus_rank": 0}
    assert "timing" not in last


def test_eq_stores_inverse_coefficient():
    _, out, _ = run("ring shift Q(x)\neq T: y(x+1) = 2*y(x)\n", as_json=True, trace=True)
    rec = json.loads(out.splitlines()[-1])
    assert rec["result"]["coefficient"] == "2"
    assert rec["trace"] == ["basis form: A = 1/a = 1/2"]


def test_eq_minus_y():
    _, out, _ = run("ring shift Q(x)\neq E: y(x+1) = -y(x)\n", as_json=True)
    assert json.loads(out.splitlines()[-1])["result"]["coefficient"] == "-1"


def test_module_literal_round_trip():
    session = Session()
    cmds = parse_program("ring shift Q(x)\nmodule M = [[x, 1/2], [0, (x+1)/x]]\n")
    for cmd in cmds:
        session.run(cmd)
    line = session.emit_module("M")
    again = Session()
    for cmd in parse_program("ring shift Q(x)\n" + line + "\n"):
        again.run(cmd)
    assert again.modules["M"] == session.modules["M"]


def test_module_basis_matrix_is_inverse_of_recurrence():
    _, out, _ = run("ring shift Q(x)\nmodule A2 = [[1/2]]\n", as_json=True, trace=True)
    rec = json.loads(out.splitlines()[-1])
    assert rec["trace"] == ["basis form: tau(e_j) = sum_i A_ij e_i with A = B^-1 = [['2']]"]


@pytest.mark.parametrize(
    "script, line, column",
    [
        ("ring shift Q(x)\nmodule M = [[1, 2]\n", 2, 12),
        ("ring shift Q(x)\neq E: y(x+1) = z*y(x)\n", 2, 16),
        ("ring shift Q(x)\ngroup NOPE\n", 2, 7),
        ("frobnicate\n", 1, 1),
    ],
)
def test_parse_errors_have_positions(script, line, column):
    code, out, err = run(script)
    assert code == 1
    assert err.startswith(f"error: line {line}, column {column}:")


def test_redefinition_is_an_error():
    code, _, err = run("ring shift Q(x)\neq E: y(x+1) = y(x)\neq E: y(x+1) = y(x)\n")
    assert code == 1 and "already defined" in err


def test_command_before_ring():
    with pytest.raises(ParseError):
        Session().run(parse_program("constants\n")[0])


def test_domain_error_exit_code():
    code, _, err = run("ring qdil Q(x) q=1\n")
    assert code == 2
    assert err == "error: line 1: q must not be a root of unity\n"


def test_unsupported_inhomogeneous_over_cyclic():
    code, _, err = run("ring cyclic Q 3\neq E: y(x+1) = y(x) + 1\nsolve E\n")
    assert code == 2 and "not supported" in err


def test_output_before_error_is_kept():
    code, out, _ = run("ring shift Q(x)\nconstants\nring qdil Q(x) q=-1\n")
    assert code == 2
    assert "Constants: Q" in out


def test_trace_flag():
    _, out, _ = run("ring shift Q(x)\nconstants\n", trace=True)
    assert "    | " in out


def test_cyclic_and_basechange():
    code, out, _ = run("ring cyclic Q 3\nconstants\nbasechange Q(i)\n")
    assert code == 0
    assert "Constants: Q" in out and "Galois action commutes with tau: yes" in out


def test_same_seed_is_reproducible():
    script = "ring shift Q(x)\nfractions\nbasechange Q(zeta_3)\n"
    assert run(script, as_json=True, seed=1)[1] == run(script, as_json=True, seed=1)[1]


def test_main_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["run"])
    assert exc.value.code == 1


def test_main_reads_file(tmp_path, capsys):
    path = tmp_path / "prog.pv"
    path.write_text("ring shift Q(i)(x)\neq I: y(x+1) = i*y(x)\ngroup I\n", encoding="utf-8")
    assert main(["run", str(path)]) == 0
    assert "Galois group: mu_4 over Q(i)" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pvkit", "run", "-", "--json"],
        input="ring shift Q(x)\nconstants\n",
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout.splitlines()[-1])["result"]["constants"] == "Q"
