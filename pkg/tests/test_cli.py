import json
import random

from qspace.cli import main
from qspace.expressions import parse, render


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_nf_command(capsys):
    code, out, _ = run(capsys, "nf", "Xm Xp", "--space", "euclid3")
    assert code == 0
    assert out == "(q - q^-1) X3^2 + Xp Xm"


def test_nf_hatted_input(capsys):
    code, out, _ = run(capsys, "nf", "dh1 X1", "--space", "line")
    assert code == 0
    # dh1 = q d1: q d1 X1 = q + q^2 X1 d1
    assert out == "q + q^2 X1 d1"


def test_star_command(capsys):
    code, out, _ = run(capsys, "star", "xm", "xp", "--space", "euclid3")
    assert code == 0
    assert out == "(q - q^-1) x3^2 + xp xm"
    code, out, _ = run(capsys, "star", "x3", "xp", "--space", "euclid3")
    assert out == "q^2 xp x3"


def test_d_command(capsys):
    code, out, _ = run(capsys, "d", "x3^2", "--index", "3", "--variant", "left",
                       "--space", "euclid3")
    assert code == 0
    assert out == "(q^2 + 1) x3"


def test_translate_antipode_commands(capsys):
    code, out, _ = run(capsys, "translate", "x1^2", "--variant", "L", "--space", "line")
    assert code == 0
    assert out == "y1^2 + (1 + q^-1) x1 y1 + x1^2"
    code, out, _ = run(capsys, "antipode", "x1^2", "--variant", "L", "--space", "line")
    assert out == "(q^-1) x1^2"


def test_exp_command(capsys):
    code, out, _ = run(capsys, "exp", "--space", "line", "--degree", "1")
    assert code == 0
    assert "x1 (x) d1" in out and "x0 (x) d0" in out


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "nf", "x1 +* 2", "--space", "line")
    assert code == 2
    assert "parse error" in err


def test_mixing_error_exit_code(capsys):
    code, _, err = run(capsys, "nf", "x1 X1", "--space", "line")
    assert code == 2


def test_unknown_suite_exit_code(capsys):
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 2


def test_verify_single_suite_json(capsys):
    code, out, _ = run(capsys, "verify", "ybe", "--json")
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 2
    for rep in reports:
        assert set(rep) == {"check", "space", "status", "failures", "notes"}
        assert rep["status"] == "pass"
        assert rep["failures"] == []
    spaces = {r["space"] for r in reports}
    assert spaces == {"line", "euclid3"}


def test_verify_grassmann(capsys):
    code, out, _ = run(capsys, "verify", "grassmann")
    assert code == 0
    assert "[PASS] grassmann" in out


def test_run_suite_empty_is_empty():
    from qspace.suites import run_suite

    assert run_suite([]) == []


def test_half_power_round_trips():
    # scalars in powers of sqrt(q) and half-integer scaling operators
    v = parse("q^(3/2)", "line")
    assert render(parse(render(v), "line")) == render(v)
    w = parse("L^(1/2) Xp", "euclid3")
    printed = render(w)
    assert render(parse(printed, "euclid3")) == printed
    n = parse("L^(-3/2)", "euclid3")
    assert render(parse(render(n), "euclid3")) == render(n)


def test_q_value_rendering(capsys):
    code, out, _ = run(capsys, "nf", "q^2 Xp", "--space", "euclid3",
                       "--q-value", "1.1")
    assert code == 0
    assert out.startswith("(1.21")


def test_int_command(tmp_path, capsys):
    q0 = 1.1
    path = tmp_path / "samples.txt"
    with open(path, "w") as fh:
        for k in range(-220, 80):
            fh.write(f"{k} {q0 ** k}\n")
    code, out, _ = run(capsys, "int", "--from", "0", "--to", "1", "--q", "1.1",
                       "--samples", str(path))
    assert code == 0
    assert abs(float(out) - 1 / 2.1) < 1e-9


def test_evolve_command(capsys):
    code, out, _ = run(capsys, "evolve", "--H", "free", "--order", "3",
                       "--space", "line", "--observable", "X1")
    assert code == 0
    assert "[PASS] schrodinger" in out
    assert "[PASS] heisenberg" in out


# -- the canonical-print corpus ------------------------------------------------

_SCALARS = ["1", "2", "3/4", "q", "q^2", "q^-1", "i", "lambda", "lambda_plus"]
_LINE_C = ["x0", "x1"]
_E3_C = ["x0", "xp", "x3", "xm"]
_LINE_NC = ["X0", "X1", "d0", "d1", "dh1", "L"]
_E3_NC = ["X0", "Xp", "X3", "Xm", "d0", "dp", "d3", "dm", "dh3", "L"]


def _random_expression(rng):
    space = rng.choice(["line", "euclid3"])
    kind = rng.choice(["scalar", "c", "nc"])
    pools = {
        ("line", "c"): _LINE_C,
        ("euclid3", "c"): _E3_C,
        ("line", "nc"): _LINE_NC,
        ("euclid3", "nc"): _E3_NC,
    }
    terms = []
    for _ in range(rng.randint(1, 3)):
        factors = [rng.choice(_SCALARS)]
        if kind != "scalar":
            for _ in range(rng.randint(1, 3)):
                name = rng.choice(pools[(space, kind)])
                power = rng.randint(1, 3)
                factors.append(name if power == 1 else f"{name}^{power}")
        terms.append(" ".join(factors))
    return space, " + ".join(terms)


def test_round_trip_corpus_of_200():
    rng = random.Random(2024)
    count = 0
    while count < 200:
        space, text = _random_expression(rng)
        value = parse(text, space)
        printed = render(value)
        reparsed = parse(printed, space)
        assert render(reparsed) == printed, (text, printed)
        count += 1
