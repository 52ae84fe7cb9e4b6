import io
import json
import subprocess
import sys

import pytest

from hopfrg.cli import format_element, main, make_instance, parse_element


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), stream=buf)
    return code, buf.getvalue()


@pytest.fixture
def char_file(tmp_path):
    def write(text, name="phi.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_coproduct_of_ladder():
    code, out = run("coproduct", "[0 [0]]", "--instance", "trees")
    assert code == 0
    assert out.strip() == "[0 [0]] ⊗ 1 + [0] ⊗ [0] + 1 ⊗ [0 [0]]"


def test_coproduct_of_e6():
    code, out = run("coproduct", "e6", "--instance", "integers")
    assert code == 0
    assert out.strip() == "e6 ⊗ e1 + e2 ⊗ e3 + e3 ⊗ e2 + e1 ⊗ e6"


def test_reduced_coproduct_of_corolla():
    code, out = run("coproduct", "--reduced", "[0 [0] [0]]")
    assert out.strip() == "[0] [0] ⊗ [0] + 2*[0] ⊗ [0 [0]]"


def test_malformed_literal(capsys):
    code, _ = run("coproduct", "[0")
    assert code == 2
    assert "offset" in capsys.readouterr().err


def test_unknown_instance():
    assert run("coproduct", "1", "--instance", "nope")[0] == 2


@pytest.mark.parametrize("instance,lit,expected", [
    ("trees", "[0]", "-[0]"),
    ("integers", "e12", "-e12"),
    ("trees", "1", "1"),
    ("trees", "[0 [0]]", "-[0 [0]] + [0] [0]"),
])
def test_antipode(instance, lit, expected):
    code, out = run("antipode", lit, "--instance", instance)
    assert code == 0 and out.strip() == expected
    code, out = run("antipode", "--right", lit, "--instance", instance)
    assert out.strip() == expected


def test_birkhoff_toy(char_file):
    path = char_file("kind: character\ngen [0] = z^-1\n")
    code, out = run("birkhoff", "--char", path, "[0]", "--format", "json-lines")
    rec = json.loads(out)
    assert code == 0
    assert rec["phi_minus"] == "-z^-1" and rec["phi_plus"] == "0" and rec["renormalized"] == "0"


def test_birkhoff_holomorphic(char_file):
    path = char_file("kind: character\ngen [0] = 1 + z\ngen [0 [0]] = 2\n")
    code, out = run("birkhoff", "--char", path, "[0 [0]]", "[0] [0]", "--format", "json-lines")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and all(r["phi_minus"] == "0" for r in recs)


def test_birkhoff_both_agree(char_file):
    gens = ["[0]", "[0 [0]]", "[0 [0 [0]]]", "[0 [0] [0]]", "[0 [0 [0 [0]]]]",
            "[0 [0 [0] [0]]]", "[0 [0] [0 [0]]]", "[0 [0] [0] [0]]"]
    text = "kind: character\n" + "".join(
        f"gen {g} = {i + 1}*z^-{1 + i % 2} + {i}\n" for i, g in enumerate(gens))
    path = char_file(text)
    code, out = run("birkhoff", "--char", path, "--method", "both", "--degree", "4",
                    "[0 [0] [0 [0]]]")
    assert code == 0 and "agree: true" in out


def test_birkhoff_missing_generator(char_file, capsys):
    path = char_file("kind: character\ngen [0] = z^-1\n")
    assert run("birkhoff", "--char", path, "[0 [0]]")[0] == 2


def test_precision_exhaustion(char_file, capsys):
    path = char_file("kind: character\ngen [0] = z^-5\n")
    code, _ = run("birkhoff", "--char", path, "[0] [0]", "--degree", "2", "--precision", "2")
    assert code == 3
    assert "precision" in capsys.readouterr().err


def test_precision_below_degree_is_usage_error():
    assert run("coproduct", "[0]", "--degree", "4", "--precision", "3")[0] == 2


def test_rgmap_and_scatter(char_file):
    phi = char_file("kind: character\ngen [0] = z^-1 + 2\ngen [0 [0]] = 3\n")
    code, out = run("rgmap", "--char", phi, "[0]", "--format", "json-lines")
    assert code == 0 and json.loads(out)["value"] == "z^-1 + 2"
    gamma = char_file("kind: infinitesimal\ngen [0] = 3*z^-1\ngen [0 [0]] = 5*z^-1\n", "g.txt")
    code, out = run("scatter", "--inf-char", gamma, "[0 [0]]", "--format", "json-lines")
    assert json.loads(out)["value"] == "9/2*z^-2 + 5/2*z^-1"


def test_beta_command(char_file):
    beta0 = char_file("kind: infinitesimal\ngen [0] = 2\ngen [0 [0]] = -1\n")
    code, out = run("beta", "--inf-char", beta0, "--degree", "3", "--format", "json-lines")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    values = {r["input"]: r["value"] for r in recs if "value" in r}
    assert values["[0]"] == "2" and values["[0 [0]]"] == "-1"
    assert recs[-1]["agree"] and recs[-1]["constant"]


def test_beta_rejects_non_polar(char_file):
    psi = char_file("kind: character\ngen [0] = z^-1 + 1\n")
    code, out = run("beta", "--char", psi, "--degree", "1")
    assert code == 1 and "not in G" in out


@pytest.mark.parametrize("argv", [
    ["verify", "hopf-axioms", "--instance", "trees", "--degree", "5"],
    ["verify", "rota-baxter", "--samples", "200"],
    ["verify", "birkhoff-uniqueness", "--degree", "3"],
    ["verify", "bch-agreement", "--degree", "3"],
    ["verify", "bch-agreement", "--instance", "integers", "--degree", "3"],
    ["verify", "rg-roundtrip", "--degree", "3"],
    ["verify", "beta-theorem", "--degree", "3", "--samples-small", "2"],
    ["verify", "hopf-axioms", "--instance", "graphs:qed", "--degree", "3"],
])
def test_verify_suites_pass(argv):
    code, out = run(*argv)
    assert code == 0, out
    assert ": pass" in out


def test_verify_corrupted_fixture():
    code, out = run("verify", "hopf-axioms", "--instance", "corrupted-fixture",
                    "--format", "json-lines")
    rec = json.loads(out)
    assert code == 1 and rec["passed"] is False
    assert rec["witness"]["check"] == "coassociativity"
    assert rec["witness"]["element"] == "[0 [0] [0]]"


def test_unknown_suite():
    assert run("verify", "nope")[0] == 2


def test_output_is_deterministic():
    argv = ["coproduct", "[0 [0] [0 [0]]]", "2*[0 [0]] - 1/2*[0] + 1"]
    assert run(*argv) == run(*argv)


@pytest.mark.parametrize("instance,lit", [
    ("trees", "2*[0 [0]] - 1/2*[0] [0] + 1"),
    ("planar-trees", "[0 [0] [0 [0]]] - [0 [0 [0]] [0]]"),
    ("integers", "3*e12 - e5 + 1/7"),
    ("symmetric", "x1^2 x2 - 2*x3"),
])
def test_json_antipode_output_round_trips(instance, lit):
    H = make_instance(instance)
    code, out = run("antipode", lit, "--instance", instance, "--format", "json-lines")
    rendered = json.loads(out)["result"]
    x = parse_element(H, lit)
    assert parse_element(H, rendered) == H.antipode(x)
    assert format_element(H, parse_element(H, rendered)) == rendered


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopfrg", "antipode", "e12",
                           "--instance", "integers"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "-e12"
