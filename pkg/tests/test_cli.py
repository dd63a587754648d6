import io
import json

import pytest

from tatebetti.cli import load_problem, run
from tatebetti.errors import InputError, NotArtinian, NotLocal


def write_problem(tmp_path, variables, relations, modules=None, p=101, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"field": {"p": p}, "ring": {"vars": variables, "relations": relations}, "modules": modules or {}}))
    return str(path)


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def x3(tmp_path):
    return write_problem(
        tmp_path,
        ["x"],
        ["x^3"],
        {
            "M": {"presentation": [["x^2"]]},
            "k": {"builtin": "residue_field"},
            "F": {"builtin": "free:2"},
            "D": {"builtin": "dual:M"},
            "Z": {"builtin": "random:42"},
        },
    )


@pytest.fixture
def m2(tmp_path):
    return write_problem(tmp_path, ["x", "y"], ["x^2", "x*y", "y^2"], {"k": {"builtin": "residue_field"}}, name="m2.json")


@pytest.fixture
def x2y2(tmp_path):
    return write_problem(
        tmp_path, ["x", "y"], ["x^2", "y^2"], {"k": {"builtin": "residue_field"}, "R": {"builtin": "free:1"}}, name="x2y2.json"
    )


class TestLoadProblem:
    def test_x3(self, x3):
        pb = load_problem(x3)
        assert pb.ring.dim == 3 and pb.modules["M"].dim == 2
        assert pb.modules["F"].dim == 6 and pb.modules["D"].dim == 2 and pb.modules["k"].dim == 1

    def test_not_artinian(self, tmp_path):
        with pytest.raises(NotArtinian):
            load_problem(write_problem(tmp_path, ["x", "y"], ["x*y"]))

    def test_not_local(self, tmp_path):
        with pytest.raises(NotLocal):
            load_problem(write_problem(tmp_path, ["x"], ["x^2 - x"]))

    def test_parse_error_has_location(self, tmp_path):
        with pytest.raises(InputError, match=r"relations\[1\]"):
            load_problem(write_problem(tmp_path, ["x"], ["x^2", "x +"]))

    @pytest.mark.parametrize(
        "modules",
        [
            {"A": {"builtin": "dual:B"}},
            {"A": {"builtin": "dual:A"}},
            {"A": {"builtin": "free:-1"}},
            {"A": {"builtin": "nonsense"}},
            {"A": {}},
            {"A": {"presentation": [["z"]]}},
        ],
    )
    def test_bad_modules(self, tmp_path, modules):
        with pytest.raises(InputError):
            load_problem(write_problem(tmp_path, ["x"], ["x^2"], modules))

    def test_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{")
        with pytest.raises(InputError):
            load_problem(str(path))


class TestCommands:
    def test_resolve_table(self, x3):
        code, out, _ = call("resolve", x3, "--module", "M", "--steps", "8", "--format", "table")
        assert code == 0
        assert "betti" in out and "status: ok" in out

    def test_resolve_json(self, x3):
        code, out, _ = call("resolve", x3, "--module", "k", "--steps", "4", "--format", "json")
        rep = json.loads(out)
        assert code == 0 and rep["result"]["betti"] == {str(n): 1 for n in range(5)}
        assert rep["result"]["differentials"]["2"] == [["x^2"]]
        assert rep["ring"]["dim"] == 3 and rep["flags"]["steps"] == 4

    def test_json_deterministic(self, x3):
        a = call("periodicity", x3, "--module", "Z", "--seed", "5", "--format", "json")
        b = call("periodicity", x3, "--module", "Z", "--seed", "5", "--format", "json")
        assert a == b and a[0] == 0

    def test_tate_betti(self, x2y2):
        code, out, _ = call("tate-betti", x2y2, "--module", "k", "--from", "-3", "--to", "3", "--format", "json")
        vals = json.loads(out)["result"]["tate_betti"]
        assert code == 0 and list(vals.values()) == [3, 2, 1, 1, 2, 3, 4]

    @pytest.mark.parametrize("command", ["bass", "tate-bass", "dual", "periodicity"])
    def test_single_module_commands(self, x3, command):
        code, out, _ = call(command, x3, "--module", "M", "--format", "json")
        assert code == 0 and json.loads(out)["status"] == "ok"

    @pytest.mark.parametrize("command", ["ext-hat", "tor-hat"])
    def test_binary_commands(self, x3, command):
        code, out, _ = call(command, x3, "--module", "k", "--with", "k", "--from", "-2", "--to", "2", "--format", "json")
        key = command.replace("-", "_")
        assert code == 0 and list(json.loads(out)["result"][key].values()) == [1] * 5

    def test_verify_balance(self, x3):
        code, out, _ = call("verify", x3, "--suite", "balance", "--seed", "42", "--pairs", "10", "--format", "json")
        rep = json.loads(out)
        assert code == 0 and rep["status"] == "PASS"
        assert len(rep["result"]["instances"]) >= 10
        assert all(i["verdict"] == "PASS" for i in rep["result"]["instances"])

    def test_verify_balance_free_module_trivial(self, x2y2):
        code, out, _ = call("verify", x2y2, "--suite", "balance", "--pairs", "1", "--format", "json")
        first = json.loads(out)["result"]["instances"][0]
        assert code == 0 and first["instance"] == "(k, R)"
        # the first pair is (k, R): Hom(T_k, R) is exact by total acyclicity
        assert set(first["hom_T_N"]) == {0} and set(first["hom_M_U"]) == {0}

    def test_verify_matlis_duality(self, x3):
        code, out, _ = call("verify", x3, "--suite", "matlis-duality", "--pairs", "10", "--format", "json")
        assert code == 0 and json.loads(out)["status"] == "PASS"

    def test_verify_skips_without_periodic_k(self, x2y2):
        code, out, _ = call("verify", x2y2, "--suite", "tate-betti-periodicity", "--format", "json")
        rep = json.loads(out)["result"]
        assert code == 0 and rep["status"] == "SKIP"
        assert "hypothesis not satisfied: k's resolution not eventually periodic in window" in rep["reason"]

    def test_verify_non_gorenstein_skips(self, m2):
        code, out, _ = call("verify", m2, "--suite", "acyclicity")
        assert code == 0 and "SKIP" in out

    @pytest.mark.parametrize("suite", ["minimality", "acyclicity", "hypersurface-dichotomy", "tate-bass-periodicity"])
    def test_other_suites(self, x3, suite):
        code, out, _ = call("verify", x3, "--suite", suite, "--pairs", "3")
        assert code == 0 and "status: PASS" in out


class TestErrors:
    def test_tate_bass_not_gorenstein(self, m2):
        code, _, err = call("tate-bass", m2, "--module", "k", "--from", "-6", "--to", "6")
        assert code == 2 and "NotGorenstein" in err

    def test_tate_betti_not_gorenstein(self, m2):
        code, _, err = call("tate-betti", m2, "--module", "k")
        assert code == 2 and "NotGorenstein" in err

    def test_not_artinian_ring(self, tmp_path):
        code, _, err = call("resolve", write_problem(tmp_path, ["x", "y"], ["x*y"]), "--module", "k")
        assert code == 2 and "NotArtinian" in err

    def test_not_local_ring(self, tmp_path):
        code, _, err = call("resolve", write_problem(tmp_path, ["x"], ["x^2 - x"]), "--module", "k")
        assert code == 2 and "NotLocal" in err

    def test_unknown_command_and_flag(self, x3, capsys):
        assert call("frobnicate", x3)[0] == 2
        assert call("resolve", x3, "--bogus")[0] == 2

    @pytest.mark.parametrize(
        "argv",
        [
            ["resolve", "--module", "nope"],
            ["resolve"],
            ["ext-hat", "--module", "k"],
            ["tate-betti", "--module", "k", "--from", "1", "--to", "3"],
            ["verify", "--suite", "nope"],
            ["verify", "--suite", "balance", "--from", "2"],
            ["verify"],
            ["resolve", "--module", "k", "--steps", "-1"],
        ],
    )
    def test_input_errors(self, x3, argv):
        code, _, err = call(argv[0], x3, *argv[1:])
        assert code == 2 and err.startswith("error:")

    def test_missing_file(self, tmp_path):
        assert call("resolve", str(tmp_path / "missing.json"), "--module", "k")[0] == 2


def test_verification_failure_exits_one(x3, monkeypatch):
    import tatebetti.suites as suites
    from tatebetti.resolve import BalanceReport

    monkeypatch.setattr(suites, "balance_check", lambda M, N, lo, hi: BalanceReport((lo, hi), [1], [2], [0], [0]))
    code, out, _ = call("verify", x3, "--suite", "balance", "--pairs", "2")
    assert code == 1 and "[FAIL]" in out and "status: FAIL" in out


def test_invariant_violation_exits_one(x3, monkeypatch):
    import tatebetti.cli as cli
    from tatebetti.errors import InvariantViolation

    def broken(pb, args):
        raise InvariantViolation("routes disagree")

    monkeypatch.setitem(cli.HANDLERS, "bass", broken)
    code, _, err = call("bass", x3, "--module", "k")
    assert code == 1 and "routes disagree" in err
