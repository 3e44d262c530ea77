from pathlib import Path

import pytest

from aslab.cli import run

FIX = Path(__file__).parent / "fixtures"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_member_residue_obstruction(capsys):
    code, out, _ = call(capsys, "member", "--carrier", "F2((Q))", "--x", "1", "--a", "1")
    assert code == 1
    assert out.strip() == "not-in-image: residue-obstruction 1"


def test_ramsey_exact(capsys):
    code, out, _ = call(capsys, "ramsey", "--r", "2", "--s", "3")
    assert code == 0 and out.strip() == "exact: 6"


def test_ramsey_exact_flag_out_of_reach(capsys):
    code, _, err = call(capsys, "ramsey", "--r", "3", "--s", "3", "--exact")
    assert code == 2 and "BudgetExceeded" in err


def test_step4(capsys):
    code, out, _ = call(capsys, "ramsey", "--step4", "3", "3")
    assert code == 0 and out.strip() == "step4: 26"


def test_generate_then_verify(capsys, tmp_path):
    f = tmp_path / "p.txt"
    assert call(capsys, "pattern", "gen", "ip", "--carrier", "F2((Q))", "--rows", "3", "--out", str(f))[0] == 0
    assert call(capsys, "pattern", "verify", "--file", str(f))[0] == 0


def test_verify_mismatched_fixture_exits_one(capsys):
    code, out, _ = call(capsys, "pattern", "verify", "--file", str(FIX / "patterns" / "ip_F4_mismatched.txt"))
    assert code == 1 and "mismatches:" in out


def test_lift_fixture(capsys, tmp_path):
    f = tmp_path / "lifted.txt"
    code, _, _ = call(capsys, "pattern", "lift", "--file", str(FIX / "patterns" / "ip_F4_r2.txt"),
                      "--target", "F4((s))", "--perturb", "s + s^3", "--out", str(f))
    assert code == 0
    assert call(capsys, "pattern", "verify", "--file", str(f))[0] == 0


def test_lift_wrong_residue_is_error(capsys):
    code, _, err = call(capsys, "pattern", "lift", "--file", str(FIX / "patterns" / "ip_F4_r1.txt"),
                        "--target", "F2((s))")
    assert code == 2 and err.startswith("aslab: ")


def test_field_commands(capsys):
    assert call(capsys, "wp", "--carrier", "F4", "--x", "[0,1]")[1].strip() == "[1,0]"
    code, out, _ = call(capsys, "lift-as", "--carrier", "F2((t))", "--a", "1", "--b", "t", "--x0", "0")
    assert code == 0 and out.strip() == "root: t + t^2 + t^4 + O(t^8)"
    code, out, _ = call(capsys, "reduce", "--p", "2", "--x", "1/t^2")
    assert code == 0 and "witness: (1)/(t)" in out
    code, out, _ = call(capsys, "obstruction", "--carrier", "F2((Q))", "--x", "t^(-1)")
    assert code == 0 and out.startswith("in-image: witness t^(-1/2) + t^(-1/4)")


def test_decomp(capsys):
    code, out, _ = call(capsys, "decomp", "--group", "Z*Z", "--vp", "0,1", "--p", "2")
    assert code == 0
    assert "finitely-ramified: yes, e = 1" in out and "roughly-p-divisible: false" in out


def test_classify_and_semitame(capsys):
    qp = str(FIX / "descriptors" / "qp.txt")
    code, out, _ = call(capsys, "classify", "--file", qp)
    assert code == 0 and "aj_case: mixed_finitely_ramified" in out
    assert call(capsys, "semitame", "--file", qp)[:2] == (1, "semitame: false\n")


def test_encode(capsys):
    code, out, _ = call(capsys, "encode-no-common-root", "--q", "2", "--f", "0,1", "--f", "1,1", "--d", "1,1,1")
    assert code == 0 and "roots: none" in out


@pytest.mark.parametrize("argv", [[], ["bogus"], ["wp", "--carrier", "F4"], ["ramsey", "--nope"],
                                  ["member", "--carrier", "F6", "--x", "1"]])
def test_usage_and_domain_errors_exit_two(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = run(argv)
        raise SystemExit(code)
    assert exc.value.code == 2


def test_same_seed_same_bytes(capsys):
    argv = ["--seed", "7", "pattern", "gen", "tp2", "--carrier", "F8", "--rows", "2", "--cols", "2"]
    first = call(capsys, *argv)
    assert first[0] == 0
    assert call(capsys, *argv) == first
