import json

from twobridge.cli import execute


def run(capsys, argv):
    code = execute(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sigma_single_r(capsys):
    code, out, _ = run(capsys, ["sigma", "11", "46", "--r", "1"])
    assert code == 0
    assert out == "r=1 area=23 int=23.25 sigma=-1\n"


def test_sigma_all_r(capsys):
    code, out, _ = run(capsys, ["sigma", "11", "46"])
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 10
    assert lines[1] == "r=2 area=92 int=91.75 sigma=1"


def test_sigma_half_integer_area(capsys):
    code, out, _ = run(capsys, ["sigma", "5", "3", "--r", "1"])
    assert code == 0
    assert out.startswith("r=1 area=1.5 ")


def test_sigma_json(capsys):
    code, out, _ = run(capsys, ["sigma", "11", "46", "--r", "2", "--format", "json"])
    assert code == 0
    obj = json.loads(out)
    assert obj["terms"] == [{"r": 2, "area": "184/2", "int": "367/4", "sigma": 1}]


def test_cg_check_failure_exits_1(capsys):
    code, out, _ = run(capsys, ["cg-check", "5", "2"])
    assert code == 1
    assert "r=1" in out and "sigma=-5" in out


def test_cg_check_pass_exits_0(capsys):
    code, out, _ = run(capsys, ["cg-check", "3", "4"])
    assert code == 0 and out.startswith("PASS")


def test_cg_check_json_round_trips(capsys):
    code, out, _ = run(capsys, ["cg-check", "11", "46", "--format", "json"])
    obj = json.loads(out)
    assert obj["passes"] is True and obj["first_failure"] is None
    assert obj["terms"][0] == {"r": 1, "area": "46/2", "int": "93/4", "sigma": -1}


def test_member_json_schema(capsys):
    code, out, _ = run(capsys, ["member", "5", "18", "--format", "json"])
    assert code == 0
    obj = json.loads(out)
    assert obj == {
        "p": 5,
        "q": 18,
        "member": True,
        "families": ["1", "2"],
        "conditions": [
            {"id": "ii", "sign": "+", "n": 3},
            {"id": "iii", "sign": "+", "n": 3},
            {"id": "iv", "sign": "-", "n": 2, "d": 3},
        ],
        "partial": "5/2",
    }


def test_member_det_flag(capsys):
    code, out, _ = run(capsys, ["member", "--det", "25", "18", "--format", "json"])
    assert code == 0 and json.loads(out)["member"] is True
    code, _, err = run(capsys, ["member", "--det", "24", "5"])
    assert code == 2 and "odd perfect square" in err


def test_member_non_member(capsys):
    code, out, _ = run(capsys, ["member", "5", "2", "--format", "json"])
    assert code == 0
    obj = json.loads(out)
    assert obj["member"] is False and obj["partial"] is None


def test_partial_text(capsys):
    code, out, _ = run(capsys, ["partial", "11", "84"])
    assert code == 0
    assert out == "partial knot: 11/3 (determinant 11, crossing 6)\n"


def test_partial_non_member_is_domain_error(capsys):
    code, _, err = run(capsys, ["partial", "5", "2"])
    assert code == 2 and "not in the known ribbon families" in err


def test_generate_text(capsys):
    code, out, _ = run(capsys, ["generate", "--family", "0", "--params", "2"])
    assert code == 0 and out == "C(2,4) = 9/4\n"


def test_generate_link_tagged(capsys):
    code, out, _ = run(capsys, ["generate", "--family", "0", "--params", "3"])
    assert code == 0 and out == "C(3,5) = 16/5 (link)\n"


def test_generate_rejects_zero_parameter(capsys):
    code, _, err = run(capsys, ["generate", "--family", "1", "--params", "0,1"])
    assert code == 2 and "a, b != 0" in err


def test_eval_and_expand(capsys):
    code, out, _ = run(capsys, ["eval", "C(2,1,3)"])
    assert code == 0 and out == "11/4\n"
    code, out, _ = run(capsys, ["expand", "11/4"])
    assert code == 0 and out == "C(2,1,3)\n"
    code, out, _ = run(capsys, ["eval", "C(2,1,-2)"])
    assert code == 0 and out == "4/1 (link)\n"


def test_table_csv(capsys):
    code, out, _ = run(capsys, ["table", "--max-crossing", "19", "--format", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "crossing,family0,family1,family2,total"
    assert len(lines) == 18  # header + 17 data rows
    assert "12,5,2,1,8" in lines
    assert "19,0,3,0,3" in lines


def test_table_json(capsys):
    code, out, _ = run(capsys, ["table", "--max-crossing", "6", "--format", "json"])
    rows = json.loads(out)
    assert rows[3] == {"crossing": 6, "family0": 1, "family1": 0, "family2": 0, "total": 1}


def test_scan_json_lines(capsys):
    code, out, err = run(capsys, ["scan", "--min-p", "3", "--max-p", "9", "--jobs", "1", "--format", "json"])
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["p"] for r in recs] == [3, 5, 7, 9]
    assert all(r["non_family"] == [] for r in recs)
    assert "scan: p=3 done" in err  # progress goes to the error stream


def test_scan_text_summary(capsys):
    code, out, _ = run(capsys, ["scan", "--min-p", "3", "--max-p", "5", "--jobs", "1"])
    assert code == 0
    assert out.splitlines()[-1] == "no counterexample candidates for p = 3..5"


def test_scan_audit_mode(capsys):
    code, out, _ = run(capsys, ["scan", "--min-p", "3", "--max-p", "3", "--jobs", "1", "--audit", "--format", "json"])
    assert code == 0
    rec = json.loads(out)
    assert rec["q_tested"] == 6  # all q coprime to 3 below 9
    assert sorted(rec["cg_passing"]) == [2, 4, 5, 7]  # the whole orbit of 9/4


def test_crosscheck_text(capsys):
    code, out, _ = run(capsys, ["crosscheck", "--max-crossing", "8"])
    assert code == 0
    assert out.splitlines()[0] == "c=4: amphicheiral=1, family0(c+2)=1, equal=yes"


def test_crosscheck_csv(capsys):
    code, out, _ = run(capsys, ["crosscheck", "--max-crossing", "6", "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0] == "crossing,amphicheiral,family0_at_crossing_plus_2,equal"


def test_domain_error_exits_2(capsys):
    code, _, err = run(capsys, ["sigma", "4", "2", "--r", "1"])
    assert code == 2 and "error:" in err


def test_unknown_command_exits_2(capsys):
    assert execute(["bogus"]) == 2
    capsys.readouterr()


def test_unknown_flag_exits_2(capsys):
    assert execute(["table", "--max-crossing", "6", "--wat"]) == 2
    capsys.readouterr()


def test_output_is_byte_stable(capsys):
    _, first, _ = run(capsys, ["table", "--max-crossing", "16", "--format", "csv"])
    _, second, _ = run(capsys, ["table", "--max-crossing", "16", "--format", "csv"])
    assert first == second
    _, first, _ = run(capsys, ["member", "11", "84", "--format", "json"])
    _, second, _ = run(capsys, ["member", "11", "84", "--format", "json"])
    assert first == second
