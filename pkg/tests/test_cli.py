import json

import pytest

from rigidfp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEnumerate:
    def test_partitions_text(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--theory", "B", "--rank", "2")
        assert code == 0
        assert out.splitlines() == ["1^5", "2^2 1"]

    def test_pairs_text(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--theory", "B", "--rank", "1",
                           "--pairs")
        assert code == 0
        assert out.splitlines() == ["(1^3; -)", "(1; 1^2)"]

    def test_json_lines(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--theory", "D", "--rank", "4",
                           "--json")
        assert code == 0
        records = [json.loads(line) for line in out.splitlines()]
        assert {"theory": "D", "rank": 4, "partition": [1] * 8} in records
        assert all(list(r) == ["theory", "rank", "partition"] for r in records)


class TestFingerprint:
    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "fingerprint", "--theory", "C",
                           "--prime", "2 1^2", "--dprime", "1^2")
        assert code == 0
        assert "mu: 2 1^4" in out
        assert "alpha: 1^2" in out
        assert "beta: 1" in out
        assert "tau: 2:-1(iii)" in out

    def test_json_record_keys(self, capsys):
        code, out, _ = run(capsys, "fingerprint", "--theory", "B",
                           "--prime", "2^2 1", "--dprime", "1^2", "--json")
        assert code == 0
        rec = json.loads(out)
        assert list(rec) == [
            "theory", "rank", "lambda_prime", "lambda_dprime", "combine_mode",
            "iii_variant", "tie_break", "mu", "alpha", "beta", "diagnostics",
            "blocks",
        ]
        assert rec["alpha"] == [2, 1]
        assert rec["beta"] == []
        assert rec["diagnostics"] == []

    def test_diagnostic_reported_not_fatal(self, capsys):
        code, out, _ = run(capsys, "fingerprint", "--theory", "C",
                           "--prime", "2 1^2", "--iii", "vacuous", "--json")
        assert code == 0
        rec = json.loads(out)
        assert rec["alpha"] is None
        assert rec["diagnostics"]

    def test_compare_shows_all_conventions(self, capsys):
        code, out, _ = run(capsys, "fingerprint", "--theory", "B",
                           "--prime", "1", "--dprime", "1^2", "--compare")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 4
        assert any("mode=interleave" in ln for ln in lines)
        assert any("mode=sum" in ln for ln in lines)

    def test_deterministic(self, capsys):
        argv = ("fingerprint", "--theory", "D", "--prime", "3 2^2 1", "--json")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "rec.jsonl"
        code, out, _ = run(capsys, "fingerprint", "--theory", "B",
                           "--prime", "2^2 1", "--dprime", "1^2", "--json",
                           "--out", str(target))
        assert code == 0
        assert out == ""
        rec = json.loads(target.read_text(encoding="utf-8"))
        assert rec["theory"] == "B"

    def test_bad_partition_exits_2(self, capsys):
        code, _, err = run(capsys, "fingerprint", "--theory", "B",
                           "--prime", "2 frog")
        assert code == 2
        assert "frog" in err

    def test_bad_condition_exits_2(self, capsys):
        code, _, err = run(capsys, "fingerprint", "--theory", "B",
                           "--prime", "1^3", "--conditions", "i,iv")
        assert code == 2
        assert "iv" in err


class TestCheck:
    def test_suite_passes(self, capsys):
        code, out, _ = run(capsys, "check", "structure", "--max-rank", "6")
        assert code == 0
        assert out.startswith("suite structure: checked ")
        assert out.rstrip().endswith("PASS")

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "check", "parity", "--max-rank", "6",
                           "--json")
        assert code == 0
        rec = json.loads(out)
        assert rec["ok"] is True
        assert rec["checked"] > 0

    def test_unknown_suite_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["check", "nonsense"])
        assert exc.value.code == 2


class TestFibers:
    def test_rank_one_fiber(self, capsys):
        code, out, _ = run(capsys, "fibers", "--theory", "B", "--rank", "1")
        assert code == 0
        assert "fiber [1; -]: 2 members" in out
        assert "(1^3; -)" in out and "(1; 1^2)" in out

    def test_d_mirror_pairs_counted_once(self, capsys):
        code, out, _ = run(capsys, "fibers", "--theory", "D", "--rank", "2",
                           "--json")
        assert code == 0
        for line in out.splitlines():
            rec = json.loads(line)
            seen = set()
            for m in rec["members"]:
                key = (tuple(m["lambda_prime"]), tuple(m["lambda_dprime"]))
                assert (key[1], key[0]) not in seen
                seen.add(key)


class TestRender:
    def test_diagram(self, capsys):
        code, out, _ = run(capsys, "render", "--theory", "B",
                           "--prime", "2^2 1", "--dprime", "1^2")
        assert code == 0
        rows = out.splitlines()
        assert rows[0] == "##"
        assert len(rows) == 5
        assert set("".join(rows)) <= {"#", "*"}


class TestUsage:
    def test_missing_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_missing_theory(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["enumerate", "--rank", "2"])
        assert exc.value.code == 2
