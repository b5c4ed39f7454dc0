import csv
import io

import pytest

from conftest import run_cli


@pytest.fixture
def pipeline_files(tmp_path):
    raw = tmp_path / "raw.txt"
    lines = []
    for i in range(300):
        lines.append(f"Periodic Fever episodes; drug{i % 4} helps Periodic Fever!")
        lines.append(f"drug{i % 4} dosing guide, see also Periodic Fever notes.")
    raw.write_text("\n".join(lines) + "\n", encoding="utf-8")
    mwdict = tmp_path / "terms.txt"
    mwdict.write_text("Periodic Fever\n", encoding="utf-8")
    gold = tmp_path / "gold.tsv"
    gold.write_text(
        "".join(f"drug{i}\tmay_treat\tPeriodic Fever\n" for i in range(4)),
        encoding="utf-8",
    )
    return raw, mwdict, gold


class TestExitCodes:
    def test_help_exits_zero(self, capsys):
        assert run_cli(["--help"]) == 0
        assert "preprocess" in capsys.readouterr().out

    @pytest.mark.parametrize("cmd", ["preprocess", "train", "distance", "analogy",
                                     "evaluate", "sweep", "serve"])
    def test_subcommand_help_exits_zero(self, cmd, capsys):
        assert run_cli([cmd, "--help"]) == 0
        assert "--" in capsys.readouterr().out

    def test_unknown_flag_exits_one(self, capsys):
        assert run_cli(["distance", "--model", "m", "--word", "w", "--frobnicate"]) == 1

    def test_missing_subcommand_exits_one(self):
        assert run_cli([]) == 1

    def test_objective_invariant_violation_exits_one(self, tmp_path, capsys):
        src = tmp_path / "c.txt"
        src.write_text("a b a b a b\n", encoding="utf-8")
        code = run_cli(["train", "--input", str(src), "--output", str(tmp_path / "m.bin"),
                        "--hs", "0", "--negative", "0", "--min-count", "1"])
        assert code == 1
        assert "objective" in capsys.readouterr().err

    def test_missing_model_file_exits_two(self, capsys):
        assert run_cli(["distance", "--model", "/nonexistent/m.bin", "--word", "x"]) == 2

    def test_serve_with_missing_model_exits_two(self, capsys):
        assert run_cli(["serve", "--model", "/nonexistent/m.bin", "--port", "0"]) == 2

    def test_unknown_query_word_exits_two(self, pipeline_files, tmp_path, capsys):
        raw, mwdict, gold = pipeline_files
        corpus = tmp_path / "corpus.txt"
        model = tmp_path / "m.bin"
        assert run_cli(["--quiet", "preprocess", "--input", str(raw),
                        "--dict", str(mwdict), "--output", str(corpus)]) == 0
        assert run_cli(["--quiet", "train", "--input", str(corpus), "--output", str(model),
                        "--dim", "8", "--epochs", "1", "--min-count", "1"]) == 0
        assert run_cli(["distance", "--model", str(model), "--word", "absent"]) == 2


class TestPreprocessCommand:
    def test_prints_statistics_pair(self, pipeline_files, tmp_path, capsys):
        raw, mwdict, _ = pipeline_files
        out = tmp_path / "corpus.txt"
        assert run_cli(["--quiet", "preprocess", "--input", str(raw),
                        "--dict", str(mwdict), "--output", str(out)]) == 0
        printed = capsys.readouterr().out.strip().split()
        words, distinct = int(printed[0]), int(printed[1])
        assert words == len(out.read_text(encoding="utf-8").split())
        assert distinct == len(set(out.read_text(encoding="utf-8").split()))
        assert "periodic_fever" in out.read_text(encoding="utf-8")

    def test_failure_leaves_no_partial_output(self, tmp_path):
        out = tmp_path / "corpus.txt"
        assert run_cli(["preprocess", "--input", str(tmp_path / "absent.txt"),
                        "--output", str(out)]) == 2
        assert not out.exists()
        assert not list(tmp_path.glob("*.tmp.*"))


class TestFullPipeline:
    def test_preprocess_train_query_evaluate(self, pipeline_files, tmp_path, capsys):
        raw, mwdict, gold = pipeline_files
        corpus = tmp_path / "corpus.txt"
        model = tmp_path / "model.bin"
        report = tmp_path / "report.csv"

        assert run_cli(["--quiet", "preprocess", "--input", str(raw),
                        "--dict", str(mwdict), "--output", str(corpus)]) == 0
        assert run_cli(["--quiet", "train", "--input", str(corpus), "--output", str(model),
                        "--arch", "sg", "--dim", "16", "--window", "3", "--epochs", "3",
                        "--min-count", "2", "--seed", "7"]) == 0
        assert model.exists()
        assert (tmp_path / "model.bin.vocab").exists()
        assert (tmp_path / "model.bin.weights").exists()

        capsys.readouterr()
        assert run_cli(["--quiet", "distance", "--model", str(model),
                        "--word", "periodic_fever", "--top", "5"]) == 0
        out = capsys.readouterr().out
        lines = out.strip().split("\n")
        assert 1 <= len(lines) <= 5
        word, sim = lines[0].split("\t")
        assert float(sim) == pytest.approx(float(f"{float(sim):.6f}"))

        assert run_cli(["--quiet", "analogy", "--model", str(model), "--a", "drug0",
                        "--b", "drug1", "--c", "drug2", "--top", "3"]) == 0
        capsys.readouterr()

        assert run_cli(["--quiet", "evaluate", "--model", str(model), "--gold", str(gold),
                        "--predicate", "may_treat", "--tool", "distance",
                        "--dict", str(mwdict), "--out", str(report)]) == 0
        rows = list(csv.reader(io.StringIO(report.read_text(encoding="utf-8"))))
        assert rows[0][0] == "corpus"
        assert len(rows) == 2
        assert rows[1][1] == "distance"
        assert 0.0 <= float(rows[1][-1]) <= 1.0

    def test_evaluate_prints_csv_to_stdout(self, pipeline_files, tmp_path, capsys):
        raw, mwdict, gold = pipeline_files
        corpus, model = tmp_path / "c.txt", tmp_path / "m.bin"
        run_cli(["--quiet", "preprocess", "--input", str(raw), "--dict", str(mwdict),
                 "--output", str(corpus)])
        run_cli(["--quiet", "train", "--input", str(corpus), "--output", str(model),
                 "--dim", "8", "--epochs", "1", "--min-count", "1", "--seed", "3"])
        capsys.readouterr()
        assert run_cli(["--quiet", "evaluate", "--model", str(model), "--gold", str(gold),
                        "--predicate", "may_treat", "--tool", "analogy",
                        "--dict", str(mwdict)]) == 0
        out = capsys.readouterr().out
        assert out.startswith("corpus,tool,predicate")
        assert ",analogy,may_treat," in out

    def test_evaluate_failure_writes_nothing(self, pipeline_files, tmp_path):
        raw, mwdict, gold = pipeline_files
        corpus, model = tmp_path / "c.txt", tmp_path / "m.bin"
        run_cli(["--quiet", "preprocess", "--input", str(raw), "--dict", str(mwdict),
                 "--output", str(corpus)])
        run_cli(["--quiet", "train", "--input", str(corpus), "--output", str(model),
                 "--dim", "8", "--epochs", "1", "--min-count", "1", "--seed", "3"])
        report = tmp_path / "report.csv"
        assert run_cli(["--quiet", "evaluate", "--model", str(model), "--gold", str(gold),
                        "--predicate", "absent_rel", "--tool", "distance",
                        "--out", str(report)]) == 2
        assert not report.exists()


class TestSweepCommand:
    def test_sweep_writes_grid_csv(self, pipeline_files, tmp_path, capsys):
        raw, mwdict, gold = pipeline_files
        corpus = tmp_path / "corpus.txt"
        run_cli(["--quiet", "preprocess", "--input", str(raw), "--dict", str(mwdict),
                 "--output", str(corpus)])
        report = tmp_path / "sweep.csv"
        code = run_cli(["--quiet", "sweep", "--corpus", str(corpus), "--gold", str(gold),
                        "--arch", "sg,cbow", "--dims", "8", "--windows", "2,3",
                        "--tools", "distance", "--dict", str(mwdict),
                        "--epochs", "1", "--min-count", "2", "--seed", "5",
                        "--out", str(report)])
        assert code == 0
        rows = list(csv.reader(io.StringIO(report.read_text(encoding="utf-8"))))
        assert len(rows) == 1 + 2 * 2 * 1 * 1 * 1

    def test_sweep_rejects_bad_arch(self, pipeline_files, tmp_path, capsys):
        raw, mwdict, gold = pipeline_files
        code = run_cli(["sweep", "--corpus", str(raw), "--gold", str(gold),
                        "--arch", "slowgram", "--out", str(tmp_path / "r.csv")])
        assert code == 1


class TestSeedFlag:
    def test_same_seed_same_model_bytes(self, pipeline_files, tmp_path):
        raw, mwdict, _ = pipeline_files
        corpus = tmp_path / "corpus.txt"
        run_cli(["--quiet", "preprocess", "--input", str(raw), "--dict", str(mwdict),
                 "--output", str(corpus)])
        m1, m2 = tmp_path / "m1.bin", tmp_path / "m2.bin"
        args = ["--quiet", "train", "--input", str(corpus), "--dim", "8", "--epochs", "1",
                "--min-count", "1", "--seed", "11"]
        assert run_cli(args + ["--output", str(m1)]) == 0
        assert run_cli(args + ["--output", str(m2)]) == 0
        assert m1.read_bytes() == m2.read_bytes()
