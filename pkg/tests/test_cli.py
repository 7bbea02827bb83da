"""Command-line interface: subcommands, artifacts, determinism."""

import pytest

from qsurg import cli, gf2


@pytest.fixture(scope="module")
def manifests(tmp_path_factory):
    base = tmp_path_factory.mktemp("manifests")
    assert cli.main(["codes", "build", "--name", "surface3",
                     "--out", str(base)]) == 0
    assert cli.main(["codes", "build", "--name", "hamming",
                     "--out", str(base)]) == 0
    return base


class TestCodesCommands:
    def test_unknown_code(self, tmp_path, capsys):
        assert cli.main(["codes", "build", "--name", "nope",
                         "--out", str(tmp_path)]) == 2

    def test_distance(self, manifests, capsys):
        assert cli.main(["distance", "--manifest",
                         str(manifests / "surface3.manifest")]) == 0
        assert "d=3 exact" in capsys.readouterr().out

    def test_soundness(self, manifests, capsys):
        assert cli.main(["soundness", "--manifest",
                         str(manifests / "hamming.manifest")]) == 0
        assert "7/3" in capsys.readouterr().out


class TestSurgeryCommand:
    def test_build_artifacts(self, manifests, tmp_path):
        alpha = tmp_path / "alpha.txt"
        alpha.write_text("1 1\n1\n")
        out = tmp_path / "dc"
        code = cli.main(["surgery", "build",
                         "--target", str(manifests / "surface3.manifest"),
                         "--alpha", str(alpha),
                         "--rcode", str(manifests / "hamming.manifest"),
                         "--out", str(out)])
        assert code == 0
        hdx = gf2.load_matrix(out / "hdx.txt")
        assert hdx.shape[1] == 103
        assert (out / "report.txt").read_text().startswith("glue_report=ok")


class TestSimCommand:
    def test_report_format(self, tmp_path, capsys):
        spec = tmp_path / "mem.spec"
        spec.write_text("kind=surface_memory\nd=3\n")
        out = tmp_path / "report.tsv"
        assert cli.main(["sim", "run", "--circuit", str(spec), "--p", "0",
                         "--trials", "50", "--seed", "1",
                         "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "p\ttrials\tfailures\testimate\tci_low\tci_high"
        assert lines[1].split("\t")[2] == "0"

    def test_seed_required(self, tmp_path):
        spec = tmp_path / "mem.spec"
        spec.write_text("kind=surface_memory\nd=3\n")
        with pytest.raises(SystemExit) as err:
            cli.main(["sim", "run", "--circuit", str(spec), "--p", "0",
                      "--trials", "5"])
        assert err.value.code == 2


class TestCompileCommand:
    def test_outputs(self, tmp_path, capsys):
        ops = tmp_path / "ops.txt"
        ops.write_text("CNOT u.0 v.1\nT w.2\nMEA x.0\n")
        sched = tmp_path / "sched.tsv"
        cost = tmp_path / "cost.tsv"
        assert cli.main(["compile", "--circuit", str(ops), "--k", "4",
                         "--out", f"{sched},{cost}"]) == 0
        assert sched.read_text().startswith("class\t")
        assert "CNOT" in sched.read_text()
        assert cost.read_text().startswith("class\tfamily")


class TestLedgerCommand:
    def test_vacuous_weight_zero(self, tmp_path, capsys):
        # max-weight 0 turns the exhaustive sweeps vacuous but still passes;
        # the statistical trend row keeps enough trials to resolve.
        code = cli.main(["ledger", "--preset", "desk", "--seed", "7",
                         "--out", str(tmp_path / "out"),
                         "--max-weight", "0", "--samples", "10",
                         "--trials", "20000"])
        assert code == 0
        text = (tmp_path / "out" / "ledger.tsv").read_text()
        assert "FAIL" not in text

    def test_unknown_preset(self):
        assert cli.main(["ledger", "--preset", "galaxy", "--seed", "1"]) == 2

    def test_small_ledger_deterministic(self, tmp_path):
        args = ["ledger", "--preset", "desk", "--seed", "11",
                "--max-weight", "1", "--samples", "50", "--trials", "20000"]
        assert cli.main(args + ["--out", str(tmp_path / "a")]) == 0
        assert cli.main(args + ["--out", str(tmp_path / "b")]) == 0
        a = (tmp_path / "a" / "ledger.tsv").read_bytes()
        b = (tmp_path / "b" / "ledger.tsv").read_bytes()
        assert a == b
