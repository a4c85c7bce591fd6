import json
import shutil

import pytest

from smellgraph import fixture_path
from smellgraph import annotation as an
from smellgraph import cli
from smellgraph import dataset as ds
from smellgraph import nn


@pytest.fixture(scope="module")
def corpus_dir(tmp_path_factory):
    corpus = tmp_path_factory.mktemp("corpus")
    for name, parts in (
        ("pricing", ("figures", "pricing")),
        ("shop", ("figures", "shop")),
        ("inventory", ("corpus", "inventory")),
    ):
        shutil.copytree(fixture_path(*parts), corpus / name)
    return corpus


@pytest.fixture(scope="module")
def dataset_dir(corpus_dir, tmp_path_factory):
    out = tmp_path_factory.mktemp("dataset")
    rc = cli.main(
        ["generate", str(corpus_dir), "--out", str(out),
         "--seed", "11", "--heldout", "shop"]
    )
    assert rc == 0
    return out


@pytest.fixture(scope="module")
def lm_checkpoint(dataset_dir, tmp_path_factory):
    out = tmp_path_factory.mktemp("models") / "lm.json"
    rc = cli.main(
        ["train", "--dataset", str(dataset_dir), "--smell", "lm", "--arch", "gcn",
         "--epochs", "5", "--hidden-dim", "8", "--out", str(out)]
    )
    assert rc == 0
    return out


class TestParser:
    def test_missing_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as err:
            cli.main([])
        assert err.value.code == 2

    def test_unknown_architecture_exits_2(self, dataset_dir, tmp_path):
        with pytest.raises(SystemExit) as err:
            cli.main(["train", "--dataset", str(dataset_dir), "--smell", "lm",
                      "--arch", "transformer", "--out", str(tmp_path / "x.json")])
        assert err.value.code == 2


class TestGenerate:
    def test_writes_all_per_smell_files(self, dataset_dir, capsys):
        for smell in ("long_method", "large_class", "feature_envy"):
            assert (dataset_dir / f"{smell}.jsonl").exists()
        assert (dataset_dir / "report.json").exists()

    def test_prints_a_summary(self, corpus_dir, tmp_path, capsys):
        rc = cli.main(["generate", str(corpus_dir), "--out", str(tmp_path / "d"),
                       "--seed", "11"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "long_method" in out and "positives=" in out
        assert "dataset written" in out

    def test_single_project_directory_is_accepted(self, tmp_path):
        rc = cli.main(
            ["generate", fixture_path("figures", "pricing"), "--out", str(tmp_path / "d")]
        )
        assert rc == 0

    def test_missing_corpus_exits_2(self, tmp_path, capsys):
        rc = cli.main(["generate", str(tmp_path / "nowhere"), "--out", str(tmp_path / "d")])
        assert rc == 2
        assert "error:" in capsys.readouterr().err

    def test_heldout_projects_are_respected(self, dataset_dir):
        rows = ds.load_dataset(dataset_dir)["long_method"]
        by_project = {s.provenance["project"]: s.split for s in rows}
        assert by_project["shop"] == "heldout"
        assert by_project["pricing"] == "train"


class TestTrainAndDetect:
    def test_checkpoint_round_trips(self, lm_checkpoint):
        loaded = nn.load_checkpoint(lm_checkpoint)
        assert loaded.model.config.smell == "long_method"

    def test_train_reports_progress(self, dataset_dir, tmp_path, capsys):
        out = tmp_path / "fe.json"
        rc = cli.main(
            ["train", "--dataset", str(dataset_dir), "--smell", "fe", "--arch", "gcn",
             "--epochs", "4", "--hidden-dim", "8", "--out", str(out),
             "--task", "node_classification", "--all-labeled"]
        )
        assert rc == 0
        text = capsys.readouterr().out
        assert "feature_envy/gcn/node_classification" in text
        assert out.exists()

    def test_detect_json_output(self, lm_checkpoint, capsys):
        rc = cli.main(
            ["detect", "--project", fixture_path("figures", "pricing"),
             "--model", str(lm_checkpoint), "--format", "json"]
        )
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["project"] == "pricing"
        assert doc["smell"] == "long_method"
        assert doc["task"] == "graph_classification"
        for rec in doc["recommendations"]:
            assert rec["action"]["kind"] == "extract_lines"
            assert "entity" in rec

    def test_detect_text_output(self, lm_checkpoint, capsys):
        rc = cli.main(
            ["detect", "--project", fixture_path("figures", "pricing"),
             "--model", str(lm_checkpoint)]
        )
        assert rc == 0
        assert capsys.readouterr().out.strip()

    def test_detect_smell_mismatch_exits_2(self, lm_checkpoint, capsys):
        rc = cli.main(
            ["detect", "--project", fixture_path("figures", "pricing"),
             "--model", str(lm_checkpoint), "--smell", "fe"]
        )
        assert rc == 2
        assert "error:" in capsys.readouterr().err

    def test_detect_node_task_reports_blocks(self, dataset_dir, tmp_path, capsys):
        out = tmp_path / "lm_node.json"
        rc = cli.main(
            ["train", "--dataset", str(dataset_dir), "--smell", "lm", "--arch", "gcn",
             "--epochs", "4", "--hidden-dim", "8", "--out", str(out),
             "--task", "node_classification"]
        )
        assert rc == 0
        capsys.readouterr()
        rc = cli.main(
            ["detect", "--project", fixture_path("figures", "shop"),
             "--model", str(out), "--format", "json"]
        )
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["task"] == "node_classification"
        for rec in doc["recommendations"]:
            (span,) = rec["action"]["value"]
            assert len(span) == 2 and span[0] <= span[1]
            assert rec["statements"]


class TestAnnotateCommands:
    def build_records(self, dataset_dir):
        store = an.AnnotationStore(dataset_dir)
        rows = store.list_samples(status="pending", smell="feature_envy")
        good = an.AnnotationRecord(
            sample_id=rows[0]["id"], annotator="cli", verdict="clean",
            guideline_answers=(False,) * 5, action=(), timestamp=1.0,
        )
        return good

    def test_import_applies_and_flushes(self, dataset_dir, tmp_path, capsys):
        work = tmp_path / "ds"
        shutil.copytree(dataset_dir, work)
        good = self.build_records(work)
        batch = tmp_path / "batch.jsonl"
        batch.write_text(json.dumps(good.to_json()) + "\n")
        rc = cli.main(["annotate", "import", str(batch), "--dataset", str(work)])
        assert rc == 0
        assert "applied 1" in capsys.readouterr().out
        reloaded = ds.load_dataset(work)["feature_envy"]
        assert {s.id: s.label for s in reloaded}[good.sample_id] == 0

    def test_import_reports_rejects_with_exit_2(self, dataset_dir, tmp_path, capsys):
        work = tmp_path / "ds"
        shutil.copytree(dataset_dir, work)
        good = self.build_records(work)
        batch = tmp_path / "batch.jsonl"
        batch.write_text(json.dumps(good.to_json()) + "\nnot json\n")
        rc = cli.main(["annotate", "import", str(batch), "--dataset", str(work)])
        assert rc == 2
        captured = capsys.readouterr()
        assert "applied 1" in captured.out
        assert "line 2" in captured.err

    def test_import_no_flush_leaves_dataset_files(self, dataset_dir, tmp_path):
        work = tmp_path / "ds"
        shutil.copytree(dataset_dir, work)
        before = (work / "feature_envy.jsonl").read_bytes()
        good = self.build_records(work)
        batch = tmp_path / "batch.jsonl"
        batch.write_text(json.dumps(good.to_json()) + "\n")
        rc = cli.main(["annotate", "import", str(batch), "--dataset", str(work),
                       "--no-flush"])
        assert rc == 0
        assert (work / "feature_envy.jsonl").read_bytes() == before
        assert (work / "annotations.jsonl").exists()

    def test_serve_flushes_on_shutdown(self, dataset_dir, tmp_path, monkeypatch, capsys):
        flushed = []

        class FakeStore:
            def flush(self):
                flushed.append(True)

        class FakeServer:
            server_address = ("127.0.0.1", 4321)
            store = FakeStore()

            def serve_forever(self):
                raise KeyboardInterrupt

            def server_close(self):
                pass

        monkeypatch.setattr(cli.an, "serve", lambda *a, **k: FakeServer())
        rc = cli.main(["annotate", "serve", "--dataset", str(dataset_dir)])
        assert rc == 0
        assert flushed == [True]
        assert "listening" in capsys.readouterr().out


class TestEvaluate:
    def test_runs_the_grid_and_prints_summary(self, dataset_dir, tmp_path, capsys):
        config = {
            "dataset_dir": str(dataset_dir),
            "out_dir": str(tmp_path / "report"),
            "smells": ["long_method"],
            "architectures": ["gcn"],
            "tasks": ["graph_classification"],
            "epochs": 5,
            "hidden_dim": 8,
        }
        path = tmp_path / "config.json"
        path.write_text(json.dumps(config))
        rc = cli.main(["evaluate", "--config", str(path)])
        assert rc == 0
        out = capsys.readouterr().out
        assert "long_method/gcn/detection: f1=" in out
        assert str(tmp_path / "report") in out
        assert (tmp_path / "report" / "report.json").exists()

    def test_internal_errors_exit_1(self, tmp_path, monkeypatch, capsys):
        def boom(config):
            raise RuntimeError("wires crossed")

        monkeypatch.setattr(cli.ev, "run_experiment", boom)
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"dataset_dir": "x"}))
        rc = cli.main(["evaluate", "--config", str(path)])
        assert rc == 1
        assert "wires crossed" in capsys.readouterr().err

    def test_missing_config_exits_2(self, tmp_path, capsys):
        rc = cli.main(["evaluate", "--config", str(tmp_path / "none.json")])
        assert rc == 2
