"""Tests for the evaluation harness: the F1 formula against frozen
precision/recall pairs, opportunity-set scoring at both granularities, report
consistency, and the experiment driver's determinism."""

import json
import os

import numpy as np
import pytest

from smellgraph import dataset as ds
from smellgraph import evaluation as ev
from smellgraph import graphs as gb
from smellgraph.errors import NoGoldError

# Frozen (tp, fp, fn) constructions for published-style precision/recall
# pairs.  Counts are hand-derived so the rates come out exact, e.g.
# tp=3162, fp=3038 gives P = 3162/6200 = 0.51 and tp=3162, fn=1938 gives
# R = 3162/5100 = 0.62.  The expected F1 values are the rounded two-decimal
# forms; prf1 must land within +/-0.005 of each.
PUBLISHED_ROWS = [
    # extract-method style results
    (2800, 2800, 2200, 0.50, 0.56, 0.53),
    (3162, 3038, 1938, 0.51, 0.62, 0.56),  # also the GAT row
    (903, 1197, 1247, 0.43, 0.42, 0.42),
    # extract-class style results
    (2952, 4248, 1148, 0.41, 0.72, 0.52),
    (4032, 5568, 168, 0.42, 0.96, 0.58),
    (3096, 4104, 1204, 0.43, 0.72, 0.54),
    (968, 1232, 3432, 0.44, 0.22, 0.29),
]


class TestPrf1:
    def test_published_rows_within_half_a_point(self):
        for tp, fp, fn, exp_p, exp_r, exp_f1 in PUBLISHED_ROWS:
            p, r, f1 = ev.prf1(tp, fp, fn)
            assert p == pytest.approx(exp_p, abs=1e-9)
            assert r == pytest.approx(exp_r, abs=1e-9)
            assert abs(f1 - exp_f1) <= 0.005

    def test_all_zero_counts(self):
        assert ev.prf1(0, 0, 0) == (0.0, 0.0, 0.0)

    def test_zero_tp_with_traffic(self):
        assert ev.prf1(0, 5, 7) == (0.0, 0.0, 0.0)

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            ev.prf1(-1, 0, 0)

    def test_f1_symmetric_in_p_and_r(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            tp, fp, fn = (int(x) for x in rng.integers(0, 50, size=3))
            assert ev.prf1(tp, fp, fn)[2] == pytest.approx(ev.prf1(tp, fn, fp)[2])

    def test_f1_bounded_by_min_side(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            tp = int(rng.integers(1, 50))
            fp, fn = (int(x) for x in rng.integers(0, 50, size=2))
            p, r, f1 = ev.prf1(tp, fp, fn)
            assert min(p, r) - 1e-12 <= f1 <= 2.0 * min(p, r) + 1e-12


class TestScoreOpportunities:
    def test_perfect_match(self):
        result = ev.score_opportunities(
            {"a": ["m1", "m2"]}, {"a": ["m2", "m1"]}, "method"
        )
        assert result["per_entity"]["a"]["f1"] == 1.0
        assert result["macro"] == {"precision": 1.0, "recall": 1.0, "f1": 1.0}
        assert result["micro"]["f1"] == 1.0

    def test_disjoint_sets(self):
        result = ev.score_opportunities({"a": ["m1"]}, {"a": ["m2"]}, "method")
        assert result["macro"] == {"precision": 0.0, "recall": 0.0, "f1": 0.0}

    def test_published_ratio_from_line_ranges(self):
        # gold covers lines 1..4200 (4200 lines); the prediction covers
        # 169..9768 (9600 lines, 4032 of them inside gold): P = 0.42,
        # R = 0.96, so F1 must land within half a point of 0.58.
        result = ev.score_opportunities(
            {"e": [(169, 9768)]}, {"e": [(1, 4200)]}, "line"
        )
        scores = result["per_entity"]["e"]
        assert scores["precision"] == pytest.approx(0.42)
        assert scores["recall"] == pytest.approx(0.96)
        assert abs(scores["f1"] - 0.58) <= 0.005

    def test_line_granularity_mixes_ints_and_ranges(self):
        result = ev.score_opportunities(
            {"e": [3, (5, 7)]}, {"e": [(3, 3), 5, 6, 7]}, "line"
        )
        assert result["per_entity"]["e"]["f1"] == 1.0

    def test_backwards_range_rejected(self):
        with pytest.raises(ValueError):
            ev.score_opportunities({"e": [(9, 3)]}, {"e": [1]}, "line")

    def test_unknown_granularity_rejected(self):
        with pytest.raises(ValueError):
            ev.score_opportunities({"e": [1]}, {"e": [1]}, "token")

    def test_empty_gold_raises(self):
        with pytest.raises(NoGoldError):
            ev.score_opportunities({"e": [1]}, {}, "line")

    def test_missing_entities_count_as_empty(self):
        result = ev.score_opportunities(
            {"only_predicted": ["m1"]}, {"only_gold": ["m2"]}, "method"
        )
        assert result["per_entity"]["only_predicted"]["fp"] == 1
        assert result["per_entity"]["only_gold"]["fn"] == 1
        assert result["macro"]["f1"] == 0.0

    def test_macro_is_mean_and_micro_is_pooled(self):
        predicted = {"e1": [1, 2], "e2": [5]}
        gold = {"e1": [2, 3], "e2": [5]}
        result = ev.score_opportunities(predicted, gold, "line")
        assert result["per_entity"]["e1"]["f1"] == pytest.approx(0.5)
        assert result["per_entity"]["e2"]["f1"] == 1.0
        assert result["macro"]["f1"] == pytest.approx(0.75)
        micro = result["micro"]
        assert (micro["tp"], micro["fp"], micro["fn"]) == (2, 1, 1)
        assert micro["f1"] == pytest.approx(2 / 3)

    def test_entity_order_does_not_matter(self):
        predicted = {"a": [1], "b": [2], "c": [3]}
        gold = {"c": [3], "a": [9], "b": [2]}
        forward = ev.score_opportunities(predicted, gold, "line")
        reversed_pred = dict(reversed(list(predicted.items())))
        reversed_gold = dict(reversed(list(gold.items())))
        assert ev.score_opportunities(reversed_pred, reversed_gold, "line") == forward


class TestEvalReport:
    def make_report(self):
        p, r, f1 = ev.prf1(8, 2, 4)
        return ev.EvalReport(
            config={"seed": 0},
            seed=0,
            dataset_hash="abc",
            results={
                "long_method": {
                    "gcn": {
                        "detection": {
                            "precision": p, "recall": r, "f1": f1,
                            "tp": 8, "fp": 2, "fn": 4, "tn": 10, "n": 24,
                        }
                    }
                }
            },
        )

    def test_validate_accepts_consistent_report(self):
        self.make_report().validate()

    def test_validate_rejects_tampered_f1(self):
        report = self.make_report()
        report.results["long_method"]["gcn"]["detection"]["f1"] = 0.99
        with pytest.raises(ValueError):
            report.validate()

    def test_json_round_trip(self):
        report = self.make_report()
        clone = ev.EvalReport.from_json(json.loads(json.dumps(report.to_json())))
        assert clone == report


class TestResolveConfig:
    def test_requires_dataset_dir(self):
        with pytest.raises(ValueError):
            ev.resolve_config({})

    def test_unknown_key_rejected(self):
        with pytest.raises(ValueError):
            ev.resolve_config({"dataset_dir": "x", "typo_key": 1})

    def test_unknown_smell_rejected(self):
        with pytest.raises(ValueError):
            ev.resolve_config({"dataset_dir": "x", "smells": ["spaghetti"]})

    def test_defaults_filled(self):
        cfg = ev.resolve_config({"dataset_dir": "x"})
        assert cfg["epochs"] == 200
        assert cfg["architectures"] == ["gcn", "sage", "gat"]

    def test_config_file_path(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"dataset_dir": "x", "seed": 9}))
        assert ev.resolve_config(str(path))["seed"] == 9


# ---------------------------------------------------------------------------
# Experiment driver over a hand-built miniature dataset


def lm_toy_graph(rng, label, n_statements=5, mid="M.f"):
    g = gb.HeteroGraph(level="method", graph_label=label)
    g.nodes.append(gb.Node(mid, "method", list(rng.normal(size=8))))
    signal = 3.5 if label else -3.5
    for i in range(n_statements):
        feats = list(rng.normal(size=12))
        feats[10] = signal + rng.uniform(-0.3, 0.3)
        g.nodes.append(gb.Node(f"{mid}#{i}", "statement", feats, label))
        g.add_edge("include", mid, f"{mid}#{i}")
        if i:
            g.add_edge("cflow", f"{mid}#{i-1}", f"{mid}#{i}")
    return g


def fe_toy_graph(rng, label, n_methods=4, cid="C"):
    g = gb.HeteroGraph(level="class", graph_label=label)
    g.nodes.append(gb.Node(cid, "class", list(rng.normal(size=12))))
    for i in range(n_methods):
        feats = list(rng.normal(size=12))
        moved = label == 1 and i == 0
        feats[4] = 3.5 if moved else -3.5
        g.nodes.append(gb.Node(f"{cid}.m{i}", "method", feats, int(moved) if label == 1 else None))
        g.add_edge("include", cid, f"{cid}.m{i}")
    return g


def lm_sample(i, label, split, rng):
    mid = f"P.C.f{i}"
    g = lm_toy_graph(rng, label, mid=mid)
    opportunity = (
        [n.id for n in g.nodes if n.kind == "statement"] if label == 1 else []
    )
    return ds.SmellSample(
        id=f"toy:long_method:injected:{i:04d}",
        smell="long_method",
        origin="injected" if label == 1 else "original",
        group="A",
        range="PR1" if label == 1 else "PR3",
        label=label,
        graph=gb.graph_to_json(g),
        opportunity_labels=opportunity,
        provenance={"project": "toy", "entity": mid},
        payload={"entity": mid, "entity_source": "void f() {}"},
        split=split,
        in_balanced_train=split == "train",
    )


def fe_sample(i, label, split, rng):
    cid = f"Owner{i}"
    g = fe_toy_graph(rng, label, cid=cid)
    moved = f"{cid}.m0"
    return ds.SmellSample(
        id=f"toy:feature_envy:injected:{i:04d}",
        smell="feature_envy",
        origin="injected" if label == 1 else "original",
        group="A",
        range="PR1" if label == 1 else "PR3",
        label=label,
        graph=gb.graph_to_json(g),
        opportunity_labels=["Target"] if label == 1 else [],
        provenance={"project": "toy", "entity": moved, "related_class": "Target"},
        payload={"entity": moved, "entity_source": "void m0() {}"},
        split=split,
        in_balanced_train=split == "train",
    )


@pytest.fixture(scope="module")
def toy_dataset_dir(tmp_path_factory):
    rng = np.random.default_rng(42)
    directory = tmp_path_factory.mktemp("toy_dataset")
    lm_rows, fe_rows = [], []
    for i in range(16):
        lm_rows.append(lm_sample(i, i % 2, "train", rng))
        fe_rows.append(fe_sample(i, i % 2, "train", rng))
    for i in range(16, 24):
        lm_rows.append(lm_sample(i, i % 2, "heldout", rng))
        fe_rows.append(fe_sample(i, i % 2, "heldout", rng))
    ds.write_samples(lm_rows, str(directory / "long_method.jsonl"))
    ds.write_samples(fe_rows, str(directory / "feature_envy.jsonl"))
    return str(directory)


def experiment_config(dataset_dir, out_dir=None, **overrides):
    cfg = {
        "dataset_dir": dataset_dir,
        "out_dir": out_dir,
        "smells": ["long_method", "feature_envy"],
        "architectures": ["gcn"],
        "tasks": ["graph_classification", "node_classification"],
        "seed": 0,
        "epochs": 30,
        "hidden_dim": 16,
    }
    cfg.update(overrides)
    return cfg


class TestRunExperiment:
    def test_report_structure_and_consistency(self, toy_dataset_dir, tmp_path):
        out = str(tmp_path / "run")
        report = ev.run_experiment(experiment_config(toy_dataset_dir, out))
        report.validate()
        detection = report.results["long_method"]["gcn"]["detection"]
        assert detection["n"] == 8  # the held-out labeled rows
        opportunity = report.results["long_method"]["gcn"]["opportunity"]
        assert opportunity["entities"] == 4  # held-out positives with gold
        assert opportunity["granularity"] == "statement_ids"
        fe_opp = report.results["feature_envy"]["gcn"]["opportunity"]
        assert fe_opp["granularity"] == "class_ids"
        for name in ("report.json", "report.md", "curves.csv"):
            assert os.path.exists(os.path.join(out, name))
        assert os.path.exists(
            os.path.join(out, "checkpoints", "long_method.gcn.graph_classification.json")
        )

    def test_runs_are_byte_identical(self, toy_dataset_dir, tmp_path):
        out_a, out_b = str(tmp_path / "a"), str(tmp_path / "b")
        ev.run_experiment(experiment_config(toy_dataset_dir, out_a))
        ev.run_experiment(experiment_config(toy_dataset_dir, out_b))
        for name in ("report.json", "report.md", "curves.csv"):
            with open(os.path.join(out_a, name), "rb") as fa:
                with open(os.path.join(out_b, name), "rb") as fb:
                    assert fa.read() == fb.read(), name

    def test_report_json_round_trips_and_records_reproducibility_keys(
        self, toy_dataset_dir, tmp_path
    ):
        out = str(tmp_path / "run")
        report = ev.run_experiment(experiment_config(toy_dataset_dir, out))
        with open(os.path.join(out, "report.json"), encoding="utf-8") as fh:
            loaded = ev.EvalReport.from_json(json.load(fh))
        assert loaded == report
        assert loaded.dataset_hash == ev._dataset_hash(toy_dataset_dir)
        assert loaded.config["seed"] == 0
        assert loaded.config["dataset_dir"] == toy_dataset_dir

    def test_checkpoint_reuse_reproduces_results(self, toy_dataset_dir, tmp_path):
        out = str(tmp_path / "run")
        fresh = ev.run_experiment(experiment_config(toy_dataset_dir, out))
        reused = ev.run_experiment(
            experiment_config(toy_dataset_dir, out, reuse_checkpoints=True)
        )
        assert reused.results == fresh.results

    def test_markdown_mentions_each_architecture(self, toy_dataset_dir, tmp_path):
        out = str(tmp_path / "run")
        ev.run_experiment(experiment_config(toy_dataset_dir, out))
        with open(os.path.join(out, "report.md"), encoding="utf-8") as fh:
            text = fh.read()
        assert "| gcn |" in text
        assert "— detection" in text
        assert "— opportunities" in text

    def test_curves_cover_every_trained_cell(self, toy_dataset_dir, tmp_path):
        out = str(tmp_path / "run")
        ev.run_experiment(experiment_config(toy_dataset_dir, out))
        with open(os.path.join(out, "curves.csv"), encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        assert lines[0] == "smell,architecture,task,epoch,loss,val_f1"
        cells = {tuple(line.split(",")[:3]) for line in lines[1:]}
        assert cells == {
            ("long_method", "gcn", "graph_classification"),
            ("long_method", "gcn", "node_classification"),
            ("feature_envy", "gcn", "graph_classification"),
            ("feature_envy", "gcn", "node_classification"),
        }
        assert len(lines) == 1 + 4 * 30  # header + epochs per cell
