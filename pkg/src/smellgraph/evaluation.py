"""Evaluation harness: precision/recall/F1, opportunity-set scoring, and an
experiment driver that trains one model per (smell, architecture, task) cell
over a generated dataset and emits deterministic reports.

Artifacts written per experiment (when ``out_dir`` is configured):

* ``report.json``  -- full results plus the config echo, seed, and a hash of
                      the dataset files, so every report is reproducible from
                      what it records;
* ``report.md``    -- per-smell markdown tables, one row per architecture;
* ``curves.csv``   -- per-epoch training loss and validation F1 per cell;
* ``checkpoints/`` -- one reusable model checkpoint per cell.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from dataclasses import dataclass

from . import dataset as ds
from . import graphs as gb
from . import injector as inj
from . import nn
from .errors import NoGoldError

GRANULARITIES = ("line", "method")

# What the opportunity items are, per smell, in experiment reports.
OPPORTUNITY_UNIT = {
    "long_method": "statement_ids",
    "large_class": "method_ids",
    "feature_envy": "class_ids",
}

CONFIG_DEFAULTS = {
    "dataset_dir": None,  # required
    "out_dir": None,
    "smells": list(inj.SMELLS),
    "architectures": list(nn.ARCHITECTURES),
    "tasks": list(nn.TRAIN_TASKS),
    "seed": 0,
    "epochs": 200,
    "hidden_dim": 64,
    "learning_rate": 1e-3,
    "heads": 2,
    "relational_edges": True,
    "val_fraction": 0.2,
    "reuse_checkpoints": False,
}


# ---------------------------------------------------------------------------
# Scalar metrics


def prf1(tp, fp, fn):
    """(precision, recall, F1) from counts; zero where a denominator is zero."""
    if tp < 0 or fp < 0 or fn < 0:
        raise ValueError("counts must be non-negative")
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2.0 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


def _line_set(items):
    """Normalize line items: ints stand alone, (first, last) pairs expand."""
    out = set()
    for item in items:
        if isinstance(item, (tuple, list)):
            if len(item) != 2:
                raise ValueError(f"line range {item!r} is not a (first, last) pair")
            first, last = int(item[0]), int(item[1])
            if last < first:
                raise ValueError(f"line range {item!r} runs backwards")
            out.update(range(first, last + 1))
        else:
            out.add(int(item))
    return out


def score_opportunities(predicted, gold, granularity):
    """Per-entity precision/recall/F1 of predicted opportunity sets.

    ``predicted`` and ``gold`` map entity ids to item collections: line
    numbers or (first, last) ranges at ``line`` granularity, member ids at
    ``method`` granularity.  Entities missing from one mapping count as
    predicting (or owning) nothing.  Returns per-entity scores plus their
    macro average and the micro (pooled-count) average.
    """
    if granularity not in GRANULARITIES:
        raise ValueError(f"granularity must be one of {GRANULARITIES}")
    if not gold:
        raise NoGoldError("no gold opportunity labels to score against")
    norm = _line_set if granularity == "line" else lambda items: set(items)
    per_entity = {}
    pooled_tp = pooled_fp = pooled_fn = 0
    for eid in sorted(set(predicted) | set(gold)):
        pset = norm(predicted.get(eid, ()))
        gset = norm(gold.get(eid, ()))
        tp, fp, fn = len(pset & gset), len(pset - gset), len(gset - pset)
        pooled_tp, pooled_fp, pooled_fn = pooled_tp + tp, pooled_fp + fp, pooled_fn + fn
        precision, recall, f1 = prf1(tp, fp, fn)
        per_entity[eid] = {
            "precision": precision, "recall": recall, "f1": f1,
            "tp": tp, "fp": fp, "fn": fn,
        }
    count = len(per_entity)
    macro = {
        key: sum(scores[key] for scores in per_entity.values()) / count
        for key in ("precision", "recall", "f1")
    }
    precision, recall, f1 = prf1(pooled_tp, pooled_fp, pooled_fn)
    micro = {
        "precision": precision, "recall": recall, "f1": f1,
        "tp": pooled_tp, "fp": pooled_fp, "fn": pooled_fn,
    }
    return {
        "granularity": granularity,
        "entities": count,
        "per_entity": per_entity,
        "macro": macro,
        "micro": micro,
    }


# ---------------------------------------------------------------------------
# Reports


@dataclass
class EvalReport:
    """Experiment results keyed results[smell][architecture][task-section]."""

    config: dict
    seed: int
    dataset_hash: str
    results: dict

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "seed": self.seed,
            "dataset_hash": self.dataset_hash,
            "results": self.results,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "EvalReport":
        return cls(doc["config"], doc["seed"], doc["dataset_hash"], doc["results"])

    def validate(self) -> "EvalReport":
        """Check every F1 column against its own precision/recall columns."""
        for smell, by_arch in self.results.items():
            for arch, sections in by_arch.items():
                detection = sections.get("detection")
                if detection:
                    p, r, f1 = prf1(detection["tp"], detection["fp"], detection["fn"])
                    ok = (
                        abs(detection["precision"] - p) < 1e-12
                        and abs(detection["recall"] - r) < 1e-12
                        and abs(detection["f1"] - f1) < 1e-12
                    )
                    if not ok:
                        raise ValueError(f"{smell}/{arch}: inconsistent detection metrics")
                opportunity = sections.get("opportunity")
                if opportunity:
                    micro = opportunity["micro"]
                    p, r, f1 = prf1(micro["tp"], micro["fp"], micro["fn"])
                    if abs(micro["f1"] - f1) > 1e-12:
                        raise ValueError(f"{smell}/{arch}: inconsistent micro F1")
                    macro = opportunity["macro"]
                    if not all(0.0 <= macro[k] <= 1.0 for k in ("precision", "recall", "f1")):
                        raise ValueError(f"{smell}/{arch}: macro metrics outside [0,1]")
        return self


def _dataset_hash(directory: str) -> str:
    digest = hashlib.sha256()
    for name in sorted(os.listdir(directory)):
        if not (name.endswith(".jsonl") or name == "report.json"):
            continue
        digest.update(name.encode("utf-8"))
        with open(os.path.join(directory, name), "rb") as fh:
            digest.update(fh.read())
    return digest.hexdigest()


def resolve_config(config) -> dict:
    """Merge a config mapping (or path to a JSON file) with the defaults."""
    if isinstance(config, str):
        with open(config, encoding="utf-8") as fh:
            config = json.load(fh)
    if not isinstance(config, dict):
        raise ValueError("config must be a mapping or a path to a JSON file")
    unknown = set(config) - set(CONFIG_DEFAULTS)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    merged = dict(CONFIG_DEFAULTS)
    merged.update(config)
    if not merged["dataset_dir"]:
        raise ValueError("config requires dataset_dir")
    for key in ("smells", "architectures", "tasks"):
        merged[key] = list(merged[key])
    bad_smells = set(merged["smells"]) - set(inj.SMELLS)
    if bad_smells:
        raise ValueError(f"unknown smells: {sorted(bad_smells)}")
    bad_tasks = set(merged["tasks"]) - set(nn.TRAIN_TASKS)
    if bad_tasks:
        raise ValueError(f"unknown tasks: {sorted(bad_tasks)}")
    return merged


# ---------------------------------------------------------------------------
# Experiment driver


def _train_rows(rows):
    return [s for s in rows if s.split == "train" and s.group == "A" and s.in_balanced_train]


def _evaluate_detection(model, rows) -> dict:
    tp = fp = fn = tn = 0
    for s in rows:
        if s.split != "heldout" or s.label not in (0, 1):
            continue
        g = gb.graph_from_json(s.graph)
        predicted, _ = nn.predict_graph(model, g)
        if s.label == 1 and predicted == 1:
            tp += 1
        elif s.label == 0 and predicted == 1:
            fp += 1
        elif s.label == 1 and predicted == 0:
            fn += 1
        else:
            tn += 1
    precision, recall, f1 = prf1(tp, fp, fn)
    return {
        "precision": precision, "recall": recall, "f1": f1,
        "tp": tp, "fp": fp, "fn": fn, "tn": tn, "n": tp + fp + fn + tn,
    }


def _opportunity_sets(smell, model, rows):
    """Predicted vs origin-gold opportunity items on held-out positives."""
    predicted, gold = {}, {}
    for s in rows:
        if s.split != "heldout" or s.label != 1 or not s.opportunity_labels:
            continue
        g = gb.graph_from_json(s.graph)
        preds = nn.predict_nodes(model, g, node_kind=nn.TARGET_KIND[smell])
        if smell == "feature_envy":
            # The sample graph encodes one candidate target; a positive
            # verdict on the moved method proposes exactly that class.
            entity = s.provenance["entity"]
            label, _ = preds.get(entity, (0, None))
            predicted[s.id] = [s.provenance["related_class"]] if label == 1 else []
        else:
            predicted[s.id] = sorted(nid for nid, (label, _) in preds.items() if label == 1)
        gold[s.id] = list(s.opportunity_labels)
    return predicted, gold


def _cell_context(exc, smell, arch, task):
    exc.args = (f"{smell}/{arch}/{task}: {exc}",)
    return exc


def run_experiment(config) -> EvalReport:
    """Train and evaluate every configured (smell, architecture, task) cell.

    ``config`` is a flat mapping (or path to one, as JSON); see
    ``CONFIG_DEFAULTS`` for the recognized keys.  Deterministic given the
    dataset and seed: running twice writes byte-identical artifacts.
    """
    cfg = resolve_config(config)
    dataset = ds.load_dataset(cfg["dataset_dir"], smells=tuple(cfg["smells"]))
    out_dir = cfg["out_dir"]
    ckpt_dir = None
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        ckpt_dir = os.path.join(out_dir, "checkpoints")
        os.makedirs(ckpt_dir, exist_ok=True)

    results = {}
    curves = []
    for smell in cfg["smells"]:
        rows = dataset.get(smell, [])
        results[smell] = {}
        for arch in cfg["architectures"]:
            sections = {}
            for task in cfg["tasks"]:
                train_cfg = nn.TrainConfig(
                    smell=smell,
                    architecture=arch,
                    task=task,
                    learning_rate=cfg["learning_rate"],
                    epochs=cfg["epochs"],
                    seed=cfg["seed"],
                    hidden_dim=cfg["hidden_dim"],
                    heads=cfg["heads"],
                    relational_edges=cfg["relational_edges"],
                    val_fraction=cfg["val_fraction"],
                )
                ckpt_path = (
                    os.path.join(ckpt_dir, f"{smell}.{arch}.{task}.json") if ckpt_dir else None
                )
                model, log, best_epoch = None, [], None
                if cfg["reuse_checkpoints"] and ckpt_path and os.path.exists(ckpt_path):
                    loaded = nn.load_checkpoint(ckpt_path)
                    model, best_epoch = loaded.model, loaded.best_epoch
                else:
                    graphs_ = [gb.graph_from_json(s.graph) for s in _train_rows(rows)]
                    try:
                        outcome = nn.train(graphs_, train_cfg)
                    except Exception as exc:
                        raise _cell_context(exc, smell, arch, task)
                    model, log, best_epoch = outcome.model, outcome.log, outcome.best_epoch
                    if ckpt_path:
                        nn.save_checkpoint(outcome, ckpt_path)
                for row in log:
                    curves.append(
                        {
                            "smell": smell, "architecture": arch, "task": task,
                            "epoch": row["epoch"], "loss": row["loss"],
                            "val_f1": row["val_f1"],
                        }
                    )
                if task == "graph_classification":
                    section = _evaluate_detection(model, rows)
                    section["train_size"] = len(_train_rows(rows))
                    if best_epoch is not None:
                        section["best_epoch"] = best_epoch
                    sections["detection"] = section
                else:
                    predicted, gold = _opportunity_sets(smell, model, rows)
                    if gold:
                        scored = score_opportunities(predicted, gold, "method")
                        section = {
                            "granularity": OPPORTUNITY_UNIT[smell],
                            "entities": scored["entities"],
                            "macro": scored["macro"],
                            "micro": scored["micro"],
                        }
                    else:
                        section = {
                            "granularity": OPPORTUNITY_UNIT[smell],
                            "entities": 0,
                            "macro": None,
                            "micro": None,
                        }
                    if best_epoch is not None:
                        section["best_epoch"] = best_epoch
                    sections["opportunity"] = section
            results[smell][arch] = sections

    # Echo only the keys that determine results, so reports from the same
    # dataset/config/seed are byte-identical wherever they are written.
    echo = {k: cfg[k] for k in sorted(cfg) if k not in ("out_dir", "reuse_checkpoints")}
    report = EvalReport(
        config=echo,
        seed=cfg["seed"],
        dataset_hash=_dataset_hash(cfg["dataset_dir"]),
        results=results,
    ).validate()

    if out_dir:
        with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
            json.dump(report.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        with open(os.path.join(out_dir, "report.md"), "w", encoding="utf-8") as fh:
            fh.write(render_markdown(report))
        with open(os.path.join(out_dir, "curves.csv"), "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["smell", "architecture", "task", "epoch", "loss", "val_f1"])
            for row in curves:
                writer.writerow(
                    [
                        row["smell"], row["architecture"], row["task"], row["epoch"],
                        repr(row["loss"]),
                        "" if row["val_f1"] is None else repr(row["val_f1"]),
                    ]
                )
    return report


def render_markdown(report: EvalReport) -> str:
    """Per-smell results as markdown tables, one architecture per row."""
    out = io.StringIO()
    out.write("# Evaluation report\n\n")
    out.write(f"seed: {report.seed}\n\n")
    out.write(f"dataset: `{report.dataset_hash}`\n\n")
    for smell in sorted(report.results):
        by_arch = report.results[smell]
        archs = sorted(by_arch)
        if any("detection" in by_arch[a] for a in archs):
            out.write(f"## {smell} — detection\n\n")
            out.write("| Architecture | Precision | Recall | F1 |\n")
            out.write("| --- | --- | --- | --- |\n")
            for arch in archs:
                d = by_arch[arch].get("detection")
                if d:
                    out.write(
                        f"| {arch} | {d['precision']:.3f} | {d['recall']:.3f} "
                        f"| {d['f1']:.3f} |\n"
                    )
            out.write("\n")
        if any("opportunity" in by_arch[a] for a in archs):
            out.write(f"## {smell} — opportunities\n\n")
            out.write(
                "| Architecture | Macro P | Macro R | Macro F1 "
                "| Micro P | Micro R | Micro F1 |\n"
            )
            out.write("| --- | --- | --- | --- | --- | --- | --- |\n")
            for arch in archs:
                o = by_arch[arch].get("opportunity")
                if o and o["macro"] is not None:
                    ma, mi = o["macro"], o["micro"]
                    out.write(
                        f"| {arch} | {ma['precision']:.3f} | {ma['recall']:.3f} "
                        f"| {ma['f1']:.3f} | {mi['precision']:.3f} "
                        f"| {mi['recall']:.3f} | {mi['f1']:.3f} |\n"
                    )
                elif o:
                    out.write(f"| {arch} | — | — | — | — | — | — |\n")
            out.write("\n")
    return out.getvalue()
