"""Sample records, JSONL persistence, and end-to-end dataset generation.

A :class:`SmellSample` is one training/evaluation example: a serialized
heterogeneous graph plus its labeling state.  ``generate_dataset`` runs the
whole synthesis pipeline over a corpus of parsed projects:

1. every original method/class is bucketed and grouped as-is;
2. every applicable inverse refactoring (method merge, class merge, method
   move) is applied to produce injected counterparts;
3. grouping rules assign auto labels (A group), route gray-zone samples to
   manual annotation (M group), or discard;
4. projects are split into train/held-out partitions and the A-group
   training negatives are down-sampled to match the positives.

Samples are written one JSON object per line, one file per smell kind, with
a ``report.json`` summarizing counts and discards.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field as dfield, asdict

from . import codemodel as cm
from . import graphs as gr
from . import injector as inj
from . import metrics as mx
from .errors import (
    CorruptDatasetError,
    EmptyDatasetError,
    MergeUnsupportedError,
    MoveUnsupportedError,
    UnknownSampleError,
)


@dataclass
class SmellSample:
    """One labeled (or to-be-labeled) example for a single smell kind."""

    id: str
    smell: str  # long_method | large_class | feature_envy
    origin: str  # original | injected
    group: str  # A (auto-labeled) | M (manual annotation)
    range: str  # PR1 | PR2 | PR3
    label: int | None  # 1 smelly, 0 clean, None awaiting annotation
    graph: dict  # serialized HeteroGraph
    opportunity_labels: list  # statement ids / method ids / [class id]
    provenance: dict  # project, pattern, entity ids, split bookkeeping
    payload: dict = dfield(default_factory=dict)  # entity source for display
    split: str = "train"  # train | heldout (project-disjoint)
    in_balanced_train: bool = False

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, doc: dict) -> "SmellSample":
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in doc.items() if k in known})


# ---------------------------------------------------------------------------
# JSONL persistence


def write_samples(samples: list, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in samples:
            fh.write(json.dumps(s.to_json(), sort_keys=True, separators=(",", ":")))
            fh.write("\n")


def read_samples(path: str) -> list:
    samples = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorruptDatasetError(f"{path}:{lineno}: {exc}") from exc
            for key in ("id", "smell", "origin", "group", "range", "graph"):
                if key not in doc:
                    raise CorruptDatasetError(f"{path}:{lineno}: missing key {key!r}")
            samples.append(SmellSample.from_json(doc))
    return samples


def load_dataset(directory: str, smells: tuple = inj.SMELLS) -> dict:
    """Read every per-smell JSONL file under `directory`."""
    out = {}
    for smell in smells:
        path = os.path.join(directory, f"{smell}.jsonl")
        if os.path.exists(path):
            out[smell] = read_samples(path)
    if not out or not any(out.values()):
        raise EmptyDatasetError(f"no samples found under {directory}")
    return out


def sample_by_id(dataset: dict, sample_id: str) -> SmellSample:
    for samples in dataset.values():
        for s in samples:
            if s.id == sample_id:
                return s
    raise UnknownSampleError(sample_id)


# ---------------------------------------------------------------------------
# Graph construction per sample


def _method_graph_doc(m: cm.MethodEntity, stmt_labels: dict | None, graph_label) -> dict:
    schema = gr.FeatureSchema.for_task("long_method")
    g = gr.build_method_graph(m, schema)
    if stmt_labels is not None:
        for node in g.nodes:
            if node.kind == "statement":
                node.label = stmt_labels.get(node.id, 0)
    g.graph_label = graph_label
    return gr.graph_to_json(g)


def _class_graph_doc(
    c: cm.ClassEntity, p: cm.Project, task: str, method_labels: dict | None,
    graph_label, target: cm.ClassEntity | None = None,
) -> dict:
    schema = gr.FeatureSchema.for_task(task)
    g = gr.build_class_graph(c, p, schema, target_class=target)
    if method_labels is not None:
        for node in g.nodes:
            if node.kind == "method":
                node.label = method_labels.get(node.id, None)
    g.graph_label = graph_label
    return gr.graph_to_json(g)


# ---------------------------------------------------------------------------
# Generation


def _advisor_negative(m: cm.MethodEntity, p: cm.Project, thresholds: dict | None) -> bool:
    return not mx.advisor_check(m, "long_method", p, thresholds).positive


def _payload(entity, smell: str, p: cm.Project, thresholds, file_path: str) -> dict:
    """Everything a reviewer needs to display and validate the sample later,
    captured now because the source project is not shipped with the dataset."""
    verdict = mx.advisor_check(entity, smell, p, thresholds)
    doc = {
        "entity": entity.id,
        "entity_source": entity.source,
        "file": file_path,
        "span": list(entity.span),
        "advisor": {"positive": verdict.positive,
                    "fired_terms": dict(verdict.fired_terms)},
    }
    if smell == "long_method":
        doc["statement_spans"] = {s.id: list(s.span) for s in entity.statements}
    return doc


def _split_projects(names: list, seed: int, heldout: set | None, fraction: float) -> set:
    if heldout is not None:
        return set(heldout)
    ordered = sorted(names)
    rng = random.Random(seed ^ 0x5EED)
    rng.shuffle(ordered)
    k = max(1, round(len(ordered) * fraction)) if len(ordered) > 1 else 0
    return set(ordered[:k])


class _Log:
    def __init__(self):
        self.discarded = []
        self.failed = []

    def discard(self, project, smell, origin, entity, prange, reason):
        self.discarded.append(
            {
                "project": project,
                "smell": smell,
                "origin": origin,
                "entity": entity,
                "range": prange,
                "reason": reason,
            }
        )

    def fail(self, project, smell, candidate, error):
        self.failed.append(
            {
                "project": project,
                "smell": smell,
                "candidate": candidate,
                "error": str(error),
            }
        )


def _gen_long_method(p: cm.Project, cfg, thresholds, log, counter) -> list:
    samples = []
    # Originals.
    for cls, m in p.iter_methods():
        if m.is_ctor or m.is_abstract:
            continue
        prange = inj.possibility_range(p, m, "long_method", cfg)
        adv_neg = _advisor_negative(m, p, thresholds)
        grouped = inj.group_sample("long_method", "original", prange, adv_neg)
        if grouped is None:
            log.discard(p.name, "long_method", "original", m.id, prange, "no grouping rule")
            continue
        group, label = grouped
        stmt_labels = {s.id: 0 for s in m.statements} if label == 0 else None
        samples.append(
            SmellSample(
                id=f"{p.name}:long_method:original:{next(counter):04d}",
                smell="long_method",
                origin="original",
                group=group,
                range=prange,
                label=label,
                graph=_method_graph_doc(m, stmt_labels, label),
                opportunity_labels=[],
                provenance={"project": p.name, "entity": m.id, "pattern": None},
                payload=_payload(m, "long_method", p, thresholds, cls.file_path),
            )
        )
    # Injected.
    for cand in inj.find_method_merge_candidates(p, cfg):
        try:
            result = inj.merge_methods(p, cand)
        except MergeUnsupportedError as exc:
            log.fail(p.name, "long_method", vars(cand), exc)
            continue
        merged = result.project.method_by_id(result.method_id)
        prange = inj.possibility_range(result.project, merged, "long_method", cfg)
        grouped = inj.group_sample("long_method", "injected", prange)
        opportunity = sorted(sid for sid, org in result.origin.items() if org == "callee")
        if grouped is None:
            log.discard(p.name, "long_method", "injected", merged.id, prange, "no grouping rule")
            continue
        group, label = grouped
        stmt_labels = None
        if label == 1:
            stmt_labels = {sid: 1 if org == "callee" else 0 for sid, org in result.origin.items()}
        mcls = result.project.classes[merged.owner]
        samples.append(
            SmellSample(
                id=f"{p.name}:long_method:injected:{next(counter):04d}",
                smell="long_method",
                origin="injected",
                group=group,
                range=prange,
                label=label,
                graph=_method_graph_doc(merged, stmt_labels, label),
                opportunity_labels=opportunity,
                provenance={
                    "project": p.name,
                    "entity": merged.id,
                    "pattern": cand.pattern,
                    "caller": cand.caller,
                    "callee": cand.callee,
                    "site": cand.site,
                },
                payload=_payload(merged, "long_method", result.project, thresholds,
                                 mcls.file_path),
            )
        )
    return samples


def _gen_large_class(p: cm.Project, cfg, thresholds, log, counter) -> list:
    samples = []
    for cls in p.class_list:
        prange = inj.possibility_range(p, cls, "large_class", cfg)
        grouped = inj.group_sample("large_class", "original", prange)
        if grouped is None:  # pragma: no cover - originals always match a rule
            log.discard(p.name, "large_class", "original", cls.id, prange, "no grouping rule")
            continue
        group, label = grouped
        method_labels = {m.id: 0 for m in cls.methods} if label == 0 else None
        samples.append(
            SmellSample(
                id=f"{p.name}:large_class:original:{next(counter):04d}",
                smell="large_class",
                origin="original",
                group=group,
                range=prange,
                label=label,
                graph=_class_graph_doc(cls, p, "large_class", method_labels, label),
                opportunity_labels=[],
                provenance={"project": p.name, "entity": cls.id, "pattern": None},
                payload=_payload(cls, "large_class", p, thresholds, cls.file_path),
            )
        )
    for cand in inj.find_class_merge_candidates(p):
        try:
            result = inj.merge_classes(p, cand)
        except MergeUnsupportedError as exc:
            log.fail(p.name, "large_class", vars(cand), exc)
            continue
        merged_cls = result.project.classes[result.class_id]
        prange = inj.possibility_range(result.project, merged_cls, "large_class", cfg)
        grouped = inj.group_sample("large_class", "injected", prange)
        opportunity = sorted(
            mid for mid, org in result.member_origin.items() if org == "absorbed"
        )
        if grouped is None:
            log.discard(p.name, "large_class", "injected", merged_cls.id, prange, "no grouping rule")
            continue
        group, label = grouped
        method_labels = None
        if label == 1:
            method_labels = {
                mid: 1 if org == "absorbed" else 0 for mid, org in result.member_origin.items()
            }
        samples.append(
            SmellSample(
                id=f"{p.name}:large_class:injected:{next(counter):04d}",
                smell="large_class",
                origin="injected",
                group=group,
                range=prange,
                label=label,
                graph=_class_graph_doc(
                    merged_cls, result.project, "large_class", method_labels, label
                ),
                opportunity_labels=opportunity,
                provenance={
                    "project": p.name,
                    "entity": merged_cls.id,
                    "pattern": cand.pattern,
                    "absorber": cand.absorber,
                    "absorbed": cand.absorbed,
                },
                payload=_payload(merged_cls, "large_class", result.project, thresholds,
                                 merged_cls.file_path),
            )
        )
    return samples


def _gen_feature_envy(p: cm.Project, cfg, thresholds, log, counter) -> list:
    samples = []
    for cls, m in p.iter_methods():
        if m.is_ctor or m.is_abstract:
            continue
        prange = inj.possibility_range(p, m, "feature_envy", cfg)
        grouped = inj.group_sample("feature_envy", "original", prange)
        if grouped is None:  # pragma: no cover - originals always match a rule
            log.discard(p.name, "feature_envy", "original", m.id, prange, "no grouping rule")
            continue
        related = mx.related_classes(m, p)
        if not related:
            log.discard(p.name, "feature_envy", "original", m.id, prange, "no related class")
            continue
        group, label = grouped
        for rc in related:
            method_labels = {m.id: label} if label is not None else None
            samples.append(
                SmellSample(
                    id=f"{p.name}:feature_envy:original:{next(counter):04d}",
                    smell="feature_envy",
                    origin="original",
                    group=group,
                    range=prange,
                    label=label,
                    graph=_class_graph_doc(
                        cls, p, "feature_envy", method_labels, label,
                        target=p.classes[rc],
                    ),
                    opportunity_labels=[],
                    provenance={
                        "project": p.name,
                        "entity": m.id,
                        "pattern": None,
                        "related_class": rc,
                    },
                    payload=_payload(m, "feature_envy", p, thresholds, cls.file_path),
                )
            )
    for cand in inj.find_move_candidates(p):
        try:
            result = inj.move_method(p, cand)
        except MoveUnsupportedError as exc:
            log.fail(p.name, "feature_envy", vars(cand), exc)
            continue
        moved = result.project.method_by_id(result.method_id)
        prange = inj.possibility_range(result.project, moved, "feature_envy", cfg)
        grouped = inj.group_sample("feature_envy", "injected", prange)
        if grouped is None:
            log.discard(p.name, "feature_envy", "injected", moved.id, prange, "no grouping rule")
            continue
        group, label = grouped
        new_home = result.project.classes[result.target_class]
        envied = result.project.classes[result.source_class]
        method_labels = {moved.id: label} if label is not None else None
        samples.append(
            SmellSample(
                id=f"{p.name}:feature_envy:injected:{next(counter):04d}",
                smell="feature_envy",
                origin="injected",
                group=group,
                range=prange,
                label=label,
                graph=_class_graph_doc(
                    new_home, result.project, "feature_envy", method_labels, label,
                    target=envied,
                ),
                opportunity_labels=[result.source_class],
                provenance={
                    "project": p.name,
                    "entity": moved.id,
                    "pattern": cand.pattern,
                    "moved_from": result.source_class,
                    "moved_to": result.target_class,
                    "related_class": result.source_class,
                },
                payload=_payload(moved, "feature_envy", result.project, thresholds,
                                 new_home.file_path),
            )
        )
    return samples


def _balance(samples: list, seed: int) -> None:
    """Mark a positives-matched subset of train A-group rows for training."""
    pool = [s for s in samples if s.split == "train" and s.group == "A"]
    positives = [s for s in pool if s.label == 1]
    negatives = [s for s in pool if s.label == 0]
    rng = random.Random(seed)
    rng.shuffle(negatives)
    for s in positives:
        s.in_balanced_train = True
    for s in negatives[: len(positives)]:
        s.in_balanced_train = True


def generate_dataset(
    projects: list,
    out_dir: str | None = None,
    cfg: inj.RangeConfig | None = None,
    seed: int = 0,
    heldout: set | None = None,
    heldout_fraction: float = 0.25,
    thresholds: dict | None = None,
) -> dict:
    """Synthesize the full per-smell dataset from parsed `projects`.

    Returns ``{"samples": {smell: [SmellSample]}, "report": {...}}`` and,
    when `out_dir` is given, writes one JSONL file per smell plus
    ``report.json``.
    """
    cfg = cfg or inj.RangeConfig()
    log = _Log()
    heldout_names = _split_projects([p.name for p in projects], seed, heldout, heldout_fraction)

    generators = {
        "long_method": _gen_long_method,
        "large_class": _gen_large_class,
        "feature_envy": _gen_feature_envy,
    }
    all_samples = {smell: [] for smell in inj.SMELLS}
    for p in sorted(projects, key=lambda pr: pr.name):
        for smell, gen in generators.items():
            counter = iter(range(10**6))
            rows = gen(p, cfg, thresholds, log, counter)
            for s in rows:
                s.split = "heldout" if p.name in heldout_names else "train"
            all_samples[smell].extend(rows)

    report = {"seed": seed, "projects": sorted(p.name for p in projects),
              "heldout_projects": sorted(heldout_names), "per_smell": {}}
    for smell, rows in all_samples.items():
        _balance(rows, seed)
        counts = {
            "total": len(rows),
            "A_pos": sum(1 for s in rows if s.group == "A" and s.label == 1),
            "A_neg": sum(1 for s in rows if s.group == "A" and s.label == 0),
            "M": sum(1 for s in rows if s.group == "M"),
            "heldout": sum(1 for s in rows if s.split == "heldout"),
            "balanced_train": sum(1 for s in rows if s.in_balanced_train),
            "discarded": sum(1 for d in log.discarded if d["smell"] == smell),
            "failed_rewrites": sum(1 for f in log.failed if f["smell"] == smell),
        }
        report["per_smell"][smell] = counts
    report["discarded"] = log.discarded
    report["failed_rewrites"] = log.failed

    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        for smell, rows in all_samples.items():
            write_samples(rows, os.path.join(out_dir, f"{smell}.jsonl"))
        with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return {"samples": all_samples, "report": report}
