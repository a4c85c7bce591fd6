"""Command-line interface for the smell detection toolkit.

Subcommands cover the full loop: ``generate`` synthesizes a labeled dataset
from a Java corpus, ``annotate serve`` / ``annotate import`` run the human
review step, ``train`` fits one model, ``detect`` applies a trained model to
a project and prints refactoring recommendations, and ``evaluate`` runs the
full experiment grid from a config file.

Exit codes: 0 on success, 2 for invalid input (bad arguments, unparsable
sources, malformed datasets or annotations), 1 for unexpected internal
errors.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys
import traceback

from . import annotation as an
from . import codemodel as cm
from . import dataset as ds
from . import evaluation as ev
from . import graphs as gr
from . import injector as inj
from . import nn
from . import pipelines as pl
from .errors import SmellgraphError

SMELL_ALIASES = {"lm": "long_method", "lc": "large_class", "fe": "feature_envy"}
SMELL_CHOICES = list(inj.SMELLS) + list(SMELL_ALIASES)

USER_ERRORS = (SmellgraphError, ValueError, FileNotFoundError, NotADirectoryError, IOError)


def _smell(name: str) -> str:
    return SMELL_ALIASES.get(name, name)


# ----------------------------------------------------------------------
# generate


def _discover_projects(corpus: pathlib.Path) -> list:
    """Treat each immediate subdirectory with Java sources as one project;
    a directory holding sources directly is a single project."""
    if not corpus.is_dir():
        raise NotADirectoryError(f"{corpus} is not a directory")
    roots = [d for d in sorted(corpus.iterdir()) if d.is_dir() and any(d.rglob("*.java"))]
    if not roots:
        roots = [corpus]
    return [cm.parse_project(str(d)) for d in roots]


def cmd_generate(args) -> int:
    projects = _discover_projects(pathlib.Path(args.corpus))
    heldout = set(args.heldout) if args.heldout else None
    out = ds.generate_dataset(
        projects,
        out_dir=args.out,
        seed=args.seed,
        heldout=heldout,
        heldout_fraction=args.heldout_fraction,
    )
    for smell, rows in out["samples"].items():
        groups = {
            "A": sum(1 for s in rows if s.group == "A"),
            "M": sum(1 for s in rows if s.group == "M"),
        }
        positives = sum(1 for s in rows if s.label == 1)
        print(
            f"{smell}: {len(rows)} samples "
            f"(A={groups['A']}, M={groups['M']}, positives={positives})"
        )
    print(f"dataset written to {args.out}")
    return 0


# ----------------------------------------------------------------------
# annotate


def cmd_annotate_serve(args) -> int:
    server = an.serve(
        args.dataset,
        host=args.host,
        port=args.port,
        static_dir=args.static,
    )
    host, port = server.server_address
    print(f"annotation service listening on http://{host}:{port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
        server.store.flush()
        print("annotations flushed to dataset files")
    return 0


def cmd_annotate_import(args) -> int:
    store = an.AnnotationStore(args.dataset)
    report = store.import_annotations(args.file)
    print(f"applied {len(report['applied'])} annotation(s)")
    for item in report["rejected"]:
        print(f"line {item['line']}: {item['reason']}", file=sys.stderr)
    if not args.no_flush:
        store.flush()
    return 2 if report["rejected"] else 0


# ----------------------------------------------------------------------
# train


def cmd_train(args) -> int:
    smell = _smell(args.smell)
    rows = ds.load_dataset(args.dataset, smells=(smell,))[smell]
    if args.all_labeled:
        chosen = [s for s in rows if s.split == "train" and s.label is not None]
    else:
        chosen = [s for s in rows if s.in_balanced_train]
    graphs = [gr.graph_from_json(s.graph) for s in chosen]
    config = nn.TrainConfig(
        smell=smell,
        architecture=args.arch,
        task=args.task,
        learning_rate=args.learning_rate,
        epochs=args.epochs,
        seed=args.seed,
        hidden_dim=args.hidden_dim,
        heads=args.heads,
        relational_edges=not args.no_relational_edges,
        val_fraction=args.val_fraction,
    )
    result = nn.train(graphs, config)
    nn.save_checkpoint(result, args.out)
    last = result.log[-1] if result.log else {}
    print(
        f"trained {smell}/{args.arch}/{args.task} on {len(graphs)} graphs; "
        f"best epoch {result.best_epoch}, final loss {last.get('loss')}, "
        f"val f1 {last.get('val_f1')}"
    )
    print(f"checkpoint written to {args.out}")
    return 0


# ----------------------------------------------------------------------
# detect


def _detect_docs(project, smell: str, model) -> list:
    """Apply the right pipeline for the checkpoint's task and collect
    JSON-ready recommendation documents."""
    docs = []
    if smell == "long_method":
        for _, m in project.iter_methods():
            if model.config.task == "graph_classification":
                rec = pl.detect_long_method(m, model)
                if rec is not None:
                    docs.append(pl.recommendation_to_json(rec))
            else:
                blocks = {b.id: b for b in pl.decompose_blocks(m)}
                for bid in pl.extract_method_opportunities(m, model):
                    b = blocks[bid]
                    docs.append(
                        {
                            "smell": smell,
                            "entity": m.id,
                            "action": {
                                "kind": "extract_lines",
                                "value": [list(b.span)],
                            },
                            "block": bid,
                            "statements": list(b.statement_ids),
                        }
                    )
    elif smell == "large_class":
        for c in project.class_list:
            if model.config.task == "graph_classification":
                rec = pl.detect_large_class(c, project, model)
                if rec is not None:
                    docs.append(pl.recommendation_to_json(rec))
            else:
                methods = pl.extract_class_opportunities(c, project, model)
                if methods:
                    docs.append(
                        {
                            "smell": smell,
                            "entity": c.id,
                            "action": {"kind": "extract_methods", "value": methods},
                        }
                    )
    else:
        for _, m in project.iter_methods():
            for rec in pl.detect_feature_envy(m, project, model):
                docs.append(pl.recommendation_to_json(rec))
    return docs


def cmd_detect(args) -> int:
    loaded = nn.load_checkpoint(args.model)
    model = loaded.model
    smell = _smell(args.smell) if args.smell else model.config.smell
    project = cm.parse_project(args.project)
    docs = _detect_docs(project, smell, model)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "project": project.name,
                    "smell": smell,
                    "task": model.config.task,
                    "recommendations": docs,
                },
                indent=2,
                sort_keys=True,
            )
        )
    else:
        if not docs:
            print(f"no {smell} findings in {project.name}")
        for doc in docs:
            action = doc["action"]
            conf = doc.get("confidence")
            conf_txt = f" (confidence {conf:.2f})" if conf is not None else ""
            print(f"{doc['entity']}: {action['kind']} -> {action['value']}{conf_txt}")
    return 0


# ----------------------------------------------------------------------
# evaluate


def cmd_evaluate(args) -> int:
    report = ev.run_experiment(args.config)
    out_dir = None
    if isinstance(args.config, str):
        with open(args.config, encoding="utf-8") as fh:
            out_dir = json.load(fh).get("out_dir")
    out_dir = out_dir or ev.CONFIG_DEFAULTS["out_dir"]
    for smell, by_arch in report.results.items():
        for arch, sections in by_arch.items():
            for section, cell in sections.items():
                if section == "detection":
                    print(f"{smell}/{arch}/detection: f1={cell['f1']:.3f}")
                elif cell.get("macro"):
                    print(f"{smell}/{arch}/opportunity: macro f1={cell['macro']['f1']:.3f}")
                else:
                    print(f"{smell}/{arch}/opportunity: no gold entities")
    print(f"artifacts written to {out_dir}")
    return 0


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smellgraph",
        description="Detect Java code smells and recommend refactorings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="synthesize a labeled dataset from a corpus")
    p.add_argument("corpus", help="directory of projects (or a single project)")
    p.add_argument("--out", required=True, help="output dataset directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--heldout", nargs="*", help="project names reserved for evaluation")
    p.add_argument("--heldout-fraction", type=float, default=0.25)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("annotate", help="human review of borderline samples")
    asub = p.add_subparsers(dest="subcommand", required=True)

    p = asub.add_parser("serve", help="run the review HTTP service")
    p.add_argument("--dataset", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--static", help="directory with a web front-end to serve")
    p.set_defaults(func=cmd_annotate_serve)

    p = asub.add_parser("import", help="apply a JSONL file of annotation records")
    p.add_argument("file")
    p.add_argument("--dataset", required=True)
    p.add_argument("--no-flush", action="store_true",
                   help="log the records without rewriting the dataset files")
    p.set_defaults(func=cmd_annotate_import)

    p = sub.add_parser("train", help="train one model on a generated dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--smell", required=True, choices=SMELL_CHOICES)
    p.add_argument("--arch", required=True, choices=list(nn.ARCHITECTURES))
    p.add_argument("--task", default="graph_classification", choices=list(nn.TRAIN_TASKS))
    p.add_argument("--out", required=True, help="checkpoint path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--hidden-dim", type=int, default=64)
    p.add_argument("--heads", type=int, default=2)
    p.add_argument("--learning-rate", type=float, default=1e-3)
    p.add_argument("--val-fraction", type=float, default=0.2)
    p.add_argument("--no-relational-edges", action="store_true",
                   help="collapse all edge kinds into one relation")
    p.add_argument("--all-labeled", action="store_true",
                   help="train on every labeled train-split sample "
                        "(including annotated ones) instead of the balanced subset")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("detect", help="apply a trained model to a project")
    p.add_argument("--project", required=True, help="directory of Java sources")
    p.add_argument("--model", required=True, help="checkpoint path")
    p.add_argument("--smell", choices=SMELL_CHOICES,
                   help="defaults to the smell the checkpoint was trained for")
    p.add_argument("--format", default="text", choices=("text", "json"))
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("evaluate", help="run the experiment grid from a config file")
    p.add_argument("--config", required=True, help="JSON config path")
    p.set_defaults(func=cmd_evaluate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
