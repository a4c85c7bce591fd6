"""Human review loop for machine-labeled smell samples.

Samples whose automatic grouping was confident (group ``A``) keep their
labels; borderline samples (group ``M``) start unlabeled and are routed to
human reviewers.  This module provides the pieces of that loop:

* :class:`AnnotationRecord` — one reviewer decision: a verdict
  (``smelly`` / ``clean`` / ``skip``), the reviewer's answers to a
  smell-specific guideline checklist, and, for smelly verdicts, the concrete
  refactoring target (line ranges to extract, methods to split off, or the
  class a method should move to).
* :class:`AnnotationStore` — loads a generated dataset directory, keeps an
  append-only ``annotations.jsonl`` log, and applies the winning record per
  sample (latest timestamp, ties broken by log order; ``skip`` never wins) to
  the in-memory dataset: sample label, opportunity labels, and the node
  labels embedded in the serialized graph.  Replaying the log always
  reproduces the same state.  :meth:`AnnotationStore.flush` rewrites the
  per-smell JSONL files so training sees the annotated labels.
* :class:`AnnotationServer` — a small threaded HTTP server exposing the
  review queue (``GET /samples``), a per-sample view with source text,
  metric values, advisor verdict and checklist (``GET /samples/{id}``),
  submission (``POST /samples/{id}/annotation``) and ``GET /progress``.
  It can also serve a static front-end directory.
* :meth:`AnnotationStore.import_annotations` — bulk-load records from a
  JSONL file with the exact same validation and effect as the HTTP route.

Validation is strict: unknown samples are rejected (HTTP 404), samples whose
labels are fixed by construction are immutable (HTTP 409), and malformed
records — wrong checklist length, a smelly verdict without a target, line
ranges outside the method, unknown method ids, a move target the sample does
not pose — are rejected without being logged (HTTP 422).
"""

from __future__ import annotations

import json
import math
import mimetypes
import os
import pathlib
import threading
import time
import urllib.parse
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import dataset as ds
from . import graphs as gr
from . import injector as inj
from .errors import (
    AnnotationValidationError,
    CorruptDatasetError,
    ImmutableSampleError,
    SmellgraphError,
    UnknownSampleError,
)

__all__ = [
    "CHECKLISTS",
    "VERDICTS",
    "AnnotationRecord",
    "AnnotationStore",
    "AnnotationServer",
    "serve",
]

VERDICTS = ("smelly", "clean", "skip")

# Guideline checklists shown to reviewers, one ordered list per smell.  The
# final item of each list pairs with the action picker: reviewers who answer
# "smelly" must also supply the concrete refactoring target.
CHECKLISTS = {
    "long_method": (
        "Is the method hard to follow when read from top to bottom?",
        "Does it touch so many fields and helpers that changing it safely "
        "would be difficult?",
        "Does it bundle several jobs together, or take an unwieldy number "
        "of parameters?",
        "If it is a long method: can you mark the lines worth extracting "
        "into a new method?",
    ),
    "large_class": (
        "Does the class run to an excessive number of lines?",
        "Does the class declare more fields than it reasonably needs?",
        "Does the class contain many methods that are individually complex?",
        "Could a coherent subset of the class be split off and reused on "
        "its own?",
        "Is the class juggling several distinct responsibilities at once?",
        "If it is a large class: can you pick the methods that should move "
        "to a new class?",
    ),
    "feature_envy": (
        "Does the method call the methods of one other class unusually "
        "often?",
        "Does the method read or write another class's data more than its "
        "own?",
        "Does the method make little use of the fields of its own class?",
        "Would the method sit more naturally in another class?",
        "If it envies another class: can you name the class it should move "
        "to?",
    ),
}


@dataclass(frozen=True)
class AnnotationRecord:
    """One reviewer decision about one sample."""

    sample_id: str
    annotator: str
    verdict: str
    guideline_answers: tuple  # one boolean per checklist item
    action: tuple  # line-range pairs, method ids, or a single class id
    timestamp: float

    def to_json(self) -> dict:
        return {
            "sample_id": self.sample_id,
            "annotator": self.annotator,
            "verdict": self.verdict,
            "guideline_answers": list(self.guideline_answers),
            "action": [list(a) if isinstance(a, tuple) else a for a in self.action],
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "AnnotationRecord":
        try:
            action = tuple(
                tuple(a) if isinstance(a, list) else a for a in doc.get("action", [])
            )
            return cls(
                sample_id=doc["sample_id"],
                annotator=doc["annotator"],
                verdict=doc["verdict"],
                guideline_answers=tuple(doc["guideline_answers"]),
                action=action,
                timestamp=float(doc["timestamp"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise AnnotationValidationError(f"malformed annotation record: {exc!r}")


class AnnotationStore:
    """Annotation state for one generated dataset directory.

    The store is the single writer for ``annotations.jsonl``; every accepted
    record is appended there before it takes effect, so rebuilding the store
    from the directory replays the log and lands in the same state.
    """

    def __init__(self, dataset_dir, smells: tuple = inj.SMELLS):
        self.dataset_dir = pathlib.Path(dataset_dir)
        self.smells = tuple(smells)
        self.log_path = self.dataset_dir / "annotations.jsonl"
        self.samples = {}
        self._order = {}
        for smell, rows in ds.load_dataset(self.dataset_dir, self.smells).items():
            self._order[smell] = [s.id for s in rows]
            for s in rows:
                self.samples[s.id] = s
        self._lock = threading.RLock()
        self._records = []
        self._by_sample = {}
        self._replay()

    # ------------------------------------------------------------------
    # Log handling

    def _replay(self) -> None:
        if not self.log_path.exists():
            return
        text = self.log_path.read_text(encoding="utf-8")
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                record = AnnotationRecord.from_json(json.loads(line))
                self._check(record)
            except (json.JSONDecodeError, SmellgraphError) as exc:
                raise CorruptDatasetError(f"{self.log_path.name}:{lineno}: {exc}")
            self._absorb(record)

    def submit(self, record: AnnotationRecord) -> AnnotationRecord:
        """Validate, log, and apply one record.  Returns the record."""
        with self._lock:
            self._check(record)
            with open(self.log_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record.to_json(), sort_keys=True) + "\n")
            self._absorb(record)
        return record

    def import_annotations(self, path) -> dict:
        """Apply a JSONL file of records with per-line error reporting.

        Valid records are applied exactly as if they had arrived one at a
        time over the HTTP route; invalid lines are skipped and reported.
        """
        applied, rejected = [], []
        text = pathlib.Path(path).read_text(encoding="utf-8")
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                record = AnnotationRecord.from_json(json.loads(line))
                self.submit(record)
            except json.JSONDecodeError as exc:
                rejected.append({"line": lineno, "reason": f"invalid JSON: {exc}"})
            except SmellgraphError as exc:
                rejected.append({"line": lineno, "reason": str(exc)})
            else:
                applied.append(record.sample_id)
        return {"applied": applied, "rejected": rejected}

    def _absorb(self, record: AnnotationRecord) -> None:
        seq = len(self._records)
        self._records.append(record)
        self._by_sample.setdefault(record.sample_id, []).append((seq, record))
        sample = self.samples[record.sample_id]
        self._apply_state(sample, self._winner(record.sample_id))

    def _winner(self, sample_id: str):
        """Latest non-skip record for the sample (timestamp, then log order)."""
        ranked = [
            (rec.timestamp, seq)
            for seq, rec in self._by_sample.get(sample_id, [])
            if rec.verdict != "skip"
        ]
        if not ranked:
            return None
        _, seq = max(ranked)
        return self._records[seq]

    # ------------------------------------------------------------------
    # Validation

    def _check(self, record: AnnotationRecord) -> None:
        sample = self.samples.get(record.sample_id)
        if sample is None:
            raise UnknownSampleError(record.sample_id)
        if sample.group != "M":
            raise ImmutableSampleError(
                f"{record.sample_id} is group {sample.group}; its label is "
                "fixed by construction and cannot be annotated"
            )
        if record.verdict not in VERDICTS:
            raise AnnotationValidationError(
                f"verdict must be one of {', '.join(VERDICTS)}; got {record.verdict!r}"
            )
        if not isinstance(record.annotator, str) or not record.annotator.strip():
            raise AnnotationValidationError("annotator must be a non-empty string")
        if not isinstance(record.timestamp, float) or not math.isfinite(record.timestamp):
            raise AnnotationValidationError("timestamp must be a finite number")
        expected = len(CHECKLISTS[sample.smell])
        if len(record.guideline_answers) != expected:
            raise AnnotationValidationError(
                f"{sample.smell} expects {expected} checklist answers; "
                f"got {len(record.guideline_answers)}"
            )
        if not all(isinstance(b, bool) for b in record.guideline_answers):
            raise AnnotationValidationError("checklist answers must be booleans")
        if record.verdict != "smelly":
            if record.action:
                raise AnnotationValidationError(
                    "only a smelly verdict carries a refactoring target"
                )
            return
        if not record.action:
            raise AnnotationValidationError(
                "a smelly verdict requires a refactoring target"
            )
        checker = {
            "long_method": self._check_line_ranges,
            "large_class": self._check_method_ids,
            "feature_envy": self._check_move_target,
        }[sample.smell]
        checker(sample, record.action)

    @staticmethod
    def _check_line_ranges(sample, action) -> None:
        lo, hi = sample.payload["span"]
        for pair in action:
            if not (
                isinstance(pair, tuple)
                and len(pair) == 2
                and all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
            ):
                raise AnnotationValidationError(
                    "each extraction target must be a [first, last] line pair"
                )
            first, last = pair
            if first > last:
                raise AnnotationValidationError(
                    f"backwards line range ({first}, {last})"
                )
            if first < lo or last > hi:
                raise AnnotationValidationError(
                    f"line range ({first}, {last}) leaves the method "
                    f"(lines {lo}-{hi})"
                )
        spans = sample.payload["statement_spans"]
        if not any(
            first <= s[0] and s[1] <= last
            for s in spans.values()
            for first, last in action
        ):
            raise AnnotationValidationError(
                "the selected lines do not cover a whole statement"
            )

    @staticmethod
    def _check_method_ids(sample, action) -> None:
        known = {n["id"] for n in sample.graph["nodes"] if n["kind"] == "method"}
        for mid in action:
            if not isinstance(mid, str) or mid not in known:
                raise AnnotationValidationError(
                    f"{mid!r} is not a method of this class"
                )
        if len(set(action)) != len(action):
            raise AnnotationValidationError("duplicate method ids in the action")

    @staticmethod
    def _check_move_target(sample, action) -> None:
        candidate = sample.provenance.get("related_class")
        if candidate is None:
            raise AnnotationValidationError("this sample poses no move candidate")
        if len(action) != 1 or action[0] != candidate:
            raise AnnotationValidationError(
                f"the move target for this sample must be {candidate!r}"
            )

    # ------------------------------------------------------------------
    # State application

    def _apply_state(self, sample, winner) -> None:
        if winner is None:
            label, positives = None, set()
        elif winner.verdict == "clean":
            label, positives = 0, set()
        else:
            label = 1
            positives = self._positive_ids(sample, winner.action)
        sample.label = label
        sample.opportunity_labels = sorted(positives)
        sample.graph["graph_label"] = label
        for node in sample.graph["nodes"]:
            node["label"] = self._node_label(sample, node, label, positives)

    @staticmethod
    def _positive_ids(sample, action) -> set:
        if sample.smell == "long_method":
            spans = sample.payload["statement_spans"]
            return {
                sid
                for sid, s in spans.items()
                if any(first <= s[0] and s[1] <= last for first, last in action)
            }
        return set(action)

    @staticmethod
    def _node_label(sample, node, label, positives):
        """Per-node label mirroring how generated samples embed theirs."""
        if label is None:
            return None
        if sample.smell == "long_method":
            if node["kind"] == "statement":
                return 1 if node["id"] in positives else 0
            return None
        if sample.smell == "large_class":
            if node["kind"] == "method":
                return 1 if node["id"] in positives else 0
            return None
        entity = sample.provenance["entity"]
        if node["kind"] == "method" and node["id"] == entity:
            return label
        return None

    # ------------------------------------------------------------------
    # Views

    def list_samples(self, status: str | None = None, smell: str | None = None) -> list:
        """Review-queue summaries of annotatable (group M) samples."""
        if status not in (None, "pending", "labeled"):
            raise ValueError(f"status must be 'pending' or 'labeled'; got {status!r}")
        if smell is not None and smell not in self.smells:
            raise ValueError(f"unknown smell {smell!r}")
        with self._lock:
            items = []
            for sm in self.smells:
                if smell is not None and sm != smell:
                    continue
                for sid in self._order.get(sm, []):
                    s = self.samples[sid]
                    if s.group != "M":
                        continue
                    state = "pending" if s.label is None else "labeled"
                    if status is not None and state != status:
                        continue
                    items.append(
                        {
                            "id": s.id,
                            "smell": sm,
                            "origin": s.origin,
                            "status": state,
                            "label": s.label,
                            "entity": s.provenance["entity"],
                            "file": s.payload["file"],
                        }
                    )
            return items

    def sample_view(self, sample_id: str) -> dict:
        """Everything a reviewer needs to judge one sample."""
        with self._lock:
            s = self.samples.get(sample_id)
            if s is None:
                raise UnknownSampleError(sample_id)
            schema = gr.FeatureSchema.for_task(s.smell)
            kind = "class" if s.smell == "large_class" else "method"
            entity = s.provenance["entity"]
            metrics = {}
            for node in s.graph["nodes"]:
                if node["id"] == entity and node["kind"] == kind:
                    metrics = dict(zip(schema.node_features[kind], node["features"]))
                    break
            winner = self._winner(sample_id)
            doc = {
                "id": s.id,
                "smell": s.smell,
                "group": s.group,
                "origin": s.origin,
                "status": "pending" if s.label is None else "labeled",
                "label": s.label,
                "entity": entity,
                "file": s.payload["file"],
                "span": list(s.payload["span"]),
                "source": s.payload["entity_source"],
                "metrics": metrics,
                "advisor": s.payload["advisor"],
                "checklist": list(CHECKLISTS[s.smell]),
                "opportunity_labels": list(s.opportunity_labels),
                "annotation": winner.to_json() if winner else None,
            }
            if s.smell == "long_method":
                doc["statement_spans"] = {
                    k: list(v) for k, v in s.payload["statement_spans"].items()
                }
            elif s.smell == "large_class":
                doc["methods"] = sorted(
                    n["id"] for n in s.graph["nodes"] if n["kind"] == "method"
                )
            else:
                doc["candidate"] = s.provenance.get("related_class")
            return doc

    def progress(self) -> dict:
        with self._lock:
            doc = {}
            for sm in self.smells:
                rows = [self.samples[sid] for sid in self._order.get(sm, [])]
                mrows = [s for s in rows if s.group == "M"]
                doc[sm] = {
                    "pending": sum(1 for s in mrows if s.label is None),
                    "labeled": sum(1 for s in mrows if s.label is not None),
                    "immutable": len(rows) - len(mrows),
                }
            doc["records"] = len(self._records)
            return doc

    def flush(self) -> None:
        """Rewrite the per-smell JSONL files with the annotated state."""
        with self._lock:
            for sm in self.smells:
                rows = [self.samples[sid] for sid in self._order.get(sm, [])]
                ds.write_samples(rows, self.dataset_dir / f"{sm}.jsonl")


# ----------------------------------------------------------------------
# HTTP layer


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # silence request logging
        pass

    # -- helpers -------------------------------------------------------

    def _send_json(self, code: int, doc) -> None:
        body = json.dumps(doc, sort_keys=True).encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _parts(self):
        split = urllib.parse.urlsplit(self.path)
        parts = [urllib.parse.unquote(p) for p in split.path.split("/") if p]
        query = urllib.parse.parse_qs(split.query)
        return parts, {k: v[-1] for k, v in query.items()}

    # -- routes --------------------------------------------------------

    def do_GET(self):
        parts, query = self._parts()
        store = self.server.store
        try:
            if parts == ["progress"]:
                self._send_json(200, store.progress())
            elif parts == ["samples"]:
                items = store.list_samples(
                    status=query.get("status"), smell=query.get("smell")
                )
                self._send_json(200, {"samples": items})
            elif len(parts) == 2 and parts[0] == "samples":
                self._send_json(200, store.sample_view(parts[1]))
            else:
                self._serve_static(parts)
        except ValueError as exc:
            self._send_json(400, {"error": str(exc)})
        except UnknownSampleError as exc:
            self._send_json(404, {"error": f"unknown sample: {exc}"})
        except Exception as exc:  # pragma: no cover - defensive
            self._send_json(500, {"error": str(exc)})

    def do_POST(self):
        parts, _ = self._parts()
        store = self.server.store
        if len(parts) != 3 or parts[0] != "samples" or parts[2] != "annotation":
            self._send_json(404, {"error": "no such route"})
            return
        sample_id = parts[1]
        try:
            length = int(self.headers.get("Content-Length", 0))
            doc = json.loads(self.rfile.read(length).decode("utf-8")) if length else {}
        except (ValueError, UnicodeDecodeError) as exc:
            self._send_json(400, {"error": f"invalid JSON body: {exc}"})
            return
        if not isinstance(doc, dict):
            self._send_json(400, {"error": "annotation body must be a JSON object"})
            return
        if doc.get("sample_id", sample_id) != sample_id:
            self._send_json(422, {"error": "sample id in body does not match URL"})
            return
        doc.setdefault("sample_id", sample_id)
        doc.setdefault("action", [])
        doc.setdefault("timestamp", time.time())
        try:
            record = AnnotationRecord.from_json(doc)
            store.submit(record)
        except UnknownSampleError as exc:
            self._send_json(404, {"error": f"unknown sample: {exc}"})
        except ImmutableSampleError as exc:
            self._send_json(409, {"error": str(exc)})
        except AnnotationValidationError as exc:
            self._send_json(422, {"error": str(exc)})
        except Exception as exc:  # pragma: no cover - defensive
            self._send_json(500, {"error": str(exc)})
        else:
            self._send_json(200, {"ok": True, "sample": store.sample_view(sample_id)})

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    # -- static front-end ----------------------------------------------

    def _serve_static(self, parts) -> None:
        root = self.server.static_dir
        if root is None:
            self._send_json(404, {"error": "no such route"})
            return
        base = pathlib.Path(root).resolve()
        target = base.joinpath(*parts).resolve() if parts else base / "index.html"
        if base not in target.parents and target != base:
            self._send_json(404, {"error": "no such file"})
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_json(404, {"error": "no such file"})
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


class AnnotationServer(ThreadingHTTPServer):
    """Threaded HTTP server bound to one :class:`AnnotationStore`."""

    daemon_threads = True

    def __init__(self, address, store: AnnotationStore, static_dir=None):
        self.store = store
        self.static_dir = static_dir
        super().__init__(address, _Handler)


def serve(
    dataset_dir,
    host: str = "127.0.0.1",
    port: int = 0,
    smells: tuple = inj.SMELLS,
    static_dir=None,
) -> AnnotationServer:
    """Build a store for `dataset_dir` and return a ready-to-run server.

    The caller runs ``server.serve_forever()`` (typically on a thread) and
    may call ``server.store.flush()`` afterwards to materialize annotations
    into the per-smell dataset files.
    """
    store = AnnotationStore(dataset_dir, smells)
    return AnnotationServer((host, port), store, static_dir)
