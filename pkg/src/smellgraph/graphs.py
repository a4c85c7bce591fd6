"""Heterogeneous graph construction over the code model.

Two graph levels:

* class level — one class node plus one method node per method, `include`
  edges from the class to every method, and weighted `ssm`/`cdm`/`csm`
  similarity edges between method pairs.
* method level — one method node plus one statement node per statement
  (compound headers are nodes, their bodies are child statements), `include`
  edges from the method to every statement, and `cflow`/`cdep`/`ddep` edges
  between statements.

Control dependency is structural: a statement depends on its nearest
enclosing branch/loop predicate. Data dependency comes from reaching
definitions over the control-flow graph. Exception constructs are sequential
and `throw` behaves like `return`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dfield

import numpy as np

from . import codemodel as cm
from . import metrics as mt
from .errors import SchemaMismatchError

CLASS_EDGE_KINDS = ("include", "ssm", "cdm", "csm")
METHOD_EDGE_KINDS = ("include", "cflow", "cdep", "ddep")
SIMILARITY_KINDS = ("ssm", "cdm", "csm")

TASKS = ("long_method", "large_class", "feature_envy")

_FEATURES = {
    "long_method": {
        "method": ("LOC", "CC", "PC", "LCOM1", "LCOM2", "LCOM3", "LCOM4", "NOAV"),
        "statement": (
            "ABCL_assign", "ABCL_branch", "ABCL_condition", "ABCL_loop",
            "ABCL_other", "FUC", "LMUC", "PUC", "NBD", "VUC", "WC", "TSM",
        ),
    },
    "large_class": {
        "class": ("NOM", "NOA", "NOPA", "CIS", "ATFD", "WMC", "TCC", "DCC", "LCOM", "CAM", "DIT"),
        "method": ("LOC", "CC", "PC", "LCOM1", "LCOM2", "LCOM3", "TSMC", "NBD", "FUC", "LMUC", "NOAV"),
    },
    "feature_envy": {
        "class": ("LOC", "NOM", "NOA", "NOPA", "CIS", "ATFD", "WMC", "TCC", "DCC", "LCOM", "CAM", "DIT"),
        "method": (
            "CC", "PC", "LCOM1", "LCOM2", "LCOM3", "TSMC", "NBD", "FUC",
            "LMUC", "NOAV", "SOURCE_DIST", "TARGET_DIST",
        ),
    },
}


@dataclass
class Node:
    id: str
    kind: str  # class | method | statement
    features: list
    label: int | None = None  # 0/1, or None when unlabeled


@dataclass
class HeteroGraph:
    level: str  # "class" | "method"
    nodes: list = dfield(default_factory=list)
    edges: dict = dfield(default_factory=dict)  # kind -> [(src, dst, weight)]
    graph_label: int | None = None

    def node_by_id(self, node_id: str) -> Node | None:
        for n in self.nodes:
            if n.id == node_id:
                return n
        return None

    def add_edge(self, kind: str, src: str, dst: str, weight: float = 1.0):
        self.edges.setdefault(kind, []).append((src, dst, float(weight)))

    def validate(self):
        legal = CLASS_EDGE_KINDS if self.level == "class" else METHOD_EDGE_KINDS
        ids = {n.id for n in self.nodes}
        for kind, triples in self.edges.items():
            if kind not in legal:
                raise SchemaMismatchError(f"edge kind {kind!r} illegal at {self.level} level")
            for src, dst, weight in triples:
                if src not in ids or dst not in ids:
                    raise SchemaMismatchError(f"dangling edge {src}->{dst}")
                if kind in SIMILARITY_KINDS and not (0.0 <= weight <= 1.0):
                    raise SchemaMismatchError(f"similarity weight {weight} outside [0,1]")
        return self


@dataclass
class FeatureSchema:
    task: str
    node_features: dict  # kind -> ordered names
    stats: dict | None = None  # kind -> {"mean": [...], "std": [...]}

    @classmethod
    def for_task(cls, task: str) -> "FeatureSchema":
        if task not in _FEATURES:
            raise SchemaMismatchError(f"unknown task {task!r}")
        return cls(task=task, node_features={k: list(v) for k, v in _FEATURES[task].items()})

    def width(self, kind: str) -> int:
        return len(self.node_features[kind])

    @property
    def kinds(self) -> list:
        return sorted(self.node_features)

    @property
    def packed_width(self) -> int:
        return sum(self.width(k) for k in self.kinds)

    def fit(self, graphs: list) -> "FeatureSchema":
        """Learn per-feature mean/stddev from the given graphs' nodes."""
        rows = {k: [] for k in self.node_features}
        for g in graphs:
            for n in g.nodes:
                if n.kind in rows:
                    rows[n.kind].append(n.features)
        self.stats = {}
        for kind, data in rows.items():
            if data:
                arr = np.asarray(data, dtype=float)
                mean = arr.mean(axis=0)
                std = arr.std(axis=0)
            else:
                mean = np.zeros(self.width(kind))
                std = np.ones(self.width(kind))
            self.stats[kind] = {"mean": mean.tolist(), "std": std.tolist()}
        return self

    def normalize(self, kind: str, vec) -> np.ndarray:
        x = np.asarray(vec, dtype=float)
        if self.stats is None or kind not in self.stats:
            return x
        mean = np.asarray(self.stats[kind]["mean"])
        std = np.asarray(self.stats[kind]["std"])
        out = np.zeros_like(x)
        nonzero = std > 0
        out[nonzero] = (x[nonzero] - mean[nonzero]) / std[nonzero]
        return out  # stddev-0 features stay 0

    def to_json(self) -> dict:
        return {
            "task": self.task,
            "node_features": {k: list(v) for k, v in self.node_features.items()},
            "stats": self.stats,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "FeatureSchema":
        return cls(task=doc["task"], node_features=doc["node_features"], stats=doc.get("stats"))


# ---------------------------------------------------------------------------
# Feature extraction


def _method_feature_values(m: cm.MethodEntity, p: cm.Project | None) -> dict:
    lcom1, lcom2, lcom3, lcom4 = mt.method_lcom(m)
    values = {
        "LOC": cm.count_loc(m.source, (1, m.source.count("\n") + 1)),
        "CC": mt.cyclomatic_complexity(m),
        "PC": len(m.params),
        "LCOM1": lcom1,
        "LCOM2": lcom2,
        "LCOM3": lcom3,
        "LCOM4": lcom4,
        "NOAV": len(mt.accessed_variables(m)),
        "NBD": mt.max_nesting(m),
        "FUC": len(m.own_fields_used),
        "LMUC": len({mid for mid in m.called_methods if mid.rsplit(".", 1)[0] == m.owner}),
    }
    if p is not None:
        cls = p.classes[m.owner]
        values["TSMC"] = mt.text_similarity(mt.token_bag(m.source), mt.token_bag(cls.source))
    return values


def _statement_feature_values(s: cm.Statement, m: cm.MethodEntity) -> dict:
    sm = mt.statement_metrics(s, m)
    values = {f"ABCL_{cat}": sm.ABCL[i] for i, cat in enumerate(mt.ABCL_CATEGORIES)}
    values.update(
        FUC=sm.FUC, LMUC=sm.LMUC, PUC=sm.PUC, NBD=sm.NBD, VUC=sm.VUC, WC=sm.WC, TSM=sm.TSM
    )
    return values


def _vector(values: dict, names) -> list:
    return [float(values[name]) for name in names]


# ---------------------------------------------------------------------------
# Method-level graph


def control_flow_edges(m: cm.MethodEntity) -> list:
    """Intra-method CFG edges (src id, dst id) over the statement tree."""
    edges = set()

    def walk(seq, follow, loop_stack):
        for idx, s in enumerate(seq):
            nxt = seq[idx + 1].id if idx + 1 < len(seq) else follow
            if s.kind == "return":
                continue
            if s.syntax == "break":
                if loop_stack:
                    _, exit_target = loop_stack[-1]
                    if exit_target is not None:
                        edges.add((s.id, exit_target))
                continue
            if s.syntax == "continue":
                if loop_stack:
                    pred, _ = loop_stack[-1]
                    edges.add((s.id, pred))
                continue
            if s.kind == "branch":
                fallthrough = s.syntax == "switch"  # execution may skip all cases
                for arm in s.arms:
                    if arm:
                        edges.add((s.id, arm[0].id))
                        walk(arm, nxt, loop_stack)
                    else:
                        fallthrough = True
                if fallthrough and nxt is not None:
                    edges.add((s.id, nxt))
                continue
            if s.kind == "loop":
                body = s.arms[0] if s.arms else []
                if body:
                    edges.add((s.id, body[0].id))
                    # after the body, control returns to the predicate
                    walk(body, s.id, loop_stack + [(s.id, nxt)])
                if nxt is not None:
                    edges.add((s.id, nxt))  # loop exit
                continue
            if nxt is not None:
                edges.add((s.id, nxt))
        return

    walk(m.body, None, [])
    return sorted(edges)


def control_dependency_edges(m: cm.MethodEntity) -> list:
    """Edges predicate -> statement for each directly-nested statement."""
    edges = []
    for s in m.statements:
        if s.kind in ("branch", "loop"):
            for arm in s.arms:
                for child in arm:
                    edges.append((s.id, child.id))
    return sorted(edges)


def data_dependency_edges(m: cm.MethodEntity) -> list:
    """Reaching-definition edges def -> use over the control-flow graph."""
    stmts = m.statements
    if not stmts:
        return []
    index = {s.id: s for s in stmts}
    succ = {s.id: [] for s in stmts}
    for src, dst in control_flow_edges(m):
        succ[src].append(dst)
    order = [s.id for s in stmts]

    defs_of = {sid: index[sid].defs for sid in order}
    gen = {sid: {(name, sid) for name in defs_of[sid]} for sid in order}

    in_sets = {sid: set() for sid in order}
    out_sets = {sid: set(gen[sid]) for sid in order}
    changed = True
    while changed:
        changed = False
        for sid in order:
            stmt_defs = defs_of[sid]
            incoming = set()
            for other in order:
                if sid in succ[other]:
                    incoming |= out_sets[other]
            new_out = gen[sid] | {d for d in incoming if d[0] not in stmt_defs}
            if incoming != in_sets[sid] or new_out != out_sets[sid]:
                in_sets[sid] = incoming
                out_sets[sid] = new_out
                changed = True

    edges = set()
    for sid in order:
        for name, origin in in_sets[sid]:
            if name in index[sid].uses:
                edges.add((origin, sid))
    return sorted(edges)


def build_method_graph(m: cm.MethodEntity, schema: FeatureSchema) -> HeteroGraph:
    g = HeteroGraph(level="method")
    mvals = _method_feature_values(m, None)
    g.nodes.append(Node(m.id, "method", _vector(mvals, schema.node_features["method"])))
    for s in m.statements:
        svals = _statement_feature_values(s, m)
        g.nodes.append(Node(s.id, "statement", _vector(svals, schema.node_features["statement"])))
        g.add_edge("include", m.id, s.id)
    for src, dst in control_flow_edges(m):
        g.add_edge("cflow", src, dst)
    for src, dst in control_dependency_edges(m):
        g.add_edge("cdep", src, dst)
    for src, dst in data_dependency_edges(m):
        g.add_edge("ddep", src, dst)
    return g.validate()


# ---------------------------------------------------------------------------
# Class-level graph


def build_class_graph(
    c: cm.ClassEntity,
    p: cm.Project,
    schema: FeatureSchema,
    target_class: cm.ClassEntity | None = None,
    similarity_threshold: float = 0.0,
) -> HeteroGraph:
    g = HeteroGraph(level="class")
    cvals = mt.class_metrics(c, p).as_dict()
    g.nodes.append(Node(c.id, "class", _vector(cvals, schema.node_features["class"])))
    needs_dist = "SOURCE_DIST" in schema.node_features["method"]
    if needs_dist and target_class is None:
        raise SchemaMismatchError("schema requires SOURCE_DIST/TARGET_DIST: pass target_class")
    for m in c.methods:
        mvals = mt.method_metrics(m, p).as_dict()
        if needs_dist:
            mvals["SOURCE_DIST"] = mt.source_dist(m, c)
            mvals["TARGET_DIST"] = mt.target_dist(m, target_class)
        g.nodes.append(Node(m.id, "method", _vector(mvals, schema.node_features["method"])))
        g.add_edge("include", c.id, m.id)
    sim = mt.similarity_matrix(c, p)
    for (a, b), entry in sim.pairs():
        for kind in SIMILARITY_KINDS:
            value = entry[kind]
            if value > similarity_threshold:
                g.add_edge(kind, a, b, value)
    return g.validate()


# ---------------------------------------------------------------------------
# Tensor lowering


@dataclass
class GraphTensors:
    node_ids: list  # global deterministic order (sorted by id)
    node_kinds: list
    features: dict  # kind -> float matrix (n_kind, width)
    kind_rows: dict  # kind -> global positions, aligned with features rows
    edges: dict  # kind -> int/float arrays (src idx, dst idx, weight)
    labels: np.ndarray  # (n,) int, -1 for unlabeled
    graph_label: int | None


def to_tensors(g: HeteroGraph, schema: FeatureSchema) -> GraphTensors:
    nodes = sorted(g.nodes, key=lambda n: n.id)
    pos = {n.id: i for i, n in enumerate(nodes)}
    features, kind_rows = {}, {}
    for kind in schema.kinds:
        members = [n for n in nodes if n.kind == kind]
        width = schema.width(kind)
        mat = np.zeros((len(members), width))
        for i, n in enumerate(members):
            if len(n.features) != width:
                raise SchemaMismatchError(
                    f"node {n.id}: {len(n.features)} features, schema wants {width}"
                )
            mat[i] = schema.normalize(kind, n.features)
        features[kind] = mat
        kind_rows[kind] = [pos[n.id] for n in members]
    for n in nodes:
        if n.kind not in schema.node_features:
            raise SchemaMismatchError(f"node kind {n.kind!r} absent from schema")
    edges = {}
    for kind in sorted(g.edges):
        triples = sorted(g.edges[kind])
        edges[kind] = (
            np.array([pos[s] for s, _, _ in triples], dtype=int),
            np.array([pos[d] for _, d, _ in triples], dtype=int),
            np.array([w for _, _, w in triples], dtype=float),
        )
    labels = np.array([-1 if n.label is None else int(n.label) for n in nodes], dtype=int)
    return GraphTensors(
        node_ids=[n.id for n in nodes],
        node_kinds=[n.kind for n in nodes],
        features=features,
        kind_rows=kind_rows,
        edges=edges,
        labels=labels,
        graph_label=g.graph_label,
    )


def packed_features(t: GraphTensors, schema: FeatureSchema) -> np.ndarray:
    """One dense matrix with a feature slot block per node kind."""
    n = len(t.node_ids)
    out = np.zeros((n, schema.packed_width))
    offset = 0
    for kind in schema.kinds:
        width = schema.width(kind)
        rows = t.kind_rows.get(kind, [])
        if rows:
            out[np.array(rows, dtype=int), offset : offset + width] = t.features[kind]
        offset += width
    return out


# ---------------------------------------------------------------------------
# Serialization


def graph_to_json(g: HeteroGraph) -> dict:
    nodes = sorted(g.nodes, key=lambda n: n.id)
    return {
        "level": g.level,
        "nodes": [
            {
                "id": n.id,
                "kind": n.kind,
                "features": [float(x) for x in n.features],
                "label": n.label,
            }
            for n in nodes
        ],
        "edges": {
            kind: [[s, d, float(w)] for s, d, w in sorted(g.edges[kind])]
            for kind in sorted(g.edges)
        },
        "graph_label": g.graph_label,
    }


def graph_from_json(doc: dict) -> HeteroGraph:
    g = HeteroGraph(level=doc.get("level", "method"), graph_label=doc.get("graph_label"))
    for n in doc["nodes"]:
        g.nodes.append(Node(n["id"], n["kind"], [float(x) for x in n["features"]], n.get("label")))
    for kind, triples in doc["edges"].items():
        for s, d, w in triples:
            g.add_edge(kind, s, d, w)
    return g


def graph_dumps(g: HeteroGraph) -> str:
    return json.dumps(graph_to_json(g), sort_keys=True, separators=(",", ":"))
