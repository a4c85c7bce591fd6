"""Smell pipelines: combine trained models with structural rules to produce
refactoring recommendations.

Three pipelines are provided, one per smell:

* long method   -- graph classification flags the method; node classification
                   plus the block rule proposes statement ranges to extract.
* large class   -- graph classification flags the class; node classification
                   proposes the method set to extract into a new class.
* feature envy  -- for every related class of a method, the owner's class
                   graph is rebuilt with distance features toward that class
                   and the method node is classified; positives become ranked
                   move-method recommendations.

All pipelines are pure functions of (entity, project, model): no hidden state,
deterministic given a checkpoint.
"""

from dataclasses import dataclass, field

from . import codemodel as cm
from . import graphs as gb
from . import metrics as mt
from . import nn
from .errors import SchemaMismatchError
from .metrics import related_classes  # re-exported: part of this module's API

__all__ = [
    "Block",
    "Recommendation",
    "decompose_blocks",
    "block_statement_ids",
    "select_blocks",
    "detect_long_method",
    "extract_method_opportunities",
    "detect_large_class",
    "extract_class_opportunities",
    "related_classes",
    "detect_feature_envy",
    "recommendation_to_json",
]

COMPOUND_KINDS = ("branch", "loop")

# Action vocabulary per smell: what a positive verdict asks the developer to do.
ACTION_KIND = {
    "long_method": "extract_lines",
    "large_class": "extract_methods",
    "feature_envy": "move_method",
}


# ---------------------------------------------------------------------------
# Blocks


@dataclass(frozen=True)
class Block:
    """A contiguous run of statements at one nesting level of a method body.

    Blocks form a tree: the root spans the whole body, every branch arm or
    loop body is a child block, and on levels that mix simple and compound
    statements each maximal run of simple statements becomes a leaf sub-block.
    ``statement_ids`` holds only the statements directly on the block's level;
    nested statements belong to descendant blocks.
    """

    id: str
    statement_ids: tuple  # ids directly at this level, in document order
    parent: str | None  # id of the enclosing block, None for the root
    depth: int  # 0 for the root, +1 per tree level
    span: tuple  # (first_line, last_line) covered by the block


def decompose_blocks(m: cm.MethodEntity) -> list:
    """Split a method body into its block tree, returned in pre-order.

    The root block covers the whole body.  Each branch arm / loop body with
    at least one statement becomes a child block.  Within a level that also
    contains compound statements, maximal runs of simple statements form leaf
    sub-blocks; a level made of simple statements only stays a single block.
    An empty body yields no blocks.
    """
    blocks = []

    def add(stmts, parent, depth):
        bid = f"b{len(blocks)}"
        span = (stmts[0].span[0], stmts[-1].span[1])
        blocks.append(Block(bid, tuple(s.id for s in stmts), parent, depth, span))
        has_compound = any(s.kind in COMPOUND_KINDS for s in stmts)
        run = []

        def flush():
            if run and has_compound:
                add(run, bid, depth + 1)
            run.clear()

        for s in stmts:
            if s.kind in COMPOUND_KINDS:
                flush()
                for arm in s.arms:
                    if arm:
                        add(arm, bid, depth + 1)
            else:
                run.append(s)
        flush()

    if m.body:
        add(m.body, None, 0)
    return blocks


def block_statement_ids(block: Block, m: cm.MethodEntity) -> frozenset:
    """All statement ids covered by a block, including nested descendants."""
    by_id = {s.id: s for s in m.statements}
    ids = set()
    for sid in block.statement_ids:
        for s in by_id[sid].walk():
            ids.add(s.id)
    return frozenset(ids)


# ---------------------------------------------------------------------------
# Recommendations


@dataclass(frozen=True)
class Recommendation:
    """A single refactoring suggestion produced by a pipeline.

    ``action`` depends on the smell: a tuple of (first_line, last_line) ranges
    to extract for long method, a tuple of method ids to extract for large
    class, or the id of the class to move the method to for feature envy.
    ``rationale`` carries the raw feature values of the flagged entity's node.
    """

    smell_kind: str
    entity_id: str
    confidence: float
    action_kind: str
    action: object
    rationale: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.smell_kind not in ACTION_KIND:
            raise ValueError(f"unknown smell kind {self.smell_kind!r}")
        if self.action_kind != ACTION_KIND[self.smell_kind]:
            raise ValueError(
                f"action {self.action_kind!r} does not match smell {self.smell_kind!r}"
            )
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0, 1]")


def recommendation_to_json(r: Recommendation) -> dict:
    """JSON-friendly form of a recommendation (used by the CLI)."""
    action = r.action
    if isinstance(action, tuple):
        action = [list(x) if isinstance(x, tuple) else x for x in action]
    return {
        "smell": r.smell_kind,
        "entity": r.entity_id,
        "confidence": r.confidence,
        "action": {"kind": r.action_kind, "value": action},
        "rationale": dict(r.rationale),
    }


def _require(model: nn.GNNModel, smell: str, task: str):
    cfg = model.config
    if cfg.smell != smell or cfg.task != task:
        raise SchemaMismatchError(
            f"model trained for ({cfg.smell}, {cfg.task}); "
            f"this pipeline needs ({smell}, {task})"
        )


def _node_rationale(g: gb.HeteroGraph, node_id: str, schema: gb.FeatureSchema) -> dict:
    node = next(n for n in g.nodes if n.id == node_id)
    return dict(zip(schema.node_features[node.kind], node.features))


# ---------------------------------------------------------------------------
# Long method


def detect_long_method(m: cm.MethodEntity, model: nn.GNNModel):
    """Classify a method; return a Recommendation when flagged, else None.

    When ``model`` was trained on the node task, pass it via
    :func:`extract_method_opportunities` instead.
    """
    _require(model, "long_method", "graph_classification")
    if not m.body:
        return None
    g = gb.build_method_graph(m, model.schema)
    label, probs = nn.predict_graph(model, g)
    if label != 1:
        return None
    return Recommendation(
        smell_kind="long_method",
        entity_id=m.id,
        confidence=float(probs[1]),
        action_kind="extract_lines",
        action=(),
        rationale=_node_rationale(g, m.id, model.schema),
    )


def select_blocks(m: cm.MethodEntity, positive_ids) -> list:
    """Apply the block rule to a set of positively classified statement ids.

    A block qualifies when strictly more than half of its statements (nested
    descendants included) are in ``positive_ids``.  Only maximal qualifying
    blocks are returned: once a block qualifies, its descendants are
    suppressed.  Returned in document (pre-order) order.
    """
    positive = set(positive_ids)
    emitted = []
    suppressed = set()
    for b in decompose_blocks(m):  # pre-order: parents precede children
        if b.parent in suppressed:
            suppressed.add(b.id)
            continue
        ids = block_statement_ids(b, m)
        if 2 * len(ids & positive) > len(ids):
            emitted.append(b)
            suppressed.add(b.id)
    return emitted


def extract_method_opportunities(m: cm.MethodEntity, model: nn.GNNModel) -> list:
    """Blocks worth extracting into new methods, per the block rule.

    Statements are node-classified with ``model``; the block rule then picks
    the maximal blocks whose positive fraction exceeds one half (see
    :func:`select_blocks`, which this is pure post-processing on top of).
    """
    _require(model, "long_method", "node_classification")
    if not m.body:
        return []
    g = gb.build_method_graph(m, model.schema)
    preds = nn.predict_nodes(model, g, node_kind="statement")
    return select_blocks(m, (sid for sid, (label, _) in preds.items() if label == 1))


# ---------------------------------------------------------------------------
# Large class


def detect_large_class(c: cm.ClassEntity, p: cm.Project, model: nn.GNNModel):
    """Classify a class; return a Recommendation when flagged, else None."""
    _require(model, "large_class", "graph_classification")
    if not c.methods:
        return None
    g = gb.build_class_graph(c, p, model.schema)
    label, probs = nn.predict_graph(model, g)
    if label != 1:
        return None
    return Recommendation(
        smell_kind="large_class",
        entity_id=c.id,
        confidence=float(probs[1]),
        action_kind="extract_methods",
        action=(),
        rationale=_node_rationale(g, c.id, model.schema),
    )


def extract_class_opportunities(c: cm.ClassEntity, p: cm.Project, model: nn.GNNModel) -> list:
    """Ids of the class's methods proposed for extraction into a new class."""
    _require(model, "large_class", "node_classification")
    if not c.methods:
        return []
    g = gb.build_class_graph(c, p, model.schema)
    preds = nn.predict_nodes(model, g, node_kind="method")
    return sorted(mid for mid, (label, _) in preds.items() if label == 1)


# ---------------------------------------------------------------------------
# Feature envy


def detect_feature_envy(m: cm.MethodEntity, p: cm.Project, model: nn.GNNModel) -> list:
    """Move-method recommendations for a method, one per flagged related class.

    For every related class of ``m``, the owner's class graph is built with
    the method-to-owner and method-to-candidate distances appended to the
    method node's features, and the method node is classified.  Positives are
    returned ranked by confidence (ties broken by class id); a method with no
    related classes yields an empty list.
    """
    _require(model, "feature_envy", "node_classification")
    owner = p.classes[m.owner]
    recs = []
    for candidate_id in related_classes(m, p):
        candidate = p.classes[candidate_id]
        g = gb.build_class_graph(owner, p, model.schema, target_class=candidate)
        preds = nn.predict_nodes(model, g, node_kind="method")
        label, probs = preds[m.id]
        if label != 1:
            continue
        recs.append(
            Recommendation(
                smell_kind="feature_envy",
                entity_id=m.id,
                confidence=float(probs[1]),
                action_kind="move_method",
                action=candidate.id,
                rationale=_node_rationale(g, m.id, model.schema),
            )
        )
    recs.sort(key=lambda r: (-r.confidence, r.action))
    return recs
