"""Structural metrics, similarity measures, rule-based smell checks, distances.

Everything here is a pure function over the resolved project model. The rule
detector ("advisor") evaluates the classic metric conjunctions for the three
smells; its thresholds are configurable and default to the values in
`DEFAULT_THRESHOLDS`.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass, field as dfield, asdict

from . import codemodel as cm
from . import javaparse as jp
from .errors import WrongEntityKindError

DEFAULT_THRESHOLDS = {
    "FEW": 3,
    "SEVERAL": 4,
    "MANY": 7,
    "HIGH_CYCLO": 10,
    "HIGH_LOC_CLASS": 130,
    "VERY_HIGH_WMC": 47,
    "ONE_THIRD": 0.33,
}

ABCL_CATEGORIES = ("assign", "branch", "condition", "loop", "other")

# statement kind -> ABCL category: plain invocations branch to another
# routine, if/switch guard on a condition
_ABCL_OF_KIND = {
    "assign": "assign",
    "declaration": "assign",
    "call": "branch",
    "branch": "condition",
    "loop": "loop",
    "return": "other",
    "other": "other",
}

_WC_SEPARATORS = {"(", ")", "[", "]", "{", "}", ";", ",", "."}

_CAMEL_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z0-9])|[A-Z]?[a-z0-9]+|[A-Z]+|\d+")


def load_thresholds(path: str) -> dict:
    """Advisor thresholds from a flat key/value JSON document."""
    with open(path, encoding="utf-8") as fh:
        loaded = json.load(fh)
    merged = dict(DEFAULT_THRESHOLDS)
    merged.update(loaded)
    return merged


# ---------------------------------------------------------------------------
# Token bags and text similarity


def split_identifier(name: str) -> list:
    words = []
    for part in name.replace("$", "_").split("_"):
        words.extend(w.lower() for w in _CAMEL_RE.findall(part))
    return words


def token_bag(text: str) -> dict:
    """Term frequencies of identifier words (camelCase/underscore split)."""
    bag = {}
    try:
        tokens = jp.tokenize(text)
    except Exception:
        tokens = []
    for tok in tokens:
        if tok.kind != "ident":
            continue
        for word in split_identifier(tok.value):
            bag[word] = bag.get(word, 0) + 1
    return bag


def text_similarity(bag_a: dict, bag_b: dict) -> float:
    """Cosine similarity of two term-frequency bags; empty bags give 0."""
    if not bag_a or not bag_b:
        return 0.0
    dot = sum(bag_a[w] * bag_b.get(w, 0) for w in bag_a)
    norm_a = math.sqrt(sum(v * v for v in bag_a.values()))
    norm_b = math.sqrt(sum(v * v for v in bag_b.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return dot / (norm_a * norm_b)


def word_count(text: str) -> int:
    try:
        tokens = jp.tokenize(text)
    except Exception:
        return len(text.split())
    return sum(1 for t in tokens if t.kind != "eof" and t.value not in _WC_SEPARATORS)


# ---------------------------------------------------------------------------
# Metric records


@dataclass
class ClassMetrics:
    NOM: int
    NOA: int
    NOPA: int
    ATFD: int
    WMC: int
    DIT: int
    CIS: int
    LCOM: int
    TCC: float
    DCC: float
    CAM: float
    LOC: int

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class MethodMetrics:
    LOC: int
    CC: int
    PC: int
    NOAV: int
    NFDI: int
    NLDI: int
    FUC: int
    LMUC: int
    NBD: int
    LCOM1: int
    LCOM2: int
    LCOM3: int
    LCOM4: int
    TSMC: float

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class StatementMetrics:
    ABCL: tuple  # one-hot over ABCL_CATEGORIES
    FUC: int
    LMUC: int
    VUC: int
    PUC: int
    NBD: int
    WC: int
    TSM: float

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ABCL"] = list(self.ABCL)
        return d


@dataclass
class SimilarityMatrix:
    method_ids: list
    entries: dict  # (id_a, id_b) sorted tuple -> {"ssm","cdm","csm"}

    def get(self, a: str, b: str) -> dict:
        return self.entries.get(tuple(sorted((a, b))), {"ssm": 0.0, "cdm": 0.0, "csm": 0.0})

    def pairs(self):
        return sorted(self.entries.items())


@dataclass
class AdvisorVerdict:
    smell_kind: str
    positive: bool
    fired_terms: dict
    thresholds_used: dict


# ---------------------------------------------------------------------------
# Method-level helpers


def cyclomatic_complexity(m: cm.MethodEntity) -> int:
    return 1 + sum(1 for s in m.statements if s.kind in ("branch", "loop"))


def max_nesting(m: cm.MethodEntity) -> int:
    return max((s.nesting_depth for s in m.statements), default=0)


def accessed_variables(m: cm.MethodEntity) -> set:
    names = set()
    for s in m.statements:
        names |= s.defs | s.uses
    return names


def _same_class_calls(calls, owner: str) -> set:
    return {mid for mid in calls if mid.rsplit(".", 1)[0] == owner}


def _method_units(m: cm.MethodEntity) -> list:
    """Top-level pseudo-methods: each compound statement with its subtree,
    and maximal runs of consecutive simple statements."""
    units, run = [], []
    for s in m.body:
        if s.kind in ("branch", "loop"):
            if run:
                units.append(run)
                run = []
            units.append(list(s.walk()))
        else:
            run.append(s)
    if run:
        units.append(run)
    return units


def _components(n: int, edges: set) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(i) for i in range(n)})


def method_lcom(m: cm.MethodEntity) -> tuple:
    """LCOM1-4 with top-level blocks as pseudo-methods and the variables
    they touch (locals, parameters, fields) as attributes."""
    units = _method_units(m)
    n = len(units)
    if n == 0:
        return (0, 0, 0, 0)
    attrs = []
    calls = []
    for unit in units:
        a, c = set(), set()
        for s in unit:
            a |= s.defs | s.uses
            c |= set(s.calls) | set(s.external_calls)
        attrs.append(a)
        calls.append(c)
    share_edges, call_edges = set(), set()
    p = q = 0
    for i, j in itertools.combinations(range(n), 2):
        if attrs[i] & attrs[j]:
            q += 1
            share_edges.add((i, j))
        else:
            p += 1
        if calls[i] & calls[j]:
            call_edges.add((i, j))
    lcom1 = p
    lcom2 = max(p - q, 0)
    lcom3 = _components(n, share_edges)
    lcom4 = _components(n, share_edges | call_edges)
    return (lcom1, lcom2, lcom3, lcom4)


def method_metrics(m: cm.MethodEntity, p: cm.Project) -> MethodMetrics:
    cls = p.classes[m.owner]
    source = p.files[cls.file_path]
    lcom1, lcom2, lcom3, lcom4 = method_lcom(m)
    return MethodMetrics(
        LOC=cm.count_loc(source, m.span),
        CC=cyclomatic_complexity(m),
        PC=len(m.params),
        NOAV=len(accessed_variables(m)),
        NFDI=len(m.foreign_data),
        NLDI=m.local_data,
        FUC=len(m.own_fields_used),
        LMUC=len(_same_class_calls(m.called_methods, m.owner)),
        NBD=max_nesting(m),
        LCOM1=lcom1,
        LCOM2=lcom2,
        LCOM3=lcom3,
        LCOM4=lcom4,
        TSMC=text_similarity(token_bag(m.source), token_bag(cls.source)),
    )


def statement_metrics(s: cm.Statement, m: cm.MethodEntity) -> StatementMetrics:
    category = _ABCL_OF_KIND[s.kind]
    onehot = tuple(1 if c == category else 0 for c in ABCL_CATEGORIES)
    return StatementMetrics(
        ABCL=onehot,
        FUC=len(s.fields_used),
        LMUC=len(_same_class_calls(s.calls, m.owner)),
        VUC=len((s.defs | s.uses) - s.params_used),
        PUC=len(s.params_used),
        NBD=s.nesting_depth,
        WC=word_count(s.text),
        TSM=text_similarity(token_bag(s.text), token_bag(m.source)),
    )


# ---------------------------------------------------------------------------
# Class-level metrics


def depth_of_inheritance(c: cm.ClassEntity, p: cm.Project) -> int:
    depth = 0
    seen = {c.id}
    cur = c
    while True:
        if cur.superclass_id is not None and cur.superclass_id not in seen:
            depth += 1
            seen.add(cur.superclass_id)
            cur = p.classes[cur.superclass_id]
            continue
        if cur.superclass_id is None and cur.superclass is not None:
            depth += 1  # external parent counts one level, then the chain stops
        return depth


def class_foreign_data(c: cm.ClassEntity) -> set:
    pairs = set()
    for m in c.methods:
        pairs.update(m.foreign_data)
    return pairs


def class_metrics(c: cm.ClassEntity, p: cm.Project) -> ClassMetrics:
    source = p.files[c.file_path]
    methods = [m for m in c.methods if not m.is_ctor]
    noa = len(c.fields)
    nopa = sum(1 for f in c.fields if f.visibility == "public")
    wmc = sum(cyclomatic_complexity(m) for m in methods)
    cis = sum(1 for m in methods if m.visibility == "public")

    referenced = set()
    for f in c.fields:
        if f.type_id and f.type_id != c.id:
            referenced.add(f.type_id)
    for m in c.methods:
        for tid in m.param_type_ids:
            if tid and tid != c.id:
                referenced.add(tid)
    dcc = len(referenced) / max(1, len(p.classes))

    p_pairs = q_pairs = 0
    for a, b in itertools.combinations(methods, 2):
        if a.own_fields_used & b.own_fields_used:
            q_pairs += 1
        else:
            p_pairs += 1
    total_pairs = p_pairs + q_pairs
    tcc = q_pairs / total_pairs if total_pairs else 0.0
    lcom = max(p_pairs - q_pairs, 0)

    param_types = [set(t for t, _ in m.params) for m in methods]
    union = set().union(*param_types) if param_types else set()
    cam = (
        sum(len(types) / len(union) for types in param_types) / len(methods)
        if methods and union
        else 0.0
    )

    return ClassMetrics(
        NOM=len(methods),
        NOA=noa,
        NOPA=nopa,
        ATFD=len(class_foreign_data(c)),
        WMC=wmc,
        DIT=depth_of_inheritance(c, p),
        CIS=cis,
        LCOM=lcom,
        TCC=tcc,
        DCC=dcc,
        CAM=cam,
        LOC=cm.count_loc(source, c.span),
    )


# ---------------------------------------------------------------------------
# Similarity matrix (class-level graph edges)


def similarity_matrix(c: cm.ClassEntity, p: cm.Project) -> SimilarityMatrix:
    methods = list(c.methods)
    ids = [m.id for m in methods]
    call_counts = {}  # (caller id, callee id) -> occurrences
    total_to = {mid: 0 for mid in ids}
    for m in methods:
        for s in m.statements:
            for callee in s.calls:
                if callee in total_to:
                    call_counts[(m.id, callee)] = call_counts.get((m.id, callee), 0) + 1
                    total_to[callee] += 1
    bags = {m.id: token_bag(m.source) for m in methods}
    entries = {}
    for a, b in itertools.combinations(methods, 2):
        fields_a, fields_b = a.accessed_fields, b.accessed_fields
        inter = len(fields_a & fields_b)
        union = len(fields_a | fields_b)
        ssm = inter / union if union else 0.0
        ab = call_counts.get((a.id, b.id), 0)
        ba = call_counts.get((b.id, a.id), 0)
        cdm = max(
            ab / total_to[b.id] if total_to[b.id] else 0.0,
            ba / total_to[a.id] if total_to[a.id] else 0.0,
        )
        csm = text_similarity(bags[a.id], bags[b.id])
        entries[tuple(sorted((a.id, b.id)))] = {"ssm": ssm, "cdm": cdm, "csm": csm}
    return SimilarityMatrix(method_ids=ids, entries=entries)


# ---------------------------------------------------------------------------
# Distances for move-method analysis


def entity_set_of_method(m: cm.MethodEntity) -> set:
    return set(m.accessed_fields) | set(m.called_methods)


def entity_set_of_class(c: cm.ClassEntity) -> set:
    return {f.id for f in c.fields} | {m.id for m in c.methods}


def _distance(m: cm.MethodEntity, c: cm.ClassEntity) -> float:
    s_m = entity_set_of_method(m)
    s_c = entity_set_of_class(c) - {m.id}  # a method never counts toward itself
    union = s_m | s_c
    if not union:
        return 1.0
    return 1.0 - len(s_m & s_c) / len(union)


def source_dist(m: cm.MethodEntity, c: cm.ClassEntity) -> float:
    """Distance between a method and a class it might leave."""
    return _distance(m, c)


def target_dist(m: cm.MethodEntity, c: cm.ClassEntity) -> float:
    """Distance between a method and a class it might move to."""
    return _distance(m, c)


def related_classes(m: cm.MethodEntity, p: cm.Project) -> list:
    """Internal classes `m` is coupled to: parameter types, types of own
    fields it accesses, providers of foreign data, and owners of called
    methods.  Sorted, excluding the method's own class."""
    related = set()
    for tid in m.param_type_ids:
        if tid:
            related.add(tid)
    if m.return_type_id:
        related.add(m.return_type_id)
    own_cls = p.classes[m.owner]
    field_index = {f.id: f for f in own_cls.fields}
    for anc in p.ancestors(own_cls):
        for f in anc.fields:
            field_index.setdefault(f.id, f)
    for fid in m.own_fields_used:
        f = field_index.get(fid)
        if f is not None and f.type_id:
            related.add(f.type_id)
    for cls_id, _ in m.foreign_data:
        related.add(cls_id)
    for mid in m.called_methods:
        related.add(mid.rsplit(".", 1)[0])
    related.discard(m.owner)
    return sorted(c for c in related if c in p.classes)


# ---------------------------------------------------------------------------
# Rule-based smell detection


def method_foreign_profile(m: cm.MethodEntity) -> tuple:
    """(distinct foreign attributes, LAA, distinct provider classes)."""
    foreign = set(m.foreign_data)
    own = len(m.own_fields_used)
    total = own + len(foreign)
    laa = own / total if total else 1.0
    providers = {cls_id for cls_id, _ in foreign}
    return len(foreign), laa, len(providers)


def advisor_check(entity, smell_kind: str, p: cm.Project, thresholds: dict | None = None) -> AdvisorVerdict:
    th = dict(DEFAULT_THRESHOLDS)
    if thresholds:
        th.update(thresholds)
    if smell_kind == "long_method":
        if not isinstance(entity, cm.MethodEntity):
            raise WrongEntityKindError("long_method applies to methods")
        mm = method_metrics(entity, p)
        terms = {
            "loc": mm.LOC > th["HIGH_LOC_CLASS"] / 2,
            "cyclo": mm.CC > th["HIGH_CYCLO"],
            "maxnesting": mm.NBD > th["SEVERAL"],
            "noav": mm.NOAV > th["MANY"],
        }
    elif smell_kind == "large_class":
        if not isinstance(entity, cm.ClassEntity):
            raise WrongEntityKindError("large_class applies to classes")
        cmx = class_metrics(entity, p)
        terms = {
            "atfd": cmx.ATFD > th["FEW"],
            "wmc": cmx.WMC > th["VERY_HIGH_WMC"],
            "tcc": cmx.TCC < th["ONE_THIRD"],
        }
    elif smell_kind == "feature_envy":
        if not isinstance(entity, cm.MethodEntity):
            raise WrongEntityKindError("feature_envy applies to methods")
        atfd, laa, fdp = method_foreign_profile(entity)
        terms = {
            "atfd": atfd > th["FEW"],
            "laa": laa < th["ONE_THIRD"],
            "fdp": fdp <= th["FEW"],
        }
    else:
        raise WrongEntityKindError(f"unknown smell kind {smell_kind!r}")
    return AdvisorVerdict(
        smell_kind=smell_kind,
        positive=all(terms.values()),
        fired_terms=terms,
        thresholds_used=th,
    )
