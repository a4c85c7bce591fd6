"""Top-level acceptance checks, one test per shipped guarantee.

Each test prints a PASS/FAIL line (visible even under capture) so a plain
``pytest tests/test_acceptance.py`` run doubles as a release checklist.  The
checks deliberately re-derive everything from scratch: frozen evaluation
rows, hand-computed metric values, the hand-derived dependence-graph oracle,
a full injection sweep, finite-difference gradient audits, learning-sanity
runs, the desk-scale end-to-end pipeline, permutation symmetries, and the
move-distance bounds.  Where a stated time budget applies, the test asserts
it.
"""

import dataclasses
import json
import math
import os
import pathlib
import time
from contextlib import contextmanager

import numpy as np
import pytest

import test_graphs
import test_injector
import test_nn

from smellgraph import codemodel as cm
from smellgraph import dataset as ds
from smellgraph import evaluation as ev
from smellgraph import fixture_path
from smellgraph import graphs as gb
from smellgraph import injector as inj
from smellgraph import metrics as mt
from smellgraph import nn
from smellgraph.errors import MergeUnsupportedError, MoveUnsupportedError

HERE = os.path.dirname(os.path.abspath(__file__))


@contextmanager
def reported(capsys, num, description):
    """Print one human-readable checklist line per criterion."""
    started = time.monotonic()
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"\nFAIL criterion {num}: {description}")
        raise
    with capsys.disabled():
        elapsed = time.monotonic() - started
        print(f"\nPASS criterion {num}: {description} ({elapsed:.1f}s)")


@pytest.fixture(scope="module")
def corpus_projects():
    root = pathlib.Path(fixture_path("corpus"))
    return [cm.parse_project(str(d)) for d in sorted(root.iterdir()) if d.is_dir()]


@pytest.fixture(scope="module")
def figures():
    return cm.parse_project(fixture_path("figures"))


@pytest.fixture(scope="module")
def library():
    return cm.parse_project(fixture_path("figures"), include_globs=("Library.java",))


@pytest.fixture(scope="module")
def pricing():
    return cm.parse_project(fixture_path("figures", "pricing"))


@pytest.fixture(scope="module")
def shop():
    return cm.parse_project(fixture_path("figures", "shop"))


@pytest.fixture(scope="module")
def insertion_sort():
    p = cm.parse_project(fixture_path("figures"), include_globs=("InsertionSort.java",))
    return p.classes["InsertionSort"].method_named("sort")


# ---------------------------------------------------------------------------
# 1. Frozen evaluation rows


# Each row is (tp, fp, fn, P, R, F1) with counts constructed so that
# tp/(tp+fp) and tp/(tp+fn) land exactly on the two-decimal P and R, e.g.
# 2800/5600 = 0.50 and 2800/5000 = 0.56.  prf1 must recover P and R to
# double precision and the rounded F1 within +/-0.005.
SCORE_ROWS = [
    # extract-method detection rows (three architectures + baseline tool);
    # the second and third architectures share a row.
    (2800, 2800, 2200, 0.50, 0.56, 0.53),
    (3162, 3038, 1938, 0.51, 0.62, 0.56),
    (3162, 3038, 1938, 0.51, 0.62, 0.56),
    (903, 1197, 1247, 0.43, 0.42, 0.42),
    # extract-class detection rows (same layout)
    (2952, 4248, 1148, 0.41, 0.72, 0.52),
    (4032, 5568, 168, 0.42, 0.96, 0.58),
    (3096, 4104, 1204, 0.43, 0.72, 0.54),
    (968, 1232, 3432, 0.44, 0.22, 0.29),
]


def test_criterion_1(capsys):
    with reported(capsys, 1, "frozen evaluation rows: F1 recovered from exact P/R counts within 0.005"):
        t0 = time.monotonic()
        for tp, fp, fn, exp_p, exp_r, exp_f1 in SCORE_ROWS:
            p, r, f1 = ev.prf1(tp, fp, fn)
            assert p == pytest.approx(exp_p, abs=1e-9)
            assert r == pytest.approx(exp_r, abs=1e-9)
            assert abs(f1 - exp_f1) <= 0.005
        assert time.monotonic() - t0 < 1.0


# ---------------------------------------------------------------------------
# 2. Metric catalog against hand-computed values


def _expect(covered, obj, **values):
    """Assert metric values (ints/tuples exact, floats to 1e-9) and record
    which (dataclass, field) pairs have been hand-checked."""
    for name, want in values.items():
        got = getattr(obj, name)
        if isinstance(want, float):
            assert got == pytest.approx(want, abs=1e-9), (type(obj).__name__, name, got)
        else:
            assert got == want, (type(obj).__name__, name, got)
        covered.add((type(obj).__name__, name))


def test_criterion_2(capsys, figures, corpus_projects, library, pricing, shop, insertion_sort):
    with reported(capsys, 2, "metric catalog matches hand-computed values on the committed fixtures"):
        t0 = time.monotonic()

        # Census: the committed fixture set is big enough and contains the
        # walkthrough entities the hand computations refer to.
        projects = [figures] + corpus_projects
        n_classes = sum(len(p.class_list) for p in projects)
        n_methods = sum(1 for p in projects for _ in p.iter_methods())
        assert n_classes >= 10
        assert n_methods >= 30
        assert insertion_sort.id == "InsertionSort.sort"
        assert pricing.classes["Campaign"].method_named("discount") is not None
        assert library.classes["Library"].method_named("chargeFor") is not None
        assert shop.classes["Cart"].method_named("checkout") is not None

        covered = set()

        # Class metrics.  Library hand computation: 4 methods (WMC 1+1+2+1),
        # 3 private fields, 2 cohesive method pairs of 6, LCOM P=4 Q=2,
        # CAM 0.75, source spans 22 lines.
        cx = mt.class_metrics(library.classes["Library"], library)
        _expect(covered, cx, NOM=4, NOA=3, NOPA=0, ATFD=0, WMC=5, CIS=4,
                DIT=0, LCOM=2, LOC=22, TCC=2.0 / 6.0, CAM=0.75, DCC=0.0)
        # Foreign-data, coupling and depth cases from the other fixtures.
        _expect(covered, mt.class_metrics(pricing.classes["Campaign"], pricing), ATFD=3)
        _expect(covered, mt.class_metrics(shop.classes["Cart"], shop), DCC=1.0 / 4.0)
        _expect(covered, mt.class_metrics(shop.classes["Novel"], shop), DIT=1)
        _expect(covered, mt.class_metrics(shop.classes["Product"], shop), DIT=0)

        # Method metrics.  Insertion sort: two loop predicates (CC 3),
        # nesting depth 2, variables {ary, i, j, tmp}, lines 2..14.
        mm = mt.method_metrics(insertion_sort, cm.parse_project(
            fixture_path("figures"), include_globs=("InsertionSort.java",)))
        _expect(covered, mm, LOC=13, CC=3, PC=1, NOAV=4, NBD=2)
        # Campaign.discount touches three foreign accessor values, one
        # non-local direct field, one foreign provider class.
        disc = mt.method_metrics(pricing.classes["Campaign"].method_named("discount"), pricing)
        _expect(covered, disc, NFDI=3, NLDI=1, FUC=1, LMUC=0)
        charge = mt.method_metrics(library.classes["Library"].method_named("chargeFor"), library)
        _expect(covered, charge, LOC=7, CC=2, NOAV=4)
        report = mt.method_metrics(library.classes["Library"].method_named("dailyReport"), library)
        _expect(covered, report, LOC=4, CC=1, NOAV=3)

        # Cohesion variants on a probe with three statement units whose
        # attribute sets are {a,p}, {p,b}, {c}: P=2, Q=1, and a call edge
        # joining units 1 and 3.
        probe_src = (
            "class L {\n"
            "    void helper(int v) {\n"
            "    }\n"
            "    void probe(int p) {\n"
            "        int a = 0;\n"
            "        a = a + p;\n"
            "        helper(a);\n"
            "        if (p > 0) {\n"
            "            int b = p;\n"
            "            b = b + 1;\n"
            "        }\n"
            "        int c = 1;\n"
            "        helper(c);\n"
            "    }\n"
            "}\n"
        )
        lp = cm.parse_sources({"L.java": probe_src})
        probe = mt.method_metrics(lp.classes["L"].method_named("probe"), lp)
        _expect(covered, probe, LCOM1=2, LCOM2=1, LCOM3=2, LCOM4=1)

        # Text similarity, worked by hand on a minimal class.  Method bag
        # {f:1, alpha:2}; class bag {a:1, alpha:3, f:1}; statement bag
        # {alpha:2}.  Cosines: 7/sqrt(5*11) and 4/(2*sqrt(5)).
        ap = cm.parse_sources({"A.java":
            "class A {\n    int alpha;\n    void f() {\n        alpha = alpha;\n    }\n}"})
        acls = ap.classes["A"]
        am = acls.method_named("f")
        _expect(covered, mt.method_metrics(am, ap), TSMC=7.0 / math.sqrt(55.0))
        _expect(covered, mt.statement_metrics(am.statements[0], am), TSM=2.0 / math.sqrt(5.0))

        # Statement metrics.  One hand case per category bit, then the
        # counting metrics.
        def stmts(source):
            p = cm.parse_sources({"A.java": source})
            m = p.classes["A"].method_named("f")
            return m, m.statements

        m, ss = stmts("class A {\n    void f() {\n        int q = 0;\n        q = 1;\n    }\n}")
        _expect(covered, mt.statement_metrics(ss[1], m),
                ABCL=(1, 0, 0, 0, 0), VUC=1, PUC=0, NBD=0, WC=3)
        m, ss = stmts("class A {\n    void g() {\n    }\n    void f() {\n        g();\n    }\n}")
        _expect(covered, mt.statement_metrics(ss[0], m), ABCL=(0, 1, 0, 0, 0))
        m, ss = stmts("class A {\n    void f(int p) {\n        if (p > 0) {\n            p = 0;\n        }\n    }\n}")
        _expect(covered, mt.statement_metrics(ss[0], m), ABCL=(0, 0, 1, 0, 0))
        m, ss = stmts(
            "class A {\n    void f(int p) {\n        int a = 0;\n        int b = 0;\n"
            "        while (a < p + b) {\n            a = a + 1;\n        }\n    }\n}")
        loop = [s for s in ss if s.kind == "loop"][0]
        _expect(covered, mt.statement_metrics(loop, m), ABCL=(0, 0, 0, 1, 0), VUC=2, PUC=1)
        m, ss = stmts("class A {\n    int f() {\n        return 1;\n    }\n}")
        _expect(covered, mt.statement_metrics(ss[0], m), ABCL=(0, 0, 0, 0, 1))
        m, ss = stmts(
            "class A {\n    int fld;\n"
            "    int g() {\n        return 1;\n    }\n"
            "    int h() {\n        return 2;\n    }\n"
            "    void f() {\n        fld = g() + h();\n    }\n}")
        _expect(covered, mt.statement_metrics(ss[0], m), LMUC=2, FUC=1)

        # Nothing in the catalog escaped without a hand check.
        for metric_cls in (mt.ClassMetrics, mt.MethodMetrics, mt.StatementMetrics):
            fields = {f.name for f in dataclasses.fields(metric_cls)}
            checked = {n for t, n in covered if t == metric_cls.__name__}
            assert fields <= checked, (metric_cls.__name__, fields - checked)

        assert time.monotonic() - t0 < 10.0


# ---------------------------------------------------------------------------
# 3. Dependence-graph oracle


def test_criterion_3(capsys, insertion_sort, figures, corpus_projects):
    with reported(capsys, 3, "dependence edges match the hand-derived oracle; reaching definitions verified by brute force"):
        t0 = time.monotonic()
        with open(os.path.join(HERE, "data", "insertion_sort_pdg.json")) as fh:
            oracle = json.load(fh)

        def sid(k):
            return f"InsertionSort.sort#{k}"

        def as_ids(pairs):
            return sorted((sid(a), sid(b)) for a, b in pairs)

        assert gb.control_flow_edges(insertion_sort) == as_ids(oracle["cflow"])
        assert gb.control_dependency_edges(insertion_sort) == as_ids(oracle["cdep"])
        assert gb.data_dependency_edges(insertion_sort) == as_ids(oracle["ddep"])

        schema = gb.FeatureSchema.for_task("long_method")
        g = gb.build_method_graph(insertion_sort, schema)
        got_include = sorted((src, dst) for src, dst, _ in g.edges["include"])
        assert got_include == sorted(
            (insertion_sort.id, sid(k)) for k in oracle["include"])

        # Independent oracle for the flow-sensitive edges: exhaustive path
        # search per (definition, use) pair on every fixture method.
        for p in [figures] + corpus_projects:
            for _, m in p.iter_methods():
                got = set(gb.data_dependency_edges(m))
                assert got == test_graphs.brute_force_reaching_edges(m), m.id
        assert time.monotonic() - t0 < 10.0


# ---------------------------------------------------------------------------
# 4. Injection round-trip


# The complete routing table: (smell, origin, range, advisor-negative) ->
# (group, label) or None for discard.  The advisor verdict only matters for
# original long-method samples.
ROUTING = [
    ("long_method", "injected", "PR3", None, ("A", 1)),
    ("long_method", "injected", "PR2", None, ("M", None)),
    ("long_method", "injected", "PR1", None, None),
    ("long_method", "original", "PR3", None, ("M", None)),
    ("long_method", "original", "PR1", True, ("A", 0)),
    ("long_method", "original", "PR2", True, ("M", None)),
    ("long_method", "original", "PR1", False, None),
    ("long_method", "original", "PR2", False, None),
    ("large_class", "injected", "PR1", None, ("A", 1)),
    ("large_class", "injected", "PR3", None, ("M", None)),
    ("large_class", "injected", "PR2", None, None),
    ("large_class", "original", "PR2", None, ("A", 0)),
    ("large_class", "original", "PR1", None, ("M", None)),
    ("large_class", "original", "PR3", None, ("M", None)),
    ("feature_envy", "injected", "PR3", None, ("A", 1)),
    ("feature_envy", "injected", "PR2", None, ("M", None)),
    ("feature_envy", "injected", "PR1", None, None),
    ("feature_envy", "original", "PR1", None, ("A", 0)),
    ("feature_envy", "original", "PR2", None, ("M", None)),
    ("feature_envy", "original", "PR3", None, ("M", None)),
]


def test_criterion_4(capsys, corpus_projects, tmp_path):
    with reported(capsys, 4, "injection round-trip: re-parse, origin totality, LOC additivity, boundary routing"):
        t0 = time.monotonic()

        # Every candidate the bundled corpus offers must re-parse from its
        # rewritten files and re-resolve its synthetic entity.
        merges = class_merges = moves = failures = 0
        for p in corpus_projects:
            for cand in inj.find_method_merge_candidates(p):
                try:
                    res = inj.merge_methods(p, cand)
                except MergeUnsupportedError:
                    continue
                merges += 1
                fresh = cm.parse_sources(res.files, name=p.name)
                merged = fresh.method_by_id(res.method_id)
                if not (fresh.resolved and merged is not None):
                    failures += 1
                    continue
                # Origin map totality: every merged statement is attributed.
                assert set(res.origin) == {s.id for s in merged.statements}
                assert set(res.origin.values()) <= {"caller", "callee"}
                if cand.pattern == 1:
                    # LOC additivity: merged = caller + callee interior - call site.
                    caller = p.method_by_id(cand.caller)
                    callee = p.method_by_id(cand.callee)
                    src = p.files[p.classes[callee.owner].file_path]
                    body = cm.count_loc(src, (callee.span[0] + 1, callee.span[1] - 1))
                    after = mt.method_metrics(
                        res.project.method_by_id(res.method_id), res.project).LOC
                    before = mt.method_metrics(caller, p).LOC
                    assert after == before + body - 1, cand
            for cand in inj.find_class_merge_candidates(p):
                try:
                    res = inj.merge_classes(p, cand)
                except MergeUnsupportedError:
                    continue
                class_merges += 1
                fresh = cm.parse_sources(res.files, name=p.name)
                merged_cls = fresh.classes.get(res.class_id)
                if not (fresh.resolved and merged_cls is not None):
                    failures += 1
                    continue
                assert set(res.member_origin) == {m.id for m in merged_cls.methods}
                assert set(res.member_origin.values()) <= {"absorber", "absorbed"}
            for cand in inj.find_move_candidates(p):
                try:
                    res = inj.move_method(p, cand)
                except MoveUnsupportedError:
                    continue
                moves += 1
                fresh = cm.parse_sources(res.files, name=p.name)
                if not (fresh.resolved and fresh.method_by_id(res.method_id) is not None):
                    failures += 1
        assert failures == 0  # 100% of successful injections round-trip
        assert merges >= 30 and class_merges >= 5 and moves >= 10

        # Generated samples all carry graphs that deserialize and validate.
        out = ds.generate_dataset(corpus_projects, out_dir=str(tmp_path),
                                  seed=3, heldout={"inventory", "travel"})
        n_samples = 0
        for rows in out["samples"].values():
            for s in rows:
                n_samples += 1
                gb.graph_from_json(s.graph).validate()
        assert n_samples >= 100

        # Boundary cases land in the documented ranges...
        for loc, want in ((14, "PR1"), (15, "PR2"), (30, "PR2"), (31, "PR3")):
            p, m = test_injector.method_with_loc(loc)
            assert mt.method_metrics(m, p).LOC == loc
            assert inj.possibility_range(p, m, "long_method") == want
        for nfdi, want in ((1, "PR1"), (2, "PR2"), (5, "PR2"), (6, "PR3")):
            p, m = test_injector.method_with_nfdi(nfdi)
            assert mt.method_metrics(m, p).NFDI == nfdi
            assert inj.possibility_range(p, m, "feature_envy") == want
        # ...and the ranges route through the full grouping table.
        for smell, origin, prange, advisor_negative, want in ROUTING:
            got = inj.group_sample(smell, origin, prange, advisor_negative)
            assert got == want, (smell, origin, prange, advisor_negative)

        assert time.monotonic() - t0 < 60.0


# ---------------------------------------------------------------------------
# 5. Gradient audit


def test_criterion_5(capsys):
    with reported(capsys, 5, "analytic gradients match central finite differences (20 seeds per layer and network)"):
        t0 = time.monotonic()
        kinds = ("cflow", "include")
        layer_makers = [
            lambda r: nn.GCNLayer(3, 4, kinds, r),
            lambda r: nn.SAGELayer(3, 4, kinds, r),
            lambda r: nn.GATLayer(3, 4, kinds, 2, "concat", r),
            lambda r: nn.GATLayer(3, 4, kinds, 2, "mean", r),
        ]
        for make in layer_makers:
            worst = max(test_nn.layer_gradient_error(make, seed) for seed in range(20))
            assert worst < 1e-4
        for architecture in nn.ARCHITECTURES:
            for task in nn.TRAIN_TASKS:
                worst = max(
                    test_nn.network_gradient_error(architecture, task, seed)
                    for seed in range(20)
                )
                assert worst < 1e-4, (architecture, task)
        assert time.monotonic() - t0 < 60.0


# ---------------------------------------------------------------------------
# 6. Learning sanity


def test_criterion_6(capsys):
    with reported(capsys, 6, "every architecture learns a separable dataset to F1 >= 0.95 on both tasks"):
        t0 = time.monotonic()
        for architecture in nn.ARCHITECTURES:
            for task in nn.TRAIN_TASKS:
                per_node = task == "node_classification"
                # Labels are a sign threshold on a single feature column, so
                # the dataset is separable by construction.
                graphs = test_nn.separable_graphs(123, n=240, per_node=per_node)
                cfg = nn.TrainConfig("long_method", architecture, task=task,
                                     epochs=200, seed=0)
                result = nn.train(graphs, cfg)
                best = max(row["val_f1"] for row in result.log)
                assert best >= 0.95, (architecture, task, best)
        assert time.monotonic() - t0 < 120.0


# ---------------------------------------------------------------------------
# 7. Desk-scale end-to-end run


def test_criterion_7(capsys, corpus_projects, tmp_path):
    with reported(capsys, 7, "desk-scale pipeline: detection F1 >= 0.80 and opportunity F1 >= 0.60 on held-out injections"):
        t0 = time.monotonic()
        # Frozen recipe: generation and training seeds are pinned, and the
        # held-out projects are chosen so every smell has positives on both
        # sides of the split.  The thresholds themselves are not negotiable.
        ds.generate_dataset(corpus_projects, out_dir=str(tmp_path),
                            seed=3, heldout={"inventory", "travel"})
        report = ev.run_experiment({
            "dataset_dir": str(tmp_path),
            "epochs": 300,
            "seed": 7,
            "hidden_dim": 32,
        })
        for smell, by_arch in report.results.items():
            for arch, sections in by_arch.items():
                det = sections["detection"]["f1"]
                assert det >= 0.80, (smell, arch, "detection", det)
                micro = sections["opportunity"]["micro"]
                assert micro is not None, (smell, arch)
                assert micro["f1"] >= 0.60, (smell, arch, "opportunity", micro["f1"])
        assert time.monotonic() - t0 < 600.0


# ---------------------------------------------------------------------------
# 8. Permutation symmetry on fixture graphs


def test_criterion_8(capsys, corpus_projects):
    with reported(capsys, 8, "graph scores invariant and node scores equivariant under node relabeling"):
        rng = np.random.default_rng(88)
        m_schema = gb.FeatureSchema.for_task("long_method")
        c_schema = gb.FeatureSchema.for_task("large_class")
        method_graphs = []
        class_graphs = []
        for p in corpus_projects:
            for cls in p.class_list:
                if cls.methods:
                    class_graphs.append(gb.build_class_graph(cls, p, c_schema))
            for _, m in p.iter_methods():
                if len(m.statements) >= 2:
                    method_graphs.append(gb.build_method_graph(m, m_schema))
        chosen = [(g, "long_method") for g in rng.choice(method_graphs, 30, replace=False)]
        chosen += [(g, "large_class") for g in rng.choice(class_graphs, 20, replace=False)]
        assert len(chosen) == 50

        models = {}
        for smell, schema, graphs in (("long_method", m_schema, method_graphs),
                                      ("large_class", c_schema, class_graphs)):
            fitted = schema.fit(graphs)
            for architecture in nn.ARCHITECTURES:
                for task in nn.TRAIN_TASKS:
                    cfg = nn.TrainConfig(smell, architecture, task=task,
                                         hidden_dim=8, heads=2, seed=7)
                    models[smell, architecture, task] = nn.GNNModel(cfg, fitted)

        for g, smell in chosen:
            mapping = {n.id: f"q{j}" for j, n in enumerate(g.nodes)}
            shuffled = test_nn.relabeled(g, mapping)
            for architecture in nn.ARCHITECTURES:
                graph_model = models[smell, architecture, "graph_classification"]
                _, before = nn.predict_graph(graph_model, g)
                _, after = nn.predict_graph(graph_model, shuffled)
                assert np.max(np.abs(before - after)) < 1e-9

                node_model = models[smell, architecture, "node_classification"]
                before_nodes = nn.predict_nodes(node_model, g)
                after_nodes = nn.predict_nodes(node_model, shuffled)
                assert set(after_nodes) == {mapping[k] for k in before_nodes}
                for node_id, (_, probs) in before_nodes.items():
                    moved = after_nodes[mapping[node_id]][1]
                    assert np.max(np.abs(probs - moved)) < 1e-9


# ---------------------------------------------------------------------------
# 9. Move-distance bounds


def test_criterion_9(capsys, corpus_projects, figures, shop):
    with reported(capsys, 9, "move distances stay in [0,1] with exact extremes for equal and disjoint sets"):
        for p in [figures] + corpus_projects:
            for _, m in p.iter_methods():
                for cls in p.class_list:
                    for fn in (mt.source_dist, mt.target_dist):
                        d = fn(m, cls)
                        assert 0.0 <= d <= 1.0, (m.id, cls.id)

        # Equal sets: the method touches exactly its class's one field, and
        # the class (minus the method itself) offers exactly that field.
        hp = cm.parse_sources({"H.java":
            "class Holder {\n    int item;\n    void touch() {\n        item = item + 1;\n    }\n}"})
        touch = hp.classes["Holder"].method_named("touch")
        assert mt.source_dist(touch, hp.classes["Holder"]) == 0.0

        # Disjoint sets: getTitle shares nothing with User.
        get_title = shop.classes["Product"].method_named("getTitle")
        assert mt.target_dist(get_title, shop.classes["User"]) == 1.0
