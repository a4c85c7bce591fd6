import json

import pytest

from smellgraph import fixture_path
from smellgraph import codemodel as cm
from smellgraph import injector as inj
from smellgraph import metrics as mt
from smellgraph.errors import MergeUnsupportedError, MoveUnsupportedError


def corpus_project(name):
    return cm.parse_project(fixture_path("corpus", name))


CORPUS_NAMES = ("banking", "games", "inventory", "media", "school", "travel")


@pytest.fixture(scope="module")
def all_projects():
    projects = [corpus_project(n) for n in CORPUS_NAMES]
    projects.append(cm.parse_project(fixture_path("figures", "pricing")))
    projects.append(cm.parse_project(fixture_path("figures", "shop")))
    return projects


def pad_statements(n):
    return "\n".join("        x = x + 1;" for _ in range(n))


def method_with_loc(loc):
    """A class whose method `f` has exactly `loc` code lines."""
    body = pad_statements(loc - 2)  # signature + closing brace
    src = f"class A {{\n    int x;\n    void f() {{\n{body}\n    }}\n}}"
    p = cm.parse_sources({"A.java": src})
    return p, p.classes["A"].method_named("f")


def method_with_nfdi(occurrences):
    """Home.f reads `occurrences` foreign accessor values from Target."""
    reads = "\n".join(
        f"        acc = acc + t.getV{i % 3}();" for i in range(occurrences)
    )
    target = (
        "class Target {\n    int v0;\n    int v1;\n    int v2;\n"
        "    int getV0() { return v0; }\n"
        "    int getV1() { return v1; }\n"
        "    int getV2() { return v2; }\n}"
    )
    home = f"class Home {{\n    int f(Target t) {{\n        int acc = 0;\n{reads}\n        return acc;\n    }}\n}}"
    p = cm.parse_sources({"Target.java": target, "Home.java": home})
    return p, p.classes["Home"].method_named("f")


class TestRangeConfig:
    def test_defaults(self):
        cfg = inj.RangeConfig()
        assert cfg.long_method == {"min": 15, "max": 30}
        assert cfg.feature_envy == {"min": 2, "max": 5}
        assert cfg.large_class["max"] == {"NOA": 10, "NOM": 10, "LOC": 130}
        assert cfg.large_class["min"] == {"NOA": 5, "NOM": 7, "LOC": 70}

    def test_json_round_trip(self):
        cfg = inj.RangeConfig(long_method={"min": 5, "max": 9})
        again = inj.RangeConfig.from_json(json.loads(json.dumps(cfg.to_json())))
        assert again == cfg

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "ranges.json"
        path.write_text(json.dumps({"feature_envy": {"min": 1, "max": 3}}))
        cfg = inj.RangeConfig.load(str(path))
        assert cfg.feature_envy == {"min": 1, "max": 3}
        assert cfg.long_method == {"min": 15, "max": 30}  # untouched default


class TestPossibilityRange:
    @pytest.mark.parametrize(
        "loc,expected",
        [(14, "PR1"), (15, "PR2"), (30, "PR2"), (31, "PR3")],
    )
    def test_long_method_boundaries(self, loc, expected):
        p, m = method_with_loc(loc)
        assert mt.method_metrics(m, p).LOC == loc  # fixture sanity
        assert inj.possibility_range(p, m, "long_method") == expected

    @pytest.mark.parametrize(
        "nfdi,expected",
        [(1, "PR1"), (2, "PR2"), (5, "PR2"), (6, "PR3")],
    )
    def test_feature_envy_boundaries(self, nfdi, expected):
        p, m = method_with_nfdi(nfdi)
        assert mt.method_metrics(m, p).NFDI == nfdi
        assert inj.possibility_range(p, m, "feature_envy") == expected

    def test_config_override_moves_the_boundary(self):
        p, m = method_with_loc(20)
        assert inj.possibility_range(p, m, "long_method") == "PR2"
        low = inj.RangeConfig(long_method={"min": 21, "max": 40})
        assert inj.possibility_range(p, m, "long_method", low) == "PR1"
        high = inj.RangeConfig(long_method={"min": 10, "max": 19})
        assert inj.possibility_range(p, m, "long_method", high) == "PR3"

    def test_large_class_needs_every_bound(self):
        # 11 fields and 11 one-line methods but compact: LOC stays under 130,
        # so the class is PR3 (mixed), not PR1.
        fields = "\n".join(f"    int f{i};" for i in range(11))
        methods = "\n".join(f"    int m{i}() {{ return f{i}; }}" for i in range(11))
        p = cm.parse_sources({"Big.java": f"class Big {{\n{fields}\n{methods}\n}}"})
        c = p.classes["Big"]
        cmx = mt.class_metrics(c, p)
        assert cmx.NOA == 11 and cmx.NOM == 11 and cmx.LOC < 130
        assert inj.possibility_range(p, c, "large_class") == "PR3"

    def test_large_class_small_side_is_strict(self):
        # NOA=4, NOM=6, LOC<70: strictly under every minimum -> PR2.
        fields = "\n".join(f"    int f{i};" for i in range(4))
        methods = "\n".join(f"    int m{i}() {{ return f0; }}" for i in range(6))
        p = cm.parse_sources({"S.java": f"class S {{\n{fields}\n{methods}\n}}"})
        assert inj.possibility_range(p, p.classes["S"], "large_class") == "PR2"

    def test_unknown_smell(self):
        p, m = method_with_loc(10)
        with pytest.raises(ValueError):
            inj.possibility_range(p, m, "shotgun_surgery")


class TestGroupSample:
    def test_long_method_injected(self):
        assert inj.group_sample("long_method", "injected", "PR3") == ("A", 1)
        assert inj.group_sample("long_method", "injected", "PR2") == ("M", None)
        assert inj.group_sample("long_method", "injected", "PR1") is None

    def test_long_method_original_advisor_negative(self):
        assert inj.group_sample("long_method", "original", "PR1", True) == ("A", 0)
        assert inj.group_sample("long_method", "original", "PR2", True) == ("M", None)
        assert inj.group_sample("long_method", "original", "PR3", True) == ("M", None)

    def test_long_method_original_advisor_positive_discards(self):
        assert inj.group_sample("long_method", "original", "PR1", False) is None
        assert inj.group_sample("long_method", "original", "PR2", False) is None
        # PR3 routes to manual annotation regardless of the advisor.
        assert inj.group_sample("long_method", "original", "PR3", False) == ("M", None)

    def test_long_method_original_requires_advisor(self):
        with pytest.raises(ValueError):
            inj.group_sample("long_method", "original", "PR1")

    def test_large_class(self):
        assert inj.group_sample("large_class", "injected", "PR1") == ("A", 1)
        assert inj.group_sample("large_class", "injected", "PR3") == ("M", None)
        assert inj.group_sample("large_class", "injected", "PR2") is None
        assert inj.group_sample("large_class", "original", "PR2") == ("A", 0)
        assert inj.group_sample("large_class", "original", "PR1") == ("M", None)
        assert inj.group_sample("large_class", "original", "PR3") == ("M", None)

    def test_feature_envy(self):
        assert inj.group_sample("feature_envy", "injected", "PR3") == ("A", 1)
        assert inj.group_sample("feature_envy", "injected", "PR2") == ("M", None)
        assert inj.group_sample("feature_envy", "injected", "PR1") is None
        assert inj.group_sample("feature_envy", "original", "PR1") == ("A", 0)
        assert inj.group_sample("feature_envy", "original", "PR2") == ("M", None)
        assert inj.group_sample("feature_envy", "original", "PR3") == ("M", None)

    def test_rejects_unknown_inputs(self):
        with pytest.raises(ValueError):
            inj.group_sample("god_class", "injected", "PR1")
        with pytest.raises(ValueError):
            inj.group_sample("long_method", "synthetic", "PR1")


MERGE_P1_SRC = """\
class A {
    int total;

    void run(int[] values) {
        total = 0;
        show(values, 3);
        total = total + 1;
    }

    void show(int[] ary, int limit) {
        int i = 0;
        while (i < limit) {
            System.out.println(ary[i]);
            i = i + 1;
        }
    }
}
"""


@pytest.fixture(scope="module")
def merged_p1():
    p = cm.parse_sources({"A.java": MERGE_P1_SRC})
    cands = inj.find_method_merge_candidates(p)
    assert [(c.caller, c.callee, c.pattern) for c in cands] == [("A.run", "A.show", 1)]
    return p, inj.merge_methods(p, cands[0])


class TestMergePattern1:

    def test_body_replaces_the_call(self, merged_p1):
        _, res = merged_p1
        merged = res.project.method_by_id("A.run").source
        assert "show(values, 3)" not in merged
        assert "while (i < 3)" in merged
        assert "System.out.println(values[i]);" in merged

    def test_parameters_substituted(self, merged_p1):
        _, res = merged_p1
        merged = res.project.method_by_id("A.run").source
        assert "ary" not in merged and "limit" not in merged

    def test_origin_map_marks_inlined_block(self, merged_p1):
        _, res = merged_p1
        merged = res.project.method_by_id("A.run")
        assert set(res.origin) == {s.id for s in merged.statements}
        by_origin = {}
        for s in merged.statements:
            by_origin.setdefault(res.origin[s.id], []).append(s.text.strip())
        assert sorted(by_origin["caller"]) == ["total = 0;", "total = total + 1;"]
        assert "while (i < 3) {" in by_origin["callee"]

    def test_callee_method_is_kept(self, merged_p1):
        _, res = merged_p1
        assert res.project.method_by_id("A.show") is not None

    def test_loc_additivity(self, merged_p1):
        p, res = merged_p1
        caller = mt.method_metrics(p.method_by_id("A.run"), p).LOC
        callee = p.method_by_id("A.show")
        body = cm.count_loc(
            p.files["A.java"], (callee.span[0] + 1, callee.span[1] - 1)
        )
        merged = mt.method_metrics(res.project.method_by_id("A.run"), res.project).LOC
        assert merged == caller + body - 1


MERGE_COLLISION_SRC = """\
class B {
    void caller() {
        int i = 9;
        report(i);
        i = i - 1;
    }

    void report(int n) {
        int i = 0;
        i = i + n;
        System.out.println(i);
    }
}
"""


class TestMergeCollisionRename:
    def test_colliding_local_gets_fresh_name(self):
        p = cm.parse_sources({"B.java": MERGE_COLLISION_SRC})
        (cand,) = inj.find_method_merge_candidates(p)
        res = inj.merge_methods(p, cand)
        merged = res.project.method_by_id("B.caller").source
        # The callee local `i` collides with the caller local `i`.
        assert "int i2 = 0;" in merged
        assert "i2 = i2 + i;" in merged
        assert "System.out.println(i2);" in merged
        # Caller lines survive untouched.
        assert "int i = 9;" in merged
        assert "i = i - 1;" in merged


MERGE_P2_SRC = """\
class C {
    int base;

    void tally(int seed) {
        int extra = scaled(seed, 4);
        base = base + extra;
    }

    int scaled(int v, int k) {
        int out = v * k;
        if (out < 0) {
            out = 0;
        }
        return out;
    }
}
"""


@pytest.fixture(scope="module")
def merged_p2():
    p = cm.parse_sources({"C.java": MERGE_P2_SRC})
    (cand,) = inj.find_method_merge_candidates(p)
    assert cand.pattern == 2
    return p, inj.merge_methods(p, cand)


class TestMergePattern2:

    def test_return_becomes_assignment(self, merged_p2):
        _, res = merged_p2
        merged = res.project.method_by_id("C.tally").source
        assert "int out = seed * 4;" in merged
        assert "int extra = out;" in merged
        assert "return" not in merged

    def test_rewritten_site_is_callee_origin(self, merged_p2):
        _, res = merged_p2
        merged = res.project.method_by_id("C.tally")
        site = next(s for s in merged.statements if s.text.strip() == "int extra = out;")
        assert res.origin[site.id] == "callee"

    def test_loc_additivity(self, merged_p2):
        p, res = merged_p2
        caller = mt.method_metrics(p.method_by_id("C.tally"), p).LOC
        callee = p.method_by_id("C.scaled")
        body = cm.count_loc(p.files["C.java"], (callee.span[0] + 1, callee.span[1] - 1))
        merged = mt.method_metrics(res.project.method_by_id("C.tally"), res.project).LOC
        assert merged == caller + body - 1


MERGE_P3_SRC = """\
class D {
    int floor;

    int clamp(int raw) {
        int kept = raw + margin(raw) * 2;
        return kept;
    }

    int margin(int v) {
        int m = v / 10;
        if (m < 1) {
            m = 1;
        }
        return m;
    }
}
"""


@pytest.fixture(scope="module")
def merged_p3():
    p = cm.parse_sources({"D.java": MERGE_P3_SRC})
    cands = [c for c in inj.find_method_merge_candidates(p) if c.pattern == 3]
    (cand,) = cands
    return p, inj.merge_methods(p, cand)


class TestMergePattern3:

    def test_fresh_temporary_carries_the_value(self, merged_p3):
        _, res = merged_p3
        merged = res.project.method_by_id("D.clamp").source
        assert "int m = raw / 10;" in merged
        assert "int marginResult = m;" in merged
        assert "int kept = raw + marginResult * 2;" in merged

    def test_loc_additivity(self, merged_p3):
        p, res = merged_p3
        caller = mt.method_metrics(p.method_by_id("D.clamp"), p).LOC
        callee = p.method_by_id("D.margin")
        body = cm.count_loc(p.files["D.java"], (callee.span[0] + 1, callee.span[1] - 1))
        merged = mt.method_metrics(res.project.method_by_id("D.clamp"), res.project).LOC
        assert merged == caller + body


CROSS_MERGE_SRC = {
    "Gauge.java": """\
class Gauge {
    int level;

    int reading(int boost) {
        int r = level + boost;
        return r;
    }
}
""",
    "Panel.java": """\
class Panel {
    Gauge gauge;
    int shown;

    void refresh() {
        int value = gauge.reading(2);
        shown = value;
    }
}
""",
}


class TestCrossClassMerge:
    def test_members_requalified_through_receiver(self):
        p = cm.parse_sources(CROSS_MERGE_SRC)
        (cand,) = inj.find_method_merge_candidates(p)
        assert cand.receiver == "gauge"
        res = inj.merge_methods(p, cand)
        merged = res.project.method_by_id("Panel.refresh").source
        assert "int r = gauge.level + 2;" in merged
        assert "int value = r;" in merged


class TestMergeProperties:
    """Seeded sweep over every merge candidate in the bundled projects."""

    def test_every_candidate_round_trips(self, all_projects):
        seen = 0
        for p in all_projects:
            for cand in inj.find_method_merge_candidates(p):
                res = inj.merge_methods(p, cand)
                seen += 1
                # The result project was re-parsed and re-resolved.
                assert res.project.resolved
                assert set(res.files) == set(p.files)
                merged = res.project.method_by_id(res.method_id)
                assert merged is not None
                # Origin covers exactly the merged statements.
                assert set(res.origin) == {s.id for s in merged.statements}
        assert seen >= 30  # the corpus is supposed to exercise the machinery

    def test_caller_statements_survive_verbatim(self, all_projects):
        """Multiset difference: statements tagged `caller` are the original
        caller statements minus the consumed call site."""
        for p in all_projects:
            for cand in inj.find_method_merge_candidates(p):
                res = inj.merge_methods(p, cand)
                original = p.method_by_id(cand.caller)
                expected = sorted(
                    s.text for s in original.statements if s.id != cand.site
                )
                merged = res.project.method_by_id(res.method_id)
                kept = sorted(
                    s.text for s in merged.statements if res.origin[s.id] == "caller"
                )
                assert kept == expected, (p.name, cand)

    def test_loc_additivity_by_pattern(self, all_projects):
        for p in all_projects:
            for cand in inj.find_method_merge_candidates(p):
                res = inj.merge_methods(p, cand)
                caller = p.method_by_id(cand.caller)
                callee = p.method_by_id(cand.callee)
                src = p.files[p.classes[callee.owner].file_path]
                body = cm.count_loc(src, (callee.span[0] + 1, callee.span[1] - 1))
                before = mt.method_metrics(caller, p).LOC
                after = mt.method_metrics(
                    res.project.method_by_id(res.method_id), res.project
                ).LOC
                expected = before + body - (1 if cand.pattern in (1, 2) else 0)
                assert after == expected, (p.name, cand)

    def test_rewrite_is_deterministic(self, all_projects):
        p = all_projects[0]
        cands = inj.find_method_merge_candidates(p)
        assert cands == inj.find_method_merge_candidates(p)
        first = inj.merge_methods(p, cands[0])
        second = inj.merge_methods(p, cands[0])
        assert first.files == second.files
        assert first.origin == second.origin


CLASS_P1_SRC = {
    "Base.java": """\
class Base {
    int shared;

    int doubled() {
        return shared * 2;
    }
}
""",
    "Leaf.java": """\
class Leaf extends Base {
    int extra;

    int sum() {
        return doubled() + extra;
    }
}
""",
}


CLASS_P2_SRC = {
    "Motor.java": """\
class Motor {
    int rpm;

    void spin(int target) {
        rpm = target;
    }

    int speed() {
        return rpm;
    }
}
""",
    "Fan.java": """\
class Fan {
    Motor motor;
    int blades;

    Fan(int blades) {
        this.blades = blades;
        this.motor = new Motor();
    }

    void on() {
        motor.spin(900);
    }

    int airflow() {
        return motor.speed() * blades;
    }
}
""",
}


@pytest.fixture(scope="module")
def class_merged_p1():
    p = cm.parse_sources(CLASS_P1_SRC)
    (cand,) = inj.find_class_merge_candidates(p)
    assert (cand.absorber, cand.absorbed, cand.pattern) == ("Leaf", "Base", 1)
    return p, inj.merge_classes(p, cand)


class TestClassMergePattern1:

    def test_extends_clause_removed(self, class_merged_p1):
        _, res = class_merged_p1
        assert "extends" not in res.files["Leaf.java"]

    def test_members_copied_and_absorbed_class_gone(self, class_merged_p1):
        _, res = class_merged_p1
        assert "Base" not in res.project.classes
        leaf = res.project.classes["Leaf"]
        assert leaf.method_named("doubled") is not None
        assert leaf.field_named("shared") is not None
        assert "Base.java" not in res.files or "class Base" not in res.files.get("Base.java", "")

    def test_member_origin(self, class_merged_p1):
        _, res = class_merged_p1
        assert res.member_origin == {
            "Leaf.doubled": "absorbed",
            "Leaf.sum": "absorber",
        }

    def test_counts_are_additive(self, class_merged_p1):
        p, res = class_merged_p1
        before_a = mt.class_metrics(p.classes["Leaf"], p)
        before_b = mt.class_metrics(p.classes["Base"], p)
        after = mt.class_metrics(res.project.classes["Leaf"], res.project)
        assert after.NOM == before_a.NOM + before_b.NOM
        assert after.NOA == before_a.NOA + before_b.NOA


@pytest.fixture(scope="module")
def class_merged_p2():
    p = cm.parse_sources(CLASS_P2_SRC)
    (cand,) = inj.find_class_merge_candidates(p)
    assert (cand.absorber, cand.absorbed, cand.pattern) == ("Fan", "Motor", 2)
    return p, inj.merge_classes(p, cand)


class TestClassMergePattern2:

    def test_holder_field_and_construction_removed(self, class_merged_p2):
        _, res = class_merged_p2
        fan_src = res.files["Fan.java"]
        assert "Motor" not in fan_src
        assert "motor." not in fan_src

    def test_calls_become_local(self, class_merged_p2):
        _, res = class_merged_p2
        fan = res.project.classes["Fan"]
        on = fan.method_named("on")
        assert "spin(900);" in on.source
        assert "Fan.spin" in on.called_methods

    def test_field_count_drops_the_holder(self, class_merged_p2):
        p, res = class_merged_p2
        before_a = mt.class_metrics(p.classes["Fan"], p)
        before_b = mt.class_metrics(p.classes["Motor"], p)
        after = mt.class_metrics(res.project.classes["Fan"], res.project)
        assert after.NOA == before_a.NOA + before_b.NOA - 1
        assert after.NOM == before_a.NOM + before_b.NOM


CLASS_P2_RENAME_SRC = {
    "Store.java": """\
class Store {
    int count;

    int total() {
        return count;
    }
}
""",
    "Shop.java": """\
class Shop {
    Store store;
    int count;

    Shop() {
        this.store = new Store();
    }

    int stock() {
        return store.total() + count;
    }
}
""",
}


class TestClassMergeCollision:
    def test_absorbed_member_renamed(self):
        p = cm.parse_sources(CLASS_P2_RENAME_SRC)
        (cand,) = inj.find_class_merge_candidates(p)
        res = inj.merge_classes(p, cand)
        # `count` collides: the absorbed copy is renamed and the absorbed
        # method's reference follows the rename.
        assert res.renamed == {"count": "count_merged"}
        shop = res.project.classes["Shop"]
        assert shop.field_named("count_merged") is not None
        total = shop.method_named("total")
        assert "return count_merged;" in total.source
        # The absorber's own `count` is untouched.
        stock = shop.method_named("stock")
        assert "total() + count;" in stock.source


class TestClassMergeProperties:
    def test_every_candidate_round_trips(self, all_projects):
        for p in all_projects:
            cands = inj.find_class_merge_candidates(p)
            if p.name in CORPUS_NAMES:
                assert len(cands) == 2, p.name  # one per pattern, by design
            for cand in cands:
                res = inj.merge_classes(p, cand)
                assert res.project.resolved
                assert cand.absorbed not in res.project.classes
                merged = res.project.classes[res.class_id]
                # Every method of the merged class (constructors included,
                # mirroring the class-graph node set) carries an origin tag.
                assert set(res.member_origin) == {m.id for m in merged.methods}
                # The absorbed class name no longer appears anywhere.
                simple = cand.absorbed.rsplit(".", 1)[-1]
                for src in res.files.values():
                    assert simple not in src

    def test_counts_are_additive(self, all_projects):
        for p in all_projects:
            for cand in inj.find_class_merge_candidates(p):
                res = inj.merge_classes(p, cand)
                a = mt.class_metrics(p.classes[cand.absorber], p)
                b = mt.class_metrics(p.classes[cand.absorbed], p)
                after = mt.class_metrics(res.project.classes[res.class_id], res.project)
                assert after.NOM == a.NOM + b.NOM, cand
                assert after.NOA == a.NOA + b.NOA - (1 if cand.pattern == 2 else 0), cand


MOVE_P1_SRC = {
    "Animal.java": """\
class Animal {
    int weight;
}
""",
    "Dog.java": """\
class Dog extends Animal {
    boolean heavy() {
        return weight > 40;
    }

    boolean fits(int cap) {
        return heavy() && cap > 1;
    }
}
""",
}


MOVE_P2_SRC = {
    "Wallet.java": """\
class Wallet {
    int cents;

    int getCents() {
        return cents;
    }
}
""",
    "Shopper.java": """\
class Shopper {
    Wallet wallet;
    int visits;
    int coupons;

    boolean splurge() {
        int budget = wallet.getCents() / 100;
        return budget > visits + coupons;
    }

    void checkout() {
        boolean treat = splurge();
        if (treat) {
            visits = visits + 1;
        }
    }
}
""",
}


MOVE_P3_SRC = {
    "Meter.java": """\
class Meter {
    int units;

    int getUnits() {
        return units;
    }
}
""",
    "Biller.java": """\
class Biller {
    double rate;
    int cycles;

    double invoice(Meter meter) {
        double due = meter.getUnits() * rate;
        return due + cycles;
    }

    double monthly(Meter m) {
        return invoice(m) / 12.0;
    }
}
""",
}


class TestMovePattern1:
    def test_method_hoisted_verbatim(self):
        p = cm.parse_sources(MOVE_P1_SRC)
        cands = [c for c in inj.find_move_candidates(p) if c.pattern == 1]
        (cand,) = cands
        assert (cand.method, cand.target) == ("Dog.heavy", "Animal")
        res = inj.move_method(p, cand)
        assert res.back_reference is None
        animal = res.project.classes["Animal"]
        assert animal.method_named("heavy") is not None
        assert res.project.classes["Dog"].method_named("heavy") is None
        # Inherited dispatch keeps the caller working unchanged.
        fits = res.project.classes["Dog"].method_named("fits")
        assert "heavy()" in fits.source
        assert "Animal.heavy" in fits.called_methods

    def test_result_identifies_the_new_home(self):
        p = cm.parse_sources(MOVE_P1_SRC)
        (cand,) = [c for c in inj.find_move_candidates(p) if c.pattern == 1]
        res = inj.move_method(p, cand)
        assert res.method_id == "Animal.heavy"
        assert res.source_class == "Dog"
        assert res.target_class == "Animal"


@pytest.fixture(scope="module")
def moved_p2():
    p = cm.parse_sources(MOVE_P2_SRC)
    cands = [c for c in inj.find_move_candidates(p) if c.method == "Shopper.splurge"]
    (cand,) = cands
    assert cand.pattern == 2 and cand.target == "Wallet"
    return p, inj.move_method(p, cand)


class TestMovePattern2:

    def test_moved_body_uses_back_reference(self, moved_p2):
        _, res = moved_p2
        moved = res.project.method_by_id("Wallet.splurge")
        assert res.back_reference == "shopper"
        # Field access through the holder becomes a plain own access.
        assert "getCents() / 100" in moved.source
        assert "wallet." not in moved.source
        # Former own state routes through the back reference.
        assert "shopper.visits" in moved.source
        assert "shopper.coupons" in moved.source

    def test_back_reference_field_added(self, moved_p2):
        _, res = moved_p2
        wallet = res.project.classes["Wallet"]
        fld = wallet.field_named("shopper")
        assert fld is not None and fld.type_id == "Shopper"

    def test_call_site_rewritten(self, moved_p2):
        _, res = moved_p2
        checkout = res.project.method_by_id("Shopper.checkout")
        assert "wallet.splurge()" in checkout.source
        assert "Wallet.splurge" in checkout.called_methods

    def test_envy_after_move(self, moved_p2):
        _, res = moved_p2
        moved = res.project.method_by_id("Wallet.splurge")
        # visits + coupons are now foreign occurrences.
        assert mt.method_metrics(moved, res.project).NFDI == 2


@pytest.fixture(scope="module")
def moved_p3():
    p = cm.parse_sources(MOVE_P3_SRC)
    cands = [
        c for c in inj.find_move_candidates(p)
        if c.pattern == 3 and c.method == "Biller.invoice"
    ]
    (cand,) = cands
    assert (cand.target, cand.via) == ("Meter", "meter")
    return p, inj.move_method(p, cand)


class TestMovePattern3:

    def test_parameter_swapped_for_back_reference(self, moved_p3):
        _, res = moved_p3
        moved = res.project.method_by_id("Meter.invoice")
        assert "invoice(Biller biller)" in moved.source
        assert "getUnits() * biller.rate" in moved.source
        assert "biller.cycles" in moved.source

    def test_call_site_passes_this(self, moved_p3):
        _, res = moved_p3
        monthly = res.project.method_by_id("Biller.monthly")
        assert "m.invoice(this)" in monthly.source
        assert "Meter.invoice" in monthly.called_methods


class TestMoveProperties:
    def test_every_candidate_round_trips(self, all_projects):
        seen = 0
        for p in all_projects:
            for cand in inj.find_move_candidates(p):
                res = inj.move_method(p, cand)
                seen += 1
                assert res.project.resolved
                moved = res.project.method_by_id(res.method_id)
                assert moved is not None
                assert moved.owner == cand.target
                name = cand.method.rsplit(".", 1)[-1]
                old_home = res.project.classes[res.source_class]
                assert old_home.method_named(name) is None
        assert seen >= 25

    def test_pattern1_moves_verbatim(self, all_projects):
        for p in all_projects:
            for cand in inj.find_move_candidates(p):
                if cand.pattern != 1:
                    continue
                res = inj.move_method(p, cand)
                before = p.method_by_id(cand.method).source
                after = res.project.method_by_id(res.method_id).source
                assert before == after

    def test_back_reference_shape(self, all_projects):
        for p in all_projects:
            for cand in inj.find_move_candidates(p):
                res = inj.move_method(p, cand)
                if res.back_reference is None:
                    continue
                moved = res.project.method_by_id(res.method_id)
                if cand.pattern == 2:
                    fld = res.project.classes[cand.target].field_named(res.back_reference)
                    assert fld is not None and fld.type_id == res.source_class
                elif cand.pattern == 3:
                    assert moved.params[-1] == (
                        res.source_class.rsplit(".", 1)[-1],
                        res.back_reference,
                    )
