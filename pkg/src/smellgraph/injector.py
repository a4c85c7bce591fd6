"""Smell injection: inverse refactorings that manufacture labeled examples.

Three rewrite families, each the inverse of the refactoring we ultimately
want a model to recommend:

* ``merge_methods``   -- inline a callee into a caller (inverse of extract
  method).  The merged method is a synthetic *long method* whose callee-origin
  statements are the extraction opportunity.
* ``merge_classes``   -- absorb one class into another (inverse of extract
  class).  The merged class is a synthetic *large class* whose absorbed-origin
  members are the extraction opportunity.
* ``move_method``     -- relocate a method away from the data it uses
  (inverse of move method).  The moved method is a synthetic *feature envy*
  case whose original owner is the move-back target.

Candidates are discovered statically (``find_*_candidates``) and applied as
line-based source rewrites that must re-parse and re-resolve cleanly.  Every
rewrite returns an origin map so downstream samples carry exact node-level
labels.

``possibility_range`` buckets an entity by metric severity (PR1/PR2/PR3) and
``group_sample`` applies the fixed grouping rules that decide whether a
sample is auto-labeled (A group), routed to manual annotation (M group), or
discarded.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dfield

from . import codemodel as cm
from . import metrics as mx
from .errors import MergeUnsupportedError, MoveUnsupportedError

SMELLS = ("long_method", "large_class", "feature_envy")
PR1, PR2, PR3 = "PR1", "PR2", "PR3"
RANGES = (PR1, PR2, PR3)

_WORD = r"[A-Za-z_$][A-Za-z0-9_$]*"


# ---------------------------------------------------------------------------
# Possibility ranges and grouping


@dataclass
class RangeConfig:
    """Severity thresholds that carve each smell metric into PR1/PR2/PR3.

    ``long_method`` and ``feature_envy`` hold ``{"min": lo, "max": hi}`` over
    a single metric (method LOC, NFDI).  ``large_class`` holds per-metric
    bounds over NOA/NOM/LOC: a class is PR1 (clearly large) only when it
    exceeds every ``max`` bound and PR2 (clearly small) only when it is under
    every ``min`` bound.
    """

    long_method: dict = dfield(default_factory=lambda: {"min": 15, "max": 30})
    large_class: dict = dfield(
        default_factory=lambda: {
            "min": {"NOA": 5, "NOM": 7, "LOC": 70},
            "max": {"NOA": 10, "NOM": 10, "LOC": 130},
        }
    )
    feature_envy: dict = dfield(default_factory=lambda: {"min": 2, "max": 5})

    def to_json(self) -> dict:
        return {
            "long_method": dict(self.long_method),
            "large_class": {k: dict(v) for k, v in self.large_class.items()},
            "feature_envy": dict(self.feature_envy),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "RangeConfig":
        base = cls()
        if "long_method" in doc:
            base.long_method.update(doc["long_method"])
        if "feature_envy" in doc:
            base.feature_envy.update(doc["feature_envy"])
        for side in ("min", "max"):
            if side in doc.get("large_class", {}):
                base.large_class[side].update(doc["large_class"][side])
        return base

    @classmethod
    def load(cls, path: str) -> "RangeConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _bucket(value: float, lo: float, hi: float) -> str:
    """PR1 below ``lo``, PR2 in the closed band [lo, hi], PR3 above ``hi``."""
    if value < lo:
        return PR1
    if value > hi:
        return PR3
    return PR2


def possibility_range(p: cm.Project, entity, smell: str, cfg: RangeConfig | None = None) -> str:
    """Bucket `entity` into PR1 (clearly clean) / PR2 (gray) / PR3 (clearly smelly).

    For ``large_class`` the polarity is inverted by construction: PR1 means
    clearly *large* (all upper bounds exceeded) and PR2 clearly small.
    """
    cfg = cfg or RangeConfig()
    if smell == "long_method":
        return _bucket(
            mx.method_metrics(entity, p).LOC,
            cfg.long_method["min"],
            cfg.long_method["max"],
        )
    if smell == "feature_envy":
        return _bucket(
            mx.method_metrics(entity, p).NFDI,
            cfg.feature_envy["min"],
            cfg.feature_envy["max"],
        )
    if smell == "large_class":
        cmx = mx.class_metrics(entity, p)
        hi, lo = cfg.large_class["max"], cfg.large_class["min"]
        if cmx.LOC > hi["LOC"] and cmx.NOM > hi["NOM"] and cmx.NOA > hi["NOA"]:
            return PR1
        if cmx.LOC < lo["LOC"] and cmx.NOM < lo["NOM"] and cmx.NOA < lo["NOA"]:
            return PR2
        return PR3
    raise ValueError(f"unknown smell kind: {smell!r}")


def group_sample(smell: str, origin: str, prange: str, advisor_negative: bool | None = None):
    """Grouping rules: -> (group, label) where label is 1/0 for the A group
    and None for the M group; returns None when the sample is discarded.

    ``advisor_negative`` is consulted only for original long-method samples:
    a cheap rule-based detector must agree the method is clean before it can
    serve as an auto-labeled negative.
    """
    if smell not in SMELLS:
        raise ValueError(f"unknown smell kind: {smell!r}")
    if origin not in ("original", "injected"):
        raise ValueError(f"unknown origin: {origin!r}")
    if smell == "long_method":
        if origin == "injected":
            if prange == PR3:
                return ("A", 1)
            if prange == PR2:
                return ("M", None)
            return None
        if prange == PR3:
            return ("M", None)
        if advisor_negative is None:
            raise ValueError("original long-method grouping needs an advisor verdict")
        if advisor_negative:
            if prange == PR1:
                return ("A", 0)
            if prange == PR2:
                return ("M", None)
        return None
    if smell == "large_class":
        if origin == "injected":
            if prange == PR1:
                return ("A", 1)
            if prange == PR3:
                return ("M", None)
            return None
        if prange == PR2:
            return ("A", 0)
        return ("M", None)
    # feature envy
    if origin == "injected":
        if prange == PR3:
            return ("A", 1)
        if prange == PR2:
            return ("M", None)
        return None
    if prange == PR1:
        return ("A", 0)
    return ("M", None)


# ---------------------------------------------------------------------------
# Shared text-surgery helpers


def _lines(source: str) -> list:
    return source.split("\n")


def _indent_of(line: str) -> str:
    return line[: len(line) - len(line.lstrip())]


def _reindent(block: list, indent: str) -> list:
    """Strip the common leading whitespace of `block` and prepend `indent`."""
    stripped = [ln for ln in block if ln.strip()]
    if not stripped:
        return list(block)
    common = min(len(_indent_of(ln)) for ln in stripped)
    return [indent + ln[common:] if ln.strip() else "" for ln in block]


def _fresh(base: str, busy: set) -> str:
    name, k = base, 2
    while name in busy:
        name = f"{base}{k}"
        k += 1
    return name


def _tokens(text: str) -> set:
    return set(re.findall(_WORD, text))


def _subst(text: str, mapping: dict) -> str:
    """Simultaneously replace bare identifier tokens per `mapping`.

    Tokens preceded by ``.`` (member selection) are left alone, so only
    unqualified references are rewritten.
    """
    if not mapping:
        return text
    alt = "|".join(re.escape(k) for k in sorted(mapping, key=len, reverse=True))
    pattern = rf"(?<![\w$.])({alt})(?![\w$])"
    return re.sub(pattern, lambda m: mapping[m.group(1)], text)


def _prefix_members(text: str, names: set, prefix: str) -> str:
    """Qualify bare occurrences of member `names` with ``prefix.``."""
    if not names:
        return text
    alt = "|".join(re.escape(n) for n in sorted(names, key=len, reverse=True))
    pattern = rf"(?<![\w$.])({alt})(?![\w$])"
    return re.sub(pattern, lambda m: f"{prefix}.{m.group(1)}", text)


def _strip_qualifier(text: str, name: str, renames: dict | None = None) -> str:
    """Drop ``name.`` / ``this.name.`` qualifiers, leaving the member bare.

    When `renames` is given, the exposed member is mapped through it, so
    ``name.old`` becomes the renamed copy rather than a same-named local.
    """
    q = re.escape(name)
    pattern = rf"(?:\bthis\s*\.\s*{q}\s*\.\s*|(?<![\w$.]){q}\s*\.\s*)({_WORD})"

    def repl(m):
        member = m.group(1)
        return (renames or {}).get(member, member)

    return re.sub(pattern, repl, text)


def _paren(arg: str) -> str:
    """Parenthesize an argument unless it is a plain name/literal/selection."""
    if re.fullmatch(r"[\w$.]+", arg) or re.fullmatch(r'"[^"\\]*"', arg):
        return arg
    return f"({arg})"


def _split_args(argtext: str) -> list:
    """Split an argument list at top-level commas."""
    args, depth, start = [], 0, 0
    i, n = 0, len(argtext)
    while i < n:
        ch = argtext[i]
        if ch in "\"'":
            quote = ch
            i += 1
            while i < n and argtext[i] != quote:
                i += 2 if argtext[i] == "\\" else 1
            i += 1
            continue
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            args.append(argtext[start:i].strip())
            start = i + 1
        i += 1
    tail = argtext[start:].strip()
    if tail or args:
        args.append(tail)
    return args


def _find_calls(text: str, name: str) -> list:
    """Locate ``[receiver.]name( ... )`` occurrences in `text`.

    Returns (start, end, receiver, args) tuples where `end` is one past the
    closing parenthesis and `receiver` is the dotted prefix without its
    trailing dot ("" for unqualified calls).
    """
    out = []
    pattern = rf"((?:{_WORD}\s*\.\s*)*)({re.escape(name)})\s*\("
    for m in re.finditer(pattern, text):
        start = m.start(1) if m.group(1) else m.start(2)
        before = text[:start].rstrip()
        if before.endswith("."):
            continue  # receiver is a complex expression; leave it alone
        if re.search(r"\bnew\s*$", before):
            continue  # constructor invocation, not a method call
        open_idx = text.index("(", m.end(2))
        depth, i = 0, open_idx
        while i < len(text):
            ch = text[i]
            if ch in "\"'":
                quote = ch
                i += 1
                while i < len(text) and text[i] != quote:
                    i += 2 if text[i] == "\\" else 1
            elif ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    break
            i += 1
        if depth != 0:
            continue
        receiver = re.sub(r"\s+", "", m.group(1)).rstrip(".")
        args = _split_args(text[open_idx + 1 : i])
        out.append((start, i + 1, receiver, args))
    return out


def _single_line(stmt: cm.Statement) -> bool:
    return stmt.span[0] == stmt.span[1]


def _interior(entity_span: tuple) -> tuple | None:
    """Line span strictly between an entity's header line and closing brace."""
    start, end = entity_span[0] + 1, entity_span[1] - 1
    return (start, end) if start <= end else None


def _member_names(p: cm.Project, cls: cm.ClassEntity, include_inherited: bool = True) -> set:
    names = {f.name for f in cls.fields} | {m.name for m in cls.methods if not m.is_ctor}
    if include_inherited:
        for anc in p.ancestors(cls):
            names |= {f.name for f in anc.fields}
            names |= {m.name for m in anc.methods if not m.is_ctor}
    return names


def _local_names(m: cm.MethodEntity, p: cm.Project) -> set:
    """Names declared as locals inside `m` (declaration defs minus fields)."""
    cls = p.classes[m.owner]
    field_names = {f.name for f in cls.fields}
    for anc in p.ancestors(cls):
        field_names |= {f.name for f in anc.fields}
    declared = set()
    for s in m.statements:
        if s.syntax in ("decl", "foreach", "for", "try"):
            declared |= s.defs
    return (declared - field_names) - set(m.param_names)


def _class_simple_index(p: cm.Project) -> dict:
    index = {}
    for cls in p.class_list:
        index.setdefault(cls.name, cls.id)
    return index


def _type_of_name(p: cm.Project, caller: cm.MethodEntity, name: str) -> str | None:
    """Internal class id of local/param/field `name` visible in `caller`."""
    for (ptype, pname), tid in zip(caller.params, caller.param_type_ids):
        if pname == name:
            return tid
    simple = _class_simple_index(p)
    for s in caller.statements:
        if s.syntax == "decl" and s.raw is not None and s.raw.type is not None:
            for dname, _ in s.raw.declarators:
                if dname == name:
                    return simple.get(s.raw.type.simple) if s.raw.type.dims == 0 else None
        if s.syntax == "foreach" and s.raw is not None and s.raw.var == name:
            return simple.get(s.raw.type.simple) if s.raw.type and s.raw.type.dims == 0 else None
    cls = p.classes[caller.owner]
    chain = [cls] + list(p.ancestors(cls))
    for c in chain:
        for f in c.fields:
            if f.name == name:
                return f.type_id
    return None


# ---------------------------------------------------------------------------
# Method merging (inverse extract-method)


@dataclass
class MergeCandidate:
    caller: str  # method id
    callee: str  # method id
    pattern: int  # 1 bare call, 2 assignment from return, 3 nested call
    site: str  # statement id of the call site in the caller
    receiver: str = ""  # receiver text, "" for same-class calls


@dataclass
class MergeResult:
    files: dict  # path -> rewritten source
    project: cm.Project  # re-parsed, re-resolved
    method_id: str  # the merged (caller) method
    callee_id: str
    pattern: int
    origin: dict  # statement id -> "caller" | "callee"
    inserted_span: tuple | None  # line span of the inlined block, or None


def _callee_shape(p: cm.Project, callee: cm.MethodEntity):
    """(kind, return stmt | None) when `callee` can be inlined, else None.

    kind "void": no return statements at all; kind "value": exactly one
    return, final and top-level.  Callees that throw, recurse, reassign a
    parameter, or contain lambdas are rejected -- plain textual substitution
    would not preserve meaning for them.
    """
    if callee.is_ctor or callee.is_abstract:
        return None
    if callee.id in callee.called_methods:
        return None
    if "->" in callee.source:
        return None
    returns = [s for s in callee.statements if s.syntax == "return"]
    if any(s.syntax == "throw" for s in callee.statements):
        return None
    pnames = set(callee.param_names)
    for s in callee.statements:
        if s.defs & pnames:
            return None
    if callee.body:
        if callee.body[0].span[0] <= callee.span[0]:
            return None
        if callee.body[-1].span[1] >= callee.span[1]:
            return None
    if not returns:
        return ("void", None) if callee.return_type == "void" else None
    final = callee.body[-1] if callee.body else None
    if (
        len(returns) == 1
        and final is returns[0]
        and _single_line(final)
        and callee.return_type not in (None, "void")
        and re.match(r"return\b\s*\S", final.text.strip())
    ):
        return ("value", final)
    return None


def _site_call_node(stmt: cm.Statement, name: str):
    """The unique MethodCall node named `name` in `stmt`, or None."""
    from . import javaparse as jp

    found = []

    def walk(node):
        if node is None or isinstance(node, (str, int, float, jp.Lambda)):
            return
        if isinstance(node, jp.MethodCall):
            if node.name == name:
                found.append(node)
            walk(node.receiver)
            for a in node.args:
                walk(a)
            return
        for attr in ("target", "value", "operand", "left", "right", "cond",
                     "then", "other", "expr", "array", "index", "receiver",
                     "init", "iterable"):
            walk(getattr(node, attr, None))
        for a in getattr(node, "args", []) or []:
            walk(a)
        for item in getattr(node, "items", []) or []:
            walk(item)
        for _, init in getattr(node, "declarators", []) or []:
            walk(init)

    raw = stmt.raw
    if raw is None:
        return None
    walk(getattr(raw, "expr", None))
    for _, init in getattr(raw, "declarators", []) or []:
        walk(init)
    return found[0] if len(found) == 1 else None


def _classify_site(stmt: cm.Statement, call_node) -> int | None:
    """Merge pattern implied by where the call sits inside `stmt`."""
    from . import javaparse as jp

    raw = stmt.raw
    if stmt.syntax == "expr":
        if raw.expr is call_node:
            return 1
        if (
            isinstance(raw.expr, jp.Assign)
            and raw.expr.op == "="
            and raw.expr.value is call_node
            and isinstance(raw.expr.target, jp.Name)
        ):
            return 2
        return 3
    if stmt.syntax == "decl":
        if len(raw.declarators) == 1 and raw.declarators[0][1] is call_node:
            return 2
        return 3
    if stmt.syntax == "return":
        return 3
    return None


def find_method_merge_candidates(p: cm.Project, cfg: RangeConfig | None = None) -> list:
    """Enumerate (caller, callee, pattern, site) tuples eligible for inlining.

    Call sites must be single-line simple statements whose only internal call
    is the candidate callee; receivers must be absent (same class) or a plain
    name of an internal type so member references can be re-qualified.
    """
    out = []
    shapes = {}
    for cls, m in p.iter_methods():
        shapes[m.id] = _callee_shape(p, m)
    for cls, caller in p.iter_methods():
        if caller.is_ctor or caller.is_abstract:
            continue
        for stmt in caller.statements:
            if stmt.syntax not in ("expr", "decl", "return"):
                continue
            if not _single_line(stmt) or len(stmt.calls) != 1:
                continue
            callee_id = stmt.calls[0]
            if callee_id == caller.id:
                continue
            callee = p.method_by_id(callee_id)
            shape = shapes.get(callee_id)
            if callee is None or shape is None:
                continue
            kind, _ = shape
            node = _site_call_node(stmt, callee.name)
            if node is None:
                continue
            line_hits = _find_calls(stmt.text, callee.name)
            if len(line_hits) != 1:
                continue
            from . import javaparse as jp

            receiver = ""
            if node.receiver is not None and not isinstance(node.receiver, jp.This):
                if not isinstance(node.receiver, jp.Name):
                    continue
                receiver = node.receiver.id
                if _type_of_name(p, caller, receiver) != callee.owner:
                    continue
            elif callee.owner != caller.owner and callee.owner not in {
                a.id for a in p.ancestors(cls)
            }:
                continue
            pattern = _classify_site(stmt, node)
            if pattern is None:
                continue
            if pattern == 1 and kind != "void":
                continue
            if pattern in (2, 3) and kind != "value":
                continue
            if len(node.args) != len(callee.params):
                continue
            out.append(
                MergeCandidate(
                    caller=caller.id,
                    callee=callee_id,
                    pattern=pattern,
                    site=stmt.id,
                    receiver=receiver,
                )
            )
    return out


def merge_methods(p: cm.Project, cand: MergeCandidate) -> MergeResult:
    """Inline the candidate callee at its call site and re-resolve.

    * pattern 1: the bare call statement is replaced by the callee body.
    * pattern 2: the body is inserted and the final ``return expr`` becomes
      an assignment to the call site's target.
    * pattern 3: the body is inserted, the return value lands in a fresh
      temporary, and the nested call is replaced by that temporary.

    Callee locals are renamed on collision; parameters are substituted by
    the (parenthesized) argument texts; cross-class member references are
    re-qualified through the receiver.
    """
    caller = p.method_by_id(cand.caller)
    callee = p.method_by_id(cand.callee)
    if caller is None or callee is None:
        raise MergeUnsupportedError("unknown caller or callee")
    shape = _callee_shape(p, callee)
    if shape is None:
        raise MergeUnsupportedError(f"{cand.callee} cannot be inlined")
    kind, ret_stmt = shape
    site = next((s for s in caller.statements if s.id == cand.site), None)
    if site is None or not _single_line(site):
        raise MergeUnsupportedError(f"call site {cand.site} not found or multi-line")

    caller_cls = p.classes[caller.owner]
    callee_cls = p.classes[callee.owner]
    caller_src = p.files[caller_cls.file_path]
    callee_src = p.files[callee_cls.file_path]

    # Callee body block, minus the final return when a value is produced.
    inner = _interior(callee.span)
    body_lines = _lines(callee_src)[inner[0] - 1 : inner[1]] if inner else []
    ret_expr = None
    if kind == "value":
        ret_expr = re.match(r"return\b\s*(.*);\s*$", ret_stmt.text.strip(), re.S).group(1)
        ret_expr = " ".join(ret_expr.split())
        keep = ret_stmt.span[0] - inner[0]
        trailing = body_lines[keep + (ret_stmt.span[1] - ret_stmt.span[0] + 1) :]
        if any(ln.strip() for ln in trailing):
            raise MergeUnsupportedError("code after the final return")
        body_lines = body_lines[:keep]

    # Cross-class: qualify the callee's own member references via the receiver.
    cross = cand.receiver != ""
    if cross:
        shadow = set(callee.param_names) | _local_names(callee, p)
        members = _member_names(p, callee_cls) - shadow
        body_lines = [_prefix_members(ln, members, cand.receiver) for ln in body_lines]
        body_lines = [re.sub(r"(?<![\w$.])this(?![\w$])", cand.receiver, ln) for ln in body_lines]
        if ret_expr is not None:
            ret_expr = _prefix_members(ret_expr, members, cand.receiver)
            ret_expr = re.sub(r"(?<![\w$.])this(?![\w$])", cand.receiver, ret_expr)

    # Parameter -> argument substitution plus collision renames, in one pass.
    site_line = _lines(caller_src)[site.span[0] - 1]
    hits = _find_calls(site_line, callee.name)
    if len(hits) != 1:
        raise MergeUnsupportedError("could not locate the call on the site line")
    start, end, _, args = hits[0]
    if len(args) != len(callee.params):
        raise MergeUnsupportedError("argument count mismatch at the call site")
    caller_busy = _tokens(caller.source) | set(caller.param_names)
    mapping = {pname: _paren(arg) for (_, pname), arg in zip(callee.params, args)}
    busy = caller_busy | _tokens(callee.source) | set(p.classes)
    for local in sorted(_local_names(callee, p)):
        if local in caller_busy:
            mapping[local] = _fresh(local, busy)
            busy.add(mapping[local])
    body_lines = [_subst(ln, mapping) for ln in body_lines]
    if ret_expr is not None:
        ret_expr = _subst(ret_expr, mapping)

    # Assemble the replacement block at the call site's indentation.
    indent = _indent_of(site_line)
    block = _reindent(body_lines, indent)
    if cand.pattern == 2:
        block.append(site_line[:start] + ret_expr + site_line[end:])
    elif cand.pattern == 3:
        temp = _fresh(callee.name + "Result", busy)
        block.append(f"{indent}{callee.return_type} {temp} = {ret_expr};")
        block.append(site_line[:start] + temp + site_line[end:])

    new_src = cm.rewrite_source(caller_src, [(site.span, "\n".join(block))])
    files = dict(p.files)
    files[caller_cls.file_path] = new_src
    merged = cm.parse_sources(files, name=p.name)
    merged_method = merged.method_by_id(caller.id)
    if merged_method is None:
        raise MergeUnsupportedError("merged method vanished after rewrite")

    inserted = (site.span[0], site.span[0] + len(block) - 1) if block else None
    origin = {}
    for s in merged_method.statements:
        inside = inserted is not None and inserted[0] <= s.span[0] <= inserted[1]
        origin[s.id] = "callee" if inside else "caller"
    return MergeResult(
        files=files,
        project=merged,
        method_id=caller.id,
        callee_id=callee.id,
        pattern=cand.pattern,
        origin=origin,
        inserted_span=inserted,
    )


# ---------------------------------------------------------------------------
# Class merging (inverse extract-class)


@dataclass
class ClassMergeCandidate:
    absorber: str  # class id that receives the members
    absorbed: str  # class id that disappears
    pattern: int  # 1 parent into sole subclass, 2 field-type class into user
    field: str | None = None  # absorbing field id for pattern 2


@dataclass
class ClassMergeResult:
    files: dict
    project: cm.Project
    class_id: str  # the merged (absorber) class
    absorbed_id: str
    pattern: int
    member_origin: dict  # method id in merged class -> "absorber" | "absorbed"
    renamed: dict  # old member name -> new name, for collision renames


def _class_reference_index(p: cm.Project) -> dict:
    """class id -> set of class ids that reference it (types, news, members)."""
    refs = {cls.id: set() for cls in p.class_list}

    def note(target, source_cls):
        if target in refs and target != source_cls:
            refs[target].add(source_cls)

    simple = _class_simple_index(p)
    for cls in p.class_list:
        if cls.superclass_id:
            note(cls.superclass_id, cls.id)
        for f in cls.fields:
            if f.type_id:
                note(f.type_id, cls.id)
        for m in cls.methods:
            for tid in m.param_type_ids:
                if tid:
                    note(tid, cls.id)
            if m.return_type_id:
                note(m.return_type_id, cls.id)
            for fid in m.accessed_fields:
                note(fid.rsplit(".", 1)[0], cls.id)
            for mid in m.called_methods:
                note(mid.rsplit(".", 1)[0], cls.id)
            for cls_id, _ in m.foreign_data:
                note(cls_id, cls.id)
        for name in re.findall(rf"\bnew\s+({_WORD})\s*\(", cls.source):
            tid = simple.get(name)
            if tid:
                note(tid, cls.id)
        for name, tid in simple.items():
            if tid != cls.id and re.search(rf"(?<![\w$.]){name}(?![\w$])", cls.source):
                note(tid, cls.id)
    return refs


def _new_assignment_statements(absorber: cm.ClassEntity, fname: str, bname: str) -> list:
    """Whole statements of the form ``[this.]fname = new Bname(...);``."""
    pattern = re.compile(
        rf"^(?:this\s*\.\s*)?{re.escape(fname)}\s*=\s*new\s+{re.escape(bname)}\s*\(.*\)\s*;$"
    )
    hits = []
    for m in absorber.methods:
        for s in m.statements:
            if s.syntax == "expr" and pattern.match(" ".join(s.text.split())):
                hits.append(s)
    return hits


def find_class_merge_candidates(p: cm.Project) -> list:
    """Pairs of classes that can be merged without dangling references.

    Pattern 1: an internal parent with exactly one internal subclass and no
    other users folds into that subclass.  Pattern 2: a class referenced only
    through a single field of one user class folds into the user.
    """
    refs = _class_reference_index(p)
    out = []
    for absorbed in p.class_list:
        if absorbed.is_interface or absorbed.implements or absorbed.nested:
            continue
        if "." in absorbed.id and absorbed.id.rsplit(".", 1)[0] in p.classes:
            continue  # nested classes stay put
        subclasses = [c for c in p.class_list if c.superclass_id == absorbed.id]
        users = refs[absorbed.id]
        # Pattern 1 -- parent into its sole subclass.
        if len(subclasses) == 1 and not subclasses[0].is_interface:
            child = subclasses[0]
            if (
                users <= {child.id}
                and child.file_path != absorbed.file_path
                and not re.search(rf"\bnew\s+{re.escape(absorbed.name)}\s*\(", child.source)
                and not re.search(r"(?<![\w$.])super(?![\w$])", child.source)
                and not (
                    _member_names(p, absorbed, include_inherited=False)
                    & _member_names(p, child, include_inherited=False)
                )
            ):
                out.append(
                    ClassMergeCandidate(absorber=child.id, absorbed=absorbed.id, pattern=1)
                )
        # Pattern 2 -- field-type class into its only user.
        if absorbed.superclass_id or subclasses:
            continue
        if len(users) != 1:
            continue
        user = p.classes[next(iter(users))]
        if user.file_path == absorbed.file_path:
            continue
        holders = [f for f in user.fields if f.type_id == absorbed.id]
        if len(holders) != 1:
            continue
        f = holders[0]
        if sum(1 for fl in user.fields if fl.span == f.span) != 1:
            continue  # shares a declaration line with other fields
        # The absorbed type may appear only as that field plus its `new`
        # initializations; signatures mentioning it would dangle.
        if any(tid == absorbed.id for m in user.methods for tid in m.param_type_ids):
            continue
        if any(m.return_type_id == absorbed.id for m in user.methods):
            continue
        news = re.findall(rf"\bnew\s+{re.escape(absorbed.name)}\s*\(", user.source)
        assigns = _new_assignment_statements(user, f.name, absorbed.name)
        field_line = _lines(p.files[user.file_path])[f.span[0] - 1]
        inits_on_field = len(re.findall(rf"\bnew\s+{re.escape(absorbed.name)}\s*\(", field_line))
        if len(news) != len(assigns) + inits_on_field:
            continue
        # Bare uses of the field (passing it around) cannot be rewritten away.
        body = "\n".join(
            ln
            for i, ln in enumerate(_lines(p.files[user.file_path]), start=1)
            if user.span[0] <= i <= user.span[1]
            and i != f.span[0]
            and all(i < s.span[0] or i > s.span[1] for s in assigns)
        )
        if re.search(rf"(?<![\w$.]){re.escape(f.name)}(?![\w$])(?!\s*\.)", body):
            continue
        out.append(
            ClassMergeCandidate(absorber=user.id, absorbed=absorbed.id, pattern=2, field=f.id)
        )
    return out


def _member_block(p: cm.Project, cls: cm.ClassEntity) -> list:
    """Interior lines of `cls` with constructor declarations removed."""
    src = _lines(p.files[cls.file_path])
    inner = _interior(cls.span)
    if inner is None:
        return []
    keep = []
    ctor_spans = [m.span for m in cls.methods if m.is_ctor]
    for i in range(inner[0], inner[1] + 1):
        if any(s <= i <= e for s, e in ctor_spans):
            continue
        keep.append(src[i - 1])
    while keep and not keep[0].strip():
        keep.pop(0)
    while keep and not keep[-1].strip():
        keep.pop()
    return keep


def _rename_in_block(block: list, renames: dict) -> list:
    """Apply member renames to copied text, both bare and this-qualified."""
    if not renames:
        return block
    out = []
    for ln in block:
        ln = _subst(ln, renames)
        for old, new in renames.items():
            ln = re.sub(rf"\bthis\s*\.\s*{re.escape(old)}(?![\w$])", f"this.{new}", ln)
        out.append(ln)
    return out


def merge_classes(p: cm.Project, cand: ClassMergeCandidate) -> ClassMergeResult:
    """Fold the absorbed class's members into the absorber and re-resolve.

    Constructors of the absorbed class are not copied.  Colliding member
    names gain a ``_merged`` suffix and references inside the copied block
    are rewritten to match.  Pattern 2 additionally drops the absorbing
    field and its ``new`` assignments and un-qualifies ``field.member``
    accesses throughout the absorber.
    """
    absorber = p.classes.get(cand.absorber)
    absorbed = p.classes.get(cand.absorbed)
    if absorber is None or absorbed is None:
        raise MergeUnsupportedError("unknown class in merge candidate")
    src_lines = _lines(p.files[absorber.file_path])
    header_line = src_lines[absorber.span[0] - 1]
    if not header_line.rstrip().endswith("{"):
        raise MergeUnsupportedError("absorber header must end with an opening brace")

    absorber_names = _member_names(p, absorber, include_inherited=False)
    if cand.pattern == 1:
        absorber_names -= _member_names(p, absorbed, include_inherited=True)
    renames = {}
    busy = _tokens(absorber.source) | _tokens(absorbed.source)
    copied_fields, copied_methods = [], []
    for f in absorbed.fields:
        new = f.name
        if new in absorber_names:
            new = _fresh(f.name + "_merged", busy)
            renames[f.name] = new
            busy.add(new)
        copied_fields.append(new)
    for m in absorbed.methods:
        if m.is_ctor:
            continue
        new = m.name
        if new in absorber_names:
            new = _fresh(m.name + "_merged", busy)
            renames[m.name] = new
            busy.add(new)
        copied_methods.append(new)

    indent = "    "
    for member in sorted(absorber.fields + list(absorber.methods), key=lambda e: e.span[0]):
        member_line = src_lines[member.span[0] - 1]
        if member_line.strip():
            indent = _indent_of(member_line)
            break
    block = _reindent(_rename_in_block(_member_block(p, absorbed), renames), indent)

    edits = []
    new_header = header_line
    if cand.pattern == 1:
        # The child stops extending the absorbed parent and inherits its
        # extends clause instead.
        if absorbed.implements:
            raise MergeUnsupportedError("absorbed parent implements interfaces")
        replacement = f" extends {absorbed.superclass}" if absorbed.superclass else ""
        new_header = re.sub(
            rf"\s+extends\s+{re.escape(absorbed.name)}(?![\w$])", replacement, header_line
        )
        if new_header == header_line:
            raise MergeUnsupportedError("child header does not extend the absorbed parent")
    edits.append(((absorber.span[0], absorber.span[0]), "\n".join([new_header] + block + [""])))

    if cand.pattern == 2:
        f = next(fl for fl in absorber.fields if fl.id == cand.field)
        edits.append((f.span, ""))
        assigns = _new_assignment_statements(absorber, f.name, absorbed.name)
        for s in assigns:
            edits.append((s.span, ""))
        cleared = {f.span[0]} | {
            i for s in assigns for i in range(s.span[0], s.span[1] + 1)
        } | {absorber.span[0]}
        for i in range(absorber.span[0], absorber.span[1] + 1):
            if i in cleared:
                continue
            line = src_lines[i - 1]
            stripped = _strip_qualifier(line, f.name, renames)
            if stripped != line:
                edits.append(((i, i), stripped))

    new_src = cm.rewrite_source(p.files[absorber.file_path], edits)
    files = dict(p.files)
    files[absorber.file_path] = new_src
    if absorbed.file_path == absorber.file_path:
        raise MergeUnsupportedError("absorber and absorbed must live in separate files")
    others = [
        c for c in p.class_list if c.file_path == absorbed.file_path and c.id != absorbed.id
    ]
    if others:
        files[absorbed.file_path] = cm.rewrite_source(
            p.files[absorbed.file_path], [(absorbed.span, "")]
        )
    else:
        del files[absorbed.file_path]

    merged = cm.parse_sources(files, name=p.name)
    merged_cls = merged.classes.get(absorber.id)
    if merged_cls is None:
        raise MergeUnsupportedError("merged class vanished after rewrite")
    absorbed_final = {renames.get(n, n) for n in copied_methods}
    member_origin = {}
    for m in merged_cls.methods:
        member_origin[m.id] = "absorbed" if m.name in absorbed_final else "absorber"
    return ClassMergeResult(
        files=files,
        project=merged,
        class_id=absorber.id,
        absorbed_id=absorbed.id,
        pattern=cand.pattern,
        member_origin=member_origin,
        renamed=renames,
    )


# ---------------------------------------------------------------------------
# Method moving (inverse move-method)


@dataclass
class MoveCandidate:
    method: str  # method id to move
    target: str  # class id that receives it
    pattern: int  # 1 to parent, 2 to accessed property class, 3 to parameter class
    via: str | None = None  # field id (2) or parameter name (3)


@dataclass
class MoveResult:
    files: dict
    project: cm.Project
    method_id: str  # id of the method at its new home
    source_class: str  # original owner class id
    target_class: str
    pattern: int
    back_reference: str | None  # name of the added back-reference, if any


def _internal_callers(p: cm.Project, m: cm.MethodEntity) -> list:
    """(method, statement) pairs that invoke `m` from anywhere internal."""
    sites = []
    for _, other in p.iter_methods():
        if other.id == m.id:
            continue
        for s in other.statements:
            if m.id in s.calls:
                sites.append((other, s))
    return sites


def find_move_candidates(p: cm.Project) -> list:
    """Methods that can relocate to another internal class.

    Pattern 1 moves a method that touches nothing subclass-specific up to
    its parent.  Pattern 2 moves a method into the class of a field it
    accesses; pattern 3 into the class of one of its parameters.  Targets
    must be internal, collision-free, and -- for patterns 2 and 3 -- all
    internal callers must sit in the source class so call sites can be
    rewritten through the field / argument.
    """
    out = []
    for cls, m in p.iter_methods():
        if m.is_ctor or m.is_abstract or "static" in m.modifiers:
            continue
        if m.id in m.called_methods:
            continue
        if "->" in m.source or not _single_line_signature(p, m):
            continue
        own_field_owners = {fid.rsplit(".", 1)[0] for fid in m.own_fields_used}
        own_called = {
            mid for mid in m.called_methods if mid.rsplit(".", 1)[0] == cls.id and mid != m.id
        }
        callers = _internal_callers(p, m)
        same_class_sites = all(caller.owner == cls.id for caller, _ in callers)
        plain_sites = all(
            _single_line(s) and len(_find_calls(s.text, m.name)) == 1 for _, s in callers
        )
        # Pattern 1 -- up to the parent.
        parent_id = cls.superclass_id
        if parent_id:
            parent = p.classes[parent_id]
            chain = {a.id for a in p.ancestors(cls)}
            if (
                not parent.is_interface
                and parent.file_path != cls.file_path
                and m.name not in _member_names(p, parent)
                and own_field_owners <= chain
                and not own_called
                and not re.search(r"(?<![\w$.])(this|super)(?![\w$])", m.source)
            ):
                out.append(MoveCandidate(method=m.id, target=parent_id, pattern=1))
        # Pattern 2 -- into the class of an accessed field.
        seen_types = set()
        for fid in sorted(m.own_fields_used):
            f = next((fl for owner in [cls] + list(p.ancestors(cls))
                      for fl in owner.fields if fl.id == fid), None)
            if f is None or not f.type_id or f.type_id in seen_types:
                continue
            seen_types.add(f.type_id)
            target = p.classes[f.type_id]
            if (
                target.id != cls.id
                and not target.is_interface
                and target.file_path != cls.file_path
                and m.name not in _member_names(p, target)
                and same_class_sites
                and plain_sites
                and not any(f.name in s.defs for s in m.statements)
            ):
                out.append(
                    MoveCandidate(method=m.id, target=target.id, pattern=2, via=f.id)
                )
        # Pattern 3 -- into the class of a parameter.
        for (ptype, pname), tid in zip(m.params, m.param_type_ids):
            if not tid or tid == cls.id:
                continue
            target = p.classes[tid]
            if target.is_interface or target.file_path == cls.file_path:
                continue
            if m.name in _member_names(p, target):
                continue
            if any(pname in s.defs for s in m.statements):
                continue
            if not same_class_sites:
                continue
            if not _rewritable_call_sites(p, m, callers, pname):
                continue
            out.append(MoveCandidate(method=m.id, target=tid, pattern=3, via=pname))
    return out


def _single_line_signature(p: cm.Project, m: cm.MethodEntity) -> bool:
    first = _lines(m.source)[0]
    return first.count("(") >= 1 and first.count(")") >= first.count("(")


def _rewritable_call_sites(p, m, callers, pname) -> bool:
    """Every call site must pass a plain name for the moved parameter."""
    idx = m.param_names.index(pname)
    for caller, stmt in callers:
        if not _single_line(stmt):
            return False
        hits = _find_calls(stmt.text, m.name)
        if len(hits) != 1:
            return False
        _, _, _, args = hits[0]
        if len(args) != len(m.params):
            return False
        if not re.fullmatch(rf"(?:this\s*\.\s*)?{_WORD}", args[idx]):
            return False
    return True


def _insert_into_class(source: str, cls: cm.ClassEntity, block: list) -> str:
    """Insert `block` lines just before the class's closing brace."""
    close = _lines(source)[cls.span[1] - 1]
    return cm.rewrite_source(
        source, [((cls.span[1], cls.span[1]), "\n".join([""] + block + [close]))]
    )


def _member_indent(p: cm.Project, cls: cm.ClassEntity) -> str:
    src = _lines(p.files[cls.file_path])
    for member in cls.fields + list(cls.methods):
        line = src[member.span[0] - 1]
        if line.strip():
            return _indent_of(line)
    return "    "


def move_method(p: cm.Project, cand: MoveCandidate) -> MoveResult:
    """Relocate the candidate method into its target class and re-resolve.

    Pattern 1 is a verbatim move (inheritance keeps call sites valid).
    Patterns 2 and 3 strip the moved accessor/parameter qualifier, qualify
    remaining old-owner members through a back-reference (a field for
    pattern 2, an appended parameter for pattern 3), and rewrite internal
    call sites accordingly.
    """
    m = p.method_by_id(cand.method)
    if m is None:
        raise MoveUnsupportedError(f"unknown method {cand.method}")
    cls = p.classes[m.owner]
    target = p.classes.get(cand.target)
    if target is None:
        raise MoveUnsupportedError(f"target class {cand.target} is not internal")
    if m.name in _member_names(p, target):
        raise MoveUnsupportedError("name collision in the target class")
    if cls.file_path == target.file_path:
        raise MoveUnsupportedError("source and target must live in separate files")

    block = _lines(m.source)
    back_ref = None
    field_decl = None
    callers = _internal_callers(p, m)

    if cand.pattern == 1:
        pass  # verbatim
    else:
        shadow = set(m.param_names) | _local_names(m, p)
        own_members = _member_names(p, cls) - shadow - {m.name}
        uses_this = bool(re.search(r"(?<![\w$.])this(?![\w$])", m.source))
        if cand.pattern == 2:
            f = next((fl for owner in [cls] + list(p.ancestors(cls))
                      for fl in owner.fields if fl.id == cand.via), None)
            if f is None:
                raise MoveUnsupportedError("absorbing field not found")
            qualifier = f.name
            own_members -= {f.name}
        else:
            qualifier = cand.via
            if qualifier not in m.param_names:
                raise MoveUnsupportedError("moved parameter not found")
        needs_back = bool(own_members & _tokens(m.source)) or uses_this or bool(
            m.own_fields_used - ({cand.via} if cand.pattern == 2 else set())
        )
        if needs_back:
            busy = _tokens(m.source) | _tokens(target.source) | _member_names(p, target)
            back_ref = _fresh(cls.name[0].lower() + cls.name[1:], busy)

        def rewrite(line: str) -> str:
            # Old-owner members first, while `this` still means the old owner.
            line = re.sub(
                rf"\bthis\s*\.\s*{re.escape(qualifier)}\s*\.\s*", "", line
            )
            if back_ref:
                line = re.sub(r"(?<![\w$.])this\s*\.\s*", back_ref + ".", line)
                line = re.sub(r"(?<![\w$.])this(?![\w$])", back_ref, line)
                line = _prefix_members(line, own_members & _tokens(m.source), back_ref)
            line = re.sub(rf"(?<![\w$.]){re.escape(qualifier)}\s*\.\s*", "", line)
            if cand.pattern == 3:
                line = re.sub(rf"(?<![\w$.]){re.escape(qualifier)}(?![\w$])", "this", line)
            else:
                line = re.sub(
                    rf"(?<![\w$.]){re.escape(qualifier)}(?![\w$])",
                    f"{back_ref}.{qualifier}" if back_ref else qualifier,
                    line,
                )
            return line

        sig = block[0]
        body = [rewrite(ln) for ln in block[1:]]
        if cand.pattern == 3:
            open_idx = sig.index("(")
            close_idx = sig.rindex(")")
            params = _split_args(sig[open_idx + 1 : close_idx])
            idx = m.param_names.index(qualifier)
            params = params[:idx] + params[idx + 1 :]
            if back_ref:
                params.append(f"{cls.name} {back_ref}")
            sig = sig[: open_idx + 1] + ", ".join(params) + sig[close_idx:]
        block = [sig] + body
        if cand.pattern == 2 and back_ref:
            field_decl = f"{cls.name} {back_ref};"

    # Rewrite call sites in the source class's file (patterns 2 and 3).
    src_file_lines = _lines(p.files[cls.file_path])
    edits = [(m.span, "")]
    if cand.pattern in (2, 3):
        for caller, stmt in callers:
            if caller.owner != cls.id:
                raise MoveUnsupportedError("cross-class caller cannot be rewritten")
            line = src_file_lines[stmt.span[0] - 1]
            hits = _find_calls(line, m.name)
            if len(hits) != 1:
                raise MoveUnsupportedError("ambiguous call site line")
            start, end, _, args = hits[0]
            if cand.pattern == 2:
                f = next(fl for owner in [cls] + list(p.ancestors(cls))
                         for fl in owner.fields if fl.id == cand.via)
                text = line[start:end]
                text = re.sub(rf"^(?:this\s*\.\s*)?{re.escape(m.name)}", f"{f.name}.{m.name}", text)
                new_line = line[:start] + text + line[end:]
            else:
                idx = m.param_names.index(cand.via)
                recv = re.sub(r"\s+", "", args[idx]).replace("this.", "")
                rest = args[:idx] + args[idx + 1 :]
                if back_ref:
                    rest.append("this")
                call_text = f"{recv}.{m.name}({', '.join(rest)})"
                new_line = line[:start] + call_text + line[end:]
            edits.append(((stmt.span[0], stmt.span[0]), new_line))

    files = dict(p.files)
    files[cls.file_path] = cm.rewrite_source(p.files[cls.file_path], edits)
    tgt_indent = _member_indent(p, target)
    insert_block = _reindent(block, tgt_indent)
    if field_decl:
        insert_block = [tgt_indent + field_decl] + [""] + insert_block
    files[target.file_path] = _insert_into_class(files[target.file_path], target, insert_block)

    moved = cm.parse_sources(files, name=p.name)
    new_id = f"{target.id}.{m.name}"
    if moved.method_by_id(new_id) is None:
        raise MoveUnsupportedError("moved method vanished after rewrite")
    return MoveResult(
        files=files,
        project=moved,
        method_id=new_id,
        source_class=cls.id,
        target_class=target.id,
        pattern=cand.pattern,
        back_reference=back_ref,
    )
