"""Resolved project model: classes, methods, fields, statements, and links.

Parsing happens per file with `javaparse`; a second pass resolves every
field access, method call, parameter type, and superclass either to an
internal entity (defined in the project) or tags it external. The model is
source-preserving: each file's text is kept verbatim, entity spans index
into it, and printing a project returns the stored text.
"""

from __future__ import annotations

import glob as _glob
import os
import re
from dataclasses import dataclass, field as dfield

from . import javaparse as jp
from .errors import (
    EmptyCorpusError,
    JavaSyntaxError,
    OverlappingEditsError,
    RewriteBreaksParseError,
)

STATEMENT_KINDS = ("assign", "branch", "loop", "call", "declaration", "return", "other")
VISIBILITIES = ("public", "protected", "package", "private")

_ACCESSOR_RE = re.compile(r"^(get|set|is)([A-Z_].*)$")


def visibility_of(modifiers) -> str:
    for v in ("public", "protected", "private"):
        if v in modifiers:
            return v
    return "package"


def accessor_field_name(method_name: str) -> str | None:
    """Field name an accessor-style method exposes (getAmount -> amount)."""
    m = _ACCESSOR_RE.match(method_name)
    if not m:
        return None
    rest = m.group(2)
    return rest[0].lower() + rest[1:]


# ---------------------------------------------------------------------------
# Entities


@dataclass
class Statement:
    id: str
    kind: str  # one of STATEMENT_KINDS
    syntax: str  # the concrete construct: if, for, while, expr, decl, ...
    text: str  # header text for compound statements, full text otherwise
    span: tuple  # (start_line, end_line), inclusive, whole construct
    header_end: int
    nesting_depth: int
    children: list = dfield(default_factory=list)  # all nested statements
    arms: list = dfield(default_factory=list)  # child lists per branch arm / loop body
    defs: set = dfield(default_factory=set)  # names written (in-scope only)
    uses: set = dfield(default_factory=set)  # names read (in-scope only)
    calls: list = dfield(default_factory=list)  # internal method ids, occurrences
    external_calls: list = dfield(default_factory=list)
    fields_used: set = dfield(default_factory=set)  # internal field ids (own class)
    foreign_data: list = dfield(default_factory=list)  # (class id, field name) occurrences
    local_data: int = 0  # own-class data access occurrences
    params_used: set = dfield(default_factory=set)
    locals_used: set = dfield(default_factory=set)
    raw: object = None  # the javaparse node; not part of the public model

    def signature(self):
        """Span-free shape used by the round-trip property."""
        return (
            self.kind,
            tuple(sorted(self.defs)),
            tuple(sorted(self.uses)),
            tuple(tuple(s.signature() for s in arm) for arm in self.arms),
        )

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass
class FieldEntity:
    id: str
    name: str
    declared_type: str  # type text, e.g. "int", "Price[]"
    type_name: str  # base type name without dims
    visibility: str
    modifiers: list
    span: tuple
    type_id: str | None = None  # internal class id, or None when external/primitive
    owner: str = ""


@dataclass
class MethodEntity:
    id: str
    name: str
    params: list  # [(type text, name)]
    return_type: str | None  # None for constructors
    visibility: str
    modifiers: list
    span: tuple
    owner: str
    is_ctor: bool = False
    is_abstract: bool = False
    body: list = dfield(default_factory=list)  # top-level statements
    param_type_ids: list = dfield(default_factory=list)
    return_type_id: str | None = None
    accessed_fields: set = dfield(default_factory=set)  # internal field ids, any class
    own_fields_used: set = dfield(default_factory=set)  # own/inherited field ids
    called_methods: set = dfield(default_factory=set)  # internal method ids
    external_calls: list = dfield(default_factory=list)
    foreign_data: list = dfield(default_factory=list)  # (class id, field name) occurrences
    local_data: int = 0
    source: str = ""  # verbatim source slice of the declaration
    raw: object = None

    @property
    def statements(self) -> list:
        flat = []
        for s in self.body:
            flat.extend(s.walk())
        return flat

    @property
    def param_names(self) -> list:
        return [name for _, name in self.params]


@dataclass
class ClassEntity:
    id: str  # qualified name within the project (Outer.Inner for nested)
    name: str  # simple name
    qualified_name: str
    file_path: str
    span: tuple
    modifiers: list
    is_interface: bool
    superclass: str | None  # name as written, or None
    implements: list
    fields: list = dfield(default_factory=list)
    methods: list = dfield(default_factory=list)
    nested: list = dfield(default_factory=list)  # ids of nested classes
    superclass_id: str | None = None  # internal id, None when external or absent
    source: str = ""  # verbatim source slice of the declaration
    raw: object = None

    def field_named(self, name: str) -> FieldEntity | None:
        for f in self.fields:
            if f.name == name:
                return f
        return None

    def method_named(self, name: str) -> MethodEntity | None:
        for m in self.methods:
            if m.name == name:
                return m
        return None


@dataclass
class Project:
    name: str
    classes: dict = dfield(default_factory=dict)  # id -> ClassEntity
    files: dict = dfield(default_factory=dict)  # path -> source text
    skipped: list = dfield(default_factory=list)  # [(path, reason)]
    resolution_index: dict = dfield(default_factory=dict)  # qualified name -> id
    resolved: bool = False

    @property
    def class_list(self) -> list:
        return sorted(self.classes.values(), key=lambda c: (c.file_path, c.span[0]))

    def iter_methods(self):
        for cls in self.class_list:
            for m in cls.methods:
                yield cls, m

    def method_by_id(self, method_id: str) -> MethodEntity | None:
        cls_id, _, _ = method_id.rpartition(".")
        cls = self.classes.get(cls_id)
        if cls is None:
            return None
        for m in cls.methods:
            if m.id == method_id:
                return m
        return None

    def field_by_id(self, field_id: str) -> FieldEntity | None:
        cls_id, _, name = field_id.rpartition(".")
        cls = self.classes.get(cls_id)
        return cls.field_named(name) if cls is not None else None

    def ancestors(self, cls: ClassEntity):
        """Internal superclass chain of `cls`, nearest first, cycle-safe."""
        seen = {cls.id}
        cur = cls
        while cur.superclass_id is not None and cur.superclass_id not in seen:
            seen.add(cur.superclass_id)
            cur = self.classes[cur.superclass_id]
            yield cur


# ---------------------------------------------------------------------------
# Source helpers


def code_line_mask(source: str) -> list:
    """mask[i] is True when line i+1 holds code (not blank/comment only)."""
    mask = []
    in_block = False
    in_string = None  # quote char while inside a literal
    for line in source.split("\n"):
        has_code = False
        i, n = 0, len(line)
        while i < n:
            ch = line[i]
            if in_block:
                if ch == "*" and i + 1 < n and line[i + 1] == "/":
                    in_block = False
                    i += 2
                    continue
                i += 1
                continue
            if in_string is not None:
                has_code = True
                if ch == "\\":
                    i += 2
                    continue
                if ch == in_string:
                    in_string = None
                i += 1
                continue
            if ch == "/" and i + 1 < n and line[i + 1] == "/":
                break
            if ch == "/" and i + 1 < n and line[i + 1] == "*":
                in_block = True
                i += 2
                continue
            if ch in "\"'":
                in_string = ch
                has_code = True
                i += 1
                continue
            if not ch.isspace():
                has_code = True
            i += 1
        in_string = None  # string literals do not span lines in the subset
        mask.append(has_code)
    return mask


def count_loc(source: str, span: tuple) -> int:
    """Non-blank, non-comment physical lines of `source` within `span`."""
    mask = code_line_mask(source)
    start, end = span
    return sum(1 for i in range(start - 1, min(end, len(mask))) if mask[i])


def slice_lines(source: str, start: int, end: int) -> str:
    return "\n".join(source.split("\n")[start - 1 : end])


# ---------------------------------------------------------------------------
# Phase A: structural model from the raw syntax tree


def _stmt_text(lines: list, start: int, header_end: int) -> str:
    return "\n".join(lines[start - 1 : header_end]).strip()


def _build_statements(raw_stmts: list, depth: int, lines: list) -> list:
    """Statement tree with kinds, spans, depths; try/bare blocks are spliced."""
    out = []
    for raw in raw_stmts:
        out.extend(_build_one(raw, depth, lines))
    return out


def _classify_expr_stmt(expr) -> str:
    if isinstance(expr, jp.Assign):
        return "assign"
    if isinstance(expr, jp.Unary) and expr.op in ("++", "--"):
        return "assign"
    if isinstance(expr, (jp.MethodCall, jp.New)):
        return "call"
    return "other"


def _build_one(raw: jp.JStmt, depth: int, lines: list) -> list:
    start, end = raw.span
    text = _stmt_text(lines, start, raw.header_end)
    if raw.kind in ("block", "try"):
        spliced = []
        for arm in raw.arms:
            spliced.extend(_build_statements(arm, depth, lines))
        return spliced
    if raw.kind == "decl":
        kind = "declaration"
    elif raw.kind == "expr":
        kind = _classify_expr_stmt(raw.expr)
    elif raw.kind in ("if", "switch"):
        kind = "branch"
    elif raw.kind in ("for", "foreach", "while", "dowhile"):
        kind = "loop"
    elif raw.kind in ("return", "throw"):
        kind = "return"
    else:  # break, continue
        kind = "other"
    stmt = Statement(
        id="",
        kind=kind,
        syntax=raw.kind,
        text=text,
        span=(start, end),
        header_end=raw.header_end,
        nesting_depth=depth,
        raw=raw,
    )
    if kind in ("branch", "loop"):
        stmt.arms = [_build_statements(arm, depth + 1, lines) for arm in raw.arms]
        stmt.children = [s for arm in stmt.arms for s in arm]
    return [stmt]


def _assign_statement_ids(method: MethodEntity):
    counter = 0
    for s in method.statements:
        s.id = f"{method.id}#{counter}"
        counter += 1


def _register_class(project: Project, raw: jp.JClass, prefix: str, path: str, lines: list):
    qualified = f"{prefix}.{raw.name}" if prefix else raw.name
    if qualified in project.classes:
        project.skipped.append((path, f"duplicate class name {qualified}; keeping the first"))
        return qualified
    cls = ClassEntity(
        id=qualified,
        name=raw.name,
        qualified_name=qualified,
        file_path=path,
        span=raw.span,
        modifiers=list(raw.modifiers),
        is_interface=raw.is_interface,
        superclass=raw.extends,
        implements=list(raw.implements),
        source="\n".join(lines[raw.span[0] - 1 : raw.span[1]]),
        raw=raw,
    )
    for fld in raw.fields:
        for fname, _init in fld.declarators:
            cls.fields.append(
                FieldEntity(
                    id=f"{qualified}.{fname}",
                    name=fname,
                    declared_type=str(fld.type),
                    type_name=fld.type.simple,
                    visibility=visibility_of(fld.modifiers),
                    modifiers=list(fld.modifiers),
                    span=fld.span,
                    owner=qualified,
                )
            )
    name_counts = {}
    for m in raw.methods:
        n = name_counts.get(m.name, 0)
        name_counts[m.name] = n + 1
        mid = f"{qualified}.{m.name}" + (f"/{n + 1}" if n else "")
        method = MethodEntity(
            id=mid,
            name=m.name,
            params=[(str(t), pname) for t, pname in m.params],
            return_type=None if m.is_ctor else str(m.return_type),
            visibility=visibility_of(m.modifiers),
            modifiers=list(m.modifiers),
            span=m.span,
            owner=qualified,
            is_ctor=m.is_ctor,
            is_abstract=m.body is None,
            source="\n".join(lines[m.span[0] - 1 : m.span[1]]),
            raw=m,
        )
        if m.body is not None:
            method.body = _build_statements(m.body, 0, lines)
        _assign_statement_ids(method)
        cls.methods.append(method)
    project.classes[qualified] = cls
    project.resolution_index[qualified] = qualified
    for inner in raw.nested:
        inner_id = _register_class(project, inner, qualified, path, lines)
        cls.nested.append(inner_id)
    return qualified


def parse_sources(sources: dict, name: str = "project", resolve: bool = True) -> Project:
    """Build a Project from an in-memory {path: source text} mapping."""
    project = Project(name=name)
    for path in sorted(sources):
        source = sources[path]
        try:
            tree = jp.parse_source(source, path)
        except JavaSyntaxError as exc:
            project.skipped.append((path, str(exc)))
            continue
        project.files[path] = source
        lines = source.split("\n")
        for raw_cls in tree.classes:
            _register_class(project, raw_cls, "", path, lines)
    if resolve:
        resolve_references(project)
    return project


def parse_project(
    root: str,
    include_globs: tuple = ("**/*.java",),
    exclude_globs: tuple = (),
    name: str | None = None,
    resolve: bool = True,
) -> Project:
    """Parse every matching file under `root` into a resolved Project."""
    if not os.path.isdir(root):
        raise IOError(f"not a readable directory: {root}")
    matched = set()
    for pattern in include_globs:
        matched.update(
            _glob.glob(os.path.join(root, pattern), recursive=True)
        )
    for pattern in exclude_globs:
        matched -= set(_glob.glob(os.path.join(root, pattern), recursive=True))
    matched = {p for p in matched if os.path.isfile(p)}
    if not matched:
        raise EmptyCorpusError(f"no files under {root} match {list(include_globs)}")
    sources = {}
    for path in sorted(matched):
        with open(path, encoding="utf-8") as fh:
            sources[os.path.relpath(path, root)] = fh.read()
    return parse_sources(sources, name=name or os.path.basename(os.path.abspath(root)), resolve=resolve)


# ---------------------------------------------------------------------------
# Phase B: reference resolution


class _Resolver:
    def __init__(self, project: Project):
        self.project = project
        self.simple_index = {}
        for cid in sorted(project.classes):
            simple = project.classes[cid].name
            self.simple_index.setdefault(simple, cid)

    def class_for_type(self, type_name: str | None) -> ClassEntity | None:
        if not type_name:
            return None
        base = type_name.split("<")[0].rstrip("[]")
        if base in self.project.classes:
            return self.project.classes[base]
        simple = base.rsplit(".", 1)[-1]
        cid = self.simple_index.get(simple)
        return self.project.classes[cid] if cid else None

    def lookup_field(self, cls: ClassEntity, name: str):
        for f in cls.fields:
            if f.name == name:
                return cls, f
        for anc in self.project.ancestors(cls):
            for f in anc.fields:
                if f.name == name:
                    return anc, f
        return None

    def lookup_method(self, cls: ClassEntity, name: str):
        for m in cls.methods:
            if m.name == name:
                return cls, m
        for anc in self.project.ancestors(cls):
            for m in anc.methods:
                if m.name == name:
                    return anc, m
        return None


class _BodyAnalyzer:
    """Walks one method body, filling defs/uses/calls/data-access links."""

    def __init__(self, resolver: _Resolver, cls: ClassEntity, method: MethodEntity):
        self.r = resolver
        self.cls = cls
        self.method = method
        self.scope = {}  # name -> declared type text (params + locals seen so far)
        for ptype, pname in method.params:
            self.scope[pname] = ptype
        self.param_names = set(method.param_names)
        for raw_stmt in _iter_raw(method.raw.body or []):
            if raw_stmt.kind == "try":
                for ctype, cname, _body in raw_stmt.catches:
                    self.scope.setdefault(cname, str(ctype))

    # -- statement traversal -------------------------------------------------

    def run(self):
        for stmt in self.method.body:
            self.visit(stmt)

    def visit(self, stmt: Statement):
        self.cur = stmt
        raw = stmt.raw
        if raw.kind == "decl":
            for name, init in raw.declarators:
                if init is not None:
                    self.expr(init)
                self.scope[name] = str(raw.type)
                stmt.defs.add(name)
        elif raw.kind == "expr":
            self.expr(raw.expr)
        elif raw.kind in ("return", "throw"):
            if raw.expr is not None:
                self.expr(raw.expr)
        elif raw.kind == "if":
            self.expr(raw.cond)
        elif raw.kind == "while" or raw.kind == "dowhile":
            self.expr(raw.cond)
        elif raw.kind == "for":
            if raw.init is not None:
                if raw.init.kind == "decl":
                    for name, init in raw.init.declarators:
                        if init is not None:
                            self.expr(init)
                        self.scope[name] = str(raw.init.type)
                        stmt.defs.add(name)
                else:
                    self.expr(raw.init.expr)
            if raw.cond is not None:
                self.expr(raw.cond)
            for upd in raw.update:
                self.expr(upd)
        elif raw.kind == "foreach":
            self.scope[raw.var] = str(raw.type)
            stmt.defs.add(raw.var)
            self.expr(raw.iterable)
        elif raw.kind == "switch":
            self.expr(raw.expr)
            for labels in raw.label_exprs:
                for label in labels:
                    if label != "default":
                        self.expr(label)
        for arm in stmt.arms:
            for child in arm:
                self.visit(child)
            self.cur = stmt

    # -- expression traversal --------------------------------------------------

    def expr(self, e, writing: bool = False):
        """Analyze expression `e`; returns the type text it evaluates to."""
        if e is None or isinstance(e, (jp.Literal, jp.Lambda)):
            return None
        if isinstance(e, jp.This):
            return self.cls.name
        if isinstance(e, jp.Super):
            return self.cls.superclass
        if isinstance(e, jp.Name):
            return self.name_ref(e.id, writing)
        if isinstance(e, jp.FieldAccess):
            return self.field_ref(e, writing)
        if isinstance(e, jp.MethodCall):
            return self.call_ref(e)
        if isinstance(e, jp.Index):
            self.expr(e.index)
            if writing:
                self.expr(e.array)  # an element write also reads the array
            base = self.expr(e.array, writing)
            return base.replace("[]", "", 1) if base and "[]" in base else base
        if isinstance(e, jp.Assign):
            self.expr(e.value)
            if e.op != "=":
                self.expr(e.target)  # compound assignment reads the target too
            return self.expr(e.target, writing=True)
        if isinstance(e, jp.Unary):
            if e.op in ("++", "--"):
                self.expr(e.operand)
                return self.expr(e.operand, writing=True)
            return self.expr(e.operand)
        if isinstance(e, jp.Binary):
            self.expr(e.left)
            self.expr(e.right)
            return None
        if isinstance(e, jp.Ternary):
            self.expr(e.cond)
            t = self.expr(e.then)
            self.expr(e.other)
            return t
        if isinstance(e, jp.Cast):
            self.expr(e.expr)
            return str(e.type)
        if isinstance(e, jp.New):
            for a in e.args:
                self.expr(a)
            for d in e.dims:
                self.expr(d)
            if e.init is not None:
                self.expr(e.init)
            target = self.r.class_for_type(e.type.name)
            if target is not None and not e.dims:
                ctor = target.method_named(target.name)
                if ctor is not None and ctor.is_ctor:
                    self.record_call(ctor, target)
            return str(e.type)
        if isinstance(e, jp.ArrayInit):
            for item in e.items:
                self.expr(item)
            return None
        return None

    def name_ref(self, name: str, writing: bool) -> str | None:
        stmt = self.cur
        if name in self.scope:
            (stmt.defs if writing else stmt.uses).add(name)
            if name in self.param_names:
                stmt.params_used.add(name)
            else:
                stmt.locals_used.add(name)
            return self.scope[name]
        hit = self.r.lookup_field(self.cls, name)
        if hit is not None:
            owner, fld = hit
            (stmt.defs if writing else stmt.uses).add(name)
            stmt.fields_used.add(fld.id)
            stmt.local_data += 1
            self.method.accessed_fields.add(fld.id)
            self.method.own_fields_used.add(fld.id)
            return fld.declared_type
        cls = self.r.class_for_type(name)
        if cls is not None:
            return cls.name  # static reference to a class
        return None

    def field_ref(self, e: jp.FieldAccess, writing: bool) -> str | None:
        recv_type = self.expr(e.receiver)
        owner = self.r.class_for_type(recv_type)
        stmt = self.cur
        if owner is None:
            return None
        hit = self.r.lookup_field(owner, e.name)
        if hit is None:
            return None
        holder, fld = hit
        self.method.accessed_fields.add(fld.id)
        if owner.id == self.cls.id or self._is_ancestor(owner):
            stmt.fields_used.add(fld.id)
            stmt.local_data += 1
            self.method.own_fields_used.add(fld.id)
            if isinstance(e.receiver, jp.This):
                (stmt.defs if writing else stmt.uses).add(e.name)
        else:
            stmt.foreign_data.append((holder.id, fld.name))
            self.method.foreign_data.append((holder.id, fld.name))
        return fld.declared_type

    def call_ref(self, e: jp.MethodCall) -> str | None:
        for a in e.args:
            self.expr(a)
        stmt = self.cur
        if e.name in ("this", "super"):
            return None
        if e.receiver is None:
            hit = self.r.lookup_method(self.cls, e.name)
            if hit is not None:
                holder, target = hit
                self.record_call(target, holder, local=True)
                return target.return_type
            stmt.external_calls.append(e.name)
            self.method.external_calls.append(e.name)
            return None
        recv_type = self.expr(e.receiver)
        owner = self.r.class_for_type(recv_type)
        if owner is None:
            stmt.external_calls.append(e.name)
            self.method.external_calls.append(e.name)
            return None
        hit = self.r.lookup_method(owner, e.name)
        if hit is None:
            stmt.external_calls.append(e.name)
            self.method.external_calls.append(e.name)
            return None
        holder, target = hit
        is_local = owner.id == self.cls.id or self._is_ancestor(owner)
        self.record_call(target, holder, local=is_local)
        return target.return_type

    def record_call(self, target: MethodEntity, holder: ClassEntity, local: bool = False):
        stmt = self.cur
        stmt.calls.append(target.id)
        self.method.called_methods.add(target.id)
        mapped = accessor_field_name(target.name)
        if mapped is None:
            return
        if local:
            stmt.local_data += 1  # rolled up into the method total afterwards
            return
        fld = holder.field_named(mapped)
        fname = fld.name if fld is not None else mapped
        stmt.foreign_data.append((holder.id, fname))
        self.method.foreign_data.append((holder.id, fname))

    def _is_ancestor(self, other: ClassEntity) -> bool:
        return any(anc.id == other.id for anc in self.project_ancestors())

    def project_ancestors(self):
        return self.r.project.ancestors(self.cls)


def _iter_raw(raw_stmts):
    for raw in raw_stmts:
        yield raw
        for arm in raw.arms:
            yield from _iter_raw(arm)


def resolve_references(project: Project) -> Project:
    """Link every reference to an internal entity or tag it external."""
    resolver = _Resolver(project)
    for cls in project.class_list:
        parent = resolver.class_for_type(cls.superclass) if cls.superclass else None
        cls.superclass_id = parent.id if parent is not None and parent.id != cls.id else None
    for cls in project.class_list:
        for fld in cls.fields:
            hit = resolver.class_for_type(fld.type_name)
            fld.type_id = hit.id if hit is not None else None
    for cls in project.class_list:
        for method in cls.methods:
            method.param_type_ids = []
            for ptype, _ in method.params:
                hit = resolver.class_for_type(ptype)
                method.param_type_ids.append(hit.id if hit is not None else None)
            hit = resolver.class_for_type(method.return_type)
            method.return_type_id = hit.id if hit is not None else None
            # reset accumulated links so resolution is idempotent
            method.accessed_fields = set()
            method.own_fields_used = set()
            method.called_methods = set()
            method.external_calls = []
            method.foreign_data = []
            method.local_data = 0
            for s in method.statements:
                s.defs, s.uses = set(), set()
                s.calls, s.external_calls = [], []
                s.fields_used = set()
                s.foreign_data, s.local_data = [], 0
                s.params_used, s.locals_used = set(), set()
            if method.raw is not None and method.raw.body is not None:
                _BodyAnalyzer(resolver, cls, method).run()
            method.local_data += sum(s.local_data for s in method.statements)
    project.resolved = True
    return project


# ---------------------------------------------------------------------------
# Printing, dumping, rewriting


def print_project(project: Project) -> dict:
    """The stored source per file (the model is source-preserving)."""
    return dict(project.files)


def dump_model(project: Project) -> dict:
    """JSON-ready document: entities keyed by id, references by id."""
    def stmt_doc(s: Statement):
        return {
            "id": s.id,
            "kind": s.kind,
            "syntax": s.syntax,
            "text": s.text,
            "span": list(s.span),
            "nesting_depth": s.nesting_depth,
            "defs": sorted(s.defs),
            "uses": sorted(s.uses),
            "calls": list(s.calls),
            "external_calls": list(s.external_calls),
            "fields_used": sorted(s.fields_used),
            "foreign_data": [list(t) for t in s.foreign_data],
            "arms": [[c.id for c in arm] for arm in s.arms],
        }

    doc = {"name": project.name, "classes": {}, "skipped": [list(t) for t in project.skipped]}
    for cls in project.class_list:
        doc["classes"][cls.id] = {
            "name": cls.name,
            "file_path": cls.file_path,
            "span": list(cls.span),
            "is_interface": cls.is_interface,
            "superclass": cls.superclass,
            "superclass_id": cls.superclass_id,
            "implements": list(cls.implements),
            "nested": list(cls.nested),
            "fields": {
                f.id: {
                    "name": f.name,
                    "declared_type": f.declared_type,
                    "type_id": f.type_id,
                    "visibility": f.visibility,
                }
                for f in cls.fields
            },
            "methods": {
                m.id: {
                    "name": m.name,
                    "params": [list(p) for p in m.params],
                    "return_type": m.return_type,
                    "visibility": m.visibility,
                    "span": list(m.span),
                    "is_ctor": m.is_ctor,
                    "accessed_fields": sorted(m.accessed_fields),
                    "called_methods": sorted(m.called_methods),
                    "statements": [stmt_doc(s) for s in m.statements],
                }
                for m in cls.methods
            },
        }
    return doc


def rewrite_source(source: str, edits: list, entity_span: tuple | None = None, verify: bool = True) -> str:
    """Replace whole line spans of `source`.

    `edits` is a list of ((start_line, end_line), replacement text); an empty
    replacement deletes the lines. Spans must not overlap and, when
    `entity_span` is given, must fall inside it.
    """
    if not edits:
        return source
    ordered = sorted(edits, key=lambda e: e[0])
    for (a, b), _ in ordered:
        if a > b:
            raise OverlappingEditsError(f"invalid span ({a}, {b})")
        if entity_span is not None and not (entity_span[0] <= a and b <= entity_span[1]):
            raise OverlappingEditsError(
                f"edit span ({a}, {b}) outside entity span {entity_span}"
            )
    for ((_, b1), _), ((a2, _), _) in zip(ordered, ordered[1:]):
        if a2 <= b1:
            raise OverlappingEditsError(f"edit spans overlap at line {a2}")
    lines = source.split("\n")
    out = []
    cursor = 1
    for (a, b), replacement in ordered:
        out.extend(lines[cursor - 1 : a - 1])
        if replacement:
            out.extend(replacement.split("\n"))
        cursor = b + 1
    out.extend(lines[cursor - 1 :])
    result = "\n".join(out)
    if verify:
        try:
            jp.parse_source(result)
        except JavaSyntaxError as exc:
            raise RewriteBreaksParseError(f"rewritten source fails to parse: {exc}")
    return result
