"""Recursive-descent parser for the Java subset understood by the toolkit.

Supported constructs: classes and interfaces (interfaces are modeled as
classes), fields, methods, constructors, the statement forms listed in
`STATEMENT_KINDS`, and ordinary expressions with Java operator precedence.
Generic type arguments are parsed and discarded; lambdas parse as opaque
expressions. Enums, records, annotations-with-arguments bodies, and nested
generics trickery are outside the subset: files using them fail to parse and
are reported as skipped by the corpus loader.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import JavaSyntaxError

KEYWORDS = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
    "class", "const", "continue", "default", "do", "double", "else", "enum",
    "extends", "final", "finally", "float", "for", "goto", "if", "implements",
    "import", "instanceof", "int", "interface", "long", "native", "new",
    "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "try", "void", "volatile", "while", "true", "false", "null",
}

PRIMITIVE_TYPES = {"boolean", "byte", "char", "short", "int", "long", "float", "double", "void"}

MODIFIER_WORDS = {
    "public", "protected", "private", "static", "final", "abstract",
    "synchronized", "native", "transient", "volatile", "strictfp", "default",
}

# Multi-char operators, longest first so the lexer is greedy.
OPERATORS = [
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||",
    "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "<<", ">>", "+", "-", "*", "/", "%", "=", "<", ">", "!", "&", "|", "^",
    "~", "?", ":", ".", ",", ";", "(", ")", "{", "}", "[", "]", "@",
]

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<linecomment>//[^\n]*)
  | (?P<blockcomment>/\*.*?\*/)
  | (?P<float>\d+\.\d+([eE][+-]?\d+)?[fFdD]?|\d+[fFdD])
  | (?P<int>0[xX][0-9a-fA-F]+[lL]?|\d+[lL]?)
  | (?P<ident>[A-Za-z_$][A-Za-z0-9_$]*)
  | (?P<string>"(\\.|[^"\\])*")
  | (?P<char>'(\\.|[^'\\])')
  | (?P<op>%s)
    """
    % "|".join(re.escape(op) for op in OPERATORS),
    re.VERBOSE | re.DOTALL,
)


@dataclass
class Token:
    kind: str  # ident, keyword, int, float, string, char, op, eof
    value: str
    line: int


def tokenize(source: str, path: str | None = None) -> list[Token]:
    tokens = []
    pos = 0
    line = 1
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise JavaSyntaxError(f"unexpected character {source[pos]!r}", line=line, path=path)
        text = m.group(0)
        kind = m.lastgroup
        if kind == "ident" and text in KEYWORDS:
            kind = "keyword"
        if kind not in ("ws", "linecomment", "blockcomment"):
            tokens.append(Token(kind, text, line))
        line += text.count("\n")
        pos = m.end()
    tokens.append(Token("eof", "", line))
    return tokens


# ---------------------------------------------------------------------------
# Raw syntax tree


@dataclass
class JType:
    name: str  # dotted base name, e.g. "int", "Price", "java.util.List"
    dims: int = 0  # array dimensions

    @property
    def simple(self) -> str:
        return self.name.rsplit(".", 1)[-1]

    def __str__(self) -> str:
        return self.name + "[]" * self.dims


# Expression nodes ----------------------------------------------------------


@dataclass
class Name:
    id: str


@dataclass
class Literal:
    value: str


@dataclass
class This:
    pass


@dataclass
class Super:
    pass


@dataclass
class FieldAccess:
    receiver: object
    name: str


@dataclass
class MethodCall:
    receiver: object  # None for unqualified calls
    name: str
    args: list


@dataclass
class Index:
    array: object
    index: object


@dataclass
class Assign:
    target: object
    op: str  # "=", "+=", ...
    value: object


@dataclass
class Unary:
    op: str
    operand: object
    prefix: bool = True


@dataclass
class Binary:
    op: str
    left: object
    right: object


@dataclass
class Ternary:
    cond: object
    then: object
    other: object


@dataclass
class Cast:
    type: JType
    expr: object


@dataclass
class New:
    type: JType
    args: list  # constructor args, or [] for arrays
    dims: list = field(default_factory=list)  # array dimension exprs
    init: object = None  # array initializer


@dataclass
class ArrayInit:
    items: list


@dataclass
class Lambda:
    # Opaque: body expressions are not analyzed; calls inside resolve external.
    text: str


# Statement nodes -----------------------------------------------------------

STATEMENT_KINDS = (
    "decl", "expr", "if", "for", "foreach", "while", "dowhile", "switch",
    "return", "break", "continue", "try", "throw", "block", "empty",
)


@dataclass
class JStmt:
    kind: str
    span: tuple  # (start_line, end_line), inclusive
    header_end: int  # last line of the header / simple statement itself
    # payload fields, used per kind
    type: JType | None = None
    declarators: list = field(default_factory=list)  # [(name, init_expr|None)]
    expr: object = None
    cond: object = None
    arms: list = field(default_factory=list)  # list of list[JStmt]
    init: object = None  # for-loop init (JStmt decl/expr or None)
    update: list = field(default_factory=list)
    var: str | None = None  # foreach variable
    iterable: object = None
    catches: list = field(default_factory=list)  # [(JType, name, body)]
    label_exprs: list = field(default_factory=list)  # switch case labels


@dataclass
class JField:
    modifiers: list
    type: JType
    declarators: list  # [(name, init_expr|None)]
    span: tuple


@dataclass
class JMethod:
    modifiers: list
    return_type: JType | None  # None for constructors
    name: str
    params: list  # [(JType, name)]
    body: list | None  # None for abstract/interface methods
    span: tuple
    is_ctor: bool = False


@dataclass
class JClass:
    name: str
    modifiers: list
    extends: str | None
    implements: list
    fields: list
    methods: list
    nested: list
    span: tuple
    is_interface: bool = False


@dataclass
class JFile:
    package: str | None
    imports: list
    classes: list


# ---------------------------------------------------------------------------


class Parser:
    def __init__(self, tokens: list[Token], path: str | None = None):
        self.toks = tokens
        self.i = 0
        self.path = path

    # -- token helpers ------------------------------------------------------

    def peek(self, ahead=0) -> Token:
        """Token `ahead` positions from the cursor; negative looks back."""
        j = max(0, min(self.i + ahead, len(self.toks) - 1))
        return self.toks[j]

    def next(self) -> Token:
        tok = self.toks[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, value: str) -> bool:
        return self.peek().value == value

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.next()
            return True
        return False

    def expect(self, value: str) -> Token:
        tok = self.peek()
        if tok.value != value:
            raise JavaSyntaxError(
                f"expected {value!r}, found {tok.value!r}", line=tok.line, path=self.path
            )
        return self.next()

    def error(self, message: str):
        raise JavaSyntaxError(message, line=self.peek().line, path=self.path)

    # -- top level ----------------------------------------------------------

    def parse_file(self) -> JFile:
        package = None
        imports = []
        if self.accept("package"):
            package = self.qualified_name()
            self.expect(";")
        while self.accept("import"):
            name = self.qualified_name()
            if self.accept("."):
                self.expect("*")
                name += ".*"
            imports.append(name)
            self.expect(";")
        classes = []
        while self.peek().kind != "eof":
            classes.append(self.parse_class())
        return JFile(package, imports, classes)

    def qualified_name(self) -> str:
        parts = [self.expect_ident()]
        while self.peek().value == "." and self.peek(1).kind in ("ident", "keyword"):
            if self.peek(1).value == "*":
                break
            self.next()
            parts.append(self.expect_ident())
        return ".".join(parts)

    def expect_ident(self) -> str:
        tok = self.peek()
        if tok.kind != "ident":
            self.error(f"expected identifier, found {tok.value!r}")
        return self.next().value

    def skip_annotations(self):
        while self.at("@"):
            self.next()
            self.expect_ident()
            if self.at("("):
                self.skip_balanced("(", ")")

    def skip_balanced(self, open_tok: str, close_tok: str):
        self.expect(open_tok)
        depth = 1
        while depth > 0:
            tok = self.next()
            if tok.kind == "eof":
                self.error(f"unbalanced {open_tok!r}")
            if tok.value == open_tok:
                depth += 1
            elif tok.value == close_tok:
                depth -= 1

    def modifiers(self) -> list:
        mods = []
        while True:
            self.skip_annotations()
            if self.peek().value in MODIFIER_WORDS and self.peek().kind == "keyword":
                mods.append(self.next().value)
            else:
                return mods

    def parse_class(self) -> JClass:
        start = self.peek().line
        mods = self.modifiers()
        is_interface = False
        if self.accept("interface"):
            is_interface = True
        elif not self.accept("class"):
            if self.at("enum"):
                self.error("enum declarations are outside the supported subset")
            self.error(f"expected class or interface, found {self.peek().value!r}")
        name = self.expect_ident()
        self.skip_type_args_if_present()
        extends = None
        implements = []
        if self.accept("extends"):
            extends = self.qualified_name()
            self.skip_type_args_if_present()
            if is_interface:
                # interface extends list; keep the first as the parent
                while self.accept(","):
                    self.qualified_name()
                    self.skip_type_args_if_present()
        if self.accept("implements"):
            implements.append(self.qualified_name())
            self.skip_type_args_if_present()
            while self.accept(","):
                implements.append(self.qualified_name())
                self.skip_type_args_if_present()
        self.expect("{")
        fields, methods, nested = [], [], []
        while not self.at("}"):
            member = self.parse_member(name, interface_body=is_interface)
            if isinstance(member, JField):
                fields.append(member)
            elif isinstance(member, JMethod):
                methods.append(member)
            elif isinstance(member, JClass):
                nested.append(member)
        end = self.expect("}").line
        return JClass(name, mods, extends, implements, fields, methods, nested,
                      (start, end), is_interface)

    def parse_member(self, class_name: str, interface_body: bool):
        start = self.peek().line
        mods = self.modifiers()
        if self.at("class") or self.at("interface"):
            inner = self.parse_class()
            inner.modifiers = mods + inner.modifiers
            return inner
        if self.at("{"):  # static/instance initializer block: parse and drop
            self.skip_balanced("{", "}")
            return self.parse_member(class_name, interface_body)
        # constructor: Name (
        if (self.peek().kind == "ident" and self.peek().value == class_name
                and self.peek(1).value == "("):
            self.next()
            params = self.parse_params()
            if self.accept("throws"):
                self.qualified_name()
                while self.accept(","):
                    self.qualified_name()
            body, end = self.parse_block_body()
            return JMethod(mods, None, class_name, params, body, (start, end), is_ctor=True)
        self.skip_type_params_if_present()
        jtype = self.parse_type()
        name = self.expect_ident()
        if self.at("("):
            params = self.parse_params()
            while self.accept("["):  # archaic int f()[] form
                self.expect("]")
                jtype.dims += 1
            if self.accept("throws"):
                self.qualified_name()
                while self.accept(","):
                    self.qualified_name()
            if self.accept(";"):
                return JMethod(mods, jtype, name, params, None, (start, self.peek(-1).line))
            body, end = self.parse_block_body()
            return JMethod(mods, jtype, name, params, body, (start, end))
        # field declaration, possibly with several declarators
        declarators = [(name, self.field_dims_and_init(jtype))]
        while self.accept(","):
            dname = self.expect_ident()
            declarators.append((dname, self.field_dims_and_init(jtype)))
        end = self.expect(";").line
        return JField(mods, jtype, declarators, (start, end))

    def field_dims_and_init(self, jtype: JType):
        while self.accept("["):
            self.expect("]")
            jtype.dims += 1
        if self.accept("="):
            return self.parse_initializer()
        return None

    def parse_initializer(self):
        if self.at("{"):
            return self.parse_array_init()
        return self.parse_expression()

    def parse_array_init(self) -> ArrayInit:
        self.expect("{")
        items = []
        while not self.at("}"):
            items.append(self.parse_initializer())
            if not self.accept(","):
                break
        self.expect("}")
        return ArrayInit(items)

    def parse_params(self) -> list:
        self.expect("(")
        params = []
        while not self.at(")"):
            self.modifiers()  # allow `final int x`
            ptype = self.parse_type()
            if self.accept("..."):
                ptype.dims += 1
            pname = self.expect_ident()
            while self.accept("["):
                self.expect("]")
                ptype.dims += 1
            params.append((ptype, pname))
            if not self.accept(","):
                break
        self.expect(")")
        return params

    def parse_block_body(self):
        self.expect("{")
        body = []
        while not self.at("}"):
            stmt = self.parse_statement()
            if stmt is not None:
                body.append(stmt)
        end = self.expect("}").line
        return body, end

    # -- types ----------------------------------------------------------

    def looks_like_type(self) -> bool:
        """Lookahead: does a type followed by an identifier start here?"""
        tok = self.peek()
        if tok.kind == "keyword" and tok.value in PRIMITIVE_TYPES:
            return True
        if tok.kind != "ident":
            return False
        j = self.i + 1
        # dotted name
        while self.toks[j].value == "." and self.toks[j + 1].kind == "ident":
            j += 2
        # generic arguments: scan to the balancing '>'
        if self.toks[j].value == "<":
            depth = 1
            j += 1
            steps = 0
            while depth > 0:
                v = self.toks[j].value
                if self.toks[j].kind == "eof":
                    return False
                if v == "<":
                    depth += 1
                elif v == ">":
                    depth -= 1
                elif v == ">>":
                    depth -= 2
                elif v in (";", "{", ")", "=") or self.toks[j].kind in ("string", "char"):
                    return False  # cannot appear inside type arguments
                j += 1
                steps += 1
                if steps > 64:
                    return False
        while self.toks[j].value == "[" and self.toks[j + 1].value == "]":
            j += 2
        return self.toks[j].kind == "ident"

    def parse_type(self) -> JType:
        tok = self.peek()
        if tok.kind == "keyword" and tok.value in PRIMITIVE_TYPES:
            self.next()
            name = tok.value
        else:
            name = self.qualified_name()
        self.skip_type_args_if_present()
        dims = 0
        while self.peek().value == "[" and self.peek(1).value == "]":
            self.next()
            self.next()
            dims += 1
        return JType(name, dims)

    def skip_type_args_if_present(self):
        if not self.at("<"):
            return
        depth = 0
        while True:
            v = self.next().value
            if v == "<":
                depth += 1
            elif v == ">":
                depth -= 1
            elif v == ">>":
                depth -= 2
            elif self.peek().kind == "eof":
                self.error("unbalanced type arguments")
            if depth <= 0:
                return

    def skip_type_params_if_present(self):
        # method-level <T> before the return type
        if self.at("<"):
            self.skip_type_args_if_present()

    # -- statements -------------------------------------------------------

    def parse_statement(self) -> JStmt | None:
        tok = self.peek()
        start = tok.line
        if tok.value == ";":
            self.next()
            return None
        if tok.value == "{":
            body, end = self.parse_block_body()
            return JStmt("block", (start, end), start, arms=[body])
        if tok.value == "if":
            return self.parse_if()
        if tok.value == "for":
            return self.parse_for()
        if tok.value == "while":
            self.next()
            self.expect("(")
            cond = self.parse_expression()
            header_end = self.expect(")").line
            body, end = self.statement_as_body()
            return JStmt("while", (start, end), header_end, cond=cond, arms=[body])
        if tok.value == "do":
            self.next()
            body, _ = self.statement_as_body()
            self.expect("while")
            self.expect("(")
            cond = self.parse_expression()
            self.expect(")")
            end = self.expect(";").line
            return JStmt("dowhile", (start, end), start, cond=cond, arms=[body])
        if tok.value == "switch":
            return self.parse_switch()
        if tok.value == "return":
            self.next()
            expr = None if self.at(";") else self.parse_expression()
            end = self.expect(";").line
            return JStmt("return", (start, end), end, expr=expr)
        if tok.value == "break":
            self.next()
            if self.peek().kind == "ident":
                self.next()  # label, ignored
            end = self.expect(";").line
            return JStmt("break", (start, end), end)
        if tok.value == "continue":
            self.next()
            if self.peek().kind == "ident":
                self.next()
            end = self.expect(";").line
            return JStmt("continue", (start, end), end)
        if tok.value == "throw":
            self.next()
            expr = self.parse_expression()
            end = self.expect(";").line
            return JStmt("throw", (start, end), end, expr=expr)
        if tok.value == "try":
            return self.parse_try()
        if tok.value in ("synchronized", "assert"):
            self.error(f"{tok.value!r} statements are outside the supported subset")
        # local variable declaration?
        if (tok.kind == "keyword" and tok.value in PRIMITIVE_TYPES) or (
            tok.kind == "ident" and self.looks_like_type()
        ):
            self.modifiers()
            jtype = self.parse_type()
            declarators = [(self.expect_ident(), self.field_dims_and_init(jtype))]
            while self.accept(","):
                dname = self.expect_ident()
                declarators.append((dname, self.field_dims_and_init(jtype)))
            end = self.expect(";").line
            return JStmt("decl", (start, end), end, type=jtype, declarators=declarators)
        if tok.value == "final":
            self.modifiers()
            return self.parse_statement()
        # expression statement
        expr = self.parse_expression()
        end = self.expect(";").line
        return JStmt("expr", (start, end), end, expr=expr)

    def statement_as_body(self):
        """A statement used as a loop/branch body; blocks are unwrapped."""
        stmt = self.parse_statement()
        if stmt is None:
            return [], self.peek(-1).line
        if stmt.kind == "block":
            return stmt.arms[0], stmt.span[1]
        return [stmt], stmt.span[1]

    def parse_if(self) -> JStmt:
        start = self.expect("if").line
        self.expect("(")
        cond = self.parse_expression()
        header_end = self.expect(")").line
        then_body, end = self.statement_as_body()
        else_body = []
        if self.accept("else"):
            else_body, end = self.statement_as_body()
        return JStmt("if", (start, end), header_end, cond=cond, arms=[then_body, else_body])

    def parse_for(self) -> JStmt:
        start = self.expect("for").line
        self.expect("(")
        # enhanced for: for (Type x : iterable)
        save = self.i
        if self.looks_like_type() or (self.peek().kind == "keyword" and self.peek().value in PRIMITIVE_TYPES):
            try:
                self.modifiers()
                jtype = self.parse_type()
                vname = self.expect_ident()
                if self.accept(":"):
                    iterable = self.parse_expression()
                    header_end = self.expect(")").line
                    body, end = self.statement_as_body()
                    return JStmt("foreach", (start, end), header_end,
                                 type=jtype, var=vname, iterable=iterable, arms=[body])
                self.i = save
            except JavaSyntaxError:
                self.i = save
        init = None
        if not self.at(";"):
            if self.looks_like_type() or (self.peek().kind == "keyword" and self.peek().value in PRIMITIVE_TYPES):
                jtype = self.parse_type()
                declarators = [(self.expect_ident(), self.field_dims_and_init(jtype))]
                while self.accept(","):
                    dname = self.expect_ident()
                    declarators.append((dname, self.field_dims_and_init(jtype)))
                init = JStmt("decl", (start, start), start, type=jtype, declarators=declarators)
            else:
                init = JStmt("expr", (start, start), start, expr=self.parse_expression())
        self.expect(";")
        cond = None if self.at(";") else self.parse_expression()
        self.expect(";")
        update = []
        while not self.at(")"):
            update.append(self.parse_expression())
            if not self.accept(","):
                break
        header_end = self.expect(")").line
        body, end = self.statement_as_body()
        return JStmt("for", (start, end), header_end,
                     cond=cond, init=init, update=update, arms=[body])

    def parse_switch(self) -> JStmt:
        start = self.expect("switch").line
        self.expect("(")
        subject = self.parse_expression()
        header_end = self.expect(")").line
        self.expect("{")
        cases = []
        labels, body = [], []
        seen_label = False
        while not self.at("}"):
            if self.at("case") or self.at("default"):
                if body:
                    cases.append((labels, body))
                    labels, body = [], []
                if self.accept("case"):
                    labels = labels + [self.parse_expression()]
                else:
                    self.expect("default")
                    labels = labels + ["default"]
                self.expect(":")
                seen_label = True
            else:
                if not seen_label:
                    self.error("statement before first case label")
                stmt = self.parse_statement()
                if stmt is not None:
                    body.append(stmt)
        if labels or body:
            cases.append((labels, body))
        end = self.expect("}").line
        arms = [c[1] for c in cases]
        return JStmt("switch", (start, end), header_end, expr=subject,
                     arms=arms, label_exprs=[c[0] for c in cases])

    def parse_try(self) -> JStmt:
        start = self.expect("try").line
        if self.at("("):
            self.error("try-with-resources is outside the supported subset")
        body, _ = self.parse_block_body()
        catches = []
        finally_body = []
        while self.at("catch"):
            self.next()
            self.expect("(")
            ctype = self.parse_type()
            while self.accept("|"):  # multi-catch
                self.parse_type()
            cname = self.expect_ident()
            self.expect(")")
            cbody, _ = self.parse_block_body()
            catches.append((ctype, cname, cbody))
        if self.accept("finally"):
            finally_body, _ = self.parse_block_body()
        end = self.peek(-1).line
        arms = [body] + [c[2] for c in catches] + ([finally_body] if finally_body else [])
        return JStmt("try", (start, end), start, arms=arms, catches=catches)

    # -- expressions --------------------------------------------------------

    def parse_expression(self):
        return self.parse_assignment()

    ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}

    def parse_assignment(self):
        left = self.parse_ternary()
        if self.peek().value in self.ASSIGN_OPS:
            op = self.next().value
            right = self.parse_initializer() if self.at("{") else self.parse_assignment()
            return Assign(left, op, right)
        return left

    def parse_ternary(self):
        cond = self.parse_binary(0)
        if self.accept("?"):
            then = self.parse_expression()
            self.expect(":")
            other = self.parse_ternary()
            return Ternary(cond, then, other)
        return cond

    BINARY_LEVELS = [
        ["||"],
        ["&&"],
        ["|"],
        ["^"],
        ["&"],
        ["==", "!="],
        ["<", ">", "<=", ">=", "instanceof"],
        ["<<", ">>", ">>>"],
        ["+", "-"],
        ["*", "/", "%"],
    ]

    def parse_binary(self, level: int):
        if level >= len(self.BINARY_LEVELS):
            return self.parse_unary()
        left = self.parse_binary(level + 1)
        ops = self.BINARY_LEVELS[level]
        while self.peek().value in ops and self.peek().kind in ("op", "keyword"):
            op = self.next().value
            if op == "instanceof":
                self.parse_type()
                left = Binary(op, left, Literal("type"))
                continue
            right = self.parse_binary(level + 1)
            left = Binary(op, left, right)
        return left

    def parse_unary(self):
        tok = self.peek()
        if tok.value in ("+", "-", "!", "~"):
            self.next()
            return Unary(tok.value, self.parse_unary())
        if tok.value in ("++", "--"):
            self.next()
            return Unary(tok.value, self.parse_unary(), prefix=True)
        # cast: ( Type ) unary  -- heuristic on primitive or Capitalized name
        if tok.value == "(" and self.is_cast_ahead():
            self.next()
            jtype = self.parse_type()
            self.expect(")")
            return Cast(jtype, self.parse_unary())
        return self.parse_postfix()

    def is_cast_ahead(self) -> bool:
        nxt = self.peek(1)
        if nxt.kind == "keyword" and nxt.value in PRIMITIVE_TYPES:
            return True
        if nxt.kind != "ident":
            return False
        j = self.i + 2
        while self.toks[j].value == "." and self.toks[j + 1].kind == "ident":
            j += 2
        while self.toks[j].value == "[" and self.toks[j + 1].value == "]":
            j += 2
        if self.toks[j].value != ")":
            return False
        after = self.toks[j + 1]
        # `(name)` followed by something that must begin an operand
        return (
            after.kind in ("ident", "int", "float", "string", "char")
            or after.value in ("(", "!", "~", "new", "this")
        )

    def parse_postfix(self):
        expr = self.parse_primary()
        while True:
            if self.peek().value == "." and self.peek(1).kind in ("ident", "keyword"):
                self.next()
                name = self.next().value
                if self.at("("):
                    args = self.parse_args()
                    expr = MethodCall(expr, name, args)
                else:
                    expr = FieldAccess(expr, name)
            elif self.at("["):
                self.next()
                idx = self.parse_expression()
                self.expect("]")
                expr = Index(expr, idx)
            elif self.peek().value in ("++", "--"):
                op = self.next().value
                expr = Unary(op, expr, prefix=False)
            else:
                return expr

    def parse_args(self) -> list:
        self.expect("(")
        args = []
        while not self.at(")"):
            args.append(self.parse_expression())
            if not self.accept(","):
                break
        self.expect(")")
        return args

    def parse_primary(self):
        tok = self.peek()
        if tok.kind in ("int", "float", "string", "char"):
            self.next()
            return Literal(tok.value)
        if tok.value in ("true", "false", "null"):
            self.next()
            return Literal(tok.value)
        if tok.value == "this":
            self.next()
            if self.at("("):  # this(...) constructor delegation
                return MethodCall(None, "this", self.parse_args())
            return This()
        if tok.value == "super":
            self.next()
            if self.at("("):
                return MethodCall(None, "super", self.parse_args())
            return Super()
        if tok.value == "new":
            return self.parse_new()
        if tok.value == "(":
            self.next()
            expr = self.parse_expression()
            self.expect(")")
            # lambda: (x) -> ... parses as parenthesized Name then arrow
            if self.at("->"):
                return self.consume_lambda()
            return expr
        if tok.kind == "ident":
            # lambda shorthand: x -> expr
            if self.peek(1).value == "->":
                self.next()
                return self.consume_lambda()
            name = self.next().value
            if self.at("("):
                return MethodCall(None, name, self.parse_args())
            return Name(name)
        if tok.kind == "keyword" and tok.value in PRIMITIVE_TYPES:
            # e.g. int.class — rare; treat as opaque literal
            self.next()
            if self.accept("."):
                self.expect_ident()
            return Literal(tok.value)
        self.error(f"unexpected token {tok.value!r} in expression")

    def consume_lambda(self) -> Lambda:
        self.expect("->")
        start_line = self.peek().line
        if self.at("{"):
            self.skip_balanced("{", "}")
        else:
            self.parse_assignment()
        return Lambda(f"lambda@{start_line}")

    def parse_new(self) -> New:
        self.expect("new")
        jtype = self.parse_type()
        if self.at("["):
            dims = []
            while self.accept("["):
                if self.at("]"):
                    self.expect("]")
                else:
                    dims.append(self.parse_expression())
                    self.expect("]")
            init = self.parse_array_init() if self.at("{") else None
            return New(jtype, [], dims=dims, init=init)
        args = self.parse_args()
        if self.at("{"):  # anonymous class body — outside the subset
            self.error("anonymous class bodies are outside the supported subset")
        return New(jtype, args)


def parse_source(source: str, path: str | None = None) -> JFile:
    return Parser(tokenize(source, path), path).parse_file()
