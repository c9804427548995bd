"""Reader for a typed-STRIPS PDDL subset with conjunctive conditional effects.

Accepted: ``:strips``, ``:typing``, ``:conditional-effects``; positive
conjunctive preconditions and goals; effects built from literals, ``forall``
and ``when`` (with a conjunctive positive condition).  Anything else is
rejected with a located diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass

SUPPORTED_REQUIREMENTS = frozenset({":strips", ":typing", ":conditional-effects"})
_UNSUPPORTED_FORMULAS = {"or", "not", "exists", "forall", "imply", "="}

ROOT_TYPE = "object"


class PDDLError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)


class Sym(str):
    """A lowercased symbol remembering where it was read."""

    line: int
    col: int

    def __new__(cls, text: str, line: int, col: int) -> "Sym":
        obj = super().__new__(cls, text)
        obj.line = line
        obj.col = col
        return obj


class SList(list):
    line: int
    col: int


def tokenize(text: str) -> list[Sym]:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c.isspace():
            i += 1
            col += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            tokens.append(Sym(c, line, col))
            i += 1
            col += 1
        else:
            start, scol = i, col
            while i < n and not text[i].isspace() and text[i] not in "();":
                i += 1
            col += i - start
            tokens.append(Sym(text[start:i].lower(), line, scol))
    return tokens


def read_sexpr(text: str) -> SList:
    tokens = tokenize(text)
    if not tokens:
        raise PDDLError("empty input", 1, 1)
    stack: list[SList] = []
    result = None
    for tok in tokens:
        if tok == "(":
            node = SList()
            node.line, node.col = tok.line, tok.col
            if stack:
                stack[-1].append(node)
            stack.append(node)
        elif tok == ")":
            if not stack:
                raise PDDLError("unbalanced ')'", tok.line, tok.col)
            node = stack.pop()
            if not stack:
                if result is not None:
                    raise PDDLError("more than one top-level expression", tok.line, tok.col)
                result = node
        else:
            if not stack:
                raise PDDLError(f"unexpected symbol {tok!r} at top level", tok.line, tok.col)
            stack[-1].append(tok)
    if stack:
        raise PDDLError("unbalanced '(': input ended inside an expression", stack[-1].line, stack[-1].col)
    return result


# --------------------------------------------------------------------------- model


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[str, ...]

    def ground(self, binding: dict[str, str]) -> tuple[str, tuple[str, ...]]:
        return self.predicate, tuple(binding.get(a, a) for a in self.args)

    def __str__(self) -> str:
        return "(" + " ".join((self.predicate,) + self.args) + ")"


@dataclass(frozen=True)
class Effect:
    """One effect of a schema: forall params, conjunctive condition, literals."""

    params: tuple[tuple[str, str], ...]
    condition: tuple[Atom, ...]
    adds: tuple[Atom, ...]
    deletes: tuple[Atom, ...]


@dataclass(frozen=True)
class Schema:
    name: str
    params: tuple[tuple[str, str], ...]
    pre: tuple[Atom, ...]
    effects: tuple[Effect, ...]


@dataclass
class LiftedTask:
    domain_name: str
    problem_name: str
    requirements: tuple[str, ...]
    types: dict[str, str | None]  # type -> parent
    objects: dict[str, str]  # constants then problem objects, declaration order
    predicates: dict[str, tuple[str, ...]]
    schemata: tuple[Schema, ...]
    init: tuple[tuple[str, tuple[str, ...]], ...]
    goal: tuple[tuple[str, tuple[str, ...]], ...]
    n_constants: int = 0

    def is_subtype(self, t: str, ancestor: str) -> bool:
        if ancestor == ROOT_TYPE:
            return True
        seen = set()
        while t is not None and t not in seen:
            if t == ancestor:
                return True
            seen.add(t)
            t = self.types.get(t)
        return False

    def objects_of(self, t: str) -> list[str]:
        return [o for o, ot in self.objects.items() if self.is_subtype(ot, t)]


# --------------------------------------------------------------------------- helpers


def _loc(node) -> tuple[int | None, int | None]:
    return getattr(node, "line", None), getattr(node, "col", None)


def _fail(msg: str, node) -> PDDLError:
    return PDDLError(msg, *_loc(node))


def _typed_list(items: list, node, what: str) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    pending: list[Sym] = []
    i = 0
    while i < len(items):
        tok = items[i]
        if isinstance(tok, SList):
            raise _fail(f"unexpected list in {what}", tok)
        if tok == "-":
            if i + 1 >= len(items):
                raise _fail(f"missing type after '-' in {what}", tok)
            t = items[i + 1]
            if isinstance(t, SList):
                raise _fail("unsupported construct 'either' type", t)
            if not pending:
                raise _fail(f"type {t} names no entries in {what}", t)
            out.extend((p, str(t)) for p in pending)
            pending = []
            i += 2
        else:
            pending.append(tok)
            i += 1
    out.extend((p, ROOT_TYPE) for p in pending)
    return out


def _sections(body: list, node) -> list[tuple[str, SList]]:
    out = []
    for item in body:
        if not isinstance(item, SList) or not item or not isinstance(item[0], Sym):
            raise _fail("expected a (:keyword ...) section", item if isinstance(item, SList) else node)
        out.append((str(item[0]), item))
    return out


class _Scope:
    def __init__(self, lifted: LiftedTask, variables: dict[str, str]):
        self.lifted = lifted
        self.variables = variables

    def atom(self, node) -> Atom:
        if not isinstance(node, SList) or not node:
            raise _fail("expected an atom", node)
        head = node[0]
        if isinstance(head, SList):
            raise _fail("expected a predicate name", head)
        if head in _UNSUPPORTED_FORMULAS:
            raise _fail(f"unsupported construct '{head}'", head)
        sig = self.lifted.predicates.get(head)
        if sig is None:
            raise _fail(f"unknown predicate '{head}'", head)
        args = node[1:]
        if len(args) != len(sig):
            raise _fail(f"predicate '{head}' expects {len(sig)} arguments, got {len(args)}", node)
        for arg, want in zip(args, sig):
            if isinstance(arg, SList):
                raise _fail("nested terms are not supported", arg)
            if arg.startswith("?"):
                if arg not in self.variables:
                    raise _fail(f"unbound variable '{arg}'", arg)
                have = self.variables[arg]
                if not (self.lifted.is_subtype(have, want) or self.lifted.is_subtype(want, have)):
                    raise _fail(f"variable '{arg}' of type {have} used where {want} is required", arg)
            else:
                if arg not in self.lifted.objects:
                    raise _fail(f"unknown constant '{arg}'", arg)
                if not self.lifted.is_subtype(self.lifted.objects[arg], want):
                    raise _fail(f"constant '{arg}' is not of type {want}", arg)
        return Atom(str(head), tuple(str(a) for a in args))

    def conjunction(self, node, what: str) -> list[Atom]:
        if isinstance(node, SList) and not node:
            return []
        if not isinstance(node, SList):
            raise _fail(f"expected a formula in {what}", node)
        head = node[0]
        if head == "and":
            out = []
            for sub in node[1:]:
                out.extend(self.conjunction(sub, what))
            return out
        if isinstance(head, Sym) and head in _UNSUPPORTED_FORMULAS:
            raise _fail(f"unsupported construct '{head}' in {what}", head)
        return [self.atom(node)]


def _parse_effect(scope: _Scope, node, params, cond, out: list[Effect], base: list) -> None:
    """Flatten an effect formula into ``out``; unconditional literals go to ``base``."""
    if isinstance(node, SList) and not node:
        return
    if not isinstance(node, SList):
        raise _fail("expected an effect", node)
    head = node[0]
    if head == "and":
        adds, dels = [], []
        for sub in node[1:]:
            if isinstance(sub, SList) and sub and sub[0] in ("forall", "when"):
                _parse_effect(scope, sub, params, cond, out, base)
            else:
                _literal(scope, sub, adds, dels)
        if adds or dels:
            _emit(params, cond, adds, dels, out, base)
        return
    if head == "forall":
        if len(node) != 3 or not isinstance(node[1], SList):
            raise _fail("malformed forall effect", node)
        new = _typed_list(list(node[1]), node[1], "forall parameters")
        variables = dict(scope.variables)
        for v, t in new:
            if not v.startswith("?"):
                raise _fail(f"forall parameter '{v}' must be a variable", v)
            if t not in scope.lifted.types and t != ROOT_TYPE:
                raise _fail(f"unknown type '{t}'", v)
            variables[v] = t
        inner = _Scope(scope.lifted, variables)
        _parse_effect(inner, node[2], params + tuple((str(v), t) for v, t in new), cond, out, base)
        return
    if head == "when":
        if len(node) != 3:
            raise _fail("malformed when effect", node)
        if cond:
            raise _fail("unsupported construct: nested 'when'", node)
        condition = tuple(scope.conjunction(node[1], "effect condition"))
        adds, dels = [], []
        body = node[2]
        subs = body[1:] if isinstance(body, SList) and body and body[0] == "and" else [body]
        for sub in subs:
            if isinstance(sub, SList) and sub and sub[0] in ("forall", "when"):
                raise _fail(f"unsupported construct '{sub[0]}' inside when", sub)
            _literal(scope, sub, adds, dels)
        out.append(Effect(params, condition, tuple(adds), tuple(dels)))
        return
    adds, dels = [], []
    _literal(scope, node, adds, dels)
    _emit(params, cond, adds, dels, out, base)


def _emit(params, cond, adds, dels, out, base) -> None:
    if not params and not cond:
        base[0].extend(adds)
        base[1].extend(dels)
    else:
        out.append(Effect(params, tuple(cond), tuple(adds), tuple(dels)))


def _literal(scope: _Scope, node, adds: list, dels: list) -> None:
    if isinstance(node, SList) and node and node[0] == "not":
        if len(node) != 2:
            raise _fail("malformed negative effect", node)
        dels.append(scope.atom(node[1]))
    elif isinstance(node, SList) and node and isinstance(node[0], Sym) and node[0] in (
        "increase", "decrease", "assign", "scale-up", "scale-down",
    ):
        raise _fail(f"unsupported construct '{node[0]}'", node[0])
    else:
        adds.append(scope.atom(node))


def _parse_action(lifted: LiftedTask, node: SList) -> Schema:
    if len(node) < 2 or isinstance(node[1], SList):
        raise _fail("action needs a name", node)
    name = str(node[1])
    fields_ = {}
    i = 2
    while i < len(node):
        key = node[i]
        if not isinstance(key, Sym) or not key.startswith(":") or i + 1 >= len(node):
            raise _fail(f"malformed action '{name}'", key if isinstance(key, Sym) else node)
        if key not in (":parameters", ":precondition", ":effect"):
            raise _fail(f"unsupported action field '{key}'", key)
        fields_[str(key)] = node[i + 1]
        i += 2
    params_node = fields_.get(":parameters", SList())
    if not isinstance(params_node, SList):
        raise _fail("parameters must be a list", params_node)
    params = _typed_list(list(params_node), params_node, "parameters")
    variables = {}
    for v, t in params:
        if not v.startswith("?"):
            raise _fail(f"parameter '{v}' must be a variable", v)
        if t != ROOT_TYPE and t not in lifted.types:
            raise _fail(f"unknown type '{t}'", v)
        variables[str(v)] = t
    scope = _Scope(lifted, variables)
    pre = tuple(scope.conjunction(fields_.get(":precondition", SList()), "precondition"))
    effects: list[Effect] = []
    base: list = [[], []]
    _parse_effect(scope, fields_.get(":effect", SList()), (), (), effects, base)
    if base[0] or base[1] or not effects:
        effects.insert(0, Effect((), (), tuple(base[0]), tuple(base[1])))
    return Schema(name, tuple((str(v), t) for v, t in params), pre, tuple(effects))


def parse_domain(text: str) -> LiftedTask:
    root = read_sexpr(text)
    if len(root) < 2 or root[0] != "define" or not isinstance(root[1], SList) or len(root[1]) != 2 or root[1][0] != "domain":
        raise _fail("expected (define (domain NAME) ...)", root)
    lifted = LiftedTask(str(root[1][1]), "", (), {}, {}, {}, (), (), ())
    actions = []
    for key, sec in _sections(root[2:], root):
        if key == ":requirements":
            for req in sec[1:]:
                if req not in SUPPORTED_REQUIREMENTS:
                    raise _fail(f"unsupported requirement '{req}'", req)
            lifted.requirements = tuple(str(r) for r in sec[1:])
        elif key == ":types":
            for t, parent in _typed_list(list(sec[1:]), sec, "types"):
                lifted.types[str(t)] = None if parent == ROOT_TYPE else parent
            for t, parent in list(lifted.types.items()):
                if parent is not None and parent not in lifted.types:
                    lifted.types[parent] = None
        elif key == ":constants":
            for c, t in _typed_list(list(sec[1:]), sec, "constants"):
                if t != ROOT_TYPE and t not in lifted.types:
                    raise _fail(f"unknown type '{t}'", c)
                lifted.objects[str(c)] = t
            lifted.n_constants = len(lifted.objects)
        elif key == ":predicates":
            for p in sec[1:]:
                if not isinstance(p, SList) or not p or isinstance(p[0], SList):
                    raise _fail("malformed predicate declaration", p)
                sig = _typed_list(list(p[1:]), p, "predicate")
                for v, t in sig:
                    if t != ROOT_TYPE and t not in lifted.types:
                        raise _fail(f"unknown type '{t}'", v)
                lifted.predicates[str(p[0])] = tuple(t for _, t in sig)
        elif key == ":action":
            actions.append(sec)
        else:
            raise _fail(f"unsupported domain section '{key}'", sec[0])
    lifted.schemata = tuple(_parse_action(lifted, a) for a in actions)
    return lifted


def parse_problem(lifted: LiftedTask, text: str) -> LiftedTask:
    root = read_sexpr(text)
    if len(root) < 2 or root[0] != "define" or not isinstance(root[1], SList) or len(root[1]) != 2 or root[1][0] != "problem":
        raise _fail("expected (define (problem NAME) ...)", root)
    lifted.problem_name = str(root[1][1])
    init_node = goal_node = None
    for key, sec in _sections(root[2:], root):
        if key == ":domain":
            if len(sec) != 2 or sec[1] != lifted.domain_name:
                raise _fail(f"problem is for domain '{sec[1] if len(sec) > 1 else ''}', not '{lifted.domain_name}'", sec)
        elif key == ":objects":
            for o, t in _typed_list(list(sec[1:]), sec, "objects"):
                if t != ROOT_TYPE and t not in lifted.types:
                    raise _fail(f"unknown type '{t}'", o)
                if o in lifted.objects and lifted.objects[o] != t:
                    raise _fail(f"object '{o}' declared twice with different types", o)
                lifted.objects[str(o)] = t
        elif key == ":init":
            init_node = sec
        elif key == ":goal":
            goal_node = sec
        elif key == ":requirements":
            for req in sec[1:]:
                if req not in SUPPORTED_REQUIREMENTS:
                    raise _fail(f"unsupported requirement '{req}'", req)
        else:
            raise _fail(f"unsupported problem section '{key}'", sec[0])
    scope = _Scope(lifted, {})
    init = []
    if init_node is not None:
        for a in init_node[1:]:
            init.append(scope.atom(a))
    goal = []
    if goal_node is not None:
        if len(goal_node) != 2:
            raise _fail("goal must be a single formula", goal_node)
        goal = scope.conjunction(goal_node[1], "goal")
    lifted.init = tuple(dict.fromkeys((a.predicate, a.args) for a in init))
    lifted.goal = tuple(dict.fromkeys((a.predicate, a.args) for a in goal))
    return lifted


def parse(domain_text: str, problem_text: str) -> LiftedTask:
    return parse_problem(parse_domain(domain_text), problem_text)
