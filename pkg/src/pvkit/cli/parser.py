"""Line-oriented DSL for difference systems.

One statement per line; ``#`` starts a comment.  Expressions use Python
arithmetic syntax with ``^`` accepted as a power operator, so the strings
pvkit prints for elements parse back unchanged.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field

from ..algebra import QQ, cyclotomic_field, quadratic_field
from ..errors import DomainError, ParseError
from ..rings import CyclicProduct, ProductElement, QDilationField, ShiftField, ShiftPolyRing

VERBS = {
    # verb: (min args, max args)
    "constants": (0, 0),
    "solve": (1, 1),
    "group": (1, 1),
    "pv": (1, 1),
    "verify": (1, 1),
    "descend": (1, 1),
    "universal": (1, None),
    "basechange": (1, 1),
    "split": (1, 1),
    "fractions": (0, 0),
    "simple": (0, 0),
}

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_FIELD = r"Q(?:\((?:i|zeta_\d+|sqrt\(-?\d+\))\))?"
_RING_RE = re.compile(
    rf"ring\s+(?P<kind>shift|qdil|cyclic)\s+(?P<field>{_FIELD})(?P<var>\(x\)|\[x\])?(?P<rest>.*)$"
)
_MODULE_RE = re.compile(rf"module\s+(?P<name>{_NAME})\s*=\s*(?P<expr>.+)$")
_EQ_RE = re.compile(rf"eq\s+(?P<name>{_NAME})\s*:\s*(?P<lhs>[^=]+?)\s*=\s*(?P<rhs>.+)$")


@dataclass
class Command:
    kind: str
    line: int
    text: str
    args: dict = field(default_factory=dict)
    # column (1-based) where each expression argument starts
    columns: dict = field(default_factory=dict)


def parse_field(spec: str, line=None, column=None):
    """``Q``, ``Q(i)``, ``Q(zeta_n)`` or ``Q(sqrt(d))``."""
    if spec == "Q":
        return QQ
    m = re.fullmatch(r"Q\((i|zeta_(\d+)|sqrt\((-?\d+)\))\)", spec)
    if not m:
        raise ParseError(f"unknown constants field {spec!r}", line, column)
    if m.group(1) == "i":
        return cyclotomic_field(4)
    if m.group(2):
        return cyclotomic_field(int(m.group(2)))
    d = int(m.group(3))
    if d == 0 or d == 1:
        raise ParseError(f"sqrt({d}) does not generate a field extension", line, column)
    return quadratic_field(d)


def _strip_comment(raw):
    return raw.split("#", 1)[0].rstrip()


def parse_program(text: str) -> list[Command]:
    """Syntax-level parse; names and expressions are resolved when the session runs."""
    commands = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        stmt = body.strip()
        commands.append(_parse_statement(stmt, lineno, indent))
    return commands


def _parse_statement(stmt, lineno, indent):
    head = stmt.split(None, 1)[0]
    col = indent + 1
    if head == "ring":
        return _parse_ring(stmt, lineno, indent)
    if head == "module":
        m = _MODULE_RE.match(stmt)
        if not m:
            raise ParseError("expected 'module NAME = [[...]]'", lineno, col)
        cmd = Command("module", lineno, stmt, {"name": m.group("name"), "expr": m.group("expr")})
        cmd.columns["expr"] = indent + m.start("expr") + 1
        check_syntax(cmd.args["expr"], lineno, cmd.columns["expr"])
        return cmd
    if head == "eq":
        m = _EQ_RE.match(stmt)
        if not m:
            raise ParseError("expected 'eq NAME: y(...) = ...'", lineno, col)
        cmd = Command("eq", lineno, stmt, {"name": m.group("name"), "lhs": m.group("lhs"), "rhs": m.group("rhs")})
        cmd.columns["lhs"] = indent + m.start("lhs") + 1
        cmd.columns["rhs"] = indent + m.start("rhs") + 1
        check_syntax(cmd.args["lhs"], lineno, cmd.columns["lhs"])
        check_syntax(cmd.args["rhs"], lineno, cmd.columns["rhs"])
        return cmd
    if head not in VERBS:
        raise ParseError(f"unknown command {head!r}", lineno, col)
    return _parse_verb(head, stmt, lineno, indent)


def _parse_ring(stmt, lineno, indent):
    m = _RING_RE.match(stmt)
    if not m:
        raise ParseError("expected 'ring shift|qdil|cyclic FIELD ...'", lineno, indent + 1)
    kind, var, rest = m.group("kind"), m.group("var"), m.group("rest").strip()
    fcol = indent + m.start("field") + 1
    F = parse_field(m.group("field"), lineno, fcol)
    args = {"kind": kind, "field": F}
    rest_col = indent + m.start("rest") + 1 + (len(m.group("rest")) - len(m.group("rest").lstrip()))
    if kind == "cyclic":
        if var is not None:
            raise ParseError("a cyclic product takes no variable", lineno, indent + m.start("var") + 1)
        cm = re.fullmatch(r"(\d+)(?:\s+blocks=\(\s*(\d+(?:\s*,\s*\d+)*)\s*\))?", rest)
        if not cm:
            raise ParseError("expected 'ring cyclic FIELD n [blocks=(b1,...)]'", lineno, rest_col)
        n = int(cm.group(1))
        blocks = tuple(int(b) for b in cm.group(2).split(",")) if cm.group(2) else (n,)
        if n < 1 or sum(blocks) != n:
            raise ParseError("block sizes must be positive and sum to n", lineno, rest_col)
        args["blocks"] = blocks
        return Command("ring", lineno, stmt, args)
    if var is None:
        raise ParseError("expected '(x)' or '[x]' after the constants field", lineno, indent + m.end("field") + 1)
    if kind == "shift":
        if rest:
            raise ParseError(f"unexpected {rest!r}", lineno, rest_col)
        args["poly"] = var == "[x]"
        return Command("ring", lineno, stmt, args)
    if var != "(x)":
        raise ParseError("q-dilation is defined on the rational function field only", lineno, indent + m.start("var") + 1)
    qm = re.fullmatch(r"q\s*=\s*(\S.*)", rest)
    if not qm:
        raise ParseError("expected 'q=VALUE'", lineno, rest_col)
    cmd = Command("ring", lineno, stmt, args)
    cmd.args["q"] = qm.group(1)
    cmd.columns["q"] = rest_col + qm.start(1)
    check_syntax(cmd.args["q"], lineno, cmd.columns["q"])
    return cmd


def _parse_verb(verb, stmt, lineno, indent):
    tokens = [(m.group(), indent + m.start() + 1) for m in re.finditer(r"\S+", stmt)][1:]
    args = {}
    if verb == "descend":
        m = re.fullmatch(rf"descend\s+({_NAME})\s+chi\s*=\s*(.+)", stmt)
        if not m:
            raise ParseError("expected 'descend NAME chi=(k1,...)'", lineno, indent + 1)
        chi_col = indent + m.start(2) + 1
        args["names"] = [m.group(1)]
        args["chi"] = _parse_int_tuple(m.group(2), lineno, chi_col)
        return Command(verb, lineno, stmt, args)
    lo, hi = VERBS[verb]
    if len(tokens) < lo:
        raise ParseError(f"'{verb}' expects {lo} argument(s), got {len(tokens)}", lineno, indent + len(stmt) + 1)
    if hi is not None and len(tokens) > hi:
        raise ParseError(f"'{verb}' expects at most {hi} argument(s), got {len(tokens)}", lineno, tokens[hi][1])
    if verb == "basechange":
        args["field"] = parse_field(tokens[0][0], lineno, tokens[0][1])
        return Command(verb, lineno, stmt, args)
    for tok, col in tokens:
        if not re.fullmatch(_NAME, tok):
            raise ParseError(f"expected a name, got {tok!r}", lineno, col)
    args["names"] = [t for t, _ in tokens]
    cmd = Command(verb, lineno, stmt, args)
    cmd.columns["names"] = [c for _, c in tokens]
    return cmd


def _parse_int_tuple(text, lineno, col):
    text = text.strip()
    m = re.fullmatch(r"\(?\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*,?\s*\)?", text)
    if not m or (text.startswith("(") != text.endswith(")")):
        raise ParseError(f"malformed character {text!r}", lineno, col)
    return tuple(int(v) for v in m.group(1).split(","))


# -- expressions ---------------------------------------------------------------

def _translate(src):
    """Replace ``^`` by ``**`` and keep a map from new to original offsets."""
    out, origin = [], []
    for i, ch in enumerate(src):
        if ch == "^":
            out.append("**")
            origin.extend([i, i])
        else:
            out.append(ch)
            origin.append(i)
    origin.append(len(src))
    return "".join(out), origin


def _parse_expr(src, lineno, col):
    text, origin = _translate(src)
    try:
        return ast.parse(text.strip(), mode="eval").body, origin, text
    except SyntaxError as exc:
        lead = len(text) - len(text.lstrip())
        off = (exc.offset or 1) - 1 + lead
        off = origin[min(off, len(origin) - 1)]
        raise ParseError(f"syntax error: {exc.msg}", lineno, col + off) from None


def check_syntax(src, lineno, col):
    _parse_expr(src, lineno, col)


class Linear:
    """a*y(x) + b while evaluating the right-hand side of an equation."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b


class Evaluator:
    """Evaluate DSL expressions to elements of ``ring``."""

    def __init__(self, ring, lineno, col):
        self.ring = ring
        self.lineno = lineno
        self.col = col
        self.origin = None
        self.lead = 0
        F = ring.field
        self.names = {}
        if F.degree > 1 and not F.gen_name.startswith("sqrt("):
            self.names[F.gen_name] = F.gen

    def error(self, msg, node=None):
        col = self.col
        if node is not None and self.origin is not None:
            off = self.lead + getattr(node, "col_offset", 0)
            col += self.origin[min(off, len(self.origin) - 1)]
        return ParseError(msg, self.lineno, col)

    def _start(self, src):
        node, origin, text = _parse_expr(src, self.lineno, self.col)
        self.origin = origin
        self.lead = len(text) - len(text.lstrip())
        return node

    def element(self, src):
        value = self._eval(self._start(src), allow_y=False)
        return self._to_ring(value)

    def matrix(self, src):
        node = self._start(src)
        if not isinstance(node, ast.List) or not node.elts or not all(isinstance(r, ast.List) for r in node.elts):
            raise self.error("a module literal must be a nonempty list of rows [[...], ...]", node)
        rows = [[self._to_ring(self._eval(e, False)) for e in r.elts] for r in node.elts]
        n = len(rows)
        for r, rn in zip(rows, node.elts):
            if len(r) != n:
                raise self.error(f"matrix must be square: row of length {len(r)} in a {n}-row matrix", rn)
        return rows

    def linear(self, src):
        """Right-hand side a*y(x) + b."""
        v = self._eval(self._start(src), allow_y=True)
        if not isinstance(v, Linear):
            v = Linear(self.ring.zero, self._to_ring(v))
        return v.a, v.b

    def shifted_argument(self, src):
        """Check that the left-hand side is y applied to tau(x)."""
        node = self._start(src)
        if not (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "y" and len(node.args) == 1):
            raise self.error("left-hand side must be y(x+1) or y(q*x)", node)
        arg = node.args[0]
        R = self.ring
        if isinstance(R, CyclicProduct):
            ok = ast.dump(arg) == ast.dump(ast.parse("x+1", mode="eval").body)
        else:
            try:
                ok = self._to_ring(self._eval(arg, False, allow_x=True)) == R.tau(R.x())
            except ParseError:
                ok = False
        if not ok:
            want = f"y({_tau_text(R)})"
            raise self.error(f"left-hand side must be {want} for this ring", arg)

    def _to_ring(self, v):
        if isinstance(v, Linear):
            raise self.error("y(x) may only appear on the right-hand side of an equation")
        try:
            return self.ring.element(v)
        except DomainError as exc:
            raise self.error(str(exc)) from None

    def _const(self, c):
        return self.ring.element(self.ring.field(c))

    def _eval(self, node, allow_y, allow_x=None):
        R = self.ring
        if allow_x is None:
            allow_x = not isinstance(R, CyclicProduct)
        ev = lambda n: self._eval(n, allow_y, allow_x)  # noqa: E731
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise self.error(f"malformed rational {node.value!r}: use integers and '/'", node)
            return self._const(node.value)
        if isinstance(node, ast.Name):
            if node.id == "x":
                if not allow_x:
                    raise self.error("x is not defined in a cyclic product ring", node)
                return R.x()
            if node.id in self.names:
                return self._const(self.names[node.id])
            raise self.error(f"unknown identifier {node.id!r}", node)
        if isinstance(node, ast.Call):
            return self._call(node, allow_y, allow_x)
        if isinstance(node, ast.Tuple):
            if not isinstance(R, CyclicProduct):
                raise self.error("tuples denote elements of a cyclic product ring", node)
            coords = []
            for e in node.elts:
                c = self._to_ring(ev(e))
                if len(set(c.coords)) != 1:
                    raise self.error("tuple coordinates must be constants", e)
                coords.append(c.coords[0])
            if len(coords) != R.n:
                raise self.error(f"expected {R.n} coordinates, got {len(coords)}", node)
            return ProductElement(R.field, coords)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            if isinstance(node.op, ast.UAdd):
                return v
            return Linear(-v.a, -v.b) if isinstance(v, Linear) else -v
        if isinstance(node, ast.BinOp):
            return self._binop(node, ev)
        raise self.error(f"unsupported syntax {type(node).__name__}", node)

    def _call(self, node, allow_y, allow_x):
        R = self.ring
        name = node.func.id if isinstance(node.func, ast.Name) else None
        if name == "y":
            if not allow_y:
                raise self.error("y(x) may only appear on the right-hand side of an equation", node)
            if len(node.args) != 1 or not (isinstance(node.args[0], ast.Name) and node.args[0].id == "x"):
                raise self.error("only y(x) may appear on the right-hand side", node)
            return Linear(R.one, R.zero)
        if name == "sqrt":
            if len(node.args) != 1:
                raise self.error("sqrt takes one integer argument", node)
            arg = node.args[0]
            sign = 1
            if isinstance(arg, ast.UnaryOp) and isinstance(arg.op, ast.USub):
                sign, arg = -1, arg.operand
            if not (isinstance(arg, ast.Constant) and type(arg.value) is int):
                raise self.error("sqrt takes one integer argument", node)
            d = sign * arg.value
            F = R.field
            if F.gen_name == f"sqrt({d})":
                return self._const(F.gen)
            raise self.error(f"sqrt({d}) is not the generator of {F.name}", node)
        raise self.error(f"unknown function {name!r}", node)

    def _binop(self, node, ev):
        op = node.op
        if isinstance(op, (ast.Pow, ast.BitXor)):
            base = ev(node.left)
            k = self._int_literal(node.right)
            if isinstance(base, Linear):
                if k != 1:
                    raise self.error("y(x) must enter linearly", node)
                return base
            base = self._to_ring(base)
            if k < 0:
                if not self.ring.is_unit(base):
                    raise self.error("negative power of a non-unit", node)
                return self._inverse(base, node) ** (-k)
            return base ** k
        left, right = ev(node.left), ev(node.right)
        if isinstance(op, (ast.Add, ast.Sub)):
            sign = 1 if isinstance(op, ast.Add) else -1
            if isinstance(left, Linear) or isinstance(right, Linear):
                la = left if isinstance(left, Linear) else Linear(self.ring.zero, left)
                ra = right if isinstance(right, Linear) else Linear(self.ring.zero, right)
                if sign > 0:
                    return Linear(la.a + ra.a, la.b + ra.b)
                return Linear(la.a - ra.a, la.b - ra.b)
            return left + right if sign > 0 else left - right
        if isinstance(op, ast.Mult):
            if isinstance(left, Linear) and isinstance(right, Linear):
                raise self.error("y(x) must enter linearly", node)
            if isinstance(left, Linear):
                return Linear(left.a * right, left.b * right)
            if isinstance(right, Linear):
                return Linear(left * right.a, left * right.b)
            return left * right
        if isinstance(op, ast.Div):
            if isinstance(right, Linear):
                raise self.error("cannot divide by y(x)", node)
            if not right:
                raise self.error("division by zero", node)
            inv = self._inverse(self._to_ring(right), node)
            if isinstance(left, Linear):
                return Linear(left.a * inv, left.b * inv)
            return left * inv
        raise self.error(f"unsupported operator {type(op).__name__}", node)

    def _inverse(self, e, node):
        R = self.ring
        if isinstance(R, ShiftPolyRing):
            if not R.is_unit(e):
                raise self.error(f"{e} is not invertible in {R.name}", node)
            return R.inverse(e)
        if isinstance(R, CyclicProduct):
            if not R.is_unit(e):
                raise self.error(f"{e} is not invertible in {R.name}", node)
            return ProductElement(R.field, [c.inverse() for c in e.coords])
        return e.inverse()

    def _int_literal(self, node):
        sign = 1
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            sign, node = -1, node.operand
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return sign * node.value
        raise self.error("exponents must be integer literals", node)


def _tau_text(R):
    if isinstance(R, QDilationField):
        return f"{R.q}*x"
    return "x+1"


def build_ring(cmd: Command):
    a = cmd.args
    F = a["field"]
    if a["kind"] == "cyclic":
        return CyclicProduct(F, blocks=a["blocks"])
    if a["kind"] == "shift":
        return ShiftPolyRing(F) if a["poly"] else ShiftField(F)
    q = Evaluator(ShiftField(F), cmd.line, cmd.columns["q"]).element(a["q"])
    if not q.is_constant():
        raise ParseError("q must be a constant", cmd.line, cmd.columns["q"])
    return QDilationField(F, q.constant_value())


def element_str(e):
    """Printed form of a ring element; parses back to the same element."""
    if isinstance(e, ProductElement):
        return "(" + ", ".join(str(c) for c in e.coords) + ")"
    return str(e)


def module_literal(name, B):
    rows = ", ".join("[" + ", ".join(element_str(e) for e in row) + "]" for row in B)
    return f"module {name} = [{rows}]"


__all__ = [
    "Command",
    "Evaluator",
    "build_ring",
    "element_str",
    "module_literal",
    "parse_field",
    "parse_program",
]
