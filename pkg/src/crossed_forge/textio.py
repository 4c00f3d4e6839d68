"""Line-oriented ``key = value`` construct files.

One construct per file, chosen by its keys::

    family = holder(n=4, m=2, i=2, j=3)      # any family

    m = 3                                     # a cocycle profile
    n = inf
    phi = [0, 1, 1]

    H = cyclic(2)                             # a crossed system
    G = cyclic(2)
    alpha = [[0, 1], [0, 1]]
    f = [[0, 0], [0, 1]]

    group = table([[0, 1], [1, 0]])           # a finite group

Group expressions are ``cyclic(n)``, ``klein_four``, ``table([[...]])`` or a
finite family call.  ``#`` starts a comment.
"""

from __future__ import annotations

import ast
from typing import Any, Union

import numpy as np

from .cocycles import INF, CocycleProfile
from .crossed_system import CrossedSystem
from .errors import CrossedForgeError, ParseError, SemanticError
from .families import (
    FAMILY_KINDS,
    FinByInf,
    GroupFamily,
    Holder,
    InfByFinAbelian,
    InfByFinFlip,
    KleinBottle,
    TwistedFinite,
    TwistedInfinite,
    ZxZ,
)
from .table import FiniteGroupTable, cyclic_table, klein_four_table

Construct = Union[CrossedSystem, GroupFamily, CocycleProfile, FiniteGroupTable]


class _Call:
    def __init__(self, name: str, args: list, kwargs: dict):
        self.name, self.args, self.kwargs = name, args, kwargs


class _Name:
    def __init__(self, name: str):
        self.name = name


def _eval(node: ast.AST) -> Any:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand)
        if isinstance(v, int):
            return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.List):
        return [_eval(e) for e in node.elts]
    if isinstance(node, ast.Name):
        return INF if node.id == "inf" else _Name(node.id)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        return _Call(node.func.id, [_eval(a) for a in node.args], {k.arg: _eval(k.value) for k in node.keywords})
    raise _NodeError(node)


class _NodeError(Exception):
    def __init__(self, node):
        self.node = node


def _parse_value(text: str, line: int, col: int) -> Any:
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as e:
        raise ParseError(f"invalid value {text!r}", line, col + (e.offset or 1) - 1) from None
    try:
        return _eval(tree.body)
    except _NodeError as e:
        raise ParseError(f"unsupported expression in {text!r}", line, col + getattr(e.node, "col_offset", 0)) from None


def _family(v: Any) -> GroupFamily:
    if isinstance(v, _Name):
        if v.name == "klein_bottle":
            return KleinBottle()
        if v.name == "zxz":
            return ZxZ()
        raise SemanticError(f"unknown family {v.name!r}")
    if not isinstance(v, _Call):
        raise SemanticError("family must be a call such as holder(n=4, m=2, i=2, j=3)")
    if v.args:
        raise SemanticError("family parameters must be given by keyword")
    kw = dict(v.kwargs)
    if v.name == "twisted":
        n, m, phi = kw.pop("n", None), kw.pop("m", None), kw.pop("phi", None)
        if kw or m is None or phi is None or n is None:
            raise SemanticError("twisted(...) takes exactly n, m and phi")
        return TwistedInfinite(m, tuple(phi)) if n == INF else TwistedFinite(n, m, tuple(phi))
    cls = FAMILY_KINDS.get(v.name)
    if cls is None or cls in (ZxZ, KleinBottle):
        raise SemanticError(f"unknown family {v.name!r}")
    return cls(**kw)


def _group(v: Any) -> FiniteGroupTable:
    if isinstance(v, _Name) and v.name == "klein_four":
        return klein_four_table()
    if isinstance(v, _Call):
        if v.name == "cyclic" and len(v.args) == 1 and not v.kwargs:
            return cyclic_table(v.args[0])
        if v.name == "table" and len(v.args) == 1 and not v.kwargs:
            return FiniteGroupTable(np.array(v.args[0]))
        fam = _family(v)
        if fam.finite:
            return fam.to_table()
    raise SemanticError("group must be cyclic(n), klein_four, table([[...]]) or a finite family")


def parse_construct(text: str) -> Construct:
    """Parse one construct file; errors carry line and column."""
    entries: dict[str, tuple[Any, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1)
        key, _, value = line.partition("=")
        key = key.strip()
        if not key.isidentifier():
            raise ParseError(f"invalid key {key!r}", lineno, 1)
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        col = line.index("=") + 2 + len(value) - len(value.lstrip())
        entries[key] = (_parse_value(value.strip(), lineno, col), lineno)

    keys = set(entries)
    first = min((ln for _, ln in entries.values()), default=None)

    def build(fn, *args, line=first):
        try:
            return fn(*args)
        except SemanticError as e:
            raise SemanticError(str(e), line) from e.__cause__
        except (CrossedForgeError, ValueError, TypeError) as e:
            raise SemanticError(str(e), line) from e

    if keys == {"family"}:
        v, ln = entries["family"]
        return build(_family, v, line=ln)
    if keys == {"group"}:
        v, ln = entries["group"]
        return build(_group, v, line=ln)
    if keys == {"m", "n", "phi"}:
        m, n, phi = (entries[k][0] for k in ("m", "n", "phi"))
        return build(lambda: CocycleProfile(m, n, tuple(phi)), line=entries["phi"][1])
    if keys == {"H", "G", "alpha", "f"}:
        H = build(_group, entries["H"][0], line=entries["H"][1])
        G = build(_group, entries["G"][0], line=entries["G"][1])
        return build(lambda: CrossedSystem(H, G, np.array(entries["alpha"][0]), np.array(entries["f"][0])),
                     line=entries["alpha"][1])
    raise ParseError(f"unrecognized set of keys {sorted(keys)}", first)


def _fmt_n(n) -> str:
    return "inf" if n == INF else str(n)


def _fmt_list(v) -> str:
    return "[" + ", ".join(_fmt_list(x) if isinstance(x, (list, tuple, np.ndarray)) else str(int(x)) for x in v) + "]"


def family_literal(fam: GroupFamily) -> str:
    if isinstance(fam, Holder):
        return f"holder(n={fam.n}, m={fam.m}, i={fam.i}, j={fam.j})"
    if isinstance(fam, (TwistedFinite, TwistedInfinite)):
        return f"twisted(n={_fmt_n(fam.n)}, m={fam.m}, phi={_fmt_list(fam.phi)})"
    if isinstance(fam, (FinByInf, InfByFinAbelian)):
        return f"{fam.kind}(n={fam.n}, t={fam.t})"
    if isinstance(fam, InfByFinFlip):
        return f"{fam.kind}(n={fam.n})"
    return fam.kind


def group_literal(t: FiniteGroupTable) -> str:
    if t == cyclic_table(t.order):
        return f"cyclic({t.order})"
    return f"table({_fmt_list(t.product)})"


def format_construct(obj: Construct) -> str:
    """Inverse of :func:`parse_construct` (up to labels and whitespace)."""
    if isinstance(obj, GroupFamily):
        return f"family = {family_literal(obj)}\n"
    if isinstance(obj, CocycleProfile):
        return f"m = {obj.m}\nn = {_fmt_n(obj.n)}\nphi = {_fmt_list(obj.phi)}\n"
    if isinstance(obj, CrossedSystem):
        return (
            f"H = {group_literal(obj.H)}\nG = {group_literal(obj.G)}\n"
            f"alpha = {_fmt_list(obj.alpha)}\nf = {_fmt_list(obj.f)}\n"
        )
    if isinstance(obj, FiniteGroupTable):
        return f"group = {group_literal(obj)}\n"
    raise TypeError(f"cannot format {type(obj).__name__}")
