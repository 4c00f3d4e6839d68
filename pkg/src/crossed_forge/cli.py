"""Command-line front end.

Exit codes: 0 success, 1 negative verdict or failed validation, 2 invalid
input, 3 budget exceeded.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click
import numpy as np

from .cocycles import (
    DEFAULT_ENUMERATION_BUDGET,
    CocycleProfile,
    check_symmetric_cocycle,
    enumerate_profiles,
    profile_to_cocycle,
)
from .crossed_system import (
    CrossedSystem,
    build_crossed_product,
    classify_special_case,
    default_transversal,
    extract_crossed_system,
    validate_crossed_system,
)
from .cyclic_core import gcd3
from .cyclicity import decide_cyclic_main
from .errors import CrossedForgeError, CrossedSystemError, FamilyError, InvalidProfile, ParseError, SemanticError, TooLarge
from .families import GroupFamily, Holder, TwistedFinite, iter_holder_parameters, twisted_tables, validate_family
from .oracle import (
    DEFAULT_SYSTEM_BUDGET,
    batch_is_cyclic,
    brute_force_is_cyclic,
    enumerate_crossed_systems,
    order_profile,
    tables_isomorphic,
)
from .table import FiniteGroupTable, cyclic_table, verify_group_axioms
from .textio import format_construct, parse_construct

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class Exit(Exception):
    def __init__(self, code: int, message: str | None = None):
        self.code, self.message = code, message


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise Exit(EXIT_INVALID, f"cannot read {path}: {e.strerror}")


def _load(path: str):
    text = _read(path)
    try:
        return parse_construct(text)
    except ParseError as e:
        raise Exit(EXIT_INVALID, f"{path}: {e}")


def _as_table(obj) -> FiniteGroupTable:
    if isinstance(obj, FiniteGroupTable):
        return obj
    if isinstance(obj, CrossedSystem):
        return build_crossed_product(obj)
    if isinstance(obj, CocycleProfile):
        obj = TwistedFinite.from_profile(obj)
    if isinstance(obj, GroupFamily) and obj.finite:
        return obj.to_table()
    raise Exit(EXIT_INVALID, "input does not describe a finite group")


def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.integer):
        return int(v)
    return v


class Ctx:
    def __init__(self, fmt: str, budget: int | None):
        self.fmt, self.budget = fmt, budget

    def emit(self, human: str, data) -> None:
        if self.fmt == "json":
            click.echo(json.dumps(_jsonable(data)))
        else:
            click.echo(human)


pass_ctx = click.make_pass_decorator(Ctx)


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except Exit as e:
            if e.message:
                click.echo(e.message, err=True)
            ctx.exit(e.code)
        except TooLarge as e:
            click.echo(f"budget exceeded: {e}", err=True)
            ctx.exit(EXIT_BUDGET)
        except CrossedForgeError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_INVALID)


@click.group(cls=_Group)
@click.option("--format", "fmt", type=click.Choice(["human", "json"]), default="human", show_default=True)
@click.option("--budget", type=int, envvar="CROSSED_FORGE_BUDGET", default=None,
              help="Enumeration budget (default depends on the command).")
@click.pass_context
def main(ctx, fmt, budget):
    """Crossed products of cyclic groups: validation, construction and cyclicity."""
    ctx.obj = Ctx(fmt, budget)


@main.command()
@click.argument("file")
@pass_ctx
def validate(c: Ctx, file):
    """Validate a crossed system, family, profile or group table."""
    try:
        obj = parse_construct(_read(file))
    except SemanticError as e:
        if not isinstance(e.__cause__, (FamilyError, InvalidProfile, CrossedSystemError)):
            raise Exit(EXIT_INVALID, f"{file}: {e}")
        c.emit(f"invalid: {e}", {"valid": False, "error": str(e)})
        raise Exit(EXIT_NEGATIVE)
    except ParseError as e:
        raise Exit(EXIT_INVALID, f"{file}: {e}")
    try:
        if isinstance(obj, CrossedSystem):
            kind = f"crossed system ({classify_special_case(validate_crossed_system(obj)).value})"
        elif isinstance(obj, GroupFamily):
            validate_family(obj)
            kind = f"family {obj.kind}"
        elif isinstance(obj, CocycleProfile):
            check_symmetric_cocycle(profile_to_cocycle(obj), obj.n)
            kind = "cocycle profile"
        else:
            report = verify_group_axioms(obj)
            if not report.ok:
                raise CrossedForgeError(f"{report.failure} fails at {report.witness}")
            kind = "group table"
    except CrossedForgeError as e:
        c.emit(f"invalid: {e}", {"valid": False, "error": str(e)})
        raise Exit(EXIT_NEGATIVE)
    c.emit(f"valid {kind}", {"valid": True, "kind": kind})


def _format_table(t: FiniteGroupTable) -> str:
    width = max(len(t.label(i)) for i in range(t.order))
    rows = [" ".join(t.label(int(v)).rjust(width) for v in row) for row in t.product]
    header = " ".join(t.label(i).rjust(width) for i in range(t.order))
    return "\n".join([header, "-" * len(header)] + rows)


@main.command()
@click.argument("file")
@click.option("--table", "show_table", is_flag=True, help="Print the multiplication table.")
@click.option("--order-profile", "show_profile", is_flag=True, help="Print the element order multiset.")
@pass_ctx
def product(c: Ctx, file, show_table, show_profile):
    """Build the finite group described by FILE."""
    t = _as_table(_load(file))
    report = verify_group_axioms(t)
    cyclic, _ = brute_force_is_cyclic(t)
    data = {"order": t.order, "group": report.ok, "abelian": t.is_abelian(), "cyclic": cyclic}
    lines = [f"order {t.order}, abelian={t.is_abelian()}, cyclic={cyclic}"]
    if show_profile:
        data["order_profile"] = list(order_profile(t))
        lines.append("order profile: " + " ".join(map(str, data["order_profile"])))
    if show_table:
        data["table"] = t.product.tolist()
        lines.append(_format_table(t))
    c.emit("\n".join(lines), data)


@main.group()
def cocycles():
    """Symmetric normalized 2-cocycles on cyclic groups."""


@cocycles.command("enumerate")
@click.option("--m", "m", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--cyclic-only", is_flag=True, help="Keep profiles whose twisted product is cyclic.")
@pass_ctx
def cocycles_enumerate(c: Ctx, m, n, cyclic_only):
    """List every profile phi with its S_m and cyclicity verdict."""
    budget = c.budget if c.budget is not None else DEFAULT_ENUMERATION_BUDGET
    try:
        profiles = enumerate_profiles(m, n, budget)
    except InvalidProfile as e:
        raise Exit(EXIT_INVALID, str(e))
    rows = []
    for p in profiles:
        S_m = p.sums().S_m
        d = gcd3(S_m, m, n)
        if cyclic_only and d != 1:
            continue
        rows.append({"phi": list(p.phi), "S_m": S_m % n, "gcd": d, "cyclic": d == 1})
    if c.fmt == "json":
        c.emit("", {"m": m, "n": n, "profiles": rows})
        return
    click.echo(f"{'phi':<{4 * m}} S_m  gcd  cyclic")
    for r in rows:
        click.echo(f"{str(r['phi']):<{4 * m}} {r['S_m']:>3}  {r['gcd']:>3}  {r['cyclic']}")


def _verdict(file: str):
    obj = _load(file)
    if isinstance(obj, CocycleProfile):
        obj = TwistedFinite.from_profile(obj)
    if isinstance(obj, FiniteGroupTable):
        raise Exit(EXIT_INVALID, "classify needs a crossed system, family or profile")
    return obj, decide_cyclic_main(obj)


def _verdict_lines(v) -> str:
    lines = [f"cyclic: {'yes' if v.cyclic else 'no'}" + (" (infinite)" if v.infinite else "")]
    if v.witness is not None:
        lines.append(f"witness: ({v.witness.p}, {v.witness.q})")
    if v.obstruction is not None:
        extra = ", ".join(f"{k}={val}" for k, val in v.detail.items())
        lines.append(f"obstruction: {v.obstruction.value}" + (f" ({extra})" if extra else ""))
    return "\n".join(lines)


@main.command()
@click.argument("file")
@pass_ctx
def classify(c: Ctx, file):
    """Decide whether the crossed product in FILE is cyclic."""
    obj, v = _verdict(file)
    data = v.to_dict()
    data["input"] = format_construct(obj)
    c.emit(_verdict_lines(v), data)
    if not v.cyclic:
        raise Exit(EXIT_NEGATIVE)


@main.command()
@click.argument("file")
@pass_ctx
def generator(c: Ctx, file):
    """Print a generator of the cyclic crossed product in FILE."""
    _, v = _verdict(file)
    if not v.cyclic:
        raise Exit(EXIT_NEGATIVE, "not cyclic: " + v.obstruction.value)
    c.emit(f"({v.witness.p}, {v.witness.q})", {"generator": list(v.witness), "infinite": v.infinite})


@main.command()
@click.argument("file_a")
@click.argument("file_b")
@pass_ctx
def iso(c: Ctx, file_a, file_b):
    """Test two finite groups for isomorphism."""
    t1, t2 = _as_table(_load(file_a)), _as_table(_load(file_b))
    phi = tables_isomorphic(t1, t2)
    if phi is None:
        c.emit("not isomorphic", {"isomorphic": False})
        raise Exit(EXIT_NEGATIVE)
    c.emit("isomorphic: " + " ".join(f"{x}->{y}" for x, y in enumerate(phi)), {"isomorphic": True, "map": phi})


def _indices(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise Exit(EXIT_INVALID, f"expected a list of element indices, got {text!r}")


@main.command()
@click.option("--group", "group_file", required=True, help="File describing the finite group E.")
@click.option("--normal", required=True, help="Indices of the normal subgroup H, e.g. '0,2'.")
@click.option("--transversal", default=None, help="One representative per coset (default: first of each coset).")
@pass_ctx
def extract(c: Ctx, group_file, normal, transversal):
    """Extract a crossed system (H, E/H, alpha, f) reconstructing E."""
    E = _as_table(_load(group_file))
    H = _indices(normal)
    reps = _indices(transversal) if transversal is not None else None
    sys_ = extract_crossed_system(E, H, reps)
    text = format_construct(sys_)
    c.emit(text.rstrip("\n"), {"system": text, "transversal": reps if reps is not None else default_transversal(E, H)})


@main.group()
def oracle():
    """Brute-force consistency checks."""


@oracle.command("sweep")
@click.option("--max-order", type=int, default=16, show_default=True)
@click.option("--stream", is_flag=True, help="One line per group instead of per parameter pair.")
@pass_ctx
def oracle_sweep(c: Ctx, max_order, stream):
    """Compare the cyclicity decisions with brute force up to MAX_ORDER."""
    budget = c.budget if c.budget is not None else DEFAULT_ENUMERATION_BUDGET
    failures = 0

    def line(data):
        click.echo(json.dumps(data) if c.fmt == "json" else " ".join(f"{k}={v}" for k, v in data.items()))

    for n, m, i, j in iter_holder_parameters(max_order):
        t = Holder(n, m, i, j).to_table()
        truth = brute_force_is_cyclic(t)[0] and verify_group_axioms(t).ok
        verdict = decide_cyclic_main(Holder(n, m, i, j)).cyclic
        failures += truth != verdict
        if stream or truth != verdict:
            line({"family": "holder", "n": n, "m": m, "i": i, "j": j, "cyclic": verdict, "agree": truth == verdict})

    for n in range(2, max_order // 2 + 1):
        for m in range(2, max_order // n + 1):
            size = n ** (m - 1)
            if size > budget:
                raise TooLarge(size, budget, f"Sigma_({m},{n})")
            phis = np.array([p.phi for p in enumerate_profiles(m, n, budget)])
            agree = 0
            for start in range(0, len(phis), 4096):
                chunk = phis[start:start + 4096]
                truth = batch_is_cyclic(twisted_tables(n, m, chunk))
                for phi, tr in zip(chunk, truth):
                    v = decide_cyclic_main(TwistedFinite(n, m, tuple(int(x) for x in phi)), witness=False).cyclic
                    agree += v == tr
                    if stream or v != tr:
                        line({"family": "twisted", "n": n, "m": m, "phi": [int(x) for x in phi],
                              "cyclic": v, "agree": bool(v == tr)})
            failures += len(phis) - agree
            if not stream:
                line({"family": "twisted", "n": n, "m": m, "profiles": len(phis), "agree": agree})
    line({"summary": "sweep", "max_order": max_order, "failures": failures})
    if failures:
        raise Exit(EXIT_NEGATIVE)


@oracle.command("enumerate")
@click.option("--h", "h_file", required=True, help="File describing H (or an integer n for C_n).")
@click.option("--g", "g_file", required=True, help="File describing G (or an integer m for C_m).")
@pass_ctx
def oracle_enumerate(c: Ctx, h_file, g_file):
    """Stream every normalized crossed system on (H, G), one per line."""
    H = cyclic_table(int(h_file)) if h_file.isdigit() else _as_table(_load(h_file))
    G = cyclic_table(int(g_file)) if g_file.isdigit() else _as_table(_load(g_file))
    budget = c.budget if c.budget is not None else DEFAULT_SYSTEM_BUDGET
    count = 0
    for s in enumerate_crossed_systems(H, G, budget):
        count += 1
        P = build_crossed_product(s)
        data = {"system": format_construct(s), "case": classify_special_case(s).value,
                "abelian": P.is_abelian(), "cyclic": brute_force_is_cyclic(P)[0]}
        if c.fmt == "json":
            click.echo(json.dumps(data))
        else:
            click.echo(f"{data['case']:<10} abelian={data['abelian']!s:<5} cyclic={data['cyclic']!s:<5} "
                       f"alpha={s.alpha.tolist()} f={s.f.tolist()}")
    if c.fmt == "human":
        click.echo(f"{count} systems")


if __name__ == "__main__":
    sys.exit(main())
