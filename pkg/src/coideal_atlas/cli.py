"""Command-line entry point.

    coideal-atlas borel --n 3 --format json
    coideal-atlas tableau
    coideal-atlas count full --n 6
    coideal-atlas verify sh --n 3
    coideal-atlas pair 1,0 2,0
"""
from __future__ import annotations

import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from typing import Iterable, Iterator

import click

from .rootdata import (
    GenDesc,
    RootSequence,
    RTProfile,
    build_RT,
    cond_pair,
    coideal_generators,
    count_borel,
    count_full,
    diagram,
    enumerate_theta,
    is_adr_invariant,
    is_hopf,
    mask_of,
    max_hopf,
    pbw_generators,
    psi_text,
    simple_roots_of,
)

SCHEMA = "coideal-atlas/1"
MAX_LISTING_N = 12
FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class RunConfig:
    n: int
    command: str
    format: str = "text"
    bound: int = 6
    threads: int = 1
    multiparameter: bool = False
    out: str | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.bound < 1:
            raise ValueError("bound must be at least 1")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")


# ---------------------------------------------------------------------------
# notation

def _piece(a: int, b: int) -> str:
    return f"x{a}" if a == b else "[" + "".join(f"x{i}" for i in range(a, b + 1)) + "]"


def compact(g: GenDesc) -> str:
    """Juxtaposition notation: [x1x2x3] for u[1,3], [x3[x1x2]] for
    Psi^{2}(1,3), [x3x2x1] when every piece is a single letter."""
    ps = g.pieces()
    if len(ps) == 1:
        return _piece(*ps[0])
    if all(a == b for a, b in ps):
        return "[" + "".join(f"x{a}" for a, _ in reversed(ps)) + "]"
    cur = _piece(*ps[-1])
    for a, b in reversed(ps[:-1]):
        cur = "[" + cur + _piece(a, b) + "]"
    return cur


def points(g: GenDesc, n: int, unicode: bool = False) -> str:
    """The point row of the diagram over 0..n, without labels."""
    return "".join(diagram(g, n, unicode).splitlines()[1].split())


def rcs_order(gens: Iterable[GenDesc]) -> list[GenDesc]:
    """Longer generators first, then by start."""
    return sorted(gens, key=lambda g: (-(g.m - g.k), g.k))


# ---------------------------------------------------------------------------
# listing records

def record(profile: RTProfile, unicode: bool = False) -> dict:
    n = profile.n
    pbw = pbw_generators(profile)
    return {
        "schema": SCHEMA,
        "n": n,
        "theta": list(profile.theta.theta),
        "R": [profile.R_set(k) for k in range(1, n + 1)],
        "T": [profile.T_set(k) for k in range(1, n + 1)],
        "simple_roots": [{"k": r.k, "m": r.m} for r in sorted(simple_roots_of(profile))],
        "pbw_generators": [{"k": g.k, "m": g.m, "S": list(g.s)} for g in pbw],
        "brackets": [psi_text(g) for g in pbw],
        "diagrams": [points(g, n, unicode) for g in pbw],
        "flags": {"hopf": is_hopf(profile.theta), "adr_invariant": is_adr_invariant(profile)},
        "max_hopf": sorted(max_hopf(profile)),
    }


def records(n: int, unicode: bool = False) -> Iterator[dict]:
    for th in enumerate_theta(n):
        yield record(build_RT(th), unicode)


def profile_from_record(rec: dict) -> RTProfile:
    """Inverse of ``record`` on the R/T part; the stored sets must agree
    with the ones the root sequence determines."""
    th = RootSequence.of(rec["theta"])
    prof = RTProfile(th.n, th, tuple(mask_of(r) for r in rec["R"]), tuple(mask_of(t) for t in rec["T"]))
    if prof != build_RT(th):
        raise ValueError(f"record for theta={th.theta} is inconsistent")
    return prof


def listing_json(n: int, unicode: bool = False) -> str:
    recs = list(records(n, unicode))
    return json.dumps({"schema": SCHEMA, "n": n, "count": len(recs), "records": recs}, ensure_ascii=False)


def parse_listing(text: str) -> list[RTProfile]:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    return [profile_from_record(r) for r in doc["records"]]


CSV_COLUMNS = ("schema", "n", "theta", "R", "T", "simple_roots", "pbw_generators", "brackets", "diagrams", "hopf", "adr_invariant", "max_hopf")


def _csv_row(rec: dict) -> list:
    cell = lambda x: json.dumps(x, separators=(",", ":"), ensure_ascii=False)  # noqa: E731
    return [
        rec["schema"], rec["n"], cell(rec["theta"]), cell(rec["R"]), cell(rec["T"]),
        cell(rec["simple_roots"]), cell(rec["pbw_generators"]), cell(rec["brackets"]),
        cell(rec["diagrams"]), int(rec["flags"]["hopf"]), int(rec["flags"]["adr_invariant"]),
        cell(rec["max_hopf"]),
    ]


def _set_text(items: list[int], unicode: bool) -> str:
    if not items:
        return "∅" if unicode else "{}"
    return "{" + ",".join(map(str, items)) + "}"


def text_line(rec: dict, unicode: bool = False) -> str:
    n = rec["n"]
    th = "(" + ",".join(map(str, rec["theta"])) + ")"
    R = " ".join(f"R{k}={_set_text(rec['R'][k - 1], unicode)}" for k in range(n, 0, -1))
    T = " ".join(f"T{k}={_set_text(rec['T'][k - 1], unicode)}" for k in range(n, 0, -1))
    gens = ", ".join(rec["brackets"]) or "-"
    flags = "".join(("H" if rec["flags"]["hopf"] else "-", "*" if rec["flags"]["adr_invariant"] else "-"))
    return f"{th} {flags} | {R} | {T} | {gens}"


# ---------------------------------------------------------------------------
# the n = 3 tableau

@dataclass(frozen=True)
class TableauRow:
    theta: tuple
    starred: bool
    R: tuple  # R_n, ..., R_1
    T: tuple
    pbw: tuple  # per k = n..1, tuple of generator names
    rcs: tuple  # generator names
    rcs_diagrams: tuple


def tableau_rows(n: int = 3, unicode: bool = False) -> list[TableauRow]:
    """Proper (non-Hopf) subalgebras, largest root sequence first."""
    rows = []
    for th in sorted(enumerate_theta(n), key=lambda t: t.theta, reverse=True):
        if is_hopf(th):
            continue
        p = build_RT(th)
        ks = range(n, 0, -1)
        pbw = tuple(tuple(compact(GenDesc(k, m, p.T_set(k))) for m in p.T_set(k)) for k in ks)
        gens = rcs_order(coideal_generators(p))
        rows.append(
            TableauRow(
                th.theta,
                is_adr_invariant(p),
                tuple(tuple(p.R_set(k)) for k in ks),
                tuple(tuple(p.T_set(k)) for k in ks),
                pbw,
                tuple(compact(g) for g in gens),
                tuple(points(g, n, unicode) for g in gens),
            )
        )
    return rows


def render_tableau(rows: list[TableauRow], n: int = 3, unicode: bool = False) -> str:
    header = ("r(U)", "R", "T", "PBW-generators", "r.c.s. generators")
    body: list[list[tuple]] = []
    for r in rows:
        block = []
        for idx, k in enumerate(range(n, 0, -1)):
            first = ""
            if idx == n // 2:
                first = "(" + ",".join(map(str, r.theta)) + ")"
            elif idx == 0 and r.starred:
                first = "*"
            rcs = ""
            if idx == n // 2:
                rcs = ", ".join(r.rcs)
            elif idx == n - 1:
                rcs = ", ".join(r.rcs_diagrams)
            block.append((
                first,
                f"R{k}={_set_text(list(r.R[idx]), unicode)}",
                f"T{k}={_set_text(list(r.T[idx]), unicode)}",
                ", ".join(r.pbw[idx]),
                rcs,
            ))
        body.append(block)
    widths = [max([len(header[c])] + [len(line[c]) for b in body for line in b]) for c in range(5)]
    fmt = lambda cells: " | ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()  # noqa: E731
    rule = "-+-".join("-" * w for w in widths)
    out = [fmt(header), rule]
    for b in body:
        out.extend(fmt(line) for line in b)
        out.append(rule)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# click commands

def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _theta(text: str, n: int | None = None) -> RootSequence:
    try:
        vals = tuple(int(x) for x in text.replace("(", "").replace(")", "").split(",") if x.strip())
        th = RootSequence.of(vals)
    except ValueError as e:
        raise click.BadParameter(str(e)) from e
    if n is not None and th.n != n:
        raise click.BadParameter(f"{text} does not have length n={n}")
    return th


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Right coideal subalgebras of the quantum group of type A_n."""


@main.command()
@click.option("--n", "n", type=click.IntRange(1, MAX_LISTING_N), required=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="text")
@click.option("--unicode", is_flag=True, help="Use ○/● in diagrams.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def borel(n, fmt, unicode, out):
    """List all (n+1)! coideal subalgebras of the positive part."""
    if fmt == "json":
        _emit(listing_json(n, unicode) + "\n", out)
        return
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for rec in records(n, unicode):
            w.writerow(_csv_row(rec))
    else:
        for rec in records(n, unicode):
            buf.write(text_line(rec, unicode) + "\n")
    _emit(buf.getvalue(), out)


@main.command()
@click.option("--n", "n", type=click.IntRange(1, 6), default=3, show_default=True)
@click.option("--unicode", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def tableau(n, unicode, out):
    """Table of the proper subalgebras (starred rows are ad_r-invariant)."""
    _emit(render_tableau(tableau_rows(n, unicode), n, unicode), out)


class _Progress:
    def __init__(self, label: str, enabled: bool):
        self.label, self.enabled = label, enabled
        self.t0 = time.perf_counter()
        self.last = 0.0

    def __call__(self, done: int, total: int):
        if not self.enabled:
            return
        now = time.perf_counter()
        if done != total and now - self.last < 1.0:
            return
        self.last = now
        rate = done / max(now - self.t0, 1e-9)
        click.echo(f"\r{self.label}: {done}/{total} ({rate:,.0f}/s)", err=True, nl=done == total)


@main.command()
@click.argument("which", type=click.Choice(("borel", "full")))
@click.option("--n", "n", type=click.IntRange(1, 12), required=True)
@click.option("--threads", type=click.IntRange(1, 256), envvar="ATLAS_THREADS", default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="text")
@click.option("--quiet", is_flag=True, help="No progress on standard error.")
def count(which, n, threads, fmt, quiet):
    """Count coideal subalgebras: of the positive part, or of the whole
    quantum group (pairs of root sequences)."""
    t0 = time.perf_counter()
    if which == "borel":
        res = {"schema": SCHEMA, "which": which, "n": n, "count": count_borel(n)}
    else:
        prog = _Progress("theta processed" if threads == 1 else "chunks done", not quiet and n >= 5)
        fc = count_full(n, threads=threads, with_stats=True, progress=prog)
        res = {
            "schema": SCHEMA, "which": which, "n": n, "count": fc.total,
            "pairs_checked": (count_borel(n)) ** 2,
            "condition1_only": fc.via_condition1_only,
            "needing_condition2": fc.needing_condition2,
            "threads": threads,
        }
    res["seconds"] = round(time.perf_counter() - t0, 3)
    if fmt == "json":
        click.echo(json.dumps(res))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(res), lineterminator="\n")
        w.writeheader()
        w.writerow(res)
        click.echo(buf.getvalue(), nl=False)
    else:
        click.echo(res["count"])
        for k, v in res.items():
            if k not in ("schema", "count"):
                click.echo(f"  {k}: {v}")


SUITE_NAMES = ("identities", "derivatives", "omega", "pbw", "coideal", "theorem26", "decode", "double", "sh", "derm", "consistency")


@main.command()
@click.argument("suite", type=click.Choice(SUITE_NAMES))
@click.option("--n", "n", type=click.IntRange(1, 6), default=None, help="Rank (suite default if omitted).")
@click.option("--bound", type=click.IntRange(1, 20), default=None, help="Total degree bound where the suite has one.")
@click.option("--multiparameter", is_flag=True, help="Use the multiparameter bicharacter.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="text")
def verify(suite, n, bound, multiparameter, fmt):
    """Run an invariant suite; exit status 0 when every check passes, 1 otherwise."""
    from .suites import run_suite

    defaults = {"pbw": 3, "coideal": 3, "theorem26": 3, "derm": 3, "consistency": 2}
    n = n or defaults.get(suite, 4)
    t0 = time.perf_counter()
    res = run_suite(suite, n, bound, multiparameter)
    dt = time.perf_counter() - t0
    if fmt == "json":
        click.echo(json.dumps({
            "schema": SCHEMA, "suite": suite, "n": n, "ok": res.ok, "seconds": round(dt, 3),
            "checks": [{"name": c.name, "ok": c.ok, "checked": c.checked, "info": c.info, "counterexample": None if c.ok else str(c.failure)} for c in res.checks],
        }))
    else:
        for line in res.lines():
            click.echo(line)
        click.echo(f"{suite} n={n}: {'PASS' if res.ok else 'FAIL'} in {dt:.2f}s")
    sys.exit(0 if res.ok else 1)


@main.command()
@click.argument("theta")
@click.argument("theta_neg")
@click.option("--n", "n", type=int, default=None)
@click.option("--symbolic", is_flag=True, help="Also print the straightened generator cross-brackets.")
@click.option("--multiparameter", is_flag=True)
@click.option("--format", "fmt", type=click.Choice(("json", "text")), default="text")
def pair(theta, theta_neg, n, symbolic, multiparameter, fmt):
    """Compatibility of U^+_THETA with U^-_THETA_NEG."""
    pos, neg = _theta(theta, n), _theta(theta_neg, n)
    if pos.n != neg.n:
        raise click.BadParameter("the two root sequences have different lengths")
    pp, pn = build_RT(pos), build_RT(neg)
    rep = cond_pair(pp, pn)
    brackets = []
    if symbolic:
        from .double import psi_minus, psi_plus, tri_bracket
        from .freealg import Bicharacter

        bc = Bicharacter.make(pos.n, multiparameter)
        for gp in pbw_generators(pp):
            for gm in pbw_generators(pn):
                X = tri_bracket(psi_plus(bc, gp), psi_minus(bc, gm))
                brackets.append((psi_text(gp), psi_text(gm) + "^-", str(X)))
    if fmt == "json":
        click.echo(json.dumps({
            "schema": SCHEMA, "theta": list(pos.theta), "theta_neg": list(neg.theta), "ok": rep.ok,
            "cells": [{"k": k, "i": i, "condition1": a, "condition2": b} for (k, i), (a, b) in sorted(rep.cells.items())],
            "failing": [list(x) for x in rep.failing()],
            "brackets": [{"plus": a, "minus": b, "value": v} for a, b, v in brackets],
        }))
        return
    click.echo(f"theta={pos.theta} theta'={neg.theta}")
    click.echo(" k  i  cond1  cond2")
    for (k, i), (a, b) in sorted(rep.cells.items()):
        click.echo(f"{k:>2} {i:>2}  {'yes' if a else 'no':<5}  {'yes' if b else 'no'}")
    if rep.ok:
        click.echo("verdict: compatible")
    else:
        click.echo("verdict: incompatible at " + ", ".join(f"({k},{i})" for k, i in rep.failing()))
    for a, b, v in brackets:
        click.echo(f"[{a}, {b}] = {v}")


if __name__ == "__main__":  # pragma: no cover
    main()
