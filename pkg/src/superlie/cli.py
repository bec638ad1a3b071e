"""Command line front end: ``superlie <command> FILE...``.

Exit codes: 0 when everything passes, 1 when a check or a precondition
fails, 2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable

from . import derivations, extension, structure, torus
from .algebra import Parity, center, even_subspace, odd_subspace, subspace_bracket, validate
from .errors import ParseError, PreconditionNotMet, SuperLieError
from .linalg import Matrix, Subspace
from .sla import AlgebraFile, parse, parse_expression, serialize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def corpus_files() -> list[Path]:
    """The bundled example tables, sorted by file name."""
    root = resources.files("superlie") / "corpus"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".sla"))


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Matrix):
        return "\n".join("  [" + " ".join(f"{c!s:>5}" for c in row) + " ]" for row in x.rows)
    return str(x)


def fmt_diag(m: Matrix) -> str:
    return "diag(" + ",".join(str(c) for c in m.diagonal()) + ")"


# ---------------------------------------------------------------------------
# golden expectations
# ---------------------------------------------------------------------------


@dataclass
class Outcome:
    algebra: str
    key: str
    expected: str
    got: str
    passed: bool


class _Context:
    """Lazily computed facts about one file, shared between expectation keys."""

    def __init__(self, af: AlgebraFile):
        self.af = af
        self.a = af.algebra
        self._memo: dict[str, object] = {}

    def get(self, name: str, fn: Callable[[], object]):
        if name not in self._memo:
            self._memo[name] = fn()
        return self._memo[name]

    def torus(self):
        return self.get("torus", lambda: torus.maximal_torus(self.a))

    def sibling(self, ref: str) -> AlgebraFile:
        base = Path(self.af.path).parent if self.af.path else Path(".")
        return parse(base / ref)


def _span_value(a, text: str) -> Subspace:
    m = re.fullmatch(r"\s*span\((.*)\)\s*", text)
    if not m:
        raise ValueError(f"expected span(...), got {text!r}")
    inner = m.group(1).strip()
    vecs = [a.vector(parse_expression(part)) for part in inner.split(",")] if inner else []
    return Subspace(a.dim, vecs)


def _diag_span(dim: int, text: str) -> Subspace:
    vecs = []
    for part in re.findall(r"diag\(([^)]*)\)", text):
        entries = [Fraction(x.strip()) for x in part.split(",")]
        vecs.append(Matrix.diag(entries).flatten())
    return Subspace(dim * dim, vecs)


def _catch(fn: Callable[[], object]) -> str:
    try:
        return fmt(fn())
    except SuperLieError as exc:
        return type(exc).__name__


def _verify_failed(ctx: _Context) -> str:
    rep = extension.verify_model(extension.model_from_algebra(ctx.a))
    return ",".join(rep.failed()) or "none"


def _extend(ctx: _Context):
    return ctx.get("extend", lambda: extension.maximal_solvable_extension(ctx.a))


def _dims(report) -> str:
    return ",".join(str(d) for d in report.dims)


def _compare_span(ctx: _Context, value: Subspace, expected: str) -> tuple[str, bool]:
    got = structure.describe_subspace(ctx.a, value)
    return got, value == _span_value(ctx.a, expected)


SIMPLE: dict[str, Callable[[_Context], str]] = {
    "valid": lambda c: fmt(validate(c.a).ok),
    "dim": lambda c: f"{c.a.n}|{c.a.m}",
    "nilpotent": lambda c: fmt(structure.is_nilpotent(c.a)),
    "solvable": lambda c: fmt(structure.is_solvable(c.a)),
    "nilindex": lambda c: _catch(lambda: structure.nilindex(c.a)),
    "central_dims": lambda c: _dims(structure.central_series(c.a)),
    "derived_dims": lambda c: _dims(structure.derived_series(c.a)),
    "c0_dims": lambda c: _dims(structure.c_sequences(c.a)[0]),
    "c1_dims": lambda c: _dims(structure.c_sequences(c.a)[1]),
    "der_even_dim": lambda c: fmt(len(derivations.derivation_space(c.a, Parity.EVEN))),
    "der_odd_dim": lambda c: fmt(len(derivations.derivation_space(c.a, Parity.ODD))),
    "generators": lambda c: _catch(lambda: "{}|{}".format(*structure.generator_space(c.a)[1:3])),
    "rank": lambda c: _catch(lambda: torus.rank_and_torus_dim(c.a)[0]),
    "torus_dim": lambda c: _catch(lambda: c.torus().dim),
    "maximal_rank": lambda c: _catch(lambda: torus.is_maximal_rank(c.a)),
    "char_nilpotent": lambda c: fmt(derivations.is_characteristically_nilpotent(c.a)),
    "even_char_nilpotent": lambda c: fmt(derivations.is_characteristically_nilpotent(c.a.even_part())),
    "extend": lambda c: _catch(lambda: _extend(c) and "ok"),
    "extend_verified": lambda c: _catch(lambda: extension.verify_model(_extend(c)).ok),
    "q_split": lambda c: _catch(lambda: "{},{}".format(*(s.dim for s in _extend(c).q_split))),
    "verify_failed": _verify_failed,
    "odd_square_collapse": lambda c: _catch(lambda: extension.check_odd_square_collapse(c.a)),
    "odd_roots_distinct": lambda c: _catch(lambda: extension.check_odd_roots_distinct(c.a, c.torus())),
}

SPANS: dict[str, Callable[[_Context], Subspace]] = {
    "square": lambda c: structure.square(c.a),
    "nilradical": lambda c: structure.nilradical_solvable(c.a),
    "center": lambda c: center(c.a),
    "odd_square": lambda c: subspace_bracket(c.a, odd_subspace(c.a), odd_subspace(c.a)),
    "even_square": lambda c: subspace_bracket(c.a, even_subspace(c.a), even_subspace(c.a)),
}


def _evaluate(ctx: _Context, key: str, expected: str) -> tuple[str, bool]:
    if key in SIMPLE:
        got = SIMPLE[key](ctx)
        return got, got.strip().lower() == expected.strip().lower()
    if key in SPANS:
        try:
            value = SPANS[key](ctx)
        except SuperLieError as exc:
            return type(exc).__name__, type(exc).__name__ == expected.strip()
        return _compare_span(ctx, value, expected)
    if key == "torus_span":
        t = ctx.torus()
        mats = t.in_original_basis()
        got = "; ".join(fmt_diag(m) if m.is_diagonal() else repr(m) for m in mats)
        span = Subspace(ctx.a.dim ** 2, [m.flatten() for m in mats])
        return got, span == _diag_span(ctx.a.dim, expected)
    if key == "extend_equals":
        other = ctx.sibling(expected.strip()).algebra
        ok = _extend(ctx).algebra == other
        return (expected.strip() if ok else "different table"), ok
    if key == "extend_torus_span":
        other = extension.model_from_algebra(ctx.sibling(expected.strip()).algebra)
        ok = extension.same_torus_span(_extend(ctx), other)
        return (expected.strip() if ok else "different torus span"), ok
    raise KeyError(f"unknown expectation key {key!r}")


def run_expectations(af: AlgebraFile) -> list[Outcome]:
    ctx = _Context(af)
    out = []
    for key, expected in af.expectations.items():
        try:
            got, ok = _evaluate(ctx, key, expected)
        except KeyError as exc:
            got, ok = f"error: {exc.args[0]}", False
        except SuperLieError as exc:
            got, ok = type(exc).__name__, False
        out.append(Outcome(af.algebra.name, key, expected, got, ok))
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _load(paths: list[str]) -> list[AlgebraFile]:
    files = [Path(p) for p in paths] if paths else corpus_files()
    return [parse(p) for p in files]


def cmd_validate(args, out) -> int:
    status = EXIT_OK
    for af in _load(args.files):
        rep = validate(af.algebra)
        if rep.ok:
            print(f"{af.algebra.name}: valid ({af.algebra.n}|{af.algebra.m})", file=out)
            continue
        status = EXIT_FAIL
        print(f"{af.algebra.name}: INVALID", file=out)
        for a, b in rep.parity_violations:
            print(f"  parity: [{a},{b}]", file=out)
        for a, b in rep.skew_violations:
            print(f"  skew-symmetry: [{a},{b}]", file=out)
        for a, b, c in rep.jacobi_violations:
            print(f"  jacobi: ({a},{b},{c})", file=out)
    return status


def cmd_series(args, out) -> int:
    for af in _load(args.files):
        a = af.algebra
        print(f"{a.name}:", file=out)
        cs, ds = structure.central_series(a), structure.derived_series(a)
        c0, c1 = structure.c_sequences(a)
        print(f"  central dims: {_dims(cs)}", file=out)
        print(f"  derived dims: {_dims(ds)}", file=out)
        print(f"  C(L0) dims: {_dims(c0)}  C(L1) dims: {_dims(c1)}", file=out)
        print(f"  nilpotent={fmt(cs.reaches_zero)} solvable={fmt(ds.reaches_zero)}", file=out)
        if cs.reaches_zero:
            print(f"  nilindex={structure.nilindex(a)}", file=out)
    return EXIT_OK


def cmd_derive(args, out) -> int:
    parities = {"even": [Parity.EVEN], "odd": [Parity.ODD], "both": [Parity.EVEN, Parity.ODD]}[args.parity]
    for af in _load(args.files):
        a = af.algebra
        print(f"{a.name}: basis {' '.join(a.labels)}", file=out)
        for p in parities:
            basis = derivations.derivation_space(a, p)
            print(f"  Der_{int(p)} dim={len(basis)}", file=out)
            for k, d in enumerate(basis, 1):
                print(f"  d{k}:", file=out)
                print(fmt(d.map), file=out)
    return EXIT_OK


def cmd_torus(args, out) -> int:
    status = EXIT_OK
    for af in _load(args.files):
        a = af.algebra
        try:
            r, td = torus.rank_and_torus_dim(a)
            t = torus.maximal_torus(a)
        except SuperLieError as exc:
            print(f"{a.name}: {type(exc).__name__}: {exc}", file=out)
            status = EXIT_FAIL
            continue
        print(f"{a.name}: rank={r} torus_dim={t.dim}", file=out)
        for k, m in enumerate(t.in_original_basis(), 1):
            print(f"  t{k} = {fmt_diag(m) if m.is_diagonal() else chr(10) + fmt(m)}", file=out)
        for wt, sp in torus.weight_decomposition(t):
            labels = " ".join(a.labels[i] for i in sp.pivots)
            print(f"  weight ({', '.join(str(w) for w in wt)}): {labels}", file=out)
    return status


def cmd_rank(args, out) -> int:
    status = EXIT_OK
    for af in _load(args.files):
        a = af.algebra
        rs = torus.build_root_system(a)
        print(f"{a.name}: root system over {' '.join(rs.variables)}", file=out)
        for eq in rs.equations():
            print(f"  {eq}", file=out)
        try:
            gs = structure.generator_space(a)
            t = torus.maximal_torus(a)
        except SuperLieError as exc:
            print(f"  {type(exc).__name__}: {exc}", file=out)
            status = EXIT_FAIL
            continue
        verdict = t.dim == gs.k + gs.s
        print(f"  rank={rs.rank} torus_dim={t.dim} generators={gs.k}|{gs.s} maximal_rank={fmt(verdict)}", file=out)
    return status


def cmd_extend(args, out) -> int:
    af = _load([args.file])[0]
    try:
        model = extension.maximal_solvable_extension(af.algebra)
    except SuperLieError as exc:
        print(f"{af.algebra.name}: {type(exc).__name__}: {exc}", file=out)
        return EXIT_FAIL
    rep = extension.verify_model(model)
    q01, q02 = model.q_split
    text = serialize(model.algebra, comment=f"maximal solvable extension of {af.algebra.name}")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}", file=out)
    else:
        print(text, end="", file=out)
    print(f"# Q0^1 dim={q01.dim} Q0^2 dim={q02.dim}", file=out)
    for key, passed, detail in rep.checks:
        print(f"# {'PASS' if passed else 'FAIL'} {key} {detail}".rstrip(), file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _collect(paths: list[str]) -> list[Outcome]:
    rows = []
    for af in _load(paths):
        rows.extend(run_expectations(af))
    return rows


def cmd_check(args, out) -> int:
    rows = _collect(args.files)
    for r in rows:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark} {r.algebra} {r.key}: expected {r.expected} got {r.got}", file=out)
    failed = sum(not r.passed for r in rows)
    print(f"{len(rows) - failed}/{len(rows)} expectations hold", file=out)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_report(args, out) -> int:
    rows = _collect(args.files)
    if args.format == "tsv":
        print("algebra\tcheck\texpected\tgot\tpass", file=out)
        for r in rows:
            print(f"{r.algebra}\t{r.key}\t{r.expected}\t{r.got}\t{fmt(r.passed)}", file=out)
    else:
        current = None
        for r in rows:
            if r.algebra != current:
                current = r.algebra
                print(f"{current}", file=out)
            print(f"  {r.key:<22} {r.got:<40} {'ok' if r.passed else 'MISMATCH (expected ' + r.expected + ')'}", file=out)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superlie", description="Exact computations with Lie superalgebra tables.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, helptext in (
        ("validate", cmd_validate, "check grading, skew-symmetry and Jacobi"),
        ("series", cmd_series, "central, derived and C-sequences"),
        ("torus", cmd_torus, "root-system rank and maximal torus"),
        ("rank", cmd_rank, "root system equations and maximal-rank verdict"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("files", nargs="*", help=".sla files (default: bundled corpus)")
        sp.set_defaults(func=fn)
    sp = sub.add_parser("derive", help="bases of the superderivation spaces")
    sp.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    sp.add_argument("files", nargs="*")
    sp.set_defaults(func=cmd_derive)
    sp = sub.add_parser("extend", help="maximal solvable extension of a maximal-rank algebra")
    sp.add_argument("file")
    sp.add_argument("--out", help="write the extension as an .sla file")
    sp.set_defaults(func=cmd_extend)
    sp = sub.add_parser("check", help="evaluate the expect lines of the given files")
    sp.add_argument("--suite", choices=("paper",), default=None, help="run the bundled corpus")
    sp.add_argument("files", nargs="*")
    sp.set_defaults(func=cmd_check)
    sp = sub.add_parser("report", help="table of all expectations")
    sp.add_argument("--format", choices=("text", "tsv"), default="text")
    sp.add_argument("files", nargs="*")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "suite", None) and args.files:
        print("--suite and explicit files are exclusive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionNotMet as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
