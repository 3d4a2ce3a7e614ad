"""
Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error,
3 a resource limit was hit.
"""
from __future__ import annotations

import argparse
import csv
import json
import signal
import sys
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import blob, brauer, cellrep, chains, iso
from .errors import DiagramError, ResourceLimitError
from .pairpart import _check_enum, format_diagram, iter_J, parse_diagram
from .report import Report
from .scalars import Poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- output helpers -------------------------------------------------------------

def _emit_rows(header: Sequence[str], rows: Iterable[Sequence], fmt: str, out) -> None:
    rows = [list(map(str, r)) for r in rows]
    if fmt == "json":
        json.dump([dict(zip(header, r)) for r in rows], out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
        out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _emit_reports(reports: list[Report], fmt: str, out) -> int:
    if fmt == "json":
        json.dump([r.to_dict() for r in reports], out, indent=2, sort_keys=True)
        out.write("\n")
    elif fmt == "csv":
        _emit_rows(["report", "passed", "checked", "failures"],
                   [(r.name, r.passed, r.checked, len(r.failures)) for r in reports], "csv", out)
    else:
        for r in reports:
            out.write(str(r) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _value(p: Poly, args) -> str:
    if args.delta is None:
        return str(p)
    return str(p.evaluate(args.delta, args.deltap if args.deltap is not None else 0))


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.rstrip('_').replace('_', '-')} is required here")


# -- commands -------------------------------------------------------------------

def cmd_enumerate(args, out) -> int:
    _need(args, "m", "n")
    m, n = args.m, args.n
    if args.set == "blob":
        _check_enum(m, n, None)
        items: Iterable = blob.iter_blob(m, n)
        fmt_item = str
    elif args.set == "lichain":
        _need(args, "i")
        items = (p for p in iter_J(m, n) if chains.is_li_chain(p, args.i))
        fmt_item = format_diagram
    else:
        items = iter_J(m, n, noncrossing=args.set == "noncrossing")
        fmt_item = format_diagram
    found, total = [], 0
    for item in items:
        total += 1
        if args.max_diagrams is not None and total > args.max_diagrams:
            raise ResourceLimitError(f"more than {args.max_diagrams} diagrams")
        if not args.count:
            found.append(item)
    if args.count:
        if args.format == "json":
            json.dump({"set": args.set, "m": m, "n": n, "count": total}, out)
            out.write("\n")
        else:
            out.write(f"{total}\n")
        return EXIT_OK
    _emit_rows(["index", "diagram"], [(k, fmt_item(d)) for k, d in enumerate(found)], args.format, out)
    return EXIT_OK


def cmd_compose(args, out) -> int:
    a, b = args.left, args.right
    if a.lstrip().startswith("bB"):
        r, plain, blobbed = blob.compose_blob(blob.parse_blob(a), blob.parse_blob(b))
        coeff = Poly.monomial(plain, blobbed)
        row = {"result": str(r), "loops": plain, "blob_loops": blobbed, "coefficient": _value(coeff, args)}
    else:
        r, loops = brauer.compose(parse_diagram(a), parse_diagram(b))
        row = {"result": format_diagram(r), "loops": loops, "coefficient": _value(Poly.monomial(loops), args)}
    _emit_rows(list(row), [list(row.values())], args.format, out)
    return EXIT_OK


def _small_suite() -> list[Callable[[], Report]]:
    return [
        lambda: brauer.check_relations(brauer.GeneratorSet("tl", 5)),
        lambda: brauer.check_relations(brauer.GeneratorSet("brauer", 4)),
        lambda: blob.check_blob_relations(4),
        lambda: chains.verify_chain_basis_theorem(1, 5),
        lambda: chains.verify_chain_basis_theorem(2, 4),
        lambda: chains.verify_module_closure(1, 4, 2),
        lambda: iso.verify_psi_bijection(3, 3),
        lambda: iso.verify_theta(3),
        lambda: iso.verify_phi_functor(2, 2, 2),
        lambda: iso.verify_overline(4),
        lambda: cellrep.check_spin_relations(4),
        _dets_report,
    ]


def _dets_report(max_n: int = 6) -> Report:
    report = Report(f"determinants[max_n={max_n}]")
    for row in cellrep.determinant_table(max_n):
        report.record(f"D^{row.n}_{row.m}{row.sign}", row.match)
    return report


def cmd_verify(args, out) -> int:
    what = args.what
    n, m, q, i = args.n, args.m, args.q, args.i
    if what == "all":
        suite = _small_suite()
        if not args.small:
            suite += [lambda: iso.verify_theta(4), lambda: iso.verify_phi_functor(3, 3, 3),
                      lambda: chains.verify_chain_basis_theorem(2, 5), lambda: cellrep.check_spin_relations(5)]
        reports = [f() for f in suite]
    elif what == "relations":
        _need(args, "n")
        reports = [brauer.check_relations(brauer.GeneratorSet(args.kind, n, args.l or 0, args.u_from or 0))]
    elif what == "blob":
        _need(args, "n")
        reports = [blob.check_blob_relations(n)]
    elif what == "chains":
        _need(args, "i", "m")
        reports = [chains.verify_chain_basis_theorem(i, m)]
        if n is not None:
            reports.append(chains.verify_module_closure(i, m, n))
    elif what == "theta":
        _need(args, "n")
        reports = [iso.verify_theta(n)]
    elif what == "phi":
        _need(args, "m", "n", "q")
        reports = [iso.verify_phi_functor(m, n, q)]
    elif what == "psi":
        _need(args, "m", "n")
        reports = [iso.verify_psi_bijection(m, n)]
    elif what == "spin":
        _need(args, "n")
        reports = [cellrep.check_spin_relations(n)]
    elif what == "dets":
        reports = [_dets_report(n or 6)]
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(what)
    return _emit_reports(reports, args.format, out)


def cmd_gram(args, out) -> int:
    _need(args, "n", "lambda_")
    g = cellrep.gram_matrix(args.n, args.lambda_)
    det = cellrep.gram_det(g)
    if args.format == "json":
        payload = {"n": g.n, "m": g.m, "sign": g.sign.value, "dim": g.dim,
                   "basis": [str(h) for h in g.basis],
                   "matrix": [[_value(e, args) for e in row] for row in g.entries],
                   "det": _value(det, args)}
        if args.delta is not None:
            payload["rank"] = cellrep.rank_at(g, args.delta)
        json.dump(payload, out, indent=2)
        out.write("\n")
        return EXIT_OK
    rows = [[_value(e, args) for e in row] for row in g.entries]
    _emit_rows([f"c{k + 1}" for k in range(g.dim)], rows, args.format, out)
    if args.format == "table":
        out.write(f"det = {_value(det, args)}\n")
        if args.delta is not None:
            out.write(f"rank = {cellrep.rank_at(g, args.delta)}\n")
    return EXIT_OK


def cmd_dets(args, out) -> int:
    rows = cellrep.determinant_table(args.max_n)
    _emit_rows(["n", "m", "sign", "dim", "det", "expected", "match"],
               [(r.n, r.m, r.sign, r.dim, r.det, r.expected, str(r.match).lower()) for r in rows],
               args.format, out)
    return EXIT_OK if all(r.match for r in rows) else EXIT_FAIL


def cmd_spin(args, out) -> int:
    _need(args, "n")
    if args.i is not None:
        mat = cellrep.spin_rep_U(args.i, args.n)
    else:
        mat = cellrep.spin_hamiltonian(args.n)
    if args.eval_q is not None:
        qv = float(args.eval_q)
        rows = [[f"{e.evaluate(qv):.6g}" if e else "0" for e in row] for row in mat.dense()]
    else:
        rows = [[str(e) for e in row] for row in mat.dense()]
    labels = [format(k, f"0{args.n}b") for k in range(mat.size)]
    _emit_rows(["state"] + labels, [[lab] + r for lab, r in zip(labels, rows)], args.format, out)
    return EXIT_OK


def cmd_iso(args, out) -> int:
    action = args.action
    if action == "psi":
        if not args.diagram:
            raise UsageError("iso psi needs a blob literal")
        b = blob.parse_blob(args.diagram)
        _emit_rows(["blob", "psi"], [(str(b), format_diagram(iso.psi(b)))], args.format, out)
        return EXIT_OK
    if action == "psi-inv":
        if not args.diagram:
            raise UsageError("iso psi-inv needs a diagram literal")
        p = parse_diagram(args.diagram)
        _emit_rows(["diagram", "blob"], [(format_diagram(p), str(iso.psi_inv(p)))], args.format, out)
        return EXIT_OK
    if action == "phi":
        if not args.diagram:
            raise UsageError("iso phi needs a blob literal")
        s = iso.phi(blob.parse_blob(args.diagram))
        _emit_rows(["coefficient", "diagram"], [(c, format_diagram(d)) for d, c in s], args.format, out)
        return EXIT_OK
    if action == "verify-theta":
        _need(args, "n")
        return _emit_reports([iso.verify_theta(args.n)], args.format, out)
    if action == "verify-phi":
        _need(args, "m", "n", "q")
        return _emit_reports([iso.verify_phi_functor(args.m, args.n, args.q)], args.format, out)
    raise UsageError(f"unknown iso action {action!r}")  # pragma: no cover


# -- parser ---------------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--delta", type=_rational_arg, help="specialise x (delta) to a rational")
    p.add_argument("--deltap", type=_rational_arg, help="specialise xp (delta') to a rational")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--timeout-s", type=float, help="abort with exit code 3 after this many seconds")


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shortbrauer",
                                     description="Diagram calculus for Brauer, blob and short Brauer algebras.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("enumerate", help="list or count diagrams")
    _common(p)
    p.add_argument("--set", choices=("J", "noncrossing", "lichain", "blob"), default="J")
    p.add_argument("--count", action="store_true")
    p.add_argument("--max-diagrams", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("compose", help="compose two diagram (or blob) literals")
    _common(p)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("verify", help="run a verification suite")
    _common(p)
    p.add_argument("what", choices=("all", "relations", "blob", "chains", "theta", "phi", "psi", "spin", "dets"))
    p.add_argument("--small", action="store_true", help="with 'all': only the quick suite")
    p.add_argument("--kind", choices=("brauer", "tl", "coxeter"), default="brauer")
    p.add_argument("--l", type=int, help="coxeter kind: sigma_1..sigma_{l-1}")
    p.add_argument("--u-from", type=int, help="coxeter kind: U_m..U_{n-1} with m = this value")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gram", help="Gram matrix of a standard module")
    _common(p)
    p.add_argument("--lambda", dest="lambda_", help="module label such as 1, 2+, 4-")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("dets", help="determinant table against the factorised forms")
    _common(p)
    p.add_argument("--max-n", type=int, default=6)
    p.set_defaults(func=cmd_dets)

    p = sub.add_parser("spin", help="spin-chain matrices")
    _common(p)
    p.add_argument("--eval-q", type=float, help="print numeric entries at this q")
    p.set_defaults(func=cmd_spin)

    p = sub.add_parser("iso", help="blob to L1-chain maps")
    _common(p)
    p.add_argument("action", choices=("psi", "psi-inv", "phi", "verify-theta", "verify-phi"))
    p.add_argument("diagram", nargs="?")
    p.set_defaults(func=cmd_iso)
    return parser


def _on_alarm(signum, frame):
    raise ResourceLimitError("timeout")


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.timeout_s and hasattr(signal, "SIGALRM"):
        signal.signal(signal.SIGALRM, _on_alarm)
        signal.setitimer(signal.ITIMER_REAL, args.timeout_s)
    try:
        return args.func(args, out)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, DiagramError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if args.timeout_s and hasattr(signal, "SIGALRM"):
            signal.setitimer(signal.ITIMER_REAL, 0)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
