"""Command-line front end.

Exit codes: 0 the checked property holds, 2 inconclusive or inapplicable,
3 input error, 4 internal error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import random
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__, kernels
from .asymptotics import classify_laguerre2, classify_logmono, laguerre2_asymptotic, phi_leading_term
from .bounds import (
    BoundPair,
    CertificationError,
    RatioMethodError,
    expand_ratio,
    propose_bounds,
    u_bounds_from_b,
    verify_bounds_scan,
)
from .parsing import ParseError, load_recurrence, parse_expansion, parse_expression
from .recurrence import PoleError, RatioError, Recurrence, RecurrenceError, SequenceCache, scan_laguerre, scan_logmono
from .report import decimal_str, digest, pair_dict, recurrence_dict, write_report
from .verify import (
    InapplicableError,
    certify_laguerre2,
    certify_logmono3,
    closed_form_pair,
)

log = logging.getLogger("holocert")

EXIT_OK = 0
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4

SUPPLIED = "user-supplied"


class InputError(ValueError):
    pass


# helpers --------------------------------------------------------------------


def _load(path: str) -> tuple[Recurrence, str]:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return load_recurrence(p), digest(text)


def _parse_bounds(spec: str) -> BoundPair:
    parts = spec.split(",")
    if len(parts) != 3:
        raise InputError("--bounds expects 'g,f,N1'")
    g, f = parse_expression(parts[0]), parse_expression(parts[1])
    try:
        n1 = int(parts[2])
    except ValueError:
        raise InputError("--bounds: N1 must be an integer") from None
    return BoundPair(g, f, n1, SUPPLIED)


def _auto_bounds(rec: Recurrence, order: int, hint: Optional[int]):
    """Certified u-bounds for rec, or a closed form for first-order recurrences."""
    pair = closed_form_pair(rec)
    if pair is not None:
        return pair, None
    cert = propose_bounds(rec.unscaled(), order, hint)
    return u_bounds_from_b(cert, rec.scale), cert


def _write_plot(path: str, cache: SequenceCache, lo: int, hi: int, pair: Optional[BoundPair] = None) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "u_n", "g", "f"])
        for n in range(lo, hi + 1):
            row = [str(n), decimal_str(cache.ratio_u(n))]
            if pair is not None and n >= pair.valid_from:
                row += [decimal_str(pair.g(n)), decimal_str(pair.f(n))]
            else:
                row += ["", ""]
            w.writerow(row)


def _base_report(args, command: str) -> dict:
    return {"tool": {"name": "holocert", "version": __version__}, "command": command, "seed": args.seed}


def _emit(args, report: dict, text: str, started: float) -> None:
    report["timing"] = {"seconds": round(time.perf_counter() - started, 3), "kernels": kernels.IMPLEMENTATION}
    if args.json:
        write_report(report, args.json)
    print(text)


# commands -------------------------------------------------------------------


def cmd_eval(args) -> int:
    t0 = time.perf_counter()
    rec, dig = _load(args.file)
    cache = SequenceCache(rec)
    lo = rec.offset if args.start is None else args.start
    if lo < rec.offset:
        raise InputError(f"--from must be at least the offset {rec.offset}")
    rows = []
    lines = [f"{'n':>6}  a_n  b_n  u_n"]
    for n in range(lo, args.to + 1):
        a = cache.term(n)
        b = cache.ratio_b(n) if a != 0 else None
        u = cache.ratio_u(n) if n > rec.offset and a != 0 and cache.term(n - 1) != 0 else None
        rows.append({"n": n, "a": a, "b": b, "u": u})
        lines.append(f"{n:>6}  {a}  {'-' if b is None else b}  {'-' if u is None else u}")
    report = _base_report(args, "eval")
    report.update(input={"path": args.file, "sha256": dig, "recurrence": recurrence_dict(rec)}, rows=rows)
    if args.plot_data:
        _write_plot(args.plot_data, cache, max(lo, rec.offset + 1), args.to)
    _emit(args, report, "\n".join(lines), t0)
    return EXIT_OK


def cmd_scan(args) -> int:
    t0 = time.perf_counter()
    rec, dig = _load(args.file)
    cache = SequenceCache(rec)
    check = args.check
    report = _base_report(args, "scan")
    report["input"] = {"path": args.file, "sha256": dig, "recurrence": recurrence_dict(rec)}
    if check == "logmono3":
        lo = rec.offset + 1 if args.start is None else args.start
        rows = scan_logmono(cache, lo, args.to)
        names = ("u_n > 1", "u_n > u_{n+1}", "u_{n-1}u_{n+1} > u_n^2")
        viol = [[r.n, names[k]] for r in rows for k, ok in enumerate(r.holds) if ok is False]
        boundary = [r.n for r in rows if r.boundary]
        report["scan"] = {"check": check, "from": lo, "to": args.to, "violations": viol, "boundary": boundary}
        text = f"logmono3 on [{lo}, {args.to}]: {len(viol)} violation(s)"
        if viol:
            text += "\n" + "\n".join(f"  n={n}: {name} fails" for n, name in viol[:50])
    elif check.startswith("laguerre:"):
        try:
            m = int(check.split(":", 1)[1])
        except ValueError:
            raise InputError("--check laguerre:<m> needs an integer m") from None
        if m < 1:
            raise InputError("Laguerre order must be positive")
        lo = rec.offset if args.start is None else args.start
        scan = scan_laguerre(cache, m, lo, args.to)
        viol = list(scan.violations)
        report["scan"] = {"check": check, "from": lo, "to": args.to, "violations": viol, "boundary": list(scan.boundary)}
        text = f"Laguerre order {m} on [{lo}, {args.to}]: {len(viol)} violation(s)"
        if viol:
            text += "\n  at n = " + ", ".join(map(str, viol[:50]))
    else:
        raise InputError(f"unknown check {check!r} (use logmono3 or laguerre:<m>)")
    if args.plot_data:
        _write_plot(args.plot_data, cache, max(lo, rec.offset + 1), args.to)
    _emit(args, report, text, t0)
    return EXIT_OK if not viol else EXIT_INCONCLUSIVE


def cmd_classify(args) -> int:
    t0 = time.perf_counter()
    e = parse_expansion(args.expansion)
    if not args.no_pad:
        e = e.with_padding()
    lm = classify_logmono(e)
    lg = classify_laguerre2(e)
    report = _base_report(args, "classify")
    report["expansion"] = str(e)
    report["logmono"] = lm.to_dict()
    report["laguerre2"] = lg.to_dict()
    lines = [f"expansion: {e}"]
    lines.append(f"log-monotonic: {lm.decision}" + (f", order {lm.ell}" if lm.ell is not None else "") + (f" ({lm.reason})" if lm.reason else ""))
    if lm.holds:
        preds = []
        for k in range(lm.ell):
            try:
                s, a, c = phi_leading_term(e, k)
            except Exception:
                break
            preds.append({"k": k, "sign": s, "exponent": a, "coefficient": c.to_str("L")})
            lines.append(f"  phi^{k}: {'+' if s > 0 else '-'}({c.to_str('L')})/n^{a}")
        report["logmono"]["phi_leading_terms"] = preds
    lines.append(f"Laguerre order 2: {lg.decision}" + (f", branch ({lg.branch})" if lg.branch else "") + (f" ({lg.reason})" if lg.reason else ""))
    if lg.holds:
        a, c = laguerre2_asymptotic(e)
        report["laguerre2"]["predicted_leading"] = {"exponent": a, "coefficient": c.to_str("L")}
        lines.append(f"  u_(n-1) u_n^2 u_(n+1) - 4u_n + 3 ~ ({c.to_str('L')})/n^{a}")
    if lm.relies_on_padding or lg.relies_on_padding:
        lines.append("note: verdict relies on zero-coefficient padding terms")
    _emit(args, report, "\n".join(lines), t0)
    return EXIT_OK if (lm.holds or lg.holds) else EXIT_INCONCLUSIVE


def cmd_bounds(args) -> int:
    t0 = time.perf_counter()
    rec, dig = _load(args.file)
    base = rec.unscaled()
    lam, cs = expand_ratio(base, args.order)
    cert = propose_bounds(base, args.order, args.n1_hint)
    cert.replay()
    pair = u_bounds_from_b(cert, rec.scale)
    horizon = args.horizon or pair.valid_from + 2000
    cache = SequenceCache(rec)
    sandwich = verify_bounds_scan(cache, pair, pair.valid_from, horizon)
    report = _base_report(args, "bounds")
    report.update(
        input={"path": args.file, "sha256": dig, "recurrence": recurrence_dict(rec)},
        expansion={"lambda": lam, "series": cs, "order": args.order},
        bounds=pair_dict(pair, cert),
        sandwich={"from": pair.valid_from, "to": horizon, "violations": sandwich},
        status="certified" if not sandwich else "inconsistent",
    )
    lines = [
        f"b_n ~ {lam} (1 + " + " + ".join(f"({c})/n^{k}" for k, c in enumerate(cs, 1)) + ")",
        f"certified for n >= {cert.base_index}: {cert.lower} <= b_n <= {cert.upper}",
        f"u-bounds from n >= {pair.valid_from}:",
        f"  g(n) = {pair.g}",
        f"  f(n) = {pair.f}",
        f"exact sandwich check on [{pair.valid_from}, {horizon}]: {'ok' if not sandwich else sandwich[:10]}",
    ]
    if args.plot_data:
        _write_plot(args.plot_data, cache, pair.valid_from, horizon, pair)
    _emit(args, report, "\n".join(lines), t0)
    return EXIT_OK if not sandwich else EXIT_INTERNAL


def _pipeline(args, which: str, path: str) -> tuple[int, dict, str]:
    """Shared body of the certify commands and batch mode."""
    rec, dig = _load(path)
    cache = SequenceCache(rec)
    cert = None
    if getattr(args, "bounds", None):
        pair = _parse_bounds(args.bounds)
    else:
        pair, cert = _auto_bounds(rec, args.order, args.n1_hint)
    if which == "logmono3":
        rep = certify_logmono3(cache, pair, args.horizon)
        thresholds = {"N1": rep.N1, "N2": rep.N2, "N3": rep.N3, "N4": rep.N4, "N": rep.N}
        claim = f"{{a_n}}_{{n>={rep.refined_start}}} is log-monotonic of order three"
        viol = [list(v) for v in rep.violations]
    else:
        rep = certify_laguerre2(cache, pair, args.horizon)
        thresholds = {"N1": rep.N1, "N2": rep.N2, "N": rep.N}
        claim = f"{{a_n}}_{{n>={rep.refined_start}}} satisfies the Laguerre inequality of order two"
        viol = rep.violations
    status = "holds" if rep.holds else "inconclusive"
    reasons = []
    if rep.sandwich_violations:
        reasons.append(f"bounds fail the exact check at n = {[n for n, _ in rep.sandwich_violations][:10]}")
    if not rep.consistent and not rep.sandwich_violations:
        reasons.append("violations at or beyond N contradict the bounds")
    if rep.refined_start >= rep.horizon:
        reasons.append("the inequalities fail up to the horizon")
    report = _base_report(args, f"certify-{which}")
    report.update(
        input={"path": path, "sha256": dig, "recurrence": recurrence_dict(rec)},
        bounds=pair_dict(pair, cert),
        thresholds=thresholds,
        refinement={
            "refined_start": rep.refined_start,
            "horizon": rep.horizon,
            "violations": viol,
            "boundary": rep.boundary,
            "convention": rep.convention,
            "beyond_horizon": f"rests on the bounds, valid from N = {rep.N}",
        },
        sandwich_violations=rep.sandwich_violations,
        status=status,
        claim=claim if rep.holds else None,
        reasons=reasons,
    )
    lines = [f"{rec.name or path}: {status}"]
    lines.append("  bounds (" + pair.provenance + f", from n = {pair.valid_from}): g = {pair.g}, f = {pair.f}")
    lines.append("  thresholds: " + ", ".join(f"{k} = {v}" for k, v in thresholds.items()))
    lines.append(f"  exact scan to {rep.horizon}: refined start {rep.refined_start}")
    if rep.holds:
        lines.append(f"  claim: {claim}")
    lines.extend(f"  note: {r}" for r in reasons)
    if getattr(args, "plot_data", None):
        _write_plot(args.plot_data, cache, max(pair.valid_from, rec.offset + 1), min(rep.horizon, pair.valid_from + 2000), pair)
    return (EXIT_OK if rep.holds else EXIT_INCONCLUSIVE), report, "\n".join(lines)


def cmd_certify(args, which: str) -> int:
    t0 = time.perf_counter()
    code, report, text = _pipeline(args, which, args.file)
    _emit(args, report, text, t0)
    return code


def cmd_batch(args) -> int:
    t0 = time.perf_counter()
    src = Path(args.directory)
    if not src.is_dir():
        raise InputError(f"{src} is not a directory")
    if args.check not in ("logmono3", "laguerre2"):
        raise InputError("batch --check must be logmono3 or laguerre2")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = sorted(src.glob("*.rec"))
    summary = []
    worst = EXIT_OK
    for path in files:
        t1 = time.perf_counter()
        try:
            code, report, _ = _pipeline(args, args.check, str(path))
            entry = {"file": path.name, "status": report["status"], "refined_start": report["refinement"]["refined_start"]}
        except Exception as exc:  # one bad file never stops the batch
            code = _exit_code(exc)
            report = _base_report(args, f"certify-{args.check}")
            report.update(input={"path": str(path)}, status="error", error=str(exc))
            entry = {"file": path.name, "status": "error", "error": str(exc), "exit_code": code}
        report["timing"] = {"seconds": round(time.perf_counter() - t1, 3), "kernels": kernels.IMPLEMENTATION}
        write_report(report, out / (path.stem + ".json"))
        summary.append(entry)
        worst = max(worst, code)
    table = {"tool": {"name": "holocert", "version": __version__}, "check": args.check, "files": summary}
    write_report(table, out / "summary.json")
    lines = [f"{'file':<30} {'status':<13} detail"]
    for e in summary:
        detail = e.get("error") or f"refined start {e['refined_start']}"
        lines.append(f"{e['file']:<30} {e['status']:<13} {detail}")
    if args.json:
        table["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
        write_report(table, args.json)
    print("\n".join(lines))
    return worst


# entry point ----------------------------------------------------------------


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (PoleError, RatioError, InapplicableError, CertificationError, RatioMethodError)):
        return EXIT_INCONCLUSIVE
    if isinstance(exc, (ParseError, InputError, RecurrenceError)):
        return EXIT_INPUT
    return EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the report as JSON")
    common.add_argument("--horizon", type=int, help="last index of exact scans (default max(2N, 5000))")
    common.add_argument("--plot-data", metavar="PATH", help="write (n, u_n, g, f) rows as CSV")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized harnesses (recorded only)")
    common.add_argument("-v", "--verbose", action="store_true")

    certopts = argparse.ArgumentParser(add_help=False)
    certopts.add_argument("--bounds", metavar="g,f,N1", help="use these u-bounds instead of certifying new ones")
    certopts.add_argument("--order", type=int, default=5, help="ratio expansion order K (default 5)")
    certopts.add_argument("--n1-hint", type=int, help="first base index to try")

    p = argparse.ArgumentParser(prog="holocert", description="Exact certification of log-monotonicity and Laguerre inequalities for P-recursive sequences.")
    p.add_argument("--version", action="version", version=f"holocert {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="print exact terms and ratios")
    s.add_argument("file")
    s.add_argument("--from", dest="start", type=int)
    s.add_argument("--to", type=int, required=True)

    s = sub.add_parser("scan", parents=[common], help="exact violation scan")
    s.add_argument("file")
    s.add_argument("--check", required=True, help="logmono3 or laguerre:<m>")
    s.add_argument("--from", dest="start", type=int)
    s.add_argument("--to", type=int, required=True)

    s = sub.add_parser("classify", parents=[common], help="asymptotic classifiers for an expansion of u_n")
    s.add_argument("--expansion", required=True, help='e.g. "1 - (2)/n^2 + O(n^-4)"')
    s.add_argument("--no-pad", action="store_true", help="do not add a zero term at alpha_1 + 1 below the remainder")

    s = sub.add_parser("bounds", parents=[common], help="certify ratio bounds")
    s.add_argument("file")
    s.add_argument("--order", type=int, default=5)
    s.add_argument("--n1-hint", type=int)

    s = sub.add_parser("certify-logmono3", parents=[common, certopts], help="order-three log-monotonicity pipeline")
    s.add_argument("file")

    s = sub.add_parser("certify-laguerre2", parents=[common, certopts], help="order-two Laguerre pipeline")
    s.add_argument("file")

    s = sub.add_parser("batch", parents=[common, certopts], help="run a pipeline on every *.rec file in a directory")
    s.add_argument("directory")
    s.add_argument("--check", required=True, help="logmono3 or laguerre2")
    s.add_argument("--out", default="holocert-reports", help="directory for per-file reports")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    random.seed(args.seed)
    handlers = {
        "eval": cmd_eval,
        "scan": cmd_scan,
        "classify": cmd_classify,
        "bounds": cmd_bounds,
        "certify-logmono3": lambda a: cmd_certify(a, "logmono3"),
        "certify-laguerre2": lambda a: cmd_certify(a, "laguerre2"),
        "batch": cmd_batch,
    }
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        print(f"input error: {exc.pretty()}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:
        code = _exit_code(exc)
        kind = {EXIT_INCONCLUSIVE: "inconclusive", EXIT_INPUT: "input error"}.get(code, "internal error")
        print(f"{kind}: {exc}", file=sys.stderr)
        if code == EXIT_INTERNAL:
            log.debug("traceback", exc_info=True)
        return code


if __name__ == "__main__":
    sys.exit(main())
