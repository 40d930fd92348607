"""Command-line front end.

Every command builds one JSON-serializable report document; ``--json``
prints it verbatim and the default output is a text rendering of it.
Exit codes: 0 success, 1 semantic failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import windows as W
from .axioms import check_axioms, lemma_suite
from .classifier import classify, roundtrip_check
from .constructions import check_fraction_extension, fraction_extension, fraction_window, reduced_fraction_window
from .errors import (
    InconsistencyError,
    InvalidWindow,
    LimitError,
    PreconditionError,
    QRingError,
    RejectedInput,
    StructureFileError,
    UnknownBuiltin,
)
from .gallery import builtin, builtin_names, counterexample_report
from .modelfinder import MAX_N, cross_check_dichotomy, enumerate_prime_ideals, enumerate_quasiorders
from .relations import compute_support
from .rings import Integers, Modular, Polynomial, Product
from .structure import Structure, load_structure, parse_window

OK, FAILED, USAGE = 0, 1, 2


class UsageError(QRingError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


# ------------------------------------------------------------------ inputs


def _window_arg(ring, text):
    """``lo:hi``, ``poly:DEG[:c1,c2,...]``, ``all`` or a JSON window object."""
    text = text.strip()
    if text == "all":
        return W.full(ring)
    m = re.fullmatch(r"(-?\d+):(-?\d+)", text)
    if m:
        return W.interval(ring, int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"poly:(\d+)(?::(-?\d+(?:,-?\d+)*))?", text)
    if m:
        coeffs = [int(c) for c in m.group(2).split(",")] if m.group(2) else [-2, -1, 1, 2]
        return W.poly_window(ring, int(m.group(1)), coeffs)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        raise StructureFileError(f"cannot parse window {text!r}", "--window") from None
    return parse_window(ring, doc, "--window")


def _load(args) -> tuple[Structure, dict]:
    if args.builtin and args.file:
        raise UsageError("give a structure file or --builtin, not both")
    if args.builtin:
        b = builtin(args.builtin)
        st = Structure(b.ring, b.relation, b.window)
        source = {"builtin": b.name}
    elif args.file:
        st = load_structure(args.file)
        source = {"file": args.file}
    else:
        raise UsageError("a structure file or --builtin is required")
    if args.window:
        st.window = _window_arg(st.ring, args.window)
    return st, source


def _ring_arg(text):
    m = re.fullmatch(r"zmod:(\d+)", text)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise UsageError("zmod needs n >= 2")
        return Modular(n)
    m = re.fullmatch(r"product:(\d+(?:,\d+)+)", text)
    if m:
        ns = [int(v) for v in m.group(1).split(",")]
        if min(ns) < 2:
            raise UsageError("product factors need n >= 2")
        return Product([Modular(n) for n in ns])
    raise UsageError(f"bad ring {text!r}; expected zmod:<n> or product:<n1>,<n2>,...")


# ---------------------------------------------------------------- commands


def _check_section(st):
    report = check_axioms(st.relation, st.window)
    lemmas = lemma_suite(st.relation, st.window, report)
    support = compute_support(st.relation, st.window)
    return report, {
        "axioms": report.to_json(),
        "lemmas": lemmas.to_json(),
        "support": {"members": support.to_json(), "exhaustive": support.exhaustive},
    }


def cmd_check(args):
    st, source = _load(args)
    report, section = _check_section(st)
    code = OK if report.ok else FAILED
    return {
        "command": "check",
        "input": {**source, **st.describe()},
        **section,
        "status": "pass" if report.ok else "fail",
        "failures": report.failures(),
        "exit": code,
    }


def cmd_classify(args):
    st, source = _load(args)
    doc = {"command": "classify", "input": {**source, **st.describe()}}
    try:
        c = classify(st.relation, st.window)
    except RejectedInput as exc:
        doc.update(axioms=exc.report.to_json(), status="rejected", message=str(exc), exit=FAILED)
        return doc
    rt = roundtrip_check(st.relation, c)
    R = st.ring
    doc["classification"] = c.to_json()
    doc["roundtrip"] = {
        "ok": rt.ok,
        "reason": rt.reason,
        "witness": None if rt.witness is None else [R.to_json(x) for x in rt.witness],
    }
    doc["status"] = c.branch if rt.ok else "roundtrip-failed"
    doc["exit"] = OK if rt.ok else FAILED
    return doc


def cmd_enumerate(args):
    if not 1 <= args.max_n <= MAX_N:
        raise LimitError(f"--max-n must be in 1..{MAX_N}")
    ring = _ring_arg(args.ring)
    en = enumerate_quasiorders(ring, args.max_n)
    cc = cross_check_dichotomy(ring, en)
    items = []
    for rel, code, c in zip(en.relations, en.codes, cc.classifications):
        items.append({
            "blocks": [list(b) for b in code.blocks],
            "matrix": [[int(v) for v in row] for row in rel.matrix],
            "support": c.support.to_json(),
            "classification": c.to_json(),
        })
    primes = [[ring.to_json(x) for x in sorted(p.elements, key=ring.index.__getitem__)]
              for p in enumerate_prime_ideals(ring)]
    return {
        "command": "enumerate",
        "ring": ring.describe(),
        "exhaustive": en.exhaustive,
        "candidates": en.candidates,
        "notice": en.notice,
        "count": len(items),
        "quasiorders": items,
        "prime_ideals": primes,
        "cross_check": {"ok": cc.ok, "problems": cc.problems},
        "status": "pass" if cc.ok else "fail",
        "exit": OK if cc.ok else FAILED,
    }


def _default_fraction_base(ring):
    if isinstance(ring, Integers):
        return W.interval(ring, -10, 10)
    if isinstance(ring, Polynomial):
        return W.poly_window(ring, 1, [1, -1])
    return W.default_window(ring)


def _sample_pairs(ring, window):
    if isinstance(ring, Integers):
        cands = [((3, 1), (1, 2)), ((1, 2), (3, 4)), ((1, 2), (1, 3)), ((-2, 3), (4, 5))]
    elif isinstance(ring, Polynomial):
        x = ring.var(ring.variables[0])
        one = ring.one()
        cands = [((x, one), (one, x)), ((one, x), (x, one))]
    else:
        return []
    members = set(window)
    return [(p, q) for p, q in cands if all(v in members for v in (*p, *q))]


def cmd_quotfield(args):
    st, source = _load(args)
    R = st.ring
    base = st.window if args.window else _default_fraction_base(R)
    doc = {"command": "quotfield", "input": {**source, **st.describe(), "base_window": base.describe()}}
    try:
        ext = fraction_extension(st.relation, base)
    except (PreconditionError, RejectedInput) as exc:
        doc.update(status="rejected", message=str(exc), exit=FAILED)
        if isinstance(exc, RejectedInput):
            doc["axioms"] = exc.report.to_json()
        return doc
    report = check_fraction_extension(ext, base)
    F = ext.ring
    samples = []
    for p, q in _sample_pairs(R, base):
        holds = ext._leq(p, q)
        rel = "⊴" if holds else "⋬"
        samples.append({"lhs": F.to_json(p), "rhs": F.to_json(q), "holds": holds,
                        "text": f"{F.format(p)} {rel} {F.format(q)}"})
    doc["fraction_window"] = {"pairs": len(fraction_window(base)), "reduced": len(reduced_fraction_window(base))}
    doc["checks"] = report.to_json()["results"]
    doc["samples"] = samples
    doc["status"] = "pass" if report.ok else "fail"
    doc["exit"] = OK if report.ok else FAILED
    return doc


def cmd_counterexample(args):
    args.builtin, args.file = "sec3", None
    st, source = _load(args)
    _, section = _check_section(st)
    rep = counterexample_report(st.window, st.relation)
    return {
        "command": "counterexample",
        "input": {**source, **st.describe()},
        **section,
        "reproduction": rep.to_json(st.ring),
        "status": "reproduced" if rep.ok else "not-reproduced",
        "exit": OK if rep.ok else FAILED,
    }


def cmd_list(args):
    return {"command": "list", "builtins": builtin_names(), "exit": OK}


# --------------------------------------------------------------- rendering


def _fmt_witness(ring, values):
    if ring is None:
        return ", ".join(json.dumps(v) for v in values)
    return ", ".join(ring.format(ring.from_json(v)) for v in values)


def _render_results(lines, results, ring, indent="  "):
    width = max((len(k) for k in results), default=0)
    for name, r in results.items():
        line = f"{indent}{name:<{width}}  {r['status']}"
        if "witness" in r:
            line += f"  witness ({_fmt_witness(ring, r['witness'])})"
        if r.get("note"):
            line += f"  [{r['note']}]"
        lines.append(line)


def _ring_of(doc):
    from .structure import parse_ring

    ring_doc = doc.get("input", {}).get("ring") or doc.get("ring")
    try:
        return parse_ring(ring_doc) if ring_doc else None
    except QRingError:
        return None


def render(doc) -> str:
    cmd = doc["command"]
    lines = []
    ring = _ring_of(doc)
    if "error" in doc:
        err = doc["error"]
        loc = f" at {err['location']}" if err.get("location") else ""
        return f"error ({err['kind']}){loc}: {err['message']}"
    inp = doc.get("input", {})
    if inp:
        src = inp.get("builtin") or inp.get("file")
        lines.append(f"{cmd}: {src}  window {json.dumps(inp['window'])}")
    if cmd == "list":
        lines.extend(doc["builtins"])
    if "axioms" in doc:
        lines.append("axioms:")
        _render_results(lines, doc["axioms"]["results"], ring)
    if "lemmas" in doc:
        lines.append("lemmas:")
        _render_results(lines, doc["lemmas"], ring)
    if "support" in doc:
        s = doc["support"]
        members = _fmt_witness(ring, s["members"])
        lines.append(f"support: {{{members}}}" + ("" if s["exhaustive"] else " (on window)"))
    if "classification" in doc:
        c = doc["classification"]
        lines.append(f"branch: {c['branch'].upper()}")
        lines.append(f"support: {{{_fmt_witness(ring, c['support'])}}}")
        if c["branch"] == "ordered":
            lines.append(f"order: {json.dumps(c['order'])}")
            lines.append(f"cone on window: {{{_fmt_witness(ring, c['cone_window'])}}}")
        else:
            lines.append(f"group: {json.dumps(c['group'])}")
            lines.append(f"valuation: {json.dumps(c['valuation'])}")
        rt = doc["roundtrip"]
        verdict = "ok" if rt["ok"] else f"FAILED ({rt['reason']}) at ({_fmt_witness(ring, rt['witness'])})"
        lines.append(f"round trip: {verdict}")
    if cmd == "enumerate":
        lines.append(f"ring: {json.dumps(doc['ring'])}")
        if doc["notice"]:
            lines.append(f"notice: {doc['notice']}")
        else:
            lines.append(f"weak orders scanned: {doc['candidates']}")
        lines.append(f"quasi-orders: {doc['count']}")
        for k, item in enumerate(doc["quasiorders"]):
            blocks = " < ".join("{" + ", ".join(map(str, b)) + "}" for b in item["blocks"])
            lines.append(f"  [{k}] {blocks}  support {{{_fmt_witness(ring, item['support'])}}}")
        primes = ", ".join("{" + _fmt_witness(ring, p) + "}" for p in doc["prime_ideals"])
        lines.append(f"prime ideals: {primes}")
        cc = doc["cross_check"]
        lines.append("dichotomy cross-check: " + ("ok" if cc["ok"] else "FAILED"))
        lines.extend(f"  {p}" for p in cc["problems"])
    if cmd == "quotfield" and "checks" in doc:
        lines.append(f"fraction window: {doc['fraction_window']['pairs']} pairs, "
                     f"{doc['fraction_window']['reduced']} reduced")
        _render_results(lines, doc["checks"], None)
        lines.extend(s["text"] for s in doc["samples"])
    if "reproduction" in doc:
        rep = doc["reproduction"]
        lines.append(f"witness triple: ({_fmt_witness(ring, rep['witness'])})")
        for fact, ok in rep["witness_facts"].items():
            lines.append(f"  {fact}: {ok}")
        lines.append(f"  0 < -1: {rep['zero_below_minus_one']}")
    if "message" in doc:
        lines.append(doc["message"])
    if "timing" in doc:
        lines.append(f"time: {doc['timing']['seconds']:.3f} s")
    if "status" in doc:
        lines.append(f"result: {doc['status']}")
    return "\n".join(lines)


# -------------------------------------------------------------------- main


def _error_doc(command, kind, exc, code):
    err = {"kind": kind, "message": str(exc)}
    if isinstance(exc, StructureFileError):
        err["message"] = exc.message
        err["location"] = exc.location
    return {"command": command, "error": err, "exit": code}


def _classify_error(exc):
    if isinstance(exc, StructureFileError):
        return "structure-file", USAGE
    if isinstance(exc, InvalidWindow):
        return "invalid-window", USAGE
    if isinstance(exc, UnknownBuiltin):
        return "unknown-builtin", USAGE
    if isinstance(exc, LimitError):
        return "limit", USAGE
    if isinstance(exc, UsageError):
        return "usage", USAGE
    if isinstance(exc, InconsistencyError):
        return "inconsistency", FAILED
    if isinstance(exc, RejectedInput):
        return "rejected", FAILED
    return "input", USAGE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qring", description="Verify and classify quasi-ordered rings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, structure=True):
        if structure:
            sp.add_argument("file", nargs="?", help="structure file (JSON)")
            sp.add_argument("--builtin", help="use a named builtin structure instead of a file")
        sp.add_argument("--window", help="window override: lo:hi, poly:DEG[:coeffs], all, or JSON")
        sp.add_argument("--json", action="store_true", help="print the JSON report")
        sp.add_argument("--timing", action="store_true", help="include wall-clock time")

    common(sub.add_parser("check", help="check the quasi-order axioms and lemmas"))
    common(sub.add_parser("classify", help="ordered or valued, with a round-trip check"))
    common(sub.add_parser("quotfield", help="extend to the field of fractions"))
    common(sub.add_parser("counterexample", help="reproduce the two-variable counterexample"), structure=False)
    sp = sub.add_parser("enumerate", help="all quasi-orders on a small finite ring")
    sp.add_argument("--ring", required=True, help="zmod:<n> or product:<n1>,<n2>,...")
    sp.add_argument("--max-n", type=int, default=MAX_N, help="exhaustive search limit")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--timing", action="store_true")
    sp = sub.add_parser("list", help="list builtin structures")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--timing", action="store_true")
    return p


COMMANDS = {
    "check": cmd_check,
    "classify": cmd_classify,
    "enumerate": cmd_enumerate,
    "quotfield": cmd_quotfield,
    "counterexample": cmd_counterexample,
    "list": cmd_list,
}


def run(argv=None):
    """Parse ``argv`` and build the report document without printing it."""
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        doc = COMMANDS[args.command](args)
    except QRingError as exc:
        kind, code = _classify_error(exc)
        doc = _error_doc(args.command, kind, exc, code)
    if args.timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    return doc, doc["exit"], args


def main(argv=None) -> int:
    try:
        doc, code, args = run(argv)
    except SystemExit as exc:
        return exc.code if exc.code in (OK, FAILED, USAGE) else USAGE
    except Exception as exc:  # never leak other exit codes
        print(f"qring: internal error: {exc!r}", file=sys.stderr)
        return USAGE
    if args.json:
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        out = render(doc)
        print(out, file=sys.stderr if "error" in doc else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
