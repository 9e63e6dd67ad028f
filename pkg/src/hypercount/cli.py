"""Command-line surface: structured, deterministic reports over the library.

Output is line-oriented `key=value` by default (`--json` for structured
output).  Exact rationals are printed exactly; log-domain floats with 12
significant digits.  Exit codes: 0 ok, 2 input error, 3 budget refusal,
4 generation failure.  Timings are reported but excluded from the
determinism contract.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction
from typing import Optional

from . import clusters as cl
from . import exact, formats, formulas, lab, polymers
from .errors import BudgetExceeded, GenerationError, InputError
from .hypergraph import Hypergraph, Vertex, girth_at_most
from .logdomain import LogValue


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"environment variable {name}={raw!r} is not an integer")


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".12g")
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, Vertex):
        return str(v)
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    return str(v)


def _emit(args, command, digest, params, results, rows, elapsed):
    """rows: list of (rowname, dict) printed one line per entry."""
    if args.json:
        def deep(v):
            if isinstance(v, dict):
                return {k: deep(x) for k, x in v.items()}
            if isinstance(v, (list, tuple)):
                return [deep(x) for x in v]
            if isinstance(v, (bool, int, str)) or v is None:
                return v
            return _fmt(v)
        payload = {
            "command": command,
            "digest": digest,
            "params": deep(params),
            "results": deep(results),
        }
        if rows:
            payload["rows"] = [{"row": name} | deep(d) for name, d in rows]
        payload["timings"] = {"elapsed_s": round(elapsed, 6)}
        print(json.dumps(payload, sort_keys=True))
        return
    print(f"command={command}")
    if digest is not None:
        print(f"digest={digest}")
    for key, val in params.items():
        print(f"param.{key}={_fmt(val)}")
    for key, val in results.items():
        print(f"{key}={_fmt(val)}")
    for name, d in rows:
        print(name + " " + " ".join(f"{k}={_fmt(v)}" for k, v in d.items()))
    print(f"elapsed={elapsed:.6f}")


def _vertex(text: str) -> Vertex:
    try:
        c, i = text.split(":")
        return Vertex(int(c), int(i))
    except ValueError:
        raise InputError(f"bad vertex {text!r}, expected <class>:<index>")


def _load(args) -> Hypergraph:
    return formats.load(args.input)


# ----- command handlers -----------------------------------------------------


def _cmd_exact_count(args):
    G = _load(args)
    return G, {}, {"count": exact.count_independent_sets(G)}, []


def _cmd_defect_count(args):
    G = _load(args)
    budget = _env_int("HYPERCOUNT_DEFECT_BUDGET", exact.DEFECT_VERTEX_CAP)
    res = exact.count_with_defect_class(G, args.cls, args.b, budget=budget)
    return (G, {"class": args.cls, "b": args.b},
            {"count": res.count}, [])


def _cmd_polymers(args):
    G = _load(args)
    cap = _env_int("HYPERCOUNT_MAX_POLYMERS", polymers.DEFAULT_MAX_POLYMERS)
    root = _vertex(args.root) if args.root else None
    polys = polymers.enumerate_polymers(G, args.cls, args.b, root=root)
    if len(polys) > cap:
        raise BudgetExceeded(f"{len(polys)} polymers exceed the cap {cap}")
    rows = [("polymer", {
        "vertices": [str(v) for v in p.vertices],
        "order": p.order,
        "weight": polymers.polymer_weight(G, p),
        "neighborhood_size": len(p.neighborhood),
    }) for p in polys]
    params = {"class": args.cls, "b": args.b}
    if root is not None:
        params["root"] = root
    return G, params, {"count": len(polys)}, rows


def _cmd_xi(args):
    G = _load(args)
    cap = _env_int("HYPERCOUNT_MAX_POLYMERS", polymers.DEFAULT_MAX_POLYMERS)
    value = polymers.partition_function(G, args.cls, args.b, max_polymers=cap)
    return (G, {"class": args.cls, "b": args.b},
            {"xi": value, "log_xi": math.log(float(value))}, [])


def _cmd_kp_check(args):
    G = _load(args)
    cap = _env_int("HYPERCOUNT_MAX_POLYMERS", polymers.DEFAULT_MAX_POLYMERS)
    roots = ([_vertex(args.root)] if args.root
             else list(G.class_vertices(args.cls)))
    rows = []
    all_hold = True
    for u in roots:
        res = polymers.kp_terms(G, args.cls, u, args.b, max_polymers=cap)
        all_hold &= res.holds
        rows.append(("root", {
            "vertex": u,
            "lhs_upper": res.lhs_upper,
            "rhs": res.rhs,
            "holds": res.holds,
            "polymers": len(res.terms),
        }))
    return (G, {"class": args.cls, "b": args.b},
            {"all_hold": all_hold, "roots": len(roots)}, rows)


def _cmd_clusters(args):
    G = _load(args)
    found = cl.enumerate_clusters(G, args.cls, args.t)
    weights = {}

    def weight_of(p):
        if p not in weights:
            weights[p] = polymers.polymer_weight(G, p)
        return weights[p]

    rows = []
    for c in found:
        rows.append(("cluster", {
            "entries": str(c),
            "length": c.length,
            "size": c.size,
            "orderings": c.ordering_count,
            "weight": cl.cluster_weight(c, weight_of),
        }))
    return (G, {"class": args.cls, "t": args.t},
            {"count": len(found)}, rows)


def _cmd_log_xi_trunc(args):
    G = _load(args)
    value = cl.truncated_log_xi(G, args.cls, args.t)
    return (G, {"class": args.cls, "t": args.t},
            {"log_xi_truncated": value,
             "log_xi_truncated_float": float(value)}, [])


def _cmd_estimate(args):
    G = _load(args)
    est = cl.estimate_count(G, args.t)
    results = {
        "log_value": est.log_value,
        "log10_value": est.value.log10,
        "value": str(est.value),
    }
    rows = [("class_exponent", {"class": c, "exponent": x})
            for c, x in est.class_exponents]
    return G, {"t": args.t}, results, rows


def _cmd_closed_form(args):
    G = _load(args)
    r = G.regular_degree()
    if r is None or len(set(G.sizes)) != 1:
        raise InputError("closed forms require a regular hypergraph with "
                         "equal class sizes")
    n = G.sizes[0]
    if args.t == 1:
        est = formulas.closed_form_t1(G.k, n, r)
        results = {"exponent": est.exponent, "log_value": est.log_value,
                   "value": str(est.value)}
    else:
        est = formulas.closed_form_t2(G.k, n, r)
        results = {
            "printed_exponent": est.exponent,
            "printed_log_value": est.log_value,
            "corrected_exponent": est.corrected_exponent,
            "corrected_log_value": est.corrected_log_value,
            "delta": est.correction_delta,
        }
    return G, {"t": args.t, "k": G.k, "n": n, "r": r}, results, []


def _report_rows(report: lab.PropertyReport):
    results = {"property": report.name, "verdict": report.verdict}
    if report.worst_ratio is not None:
        results["worst_ratio"] = report.worst_ratio
        results["worst_ratio_float"] = float(report.worst_ratio)
    rows = []
    if report.witness is not None:
        if isinstance(report.witness, dict):
            rows.append(("witness", report.witness))
        else:
            rows.append(("witness", {"value": report.witness}))
    return results, rows


def _cmd_check(args):
    G = _load(args)
    kind = args.property
    if kind == "reg":
        rep = lab.check_reg(G, args.t)
    elif kind == "exp1":
        rep = lab.check_exp1(G, Fraction(args.alpha), size_cap=args.size_cap,
                             samples=args.samples, seed=args.seed)
    elif kind == "exp2":
        rep = lab.check_exp2(G, Fraction(args.beta), size_cap=args.size_cap,
                             samples=args.samples, seed=args.seed)
    elif kind == "def":
        budget = _env_int("HYPERCOUNT_DEFECT_BUDGET", exact.DEFECT_VERTEX_CAP)
        rep = lab.check_def(G, args.b, budget=budget, seed=args.seed)
    elif kind == "linear":
        rep = lab.check_linear(G)
    elif kind == "girth":
        cap = _env_int("HYPERCOUNT_GIRTH_NODE_CAP", 2_000_000)
        rep = lab.check_girth(G, args.min_girth, node_cap=cap)
    elif kind == "common-neighbor":
        rep = lab.check_common_neighbor(G)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown property {kind!r}")
    results, rows = _report_rows(rep)
    return G, {"property": kind}, results, rows


def _cmd_generate(args):
    G = lab.gen_linear_regular(args.k, args.n, args.r, args.seed,
                               min_girth=args.min_girth)
    comment = (f"generated k={args.k} n={args.n} r={args.r} seed={args.seed}"
               + (f" min_girth={args.min_girth}" if args.min_girth else ""))
    text = formats.serialize_text(G, comment=comment)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return (G, {"k": args.k, "n": args.n, "r": args.r, "seed": args.seed},
                {"edges": G.num_edges, "out": args.out}, [])
    if args.json:
        return (G, {"k": args.k, "n": args.n, "r": args.r, "seed": args.seed},
                {"edges": G.num_edges, "text": text}, [])
    sys.stdout.write(text)
    return None, {}, {}, []


def _cmd_compare(args):
    G = _load(args)
    count = exact.count_independent_sets(G)
    est = cl.estimate_count(G, args.t)
    log_exact = LogValue.of(count).log
    rel_error = math.exp(est.log_value - log_exact) - 1
    results = {
        "exact": count,
        "estimate_log": est.log_value,
        "estimate": str(est.value),
        "exact_log": log_exact,
        "relative_error": rel_error,
    }
    rows = [("class_exponent", {"class": c, "exponent": x})
            for c, x in est.class_exponents]
    r = G.regular_degree()
    if r is not None and len(set(G.sizes)) == 1 and G.is_linear():
        n = G.sizes[0]
        t1 = formulas.closed_form_t1(G.k, n, r)
        results["closed_form_t1_log"] = t1.log_value
        results["closed_form_t1_rel_error"] = math.exp(t1.log_value - log_exact) - 1
        if args.t >= 2 and not girth_at_most(G, 4):
            # the size-2 closed form presumes no loose cycle shorter than 5
            t2 = formulas.closed_form_t2(G.k, n, r)
            results["closed_form_t2_printed_log"] = t2.log_value
            results["closed_form_t2_corrected_log"] = t2.corrected_log_value
            results["closed_form_t2_delta"] = t2.correction_delta
    return G, {"t": args.t}, results, rows


# ----- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypercount",
        description="Exact and truncated-expansion counting of independent "
                    "sets in partite uniform hypergraphs.")
    parser.add_argument("--json", action="store_true",
                        help="structured JSON output")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker budget; results never depend on it")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_input=True):
        p = sub.add_parser(name)
        p.set_defaults(handler=fn)
        if needs_input:
            p.add_argument("--input", "-i", default="-",
                           help="path to instance file, '-' for stdin")
        return p

    add("exact-count", _cmd_exact_count)

    p = add("defect-count", _cmd_defect_count)
    p.add_argument("--class", dest="cls", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = add("polymers", _cmd_polymers)
    p.add_argument("--class", dest="cls", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--root", default=None, help="<class>:<index>")

    p = add("xi", _cmd_xi)
    p.add_argument("--class", dest="cls", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = add("kp-check", _cmd_kp_check)
    p.add_argument("--class", dest="cls", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--root", default=None, help="<class>:<index>")

    p = add("clusters", _cmd_clusters)
    p.add_argument("--class", dest="cls", type=int, required=True)
    p.add_argument("--t", type=int, required=True)

    p = add("log-xi-trunc", _cmd_log_xi_trunc)
    p.add_argument("--class", dest="cls", type=int, required=True)
    p.add_argument("--t", type=int, required=True)

    p = add("estimate", _cmd_estimate)
    p.add_argument("--t", type=int, required=True)

    p = add("closed-form", _cmd_closed_form)
    p.add_argument("--t", type=int, choices=(1, 2), required=True)

    p = add("check", _cmd_check)
    p.add_argument("property", choices=("reg", "exp1", "exp2", "def",
                                        "linear", "girth", "common-neighbor"))
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--alpha", default="1/4")
    p.add_argument("--beta", default="1/4")
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--min-girth", dest="min_girth", type=int, default=5)
    p.add_argument("--size-cap", dest="size_cap", type=int, default=3)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)

    p = add("generate", _cmd_generate, needs_input=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--min-girth", dest="min_girth", type=int, default=None)
    p.add_argument("--out", default=None)

    p = add("compare", _cmd_compare)
    p.add_argument("--t", type=int, required=True)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        G, params, results, rows = args.handler(args)
    except InputError as exc:
        print(f"error=input {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"error=budget {exc}", file=sys.stderr)
        return 3
    except GenerationError as exc:
        print(f"error=generation {exc}", file=sys.stderr)
        return 4
    elapsed = time.perf_counter() - start
    if G is not None or params or results or rows:
        dig = formats.digest(G) if G is not None else None
        _emit(args, args.command, dig, params, results, rows, elapsed)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
