"""Command-line front end (``nml``).

Exit status: 0 on success, 2 for invalid input, 1 when a size cap or search
budget is hit.
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import sys
import time
from fractions import Fraction
from typing import Callable

from . import bounds, constructions, search, seller
from .index import is_perfect_radius1, near_miss_index
from .io import SCHEMA, decimal, dump_frame, dump_report, frame_to_dict, rational, read_frame
from .space import LimitError, set_max_space


class UsageError(ValueError):
    pass


def _csv(header: list[str], rows: list[list]) -> str:
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _report(command: str, inputs: dict, outputs: dict) -> dict:
    return {"schema": SCHEMA, "command": command, "inputs": inputs, "outputs": outputs}


def _load(args) -> tuple:
    frame, labels, warnings = read_frame(args.inp)
    for w in warnings:
        print(f"warning: {w}", file=args.stderr)
    return frame, labels


def _require_json(args) -> None:
    if args.format != "json":
        raise UsageError(f"--format {args.format} is not available for this command")


# ---------------------------------------------------------------------------
# nm


def cmd_nm(args):
    frame, labels = _load(args)
    rep = near_miss_index(frame)
    if args.format == "csv":
        return _csv(["distance", "count"], [[k, c] for k, c in enumerate(rep.profile.counts)])
    outputs = {
        "index": rational(rep.index),
        "p": rational(rep.p),
        "seller_value": rational(rep.seller_value),
        "profile": list(rep.profile.counts),
        "covering_radius": rep.covering_radius,
        "perfect_radius1": is_perfect_radius1(frame),
        "decimal": {
            "index": decimal(rep.index),
            "p": decimal(rep.p),
            "seller_value": decimal(rep.seller_value),
        },
    }
    inputs = {"in": str(args.inp), "q": frame.q, "n": frame.n, "winners": len(frame)}
    return _report("nm", inputs, outputs)


# ---------------------------------------------------------------------------
# build


def cmd_build(args):
    labels = None
    if args.kind == "hamming":
        frame = constructions.hamming_code(constructions.HammingCodeParams(args.q, args.m))
    elif args.kind == "r1n3":
        frame = constructions.radius1_length3_code(args.q, seed=args.seed)
    else:
        src, labels = _load(args)
        if args.kind == "validate":
            frame = src
        elif args.kind == "extend":
            frame = constructions.extend_length(src)
        elif args.kind == "split":
            frame = constructions.split_symbols(src, args.t)
            labels = None
        else:
            frame = constructions.fold_alphabet(src, args.t, args.base)
            labels = None
    return dump_frame(frame, labels)


# ---------------------------------------------------------------------------
# bound


def _mbound_rows(rows) -> list[list]:
    return [[r.q, r.n, decimal(r.threshold_p, 4), decimal(r.M, 2)] for r in rows]


def cmd_bound(args):
    if args.kind == "m":
        row = bounds.m_bound(args.q, args.n)
        if args.format == "csv":
            return _csv(["q", "n", "p", "M"], _mbound_rows([row]))
        return _report("bound m", {"q": args.q, "n": args.n}, {
            "threshold_p": rational(row.threshold_p),
            "M": rational(row.M),
            "decimal": {"threshold_p": decimal(row.threshold_p), "M": decimal(row.M, 2)},
        })
    if args.kind == "sphere":
        _require_json(args)
        value = bounds.sphere_covering_bound(args.q, args.n, args.r)
        return _report("bound sphere", {"q": args.q, "n": args.n, "R": args.r},
                       {"sphere_covering_bound": value,
                        "ball_volume": bounds.ball_volume(args.q, args.n, args.r)})
    if args.kind == "ratio":
        _require_json(args)
        p = Fraction(args.p)
        lo, hi = bounds.ratio_bounds(args.q, args.n, p)
        return _report("bound ratio", {"q": args.q, "n": args.n, "p": rational(p)},
                       {"lower": rational(lo), "upper": rational(hi),
                        "regime": "below-threshold" if p <= bounds.threshold_probability(args.q)
                        else "above-threshold"})
    # table
    if args.grid != "paper":
        raise UsageError(f"unknown grid {args.grid!r}")
    rows = bounds.reference_table()
    if args.format == "csv":
        return _csv(["q", "n", "p", "M"], _mbound_rows(rows))
    return _report("bound table", {"grid": args.grid}, {"rows": [
        {"q": r.q, "n": r.n, "p": rational(r.threshold_p), "M": rational(r.M)} for r in rows
    ]})


# ---------------------------------------------------------------------------
# search


def _certificate(cert: search.SearchCertificate, q: int, n: int) -> dict:
    return {
        "kind": cert.kind,
        "size": cert.size,
        "target_R": cert.target_R,
        "sphere_covering_bound": bounds.sphere_covering_bound(q, n, min(cert.target_R, n)),
        "nodes_explored": cert.nodes_explored,
        "seed": cert.seed,
        "target_size": cert.target_size,
        "met_target": cert.met_target,
        "verification": {"covering_radius": cert.verified_radius,
                         "ok": cert.verified_radius is not None and cert.verified_radius <= cert.target_R},
        "frame": frame_to_dict(cert.frame),
    }


def cmd_search(args):
    if args.kind == "kqnr":
        _require_json(args)
        cert = search.minimal_covering_code(args.q, args.n, args.r, mode=args.mode, budget=args.budget,
                                            seed=args.seed, target_size=args.target)
        inputs = {"q": args.q, "n": args.n, "R": args.r, "mode": args.mode, "budget": args.budget,
                  "seed": args.seed, "target": args.target}
        return _report("search kqnr", inputs, _certificate(cert, args.q, args.n))
    if args.kind == "frame":
        _require_json(args)
        kwargs = {} if args.budget is None else {"budget": args.budget}
        frame, index = search.optimal_frame(args.q, args.n, args.w, **kwargs)
        return _report("search frame", {"q": args.q, "n": args.n, "w": args.w}, {
            "index": rational(index),
            "p": rational(frame.win_probability),
            "decimal": {"index": decimal(index)},
            "frame": frame_to_dict(frame),
        })
    curve = search.min_distance_sum_curve(args.q, args.n)
    denom = args.n * args.q**args.n
    rows = [[m, s, rational(1 - Fraction(s, denom))] for m, s in enumerate(curve, start=1)]
    second = [curve[i - 1] - 2 * curve[i] + curve[i + 1] for i in range(1, len(curve) - 1)]
    if args.format == "csv":
        return _csv(["m", "min_distance_sum", "best_index"], rows)
    return _report("search curve", {"q": args.q, "n": args.n}, {
        "curve": curve,
        "best_index": [r[2] for r in rows],
        "convex": all(d >= 0 for d in second),
    })


# ---------------------------------------------------------------------------
# seller


def _design_row(d: seller.SellerDesign) -> list:
    return [d.params.m, d.params.n, rational(d.p), rational(d.value), str(d.verified).lower()]


def cmd_seller(args):
    if args.kind == "design":
        d = seller.design_optimal(args.q, args.m)
        if args.format == "csv":
            return _csv(["m", "n", "p", "value", "verified"], [_design_row(d)])
        return _report("seller design", {"q": args.q, "m": args.m}, {
            "n": d.params.n,
            "winners": d.params.code_size,
            "p": rational(d.p),
            "value": rational(d.value),
            "bound": rational(d.bound),
            "optimal": d.optimal,
            "decimal": {"value": decimal(d.value)},
            "frame": frame_to_dict(d.frame),
        })
    if args.kind == "minlen":
        _require_json(args)
        ok = seller.minimal_length_check(args.q, args.m)
        return _report("seller minlen", {"q": args.q, "m": args.m},
                       {"n": constructions.HammingCodeParams(args.q, args.m).n, "minimal": ok})
    designs = seller.design_schedule(args.q, args.mmax)
    rows = [_design_row(d) for d in designs]
    if args.format == "csv":
        return _csv(["m", "n", "p", "value", "verified"], rows)
    return _report("seller schedule", {"q": args.q, "mmax": args.mmax}, {"rows": [
        {"m": r[0], "n": r[1], "p": r[2], "value": r[3], "verified": d.verified}
        for r, d in zip(rows, designs)
    ]})


# ---------------------------------------------------------------------------
# tables


def _table1(max_n: int, radii: list[int], seed: int) -> tuple[list[str], list[list]]:
    header = ["R"] + [str(n) for n in range(1, max_n + 1)]
    rows = []
    for R in radii:
        row: list = [R]
        for n in range(1, max_n + 1):
            if R > n:
                row.append("")
            elif 2**n <= search.EXACT_MAX_SPACE and n <= 5:
                row.append(search.minimal_covering_code(2, n, R, mode="exact").size)
            else:
                cert = search.minimal_covering_code(2, n, R, mode="heuristic", seed=seed)
                row.append(f"<={cert.size}")
        rows.append(row)
    return header, rows


def cmd_tables(args):
    if args.which == "mbound":
        rows = _mbound_rows(bounds.reference_table())
        if args.format == "csv":
            return _csv(["q", "n", "p", "M"], rows)
        return _report("tables", {"which": "mbound"}, {"rows": rows})
    radii = [int(r) for r in args.radii.split(",")]
    header, rows = _table1(args.max_n, radii, args.seed)
    if args.format == "csv":
        return _csv(header, rows)
    return _report("tables", {"which": "table1", "max_n": args.max_n, "radii": radii, "seed": args.seed},
                   {"header": header, "rows": rows})


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--max-space", type=int, default=None,
                        help="largest q^n to enumerate (default 2^27 or $NML_MAX_SPACE)")
    common.add_argument("--threads", type=int, default=None, help="worker threads (currently unused)")
    common.add_argument("--timing", action="store_true", help="add elapsed time to JSON reports")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="nml", description="Near-miss analysis of framed lotteries.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nm", parents=[common], help="near-miss index of a frame file")
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_nm)

    p = sub.add_parser("build", help="construct frames")
    bsub = p.add_subparsers(dest="kind", required=True)
    b = bsub.add_parser("hamming", parents=[common])
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--m", type=int, required=True)
    b = bsub.add_parser("validate", parents=[common], help="check a frame file and print its canonical form")
    b.add_argument("--in", dest="inp", required=True)
    b = bsub.add_parser("extend", parents=[common])
    b.add_argument("--in", dest="inp", required=True)
    b = bsub.add_parser("split", parents=[common])
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--in", dest="inp", required=True)
    b = bsub.add_parser("fold", parents=[common])
    b.add_argument("--base", type=int, required=True)
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--in", dest="inp", required=True)
    b = bsub.add_parser("r1n3", parents=[common])
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("bound", help="closed-form bounds")
    bsub = p.add_subparsers(dest="kind", required=True)
    b = bsub.add_parser("m", parents=[common])
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b = bsub.add_parser("sphere", parents=[common])
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--r", type=int, required=True)
    b = bsub.add_parser("ratio", parents=[common])
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--p", required=True, help="win probability as a fraction, e.g. 1/4")
    b = bsub.add_parser("table", parents=[common])
    b.add_argument("--grid", default="paper")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("search", help="exact and heuristic searches")
    ssub = p.add_subparsers(dest="kind", required=True)
    s = ssub.add_parser("kqnr", parents=[common])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--mode", choices=["exact", "heuristic"], default="exact")
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--target", type=int, default=None, help="stop once a code this small is found")
    s = ssub.add_parser("frame", parents=[common])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--budget", type=int, default=None)
    s = ssub.add_parser("curve", parents=[common])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("seller", help="seller design problem")
    ssub = p.add_subparsers(dest="kind", required=True)
    s = ssub.add_parser("design", parents=[common])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s = ssub.add_parser("schedule", parents=[common])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--mmax", type=int, required=True)
    s = ssub.add_parser("minlen", parents=[common])
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_seller)

    p = sub.add_parser("tables", parents=[common], help="reproduce reference tables")
    p.add_argument("--which", choices=["table1", "mbound"], required=True)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--radii", default="1,2")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_tables)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    args.stderr = stderr
    func: Callable = args.func
    set_max_space(args.max_space)
    start = time.perf_counter()
    try:
        result = func(args)
    except LimitError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except RuntimeError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    finally:
        set_max_space(None)
    if isinstance(result, dict):
        if args.timing:
            result["timing"] = {"elapsed_ms": round((time.perf_counter() - start) * 1000, 3)}
        text = dump_report(result)
    else:
        text = result
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
