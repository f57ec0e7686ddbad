"""Command-line front end.

Exit codes: 0 on success or match, 1 on a mismatch, 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import charts
from .borel_ss import SSError, Window, compare_einfty, comparison_ring, run_to_einfty
from .descent_lab.corpus import load_corpus
from .descent_lab.rings import DescentError
from .jw_invariants import invariants_table
from .ro2_ring import RingError, bp_ring, load_ring
from .sequences import GenSequence


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _sigma_window(text: str):
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty sigma window {text!r}")
    return lo, hi


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _window(args) -> Window:
    doc = _read_json(args.window) if args.window else {}
    if not isinstance(doc, dict):
        raise InputError(f"{args.window}: window file must hold an object")
    try:
        n_max = args.n_max if args.n_max is not None else int(doc.get("n_max", 1))
        lo, hi = args.sigma_window or tuple(doc.get("sigma_window", (-8, 8)))
        a_max = args.a_max if args.a_max is not None else int(doc.get("a_max", 8))
        mw = args.max_weight if args.max_weight is not None else int(doc.get("max_weight", 0))
        return Window(n_max, int(lo), int(hi), a_max, mw)
    except (TypeError, ValueError) as exc:
        raise InputError(f"window: {exc}") from exc


def _sequence(args, n_max: int) -> GenSequence:
    if not args.generators:
        return GenSequence.hazewinkel(n_max)
    doc = _read_json(args.generators)
    gens = doc.get("generators") if isinstance(doc, dict) else doc
    if not isinstance(gens, list):
        raise InputError(f"{args.generators}: field 'generators' must be a list")
    for i, g in enumerate(gens):
        if not isinstance(g, dict) or "k" not in g or "expansion_in_v" not in g:
            raise InputError(f"{args.generators}: generators[{i}] needs fields 'k' and 'expansion_in_v'")
    try:
        return GenSequence.from_json(n_max, gens)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.generators}: {exc}") from exc


# ------------------------------------------------------------------ commands
def cmd_ring_normalform(args) -> int:
    if args.ring:
        R = load_ring(_read_json(args.ring))
    else:
        lo, hi = args.sigma_window or (-64, 64)
        R = bp_ring(args.n_max if args.n_max is not None else 2, (lo, hi),
                    args.a_max if args.a_max is not None else 32)
    x = R.parse(args.element)
    if args.format == "json":
        _emit(_dumps({"input": args.element, "normal_form": str(x), "terms": x.to_json()}), args.out)
    else:
        _emit(str(x) + "\n", args.out)
    return 0


def _page_text(page) -> str:
    d = page.dump()
    lines = [f"# page E_{d['r']}  window {page.window}", "# s\tdeg\tgroup\tname"]
    for c in d["classes"]:
        lines.append(f"{c['s']}\t{c['deg'][0]},{c['deg'][1]}\t{c['group']}\t{c['name']}")
    lines.append(f"# edge-flagged blocks: {len(d['edge_flagged'])}")
    return "\n".join(lines) + "\n" + charts.text_chart(d)


def cmd_ss_run(args) -> int:
    W = _window(args)
    u = _sequence(args, W.n_max)
    page = run_to_einfty(W, u, pad=args.pad)
    if args.format == "svg":
        _emit(charts.svg_chart(page), args.out)
    elif args.format == "json":
        _emit(_dumps(page.dump()), args.out)
    else:
        _emit(_page_text(page), args.out)
    if args.chart:
        Path(args.chart).write_text(charts.svg_chart(page))
    return 0


def cmd_ss_compare(args) -> int:
    W = _window(args)
    u = _sequence(args, W.n_max)
    page = run_to_einfty(W, u, pad=args.pad)
    rep = compare_einfty(page, comparison_ring(W, u), n_products=args.products, seed=args.seed)
    if args.format == "json":
        _emit(_dumps(rep.to_json()), args.out)
    else:
        line = "match" if rep.match else f"MISMATCH at {rep.first_mismatch}"
        _emit(f"{line}\nblocks checked: {rep.checked_blocks}\nproducts checked: {rep.checked_products}\n", args.out)
    return 0 if rep.match else 1


def cmd_descent_check(args) -> int:
    from .descent_lab.cosimplicial import amitsur_complex, cobar_complex, comparison
    from .descent_lab.galois import is_galois

    rows, bad = [], False
    for e in load_corpus(_read_json(args.corpus) if args.corpus else None):
        rep = is_galois(e.f, e.act, with_inverse=False)
        row = {"name": e.name, **rep.to_json()}
        if rep.galois:
            L = args.levels
            comp = comparison(amitsur_complex(e.f, L), cobar_complex(e.act, L), e.act, L)
            row["h_levels"] = [c.to_json() for c in comp]
            bad |= not all(c.ok for c in comp)
        if e.expect_galois is not None:
            row["expected"] = e.expect_galois
            bad |= rep.galois != e.expect_galois
        rows.append(row)
    if args.format == "json":
        _emit(_dumps(rows), args.out)
    else:
        lines = []
        for r in rows:
            hs = " ".join(f"h{c['q']}:{'ok' if c['bijective'] and c['ring_map'] else 'FAIL'}" for c in r.get("h_levels", []))
            lines.append(f"{r['name']}\tgalois={r['galois']}\t|B^G|={r['fixed_order']}\t{hs}".rstrip())
        _emit("\n".join(lines) + "\n", args.out)
    return 1 if bad else 0


def cmd_descent_roundtrip(args) -> int:
    from .descent_lab.equivalence import equivalence_report, roundtrip_sweep

    rows, bad = [], False
    for e in load_corpus(_read_json(args.corpus) if args.corpus else None):
        if args.name and e.name not in args.name:
            continue
        row = {"name": e.name}
        try:
            rep = equivalence_report(e.f, e.act, args.bound, seed=args.seed)
            row["report"] = rep.to_json()
            sweep = roundtrip_sweep(e.f, e.act, args.bound)
            row["roundtrips"] = sweep
            bad |= bool(rep.unmatched) or not all(sweep.values())
        except DescentError as exc:
            row["skipped"] = str(exc)
        rows.append(row)
    if args.format == "json":
        _emit(_dumps(rows), args.out)
    else:
        lines = []
        for r in rows:
            if "skipped" in r:
                lines.append(f"{r['name']}\tskipped: {r['skipped']}")
                continue
            rep = r["report"]
            ok = sum(r["roundtrips"].values())
            lines.append(f"{r['name']}\tcomplete={rep['complete']}\tA-classes={rep['a_classes']}"
                         f"\tsemilinear-classes={rep['semilinear_classes']}\troundtrips={ok}/{len(r['roundtrips'])}")
        _emit("\n".join(lines) + "\n", args.out)
    return 1 if bad else 0


def cmd_invariants(args) -> int:
    rows = invariants_table(args.n_max)
    if args.format == "json":
        _emit(_dumps(rows), args.out)
    else:
        lines = ["n\tlambda\tnilpotency\tperiod\tperiodicity_check"]
        lines += [f"{r['n']}\t{r['lambda']}\t{r['nilpotency']}\t{r['period']}\t{str(r['periodicity_check']).lower()}"
                  for r in rows]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


# -------------------------------------------------------------------- parser
def _window_flags(p):
    p.add_argument("--window", help="JSON file with n_max, sigma_window, a_max, max_weight")
    p.add_argument("--n-max", type=_nonneg)
    p.add_argument("--sigma-window", type=_sigma_window, metavar="LO:HI")
    p.add_argument("--a-max", type=_nonneg)
    p.add_argument("--max-weight", type=_nonneg, help="cap on the v-weight of reported classes")
    p.add_argument("--generators", metavar="FILE", help="JSON generator sequence u (default u = v)")
    p.add_argument("--pad", type=int, default=1)


def _output_flags(p, formats=("text", "json")):
    p.add_argument("--format", choices=formats, default="text")
    p.add_argument("--out", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="borel-descent")
    sub = ap.add_subparsers(dest="group", required=True)

    ring = sub.add_parser("ring").add_subparsers(dest="cmd", required=True)
    p = ring.add_parser("normalform", help="canonical form of an element")
    p.add_argument("element")
    p.add_argument("--ring", metavar="FILE", help="ring presentation JSON (default: BP-style ring)")
    p.add_argument("--n-max", type=_nonneg)
    p.add_argument("--sigma-window", type=_sigma_window, metavar="LO:HI")
    p.add_argument("--a-max", type=_nonneg)
    _output_flags(p)
    p.set_defaults(func=cmd_ring_normalform)

    ss = sub.add_parser("ss").add_subparsers(dest="cmd", required=True)
    p = ss.add_parser("run", help="run the spectral sequence to E_infinity")
    _window_flags(p)
    _output_flags(p, ("text", "json", "svg"))
    p.add_argument("--chart", metavar="PATH", help="also write an SVG chart here")
    p.set_defaults(func=cmd_ss_run)
    p = ss.add_parser("compare", help="compare E_infinity with the ring presentation")
    _window_flags(p)
    _output_flags(p)
    p.add_argument("--products", type=_nonneg, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_ss_compare)

    de = sub.add_parser("descent").add_subparsers(dest="cmd", required=True)
    p = de.add_parser("check", help="Galois verdicts and comparison maps h^q")
    p.add_argument("--corpus", metavar="FILE", help="extension corpus JSON (default: bundled)")
    p.add_argument("--levels", type=_nonneg, default=2)
    _output_flags(p)
    p.set_defaults(func=cmd_descent_check)
    p = de.add_parser("roundtrip", help="equivalence reports and round trips")
    p.add_argument("--corpus", metavar="FILE")
    p.add_argument("--bound", type=_nonneg, default=64)
    p.add_argument("--name", action="append", help="restrict to named extensions")
    p.add_argument("--seed", type=int, default=0)
    _output_flags(p)
    p.set_defaults(func=cmd_descent_roundtrip)

    inv = sub.add_parser("invariants").add_subparsers(dest="cmd", required=True)
    p = inv.add_parser("table", help="fibration invariants for n = 1..N")
    p.add_argument("--n-max", type=_nonneg, required=True)
    _output_flags(p)
    p.set_defaults(func=cmd_invariants)
    return ap


def _glue_negative(argv: List[str]) -> List[str]:
    # "--sigma-window -8:8" would otherwise read -8:8 as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--sigma-window" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--sigma-window={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    argv = _glue_negative(list(sys.argv[1:] if argv is None else argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, RingError, SSError, DescentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: malformed input: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
