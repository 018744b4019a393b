"""Command line front end.

Exit codes: 0 success, 1 a mathematical check was falsified, 2 invalid
configuration or violated hypothesis, 3 a size bound was exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor

from . import meataxe, verify
from .chevalley import structure_constants
from .envalg import Character
from .gf import GF, field
from .modrep import (DEFAULT_SIZE_BOUND, ParabolicContext, SizeBoundError, dump_module,
                     evaluate_weight, induce, levi_simple, sweep_csv)
from .rcrit import check_compatible, r_factorization, r_product
from .rootsys import (ConfigurationError, Root, RootError, build_root_system, check_good_prime,
                      parse_type)

EXIT_OK, EXIT_FALSIFIED, EXIT_CONFIG, EXIT_SIZE = 0, 1, 2, 3

log = logging.getLogger("babyverma")


# -- parsing helpers ----------------------------------------------------------------


def parse_index_set(text: str) -> tuple[int, ...]:
    text = (text or "").strip().strip("{}")
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.replace(" ", ",").split(",") if t)
    except ValueError:
        raise ConfigurationError(f"cannot parse simple-root index set {text!r}") from None


def parse_vector(fld: GF, text: str, length: int, what: str) -> tuple[int, ...]:
    items = [t for t in text.replace(" ", "").split(",") if t]
    if len(items) != length:
        raise ConfigurationError(f"{what} needs {length} entries, got {len(items)}")
    try:
        return tuple(fld.parse(t) for t in items)
    except ValueError:
        raise ConfigurationError(f"cannot parse {what} {text!r}") from None


def parse_chi(fld: GF, rank: int, chi_h: str | None, chi_f: str | None) -> Character:
    h = parse_vector(fld, chi_h, rank, "--chi-h") if chi_h else (0,) * rank
    pairs = []
    for item in (chi_f or "").split(","):
        item = item.strip()
        if not item:
            continue
        root, sep, value = item.partition(":")
        if not sep:
            raise ConfigurationError(f"--chi-f entries look like a1+a2:value, got {item!r}")
        pairs.append((Root.parse(root, rank), fld.parse(value)))
    return Character(fld, h, pairs)


def format_signed(fld: GF, v: int) -> str:
    if fld.e == 1 and v > fld.p // 2:
        return str(v - fld.p)
    return fld.format(v)


def _context(args) -> ParabolicContext:
    kind, rank = parse_type(args.type)
    sys_ = build_root_system(kind, rank, max_rank=args.max_rank)
    check_good_prime(kind, rank, args.p)
    fld = field(args.p, args.e)
    chi = parse_chi(fld, rank, args.chi_h, args.chi_f)
    return ParabolicContext(sys_, args.p, args.e, parse_index_set(args.I), chi,
                            size_bound=args.size_bound, seed=args.seed)


# -- commands -----------------------------------------------------------------------------


def cmd_decide(args) -> int:
    ctx = _context(args)
    fld = ctx.field
    x = parse_vector(fld, args.lam, ctx.system.rank, "--lambda")
    check_compatible(fld, ctx.chi, x)
    verdict = r_product(ctx.system, ctx.pd, fld, x)
    fac = r_factorization(ctx.system, ctx.pd)
    word = "simple" if verdict.simple else "not simple"
    nz = len(verdict.vanishing_factors)
    print(f"{ctx.describe()}  lambda=({','.join(fld.format(v) for v in x)})")
    if len(fac.factors) == 1:
        f = fac.factors[0]
        print(f"{word}; factor ({f})^{ctx.p - 1} - 1 = {format_signed(fld, verdict.factor_values[0])}")
    else:
        print(f"{word}; {nz} vanishing factor{'s' if nz != 1 else ''}")
    for f, v in zip(fac.factors, verdict.factor_values):
        mark = "  <- zero" if v == 0 else ""
        print(f"  {f.root.name():<10} ({f})^{ctx.p - 1} - 1 = {format_signed(fld, v)}{mark}")
    print(f"product (without constant) = {format_signed(fld, verdict.r_value)}")
    if not args.oracle:
        return EXIT_OK
    row = evaluate_weight(ctx, x, oracle=True, straighten=True)
    if row.oracle_simple is None:
        print(row.note, file=sys.stderr)
        return EXIT_SIZE
    oracle_word = "simple" if row.oracle_simple else "not simple"
    print(f"oracle: {oracle_word} (dim Z = {row.dim})")
    print(f"R by straightening = {format_signed(fld, row.r_straightened)}")
    agree = row.oracle_simple == verdict.simple == (row.r_straightened != 0)
    if not agree:
        print("MISMATCH between formula, straightening and oracle")
        return EXIT_FALSIFIED
    return EXIT_OK


def _scan_chunk(payload):
    cfg, weights, oracle, straighten = payload
    args = argparse.Namespace(**cfg)
    ctx = _context(args)
    return [evaluate_weight(ctx, x, oracle, straighten) for x in weights]


def cmd_scan(args) -> int:
    ctx = _context(args)
    weights = ctx.weights()
    if not weights:
        print("warning: no weights compatible with chi over this field", file=sys.stderr)
    straighten = not args.no_straighten
    if args.oracle and weights and ctx.p ** ctx.pd.k > ctx.size_bound:
        print(f"size bound: modules have dimension at least {ctx.p ** ctx.pd.k} "
              f"> bound {ctx.size_bound}", file=sys.stderr)
        return EXIT_SIZE
    if args.jobs > 1 and len(weights) > 1:
        cfg = {k: getattr(args, k) for k in ("type", "p", "e", "I", "chi_h", "chi_f",
                                              "size_bound", "seed", "max_rank")}
        chunks = [weights[i::args.jobs] for i in range(args.jobs)]
        with ProcessPoolExecutor(args.jobs) as pool:
            parts = list(pool.map(_scan_chunk, [(cfg, c, args.oracle, straighten) for c in chunks]))
        rows_by_x = {r.x: r for part in parts for r in part}
        rows = [rows_by_x[tuple(x)] for x in weights]
    else:
        rows = [evaluate_weight(ctx, x, args.oracle, straighten) for x in weights]
    text = sweep_csv(ctx, rows)
    _emit(args.out, text)
    bad = [r for r in rows
           if (r.oracle_simple is not None and r.oracle_simple != r.formula_simple)
           or (r.r_straightened is not None and (r.r_straightened != 0) != r.formula_simple)]
    if bad:
        print(f"MISMATCH at {len(bad)} weights", file=sys.stderr)
        return EXIT_FALSIFIED
    if any(r.note for r in rows):
        return EXIT_SIZE
    return EXIT_OK


def _emit(path, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _type_list(text: str | None, ranks: str | None, default):
    if text:
        return [t.strip().upper() for t in text.split(",") if t.strip()]
    if ranks:
        bound = max(int(r) for r in ranks.split(","))
        return [t for t in verify.CHEVALLEY_TYPES if t == "G2" or int(t[1:]) <= bound]
    return default


def cmd_verify(args) -> int:
    names = list(verify.CHECKS) if args.check == "all" else [c.strip() for c in args.check.split(",")]
    unknown = [n for n in names if n not in verify.CHECKS]
    if unknown:
        raise ConfigurationError(f"unknown check(s) {unknown}; choose from {sorted(verify.CHECKS)}")
    primes = tuple(int(p) for p in args.p.split(",")) if args.p else None
    failed = False
    for name in names:
        fn = verify.CHECKS[name]
        kwargs = {}
        types = _type_list(args.types, args.ranks, None)
        if types is not None:
            kwargs["types"] = types
        if primes is not None and name not in ("prop21", "rho", "chevalley", "thm45"):
            kwargs["primes"] = primes
        res = fn(**kwargs)
        print(res.line(), flush=True)
        failed |= not res.passed
    return EXIT_FALSIFIED if failed else EXIT_OK


def cmd_export(args) -> int:
    kind, rank = parse_type(args.type)
    sys_ = build_root_system(kind, rank, max_rank=args.max_rank)
    if args.what == "rootsys":
        text = sys_.to_json(indent=2) + "\n"
    elif args.what == "constants":
        text = structure_constants(sys_).to_csv()
    elif args.what == "factors":
        from .rootsys import parabolic_data
        text = r_factorization(sys_, parabolic_data(sys_, parse_index_set(args.I))).to_json(indent=2) + "\n"
    else:
        ctx = _context(args)
        if not args.lam:
            raise ConfigurationError("--lambda is required for matrix export")
        x = parse_vector(ctx.field, args.lam, rank, "--lambda")
        L = levi_simple(ctx, x)
        text = dump_module(induce(ctx, L, x))
    _emit(args.out, text)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------------


def _add_config(sp, need_lambda: bool = False):
    sp.add_argument("--type", required=True, help="root system type, e.g. A2, B2, G2")
    sp.add_argument("--p", type=int, required=True, help="the characteristic")
    sp.add_argument("--e", type=int, default=1, help="extension degree of the field (default 1)")
    sp.add_argument("--I", default="", help='simple-root indices of the Levi part, e.g. "1,2"')
    sp.add_argument("--chi-h", dest="chi_h", help="chi(h_i), comma separated field elements")
    sp.add_argument("--chi-f", dest="chi_f", help="chi(f_a) on Levi roots, e.g. a1:1,a1+a2:0:1")
    sp.add_argument("--size-bound", dest="size_bound", type=int, default=DEFAULT_SIZE_BOUND)
    sp.add_argument("--seed", type=int, default=meataxe.DEFAULT_SEED)
    sp.add_argument("--max-rank", dest="max_rank", type=int, default=4)
    if need_lambda:
        sp.add_argument("--lambda", dest="lam", required=True,
                        help="lambda(h_i), comma separated; field elements as k or c0:c1")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="babyverma", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="decide simplicity for one weight")
    _add_config(d, need_lambda=True)
    d.add_argument("--oracle", action="store_true", help="also build the module and test it")
    d.set_defaults(func=cmd_decide)

    s = sub.add_parser("scan", help="sweep all compatible weights, CSV output")
    _add_config(s)
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--no-straighten", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_scan)

    v = sub.add_parser("verify", help="run named check suites")
    v.add_argument("--check", default="all", help=f"one of {', '.join(verify.CHECKS)} or all")
    v.add_argument("--types", help="comma separated types, e.g. A2,B2,G2")
    v.add_argument("--ranks", help="use every supported type up to this rank")
    v.add_argument("--p", help="comma separated primes")
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("export", help="export root systems, constants, factors or matrices")
    x.add_argument("what", choices=["rootsys", "constants", "factors", "matrices"])
    x.add_argument("--type", required=True)
    x.add_argument("--I", default="")
    x.add_argument("--p", type=int, default=3)
    x.add_argument("--e", type=int, default=1)
    x.add_argument("--chi-h", dest="chi_h")
    x.add_argument("--chi-f", dest="chi_f")
    x.add_argument("--lambda", dest="lam")
    x.add_argument("--size-bound", dest="size_bound", type=int, default=DEFAULT_SIZE_BOUND)
    x.add_argument("--seed", type=int, default=meataxe.DEFAULT_SEED)
    x.add_argument("--max-rank", dest="max_rank", type=int, default=4)
    x.add_argument("--out")
    x.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except SizeBoundError as exc:
        print(f"size bound: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (ConfigurationError, RootError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
