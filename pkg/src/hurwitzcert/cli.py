"""Command line interface.

One subcommand per operation, grouped by module: modular arithmetic checks
(tau, ad, scan-tau, scan-ad, hecke-check), lattice enumeration (sublattices,
isogeny-components), monodromy counts (hurwitz), cover inspection
(validate-cover, cover-dim, cover-mult), classification (classify-equal12,
classify-divisor, classify-comb), and certificates (certify, verify).

Exit codes: 0 on success, 1 when a well-formed request is refused (a bound
was exceeded, a hypothesis failed, a check did not pass), 2 on malformed
input (bad flags, unparseable files, out-of-domain integers).

All output is integer-exact.  Rational values print as "p/q" in lowest
terms.  Scans accept --workers; the chunking is fixed, so output is
byte-identical for every worker count.  The environment variable
HURWITZCERT_DEGREE_BOUND overrides the default monodromy degree bound;
an explicit --degree-bound flag wins over the environment.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys

from .certify import build_certificate, verify_certificate
from .covers import intersection_multiplicity, stratum_dimension, validate_cover
from .errors import Refusal
from .graphs import AStructure
from .hurwitz import DEFAULT_DEGREE_BOUND, MonodromyProblem, count_tuples
from .lattice import double_cosets, sublattices
from .modular import (
    a_coeff,
    a_coeff_table,
    hecke_eigenvalue_check,
    tau,
    tau_table,
)
from .serialize import (
    certificate_from_json,
    certificate_to_json,
    contribution_to_doc,
    cover_from_json,
)
from .strata import (
    HurwitzParams,
    classify_comb_pullback,
    classify_divisor_pullback,
    classify_equal12,
)

ENV_DEGREE_BOUND = "HURWITZCERT_DEGREE_BOUND"

_SCAN_CHUNK = 4096


def _degree_bound(args) -> int:
    """Resolve the monodromy degree bound: flag, then environment, then default."""
    if getattr(args, "degree_bound", None) is not None:
        return args.degree_bound
    raw = os.environ.get(ENV_DEGREE_BOUND)
    if raw is None:
        return DEFAULT_DEGREE_BOUND
    try:
        return int(raw)
    except ValueError:
        raise ValueError(
            "%s must be an integer, got %r" % (ENV_DEGREE_BOUND, raw)
        ) from None


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _scan_chunk(task: tuple[int, tuple[int, ...]]) -> list[int]:
    start, values = task
    return [start + i for i, value in enumerate(values) if value == 0]


def _scan_zeros(table, first: int, last: int, workers: int) -> list[int]:
    """Zero indices in table[first..last], split into fixed-size chunks.

    The chunk layout does not depend on the worker count and the results are
    merged in chunk order, so the answer is deterministic.
    """
    tasks = []
    index = first
    while index <= last:
        stop = min(index + _SCAN_CHUNK, last + 1)
        tasks.append((index, tuple(table[index:stop])))
        index = stop
    if workers > 1 and len(tasks) > 1:
        with multiprocessing.Pool(min(workers, len(tasks))) as pool:
            chunks = pool.map(_scan_chunk, tasks)
    else:
        chunks = [_scan_chunk(task) for task in tasks]
    return [d for chunk in chunks for d in chunk]


def _print_doc(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _classification_doc(operation: str, params_doc, out) -> dict:
    tags: dict[str, int] = {}
    for entry in out:
        tags[entry.tag] = tags.get(entry.tag, 0) + 1
    return {
        "operation": operation,
        "params": params_doc,
        "count": len(out),
        "tags": tags,
        "contributions": [contribution_to_doc(entry) for entry in out],
    }


def cmd_tau(args) -> int:
    print(tau(args.d))
    return 0


def cmd_ad(args) -> int:
    print(a_coeff(args.d))
    return 0


def cmd_scan_tau(args) -> int:
    table = tau_table(args.max)
    zeros = _scan_zeros(table, 1, args.max, args.workers)
    if zeros:
        for d in zeros:
            print("tau(%d) = 0" % d)
        return 1
    print("tau(d) != 0 for 1 <= d <= %d" % args.max)
    return 0


def cmd_scan_ad(args) -> int:
    if args.max < 2:
        raise ValueError("a_d starts at d = 2, got max %d" % args.max)
    table = a_coeff_table(args.max)
    zeros = _scan_zeros(table, 2, args.max, args.workers)
    if zeros:
        for d in zeros:
            print("a(%d) = 0" % d)
        return 1
    print("a(d) != 0 for 2 <= d <= %d" % args.max)
    return 0


def cmd_hecke_check(args) -> int:
    if hecke_eigenvalue_check(args.k, args.prec):
        print("T_%d eigenvalue check passed to precision %d" % (args.k, args.prec))
        return 0
    print("T_%d eigenvalue check FAILED at precision %d" % (args.k, args.prec))
    return 1


def cmd_sublattices(args) -> int:
    for matrix in sublattices(args.k):
        print("[[%d, %d], [0, %d]]" % (matrix.a, matrix.b, matrix.d))
    return 0


def cmd_isogeny_components(args) -> int:
    for cls in double_cosets(args.k):
        print("(%d, %d)" % (cls.e1, cls.e2))
    return 0


def _parse_profiles(text: str) -> tuple[tuple[int, ...], ...]:
    if not text:
        return ()
    profiles = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            raise ValueError("empty profile in %r" % text)
        try:
            profiles.append(tuple(int(piece) for piece in part.split(",")))
        except ValueError:
            raise ValueError("profile %r is not a comma-separated integer list" % part) from None
    return tuple(profiles)


def cmd_hurwitz(args) -> int:
    problem = MonodromyProblem(
        degree=args.degree,
        target_genus=args.target_genus,
        profiles=_parse_profiles(args.profiles),
        connected=args.connected,
    )
    result = count_tuples(problem, degree_bound=_degree_bound(args))
    print("weighted: %s" % result.weighted)
    print("classes: %d" % result.classes)
    print("tuples: %d" % result.tuples)
    return 0


def cmd_validate_cover(args) -> int:
    cover = cover_from_json(_read_text(args.file))
    problems = validate_cover(cover)
    if problems:
        for problem in problems:
            print(problem)
        return 1
    print("ok")
    return 0


def cmd_cover_dim(args) -> int:
    cover = cover_from_json(_read_text(args.file))
    print(stratum_dimension(cover))
    return 0


def cmd_cover_mult(args) -> int:
    cover = cover_from_json(_read_text(args.file))
    try:
        selected = tuple(int(piece) for piece in args.a_edges.split(",")) if args.a_edges else ()
    except ValueError:
        raise ValueError("--a-edges wants comma-separated edge indices, got %r" % args.a_edges) from None
    a = AStructure(cover.source, selected)
    print(intersection_multiplicity(cover, a))
    return 0


def cmd_classify_equal12(args) -> int:
    out = classify_equal12(args.g, args.m2, args.d, degree_bound=_degree_bound(args))
    _print_doc(
        _classification_doc(
            "equal12", {"g": args.g, "m2": args.m2, "d": args.d}, out
        )
    )
    return 0


def cmd_classify_divisor(args) -> int:
    params = HurwitzParams(
        g=args.g, h=args.h, d=args.d, m2=args.m2, md=args.md, n=args.n
    )
    out = classify_divisor_pullback(params, args.shape, degree_bound=_degree_bound(args))
    doc = _classification_doc(
        "divisor:" + args.shape,
        {"g": args.g, "h": args.h, "d": args.d, "m2": args.m2, "md": args.md, "n": args.n},
        out,
    )
    _print_doc(doc)
    return 0


def cmd_classify_comb(args) -> int:
    params = HurwitzParams(
        g=args.g, h=args.h, d=args.d, m2=args.m2, md=args.md, n=args.n
    )
    out = classify_comb_pullback(params, args.s, degree_bound=_degree_bound(args))
    doc = _classification_doc(
        "comb",
        {
            "g": args.g,
            "h": args.h,
            "d": args.d,
            "s": args.s,
            "m2": args.m2,
            "md": args.md,
            "n": args.n,
        },
        out,
    )
    _print_doc(doc)
    return 0


def _params_from_args(args) -> HurwitzParams:
    return HurwitzParams(
        g=args.g, h=args.h, d=args.d, m2=args.m2, md=args.md, n=args.n
    )


def cmd_certify(args) -> int:
    certificate = build_certificate(_params_from_args(args))
    text = certificate_to_json(certificate)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as handle:
            handle.write(text)
        print("certificate written to %s" % args.emit)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    certificate = certificate_from_json(_read_text(args.file))
    if verify_certificate(certificate):
        print("certificate verified")
        return 0
    print("certificate rejected")
    return 1


def _add_params_flags(parser, include_n: bool = True) -> None:
    parser.add_argument("--g", type=int, required=True, help="source genus")
    parser.add_argument("--h", type=int, required=True, help="target genus")
    parser.add_argument("--d", type=int, required=True, help="degree")
    parser.add_argument("--m2", type=int, default=0, help="marked pairs (default 0)")
    parser.add_argument("--md", type=int, default=0, help="marked d-tuples (default 0)")
    if include_n:
        parser.add_argument("--n", type=int, default=0, help="free marked fibres (default 0)")


def _add_degree_bound_flag(parser) -> None:
    parser.add_argument(
        "--degree-bound",
        type=int,
        default=None,
        help="monodromy degree bound (default %d, or %s)" % (DEFAULT_DEGREE_BOUND, ENV_DEGREE_BOUND),
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hurwitzcert",
        description="Hurwitz cycle certificates: modular coefficients, cover classification, reduction chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("tau", help="Ramanujan tau value at d")
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("ad", help="pairing coefficient a_d")
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_ad)

    p = sub.add_parser("scan-tau", help="check tau(d) != 0 for 1 <= d <= max")
    p.add_argument("max", type=int)
    p.add_argument("--workers", type=int, default=1, help="parallel workers (default 1)")
    p.set_defaults(func=cmd_scan_tau)

    p = sub.add_parser("scan-ad", help="check a_d != 0 for 2 <= d <= max")
    p.add_argument("max", type=int)
    p.add_argument("--workers", type=int, default=1, help="parallel workers (default 1)")
    p.set_defaults(func=cmd_scan_ad)

    p = sub.add_parser("hecke-check", help="verify T_k eigenvalue on the weight-12 form")
    p.add_argument("k", type=int)
    p.add_argument("--prec", type=int, default=1200, help="series precision (default 1200)")
    p.set_defaults(func=cmd_hecke_check)

    p = sub.add_parser("sublattices", help="index-k sublattices in Hermite normal form")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_sublattices)

    p = sub.add_parser("isogeny-components", help="Smith normal form classes of index k")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_isogeny_components)

    p = sub.add_parser("hurwitz", help="count monodromy tuples for a branched cover problem")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--target-genus", type=int, required=True)
    p.add_argument(
        "--profiles",
        default="",
        help='semicolon-separated cycle types, e.g. "2,1,1;2,1,1" (default none)',
    )
    p.add_argument(
        "--connected",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="count connected covers (default) or all covers",
    )
    _add_degree_bound_flag(p)
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("validate-cover", help="structural checks on a cover file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate_cover)

    p = sub.add_parser("cover-dim", help="dimension of the stratum a cover file describes")
    p.add_argument("file")
    p.set_defaults(func=cmd_cover_dim)

    p = sub.add_parser("cover-mult", help="intersection multiplicity against a selection of source edges")
    p.add_argument("file")
    p.add_argument(
        "--a-edges",
        required=True,
        help='comma-separated source edge indices, e.g. "0,2"',
    )
    p.set_defaults(func=cmd_cover_mult)

    p = sub.add_parser("classify-equal12", help="pullback classification on the g + m2 = 12 locus")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    _add_degree_bound_flag(p)
    p.set_defaults(func=cmd_classify_equal12)

    p = sub.add_parser("classify-divisor", help="pullback classification for a divisor shape")
    p.add_argument(
        "--shape",
        required=True,
        choices=["rational-tail", "elliptic-tail"],
        help="boundary divisor shape",
    )
    _add_params_flags(p)
    _add_degree_bound_flag(p)
    p.set_defaults(func=cmd_classify_divisor)

    p = sub.add_parser("classify-comb", help="pullback classification for a comb degeneration")
    _add_params_flags(p)
    p.add_argument("--s", type=int, required=True, help="number of comb teeth")
    _add_degree_bound_flag(p)
    p.set_defaults(func=cmd_classify_comb)

    p = sub.add_parser("certify", help="build a non-vanishing certificate for given parameters")
    _add_params_flags(p)
    p.add_argument("--emit", default=None, help="write the certificate to this file instead of stdout")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="replay a certificate file and accept or reject it")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Refusal as exc:
        print("refusal: %s" % exc, file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
