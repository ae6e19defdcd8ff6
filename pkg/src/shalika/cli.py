"""Command-line entry point.

Exit codes: 0 ok, 2 usage / out-of-range arguments, 3 domain error
(singular matrix), 4 internal verification failure, 5 verification
mismatch against the brute-force oracle.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cosets, oracle, symgrp
from .cosets import DecompositionError, LabelError
from .linalg import DimensionError, Matrix, SingularMatrixError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INTERNAL, EXIT_MISMATCH = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc) + "\n")


def _load_matrix(path: str, p: int | None) -> Matrix:
    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        g = Matrix.from_json(doc)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read matrix from {path}: {exc}") from exc
    if p is not None and g.p != p:
        raise UsageError(f"matrix is over GF({g.p}) but --p {p} was given")
    return g


def _resolve_n(g: Matrix, n: int | None) -> int:
    if not g.is_square() or g.rows % 2:
        raise UsageError(f"expected a square matrix of even size, got {g.rows}x{g.cols}")
    if n is None:
        return g.rows // 2
    if 2 * n != g.rows:
        raise UsageError(f"matrix size {g.rows} does not match --n {n}")
    return n


def cmd_reps(args) -> int:
    cosets.check_nr(args.n, args.r)
    labels = cosets.kl_bounds(args.n, args.r)
    if args.format == "pretty":
        for lab in labels:
            print(f"w_{{{lab.k},{lab.l}}}:")
            print(cosets.representative(lab, args.p).pretty())
            print()
    else:
        _emit({"n": args.n, "r": args.r, "p": args.p, "representatives": [
            {"k": lab.k, "l": lab.l, "matrix": cosets.representative(lab, args.p).to_json()} for lab in labels]})
    return EXIT_OK


def cmd_count(args) -> int:
    print(cosets.count(args.n, args.r))
    return EXIT_OK


def cmd_classify(args) -> int:
    g = _load_matrix(args.matrix, args.p)
    n = _resolve_n(g, args.n)
    _emit(cosets.classify(g, n, args.r).to_json())
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = _load_matrix(args.matrix, args.p)
    n = _resolve_n(g, args.n)
    d = cosets.decompose(g, n, args.r)
    if d.product() != g:
        raise DecompositionError("s·w·p does not reproduce the input")
    _emit(d.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        oracle.check_size(2 * args.n, args.p, args.expensive)
    except oracle.SizeLimitError as exc:
        raise UsageError(str(exc)) from exc
    rs = [args.r] if args.r is not None else list(range(1, 2 * args.n))
    for r in rs:
        cosets.check_nr(args.n, r)
    mask = oracle.invertible_mask(2 * args.n, args.p)
    reports = []
    for r in rs:
        part = oracle.double_coset_partition(args.n, args.p, r, expensive=args.expensive, mask=mask)
        reports.append(oracle.certify(args.n, args.p, r, expensive=args.expensive, partition=part))
    ok = all(rep["ok"] for rep in reports)
    _emit({"ok": ok, "reports": reports})
    if not ok:
        for rep in reports:
            for w in rep["witnesses"]:
                print(f"verification failed (r={rep['r']}): {json.dumps(w)}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_sym_cosets(args) -> int:
    cosets.check_nr(args.n, args.r)
    if args.brute and args.n > symgrp.MAX_BRUTE_N:
        raise UsageError(f"--brute needs n <= {symgrp.MAX_BRUTE_N}")
    doc = {"n": args.n, "r": args.r, "transversal": [
        {"k": lab.k, "l": lab.l, "permutation": perm.to_json()}
        for lab, perm in symgrp.delta_orbit_transversal(args.n, args.r)]}
    ok = True
    if args.brute:
        check = symgrp.check_sym_bijection(args.n, args.r)
        doc["brute"] = check
        ok = check["ok"] and check["classes"] == cosets.count(args.n, args.r)
    doc["ok"] = ok
    _emit(doc)
    if not ok:
        print("brute-force double cosets disagree with the transversal", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shalika", description="(Shalika, parabolic) double cosets of GL_2n(F_p)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reps", help="list the representatives w_{k,l}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, default=2, help="field for the printed matrices (default 2)")
    p.add_argument("--format", choices=["json", "pretty"], default="json")
    p.set_defaults(func=cmd_reps)

    p = sub.add_parser("count", help="number of double cosets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_count)

    for name, func, helptext in (("classify", cmd_classify, "label (k, l) of a matrix"),
                                 ("decompose", cmd_decompose, "factor g = s·w·p")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("matrix", help="JSON matrix file, or - for stdin")
        p.add_argument("--n", type=int, help="half the matrix size (inferred if omitted)")
        p.add_argument("--r", type=int, required=True)
        p.add_argument("--p", type=int, help="expected field size; checked against the file")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="brute-force certification on a small group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, help="default: every 1 <= r < 2n")
    p.add_argument("--expensive", action="store_true", help="allow GL_4(F_3)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sym-cosets", help="the symmetric-group transversal")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--brute", action="store_true", help="also enumerate S_2n (n <= 4)")
    p.set_defaults(func=cmd_sym_cosets)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, LabelError, DimensionError, oracle.SizeLimitError, symgrp.SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DecompositionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
