"""Command line interface: ``modecomp COMMAND ...`` or ``python -m modecomp``.

Exit codes: 0 success or pass, 1 counterexample (or a decomposition that
fails its check), 2 input or usage error, 3 resource cap exceeded.
Every command ends its output with a block of ``key=value`` lines.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import Instance, generate_corpus
from .decompose import (
    PRIMARY,
    UNIFORM,
    Decomposition,
    check_decomposition,
    enumerate_maximal_shortest_primary,
    enumerate_maximal_shortest_uniform,
    enumerate_shortest_primary,
    enumerate_shortest_uniform,
    maximal_shortest_primary,
    maximal_shortest_uniform,
    refine_to_uniform,
)
from .errors import ModecompError, ResourceLimitError
from .fileformat import LoadedInstance, load, save
from .modules import DEFAULT_CAP, Submodule, enumerate_submodules, quotient
from .spectrum import (
    AssociatedPrimes,
    associated_left_primes,
    is_irreducible,
    is_primary,
    socle,
    socle_decomposition,
)
from .suites import COUNTEREXAMPLE, RESOURCE, LATTICE_CAP, SUITES, format_reports, run_suites

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _block(out, **items) -> None:
    out.append("")
    out.extend(f"{k}={v}" for k, v in items.items())


def _load(path, out_err, decomposition=False) -> LoadedInstance:
    inst = load(path, decomposition=decomposition)
    for w in inst.warnings:
        print(f"warning: {w}", file=out_err)
    return inst


def _prime_text(P: AssociatedPrimes) -> str:
    if not P.primes:
        return "-"
    return " ".join(X.label if c == 1 else f"{X.label}^{c}" for X, c in zip(P.primes, P.counts))


def _decomposition_lines(i: int, D: Decomposition) -> list[str]:
    flags = " ".join(k for k, v in D.flags().items() if v)
    lines = [f"[{i}] {D!r}"]
    for q, P in zip(D.parts, D.part_primes):
        lines.append(f"    {q!r}  As(M/part)={_prime_text(P)}")
    lines.append(f"    flags: {flags}")
    return lines


# -- commands ----------------------------------------------------------------


def cmd_analyze(args, out, err) -> int:
    inst = _load(args.instance, err)
    M, N = inst.module, inst.base
    pi = quotient(M, N)
    Q = pi.module
    As = associated_left_primes(Q, args.cap)
    out.append(f"module: {M.label or 'unnamed'} over F_{M.p}, dim {M.dim}, {M.ngens} generator(s)")
    out.append(f"N: {N!r}")
    out.append(f"dim M/N: {Q.dim}")
    out.append(f"socle of M/N (preimage in M): {pi.preimage(socle(Q, args.cap))!r}")
    summands = socle_decomposition(Q, cap=args.cap) if Q.dim else []
    out.append("socle decomposition (preimages in M): "
               + (", ".join(repr(pi.preimage(S)) for S in summands) or "-"))
    out.append("associated primes:")
    for X, c in zip(As.primes, As.counts):
        out.append(f"  {X.label}  dim {X.dim}  multiplicity {c}  witness {pi.preimage(X.witness)!r}")
    primary = irreducible = "n/a"
    if Q.dim:
        X = is_primary(M, N, args.cap)
        primary = f"yes ({X.label})" if X is not None else "no"
        irreducible = _yes(is_irreducible(M, N, args.cap))
    out.append(f"N primary: {primary}")
    out.append(f"N irreducible: {irreducible}")
    _block(out, udim=As.total, primes=len(As),
           multiplicities=",".join(map(str, As.counts)) or "-",
           primary=primary.split()[0], irreducible=irreducible,
           autoclosed=_yes(inst.closed))
    return EXIT_OK


def _decompositions(args, M, N) -> list[Decomposition]:
    primary = args.kind == PRIMARY
    if args.all:
        if args.maximal:
            fn = enumerate_maximal_shortest_primary if primary else enumerate_maximal_shortest_uniform
        else:
            fn = enumerate_shortest_primary if primary else enumerate_shortest_uniform
        return fn(M, N, args.cap)
    fn = maximal_shortest_primary if primary else maximal_shortest_uniform
    return [fn(M, N, args.choice, args.cap)]


def _save_all(path, M, N, decs) -> list[str]:
    path = Path(path)
    if len(decs) == 1:
        targets = [path]
    else:
        targets = [path.with_name(f"{path.stem}-{i:03d}{path.suffix}") for i in range(len(decs))]
    for t, D in zip(targets, decs):
        save(t, M, N, D.parts)
    return [str(t) for t in targets]


def cmd_decompose(args, out, err) -> int:
    if args.all and args.choice is not None:
        raise _UsageError("--choice selects a single decomposition and cannot be combined with --all")
    inst = _load(args.instance, err)
    M, N = inst.module, inst.base
    decs = _decompositions(args, M, N)
    As = associated_left_primes(quotient(M, N).module, args.cap)
    for i, D in enumerate(decs):
        out.extend(_decomposition_lines(i, D))
    if args.save:
        for t in _save_all(args.save, M, N, decs):
            out.append(f"saved {t}")
    _block(out, kind=args.kind, udim=As.total, primes=len(As), count=len(decs),
           parts=len(decs[0]) if decs else 0)
    return EXIT_OK


def cmd_refine(args, out, err) -> int:
    inst = _load(args.decomposition, err, decomposition=True)
    M, N = inst.module, inst.base
    rep = check_decomposition(M, N, inst.parts, args.cap)
    D = Decomposition(M, N, tuple(inst.parts), rep.part_primes, PRIMARY, is_primary=rep.is_primary)
    refined, blocks = refine_to_uniform(M, D, args.cap)
    out.append(f"primary decomposition: {D!r}")
    out.extend(_decomposition_lines(0, refined))
    for part, block in zip(D.parts, blocks):
        out.append(f"    {part!r} = ∩ parts {{{', '.join(str(k + 1) for k in block)}}}")
    if args.save:
        save(args.save, M, N, refined.parts)
        out.append(f"saved {args.save}")
    _block(out, count=len(refined),
           blocks=";".join(",".join(str(k + 1) for k in b) for b in blocks),
           shortest=_yes(refined.is_shortest))
    return EXIT_OK


def cmd_check(args, out, err) -> int:
    inst = _load(args.decomposition, err, decomposition=True)
    M, N = inst.module, inst.base
    rep = check_decomposition(M, N, inst.parts, args.cap)
    out.append(f"N: {N!r}")
    out.append(f"As(M/N): {_prime_text(rep.quotient_primes)}  (u.dim {rep.udim})")
    for q, P, U in zip(inst.parts, rep.part_primes, rep.cofactors):
        out.append(f"part {q!r}  As(M/part)={_prime_text(P)}  cofactor {U!r}")

    def tri(v):
        return "unknown" if v is None else _yes(v)

    fields = {
        "intersects": _yes(rep.intersects_to_base),
        "primary": _yes(rep.is_primary),
        "uniform": _yes(rep.is_uniform),
        "irredundant": _yes(rep.is_irredundant),
        "cofactors_direct": _yes(rep.cofactors_direct),
        "shortest_primary": _yes(rep.is_shortest_primary),
        "shortest_uniform": _yes(rep.is_shortest_uniform),
        "maximal_primary": tri(rep.is_maximal_primary),
        "maximal_uniform": tri(rep.is_maximal_uniform),
    }
    for k, v in fields.items():
        out.append(f"{k}: {v}")
    _block(out, udim=rep.udim, primes=len(rep.quotient_primes), count=len(inst.parts),
           **fields)
    return EXIT_OK if rep.intersects_to_base else EXIT_COUNTEREXAMPLE


def cmd_enumerate(args, out, err) -> int:
    inst = _load(args.instance, err)
    M, N = inst.module, inst.base
    lattice = enumerate_submodules(M, args.cap)
    for i, S in enumerate(lattice):
        mark = " *" if N <= S else ""
        out.append(f"{i:4d}  dim {S.dim}  {S!r}{mark}")
    out.append("(* marks submodules containing N)")
    _block(out, count=len(lattice), above_N=sum(1 for S in lattice if N <= S))
    return EXIT_OK


def cmd_verify(args, out, err) -> int:
    if args.suite is not None and args.suite not in SUITES:
        raise _UsageError(f"unknown suite {args.suite!r}; known: {', '.join(SUITES)}")
    if args.instance:
        inst = _load(args.instance, err)
        instances = [Instance(inst.module, inst.base)]
    else:
        instances = generate_corpus(args.seed)
    suites = None if args.suite is None else [args.suite]
    reports = run_suites(instances, suites, args.cap, args.lattice_cap)
    text = format_reports(reports)
    out.extend(text.rstrip("\n").split("\n"))
    verdicts = {r.verdict for r in reports}
    if COUNTEREXAMPLE in verdicts:
        return EXIT_COUNTEREXAMPLE
    if RESOURCE in verdicts:
        return EXIT_RESOURCE
    return EXIT_OK


# -- parser --------------------------------------------------------------------


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modecomp",
        description="Shortest primary and uniform decompositions of submodules over matrix algebras over F_p.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def cap_arg(p):
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, metavar="B",
                       help=f"bound on exhaustive searches (default {DEFAULT_CAP})")

    p = sub.add_parser("analyze", help="u.dim, associated primes, socle, status of N")
    p.add_argument("instance")
    cap_arg(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", help="shortest primary or uniform decompositions of N")
    p.add_argument("kind", choices=[PRIMARY, UNIFORM])
    p.add_argument("instance")
    p.add_argument("--maximal", action="store_true", help="with --all: only maximal decompositions")
    p.add_argument("--all", action="store_true", help="enumerate every shortest decomposition")
    p.add_argument("--choice", type=int, metavar="K",
                   help="the K-th maximal shortest decomposition in canonical order")
    p.add_argument("--save", metavar="FILE", help="write decomposition file(s)")
    cap_arg(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("refine", help="refine a primary decomposition file to a uniform one")
    p.add_argument("decomposition")
    p.add_argument("--save", metavar="FILE")
    cap_arg(p)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("check", help="verify a decomposition file")
    p.add_argument("decomposition")
    cap_arg(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="list the submodule lattice")
    p.add_argument("what", choices=["submodules"])
    p.add_argument("instance")
    cap_arg(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run verification suites on an instance or the corpus")
    p.add_argument("instance", nargs="?")
    p.add_argument("--suite", metavar="S", help="one of: " + ", ".join(SUITES))
    p.add_argument("--seed", type=int, default=0, metavar="T", help="corpus seed (default 0)")
    p.add_argument("--lattice-cap", type=int, default=LATTICE_CAP, metavar="L",
                   help=f"largest lattice searched definitionally (default {LATTICE_CAP})")
    cap_arg(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out: list[str] = []
    try:
        code = args.func(args, out, stderr)
    except _UsageError as exc:
        parser.print_usage(stderr)
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=stderr)
        return EXIT_RESOURCE
    except ModecompError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    stdout.write("\n".join(out) + "\n")
    return code


def entry_point() -> None:
    sys.exit(main())
