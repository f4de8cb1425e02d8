"""Command-line interface.

Exit status: 0 on success, 1 on usage errors, 2 on unreadable or malformed
input.  Infinite distances print as ``inf``.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .algebra import FiniteAlgebra, builtin, is_large_subalgebra, parse_fa
from .distance import distance, is_largely_embeddable
from .errors import ContractViolation, ParseError
from .monounary import MonoAlg, canonical_code, components, core_of, is_isomorphic, mgen, parse_mua
from .network import build_subalgebra_network, export_dot, oracle_distance
from .qz import parse_choice_seq, qz_diameter, qz_distance

log = logging.getLogger("gendist")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 rather than argparse's 2
        raise UsageError(f"{self.prog}: error: {message}")


def fmt(d) -> str:
    return "inf" if d == math.inf else str(int(d))


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _mua(path: str) -> MonoAlg:
    try:
        return parse_mua(_read(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def cmd_dist(args) -> list[str]:
    return [fmt(distance(_mua(args.a), _mua(args.b)))]


def cmd_oracle(args) -> list[str]:
    return [fmt(oracle_distance(_mua(args.a), _mua(args.b), args.cap))]


def cmd_mgen(args) -> list[str]:
    return [str(mgen(_mua(args.a)))]


def cmd_core(args) -> list[str]:
    out = []
    for comp in components(_mua(args.a)):
        core = core_of(comp)
        out.append(f"{core.length}: {' '.join(map(str, core.cycle))}")
    return out


def cmd_canon(args) -> list[str]:
    return [str(canonical_code(_mua(args.a)))]


def cmd_iso(args) -> list[str]:
    return ["true" if is_isomorphic(_mua(args.a), _mua(args.b)) else "false"]


def cmd_components(args) -> list[str]:
    return [" ".join(map(str, c.elements)) for c in components(_mua(args.a))]


def cmd_large(args) -> list[str]:
    ok, witness = is_largely_embeddable(_mua(args.a), _mua(args.b))
    return [f"YES {witness.kind}"] if ok else ["NO"]


def _load_fa(args) -> FiniteAlgebra:
    if (args.file is None) == (args.builtin is None):
        raise UsageError("net: give exactly one of FILE or --builtin")
    if args.builtin:
        return builtin(args.builtin)
    try:
        return parse_fa(_read(args.file))
    except ParseError as exc:
        raise ParseError(f"{args.file}: {exc}") from None


def cmd_net(args) -> list[str]:
    fa = _load_fa(args)
    net = build_subalgebra_network(fa)
    amb = fa.universe
    tags = net.iso_classes()
    out = [f"vertices {len(net)}", f"red {len(net.red_edges)}", f"blue {len(net.blue_edges)}"]
    out.append("index\tsize\tclass\tlarge\telements")
    for v, sub in enumerate(net.vertices):
        large = "YES" if is_large_subalgebra(sub, amb) else "NO"
        out.append(f"{v}\t{len(sub)}\t{tags[v]}\t{large}\t{sub.describe()}")
    if args.dot:
        Path(args.dot).write_text(export_dot(net))
    return out


def cmd_qz_dist(args) -> list[str]:
    return [fmt(qz_distance(parse_choice_seq(args.left), parse_choice_seq(args.right)))]


def cmd_qz_diam(args) -> list[str]:
    return [fmt(qz_diameter(parse_choice_seq(args.spec)))]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gendist", description="Generator distances between finite algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair(name: str, func, help_: str):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("a", metavar="A.mua")
        sp.add_argument("b", metavar="B.mua")
        sp.set_defaults(func=func)
        return sp

    def single(name: str, func, help_: str):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("a", metavar="A.mua")
        sp.set_defaults(func=func)
        return sp

    pair("dist", cmd_dist, "generator distance of two monounary algebras")
    sp = pair("oracle-dist", cmd_oracle, "distance by search in the network of small algebras")
    sp.add_argument("--cap", type=int, default=None, help="largest algebra size in the network (default |A|+|B|)")
    single("mgen", cmd_mgen, "minimum number of generators")
    single("core", cmd_core, "core cycle of each component")
    single("canon", cmd_canon, "canonical code")
    pair("iso", cmd_iso, "isomorphism test")
    single("components", cmd_components, "connected components")
    pair("large", cmd_large, "is A largely embeddable into B")

    sp = sub.add_parser("net", help="network of subalgebras of an operation-table algebra")
    sp.add_argument("file", nargs="?", metavar="FILE.fa")
    sp.add_argument("--builtin", metavar="KIND:N", help="sym:N, alt:N, bool:K or cyc:N")
    sp.add_argument("--dot", metavar="OUT.dot", help="write the network as Graphviz DOT")
    sp.set_defaults(func=cmd_net)

    qz = sub.add_parser("qz", help="subgroups of Q/Z given by choice sequences")
    qsub = qz.add_subparsers(dest="qz_command", required=True, parser_class=_Parser)
    sp = qsub.add_parser("dist", help="distance of two choice sequences")
    sp.add_argument("--left", required=True, metavar="SPEC")
    sp.add_argument("--right", required=True, metavar="SPEC")
    sp.set_defaults(func=cmd_qz_dist)
    sp = qsub.add_parser("diam", help="diameter of the component of a choice sequence")
    sp.add_argument("spec", metavar="SPEC")
    sp.set_defaults(func=cmd_qz_diam)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
        lines = args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (ParseError, ContractViolation, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for line in lines:
        print(line)
    return 0


def main() -> None:
    sys.exit(run())
