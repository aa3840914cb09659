"""Command line front end: ``topocx <command> [options]``.

Complex arguments are JSON documents; ``fixture:NAME`` loads a built-in
fixture instead of a file. Domain errors exit with status 1 and a single
line on stderr, usage errors with status 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path

from . import algorithms, datasets, embeddings, homp, io, operators, transforms
from .complexes import Complex
from .errors import TopoError

MATRIX_KINDS = ("incidence", "hodge", "up", "down", "adjacency", "coadjacency", "normalized")
DOMAIN_TARGETS = ("clique-complex", "combinatorial", "simplicial", "cell", "hypergraph")


class CliError(Exception):
    """Reported like a domain error: one line on stderr, exit status 1."""


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load(path: str) -> Complex:
    if path.startswith("fixture:"):
        name = path.split(":", 1)[1]
        if name not in datasets.FIXTURES:
            raise CliError(f"unknown fixture {name!r}; choose from {', '.join(datasets.FIXTURES)}")
        return datasets.load_fixture(name)
    return io.parse_complex(_read_text(path))


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _domain(cx: Complex) -> str:
    return next(name for name, cls in io.DOMAINS.items() if type(cx) is cls)


def cmd_info(args: argparse.Namespace) -> None:
    cx = _load(args.file)
    lines = [f"domain: {_domain(cx)}", f"dim: {cx.dim}"]
    lines += [f"rank {r}: {cx.size(r)}" for r in range(cx.dim + 1)]
    print("\n".join(lines))


def cmd_matrix(args: argparse.Namespace) -> None:
    cx = _load(args.file)
    kind, k, via = args.kind, args.rank, args.via
    if via is not None and kind not in ("incidence", "adjacency", "coadjacency"):
        raise CliError(f"--via does not apply to --kind {kind}")
    if args.signed is not None and kind != "incidence":
        raise CliError("--signed applies to --kind incidence only")
    if kind == "incidence":
        m = operators.incidence_matrix(cx, k, signed=args.signed, to_rank=via)
    elif kind == "hodge":
        m = operators.hodge_laplacian_matrix(cx, k)
    elif kind == "up":
        m = operators.up_laplacian_matrix(cx, k)
    elif kind == "down":
        m = operators.down_laplacian_matrix(cx, k)
    elif kind == "adjacency":
        m = operators.adjacency_matrix(cx, k, via)
    elif kind == "coadjacency":
        m = operators.coadjacency_matrix(cx, k, via)
    else:
        m = operators.normalized_laplacian(cx, k)
    _emit(io.write_matrix_market(m), args.output)


def cmd_betti(args: argparse.Namespace) -> None:
    cx = _load(args.file)
    if args.max_rank is not None and args.max_rank < 0:
        raise CliError(f"--max-rank must be >= 0, got {args.max_rank}")
    print(" ".join(str(b) for b in algorithms.betti_numbers(cx, args.max_rank)))


def cmd_components(args: argparse.Namespace) -> None:
    cx = _load(args.file)
    comps = algorithms.connected_components(cx, args.rank, args.via)
    text = "".join(" ".join(cx.cell_label(c) for c in comp) + "\n" for comp in comps)
    sys.stdout.write(text)


def cmd_embed(args: argparse.Namespace) -> None:
    cx = _load(args.file)
    if args.method == "cell2vec":
        model = embeddings.Cell2Vec(
            dim=args.dim,
            walk_number=args.walk_number,
            walk_length=args.walk_length,
            window=args.window,
            negative=args.negative,
            epochs=args.epochs,
            lr=args.lr,
            seed=args.seed,
        )
        table = model.fit(cx, args.rank, args.nbhd, via_rank=args.via).get_embedding()
    else:
        table = embeddings.higher_order_laplacian_eigenmap(cx, args.rank, args.dim)
    _emit(io.write_embeddings(table, cx), args.output)


def cmd_homp(args: argparse.Namespace) -> None:
    cx = _load(args.file)
    try:
        doc = json.loads(_read_text(args.spec))
    except json.JSONDecodeError as e:
        raise CliError(f"{args.spec}: invalid JSON at line {e.lineno}: {e.msg}") from None
    spec = homp.HompLayerSpec.from_dict(doc)
    feats = io.read_features(_read_text(args.features), cx)
    out = homp.homp_forward(cx, spec, feats)
    _emit(io.write_features({r: fm.data for r, fm in out.items()}, cx), args.output)


def cmd_transform(args: argparse.Namespace) -> None:
    cx = _load(args.file)
    to = args.to
    if to == "clique-complex":
        edges = [cx.labels(e) for e in cx.skeleton(1)] if cx.dim >= 1 else []
        nodes = [cx.labels(v)[0] for v in cx.skeleton(0)] if cx.dim >= 0 else []
        if any(len(e) != 2 for e in edges):
            raise CliError("clique lifting needs a 1-skeleton of two-vertex edges")
        out: Complex = transforms.graph_to_clique_complex(edges, args.max_rank, nodes)
    elif to == _domain(cx):
        out = cx
    elif to == "combinatorial":
        out = transforms.to_combinatorial(cx)
    else:
        raise CliError(f"no conversion from {_domain(cx)} to {to}")
    _emit(io.serialize_complex(out), args.output)


def cmd_mesh(args: argparse.Namespace) -> None:
    tris = io.parse_off(_read_text(args.file))
    cx = transforms.mesh_to_complex(tris, args.as_)
    _emit(io.serialize_complex(cx), args.output)


def cmd_mesh_gen(args: argparse.Namespace) -> None:
    if args.n < 1:
        raise CliError(f"grid size must be >= 1, got {args.n}")
    _emit(io.write_off(datasets.grid_coordinates(args.n), datasets.grid_mesh(args.n)), args.output)


def cmd_fixture(args: argparse.Namespace) -> None:
    _emit(datasets.fixture_text(args.name), args.output)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="topocx", description="Topological domains, operators and embeddings.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name: str, func, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, description=help)
        sp.set_defaults(func=func)
        return sp

    def complex_arg(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("file", help="complex document (JSON), '-' for stdin, or fixture:NAME")

    def output_arg(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("-o", "--output", help="output file (default: stdout)")

    sp = command("info", cmd_info, "print the domain, dimension and per-rank cell counts")
    complex_arg(sp)

    sp = command("matrix", cmd_matrix, "export a structural operator as Matrix Market")
    complex_arg(sp)
    sp.add_argument("--kind", required=True, choices=MATRIX_KINDS)
    sp.add_argument("--rank", required=True, type=int)
    sp.add_argument("--via", type=int, help="intermediate rank for (co)adjacency, target rank for incidence")
    sp.add_argument("--signed", action=argparse.BooleanOptionalAction, default=None,
                    help="signed incidence (default: signed exactly for oriented domains)")
    output_arg(sp)

    sp = command("betti", cmd_betti, "print Betti numbers b_0 .. b_K")
    complex_arg(sp)
    sp.add_argument("--max-rank", type=int, help="highest rank (default: dimension)")

    sp = command("components", cmd_components, "print connected components of a rank, one per line")
    complex_arg(sp)
    sp.add_argument("--rank", required=True, type=int)
    sp.add_argument("--via", type=int)

    sp = command("embed", cmd_embed, "embed the cells of one rank")
    complex_arg(sp)
    sp.add_argument("--method", required=True, choices=("cell2vec", "eigenmap"))
    sp.add_argument("--rank", required=True, type=int)
    sp.add_argument("--dim", required=True, type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--nbhd", choices=("adj", "coadj"), default="adj")
    sp.add_argument("--via", type=int)
    sp.add_argument("--walk-number", type=int, default=10)
    sp.add_argument("--walk-length", type=int, default=20)
    sp.add_argument("--window", type=int, default=5)
    sp.add_argument("--negative", type=int, default=5)
    sp.add_argument("--epochs", type=int, default=5)
    sp.add_argument("--lr", type=float, default=0.025)
    output_arg(sp)

    sp = command("homp", cmd_homp, "run one message passing layer over a feature table")
    complex_arg(sp)
    sp.add_argument("--spec", required=True, help="layer description (JSON)")
    sp.add_argument("--features", required=True, help="features TSV: rank, cell id, values")
    output_arg(sp)

    sp = command("transform", cmd_transform, "lift or convert a complex and write it as JSON")
    complex_arg(sp)
    sp.add_argument("--to", required=True, choices=DOMAIN_TARGETS)
    sp.add_argument("--max-rank", type=int, default=2)
    output_arg(sp)

    sp = command("mesh", cmd_mesh, "build a complex from a triangle OFF mesh")
    sp.add_argument("file", help="OFF file or '-'")
    sp.add_argument("--as", dest="as_", required=True, choices=("simplicial", "cell"))
    output_arg(sp)

    sp = command("mesh-gen", cmd_mesh_gen, "write a triangulated N x N grid as OFF")
    sp.add_argument("n", type=int)
    output_arg(sp)

    sp = command("fixture", cmd_fixture, "write a built-in fixture document")
    sp.add_argument("name", choices=datasets.FIXTURES)
    output_arg(sp)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        args.func(args)
    except (TopoError, CliError, OSError, ValueError) as e:
        msg = " ".join(str(e).split()) or type(e).__name__
        print(f"topocx {args.command}: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
