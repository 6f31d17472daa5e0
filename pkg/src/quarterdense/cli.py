"""Command-line entry point.

Every verifier, experiment, and pipeline is addressable here with
reproducible seeds.  Outputs land in --out-dir together with a run
manifest; tabular experiments write CSV plus a rendered figure, and
verification reports are JSON with graph6 certificates.

Exit codes: 0 success, 1 assertion/verification failure, 2 usage,
3 capacity, 4 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .errors import CapacityError, GeneralPositionError, GenerationError, InputFormatError
from .graphs import DenseGraph, from_graph6, to_graph6
from .manifest import RunManifest
from .subdivisions import SubdivisionPattern, partial_subdivisions

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_INPUT = 4


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x != ""]


def _seed_list(args) -> list[int]:
    if args.seeds is not None:
        return _int_list(args.seeds)
    return [args.seed + i for i in range(args.seed_count)]


def _load_graph(args) -> DenseGraph:
    if args.graph6:
        return from_graph6(args.graph6)
    if args.input:
        return from_graph6(Path(args.input).read_text().strip().splitlines()[0])
    raise InputFormatError("need --graph6 or --input")


def _family(args) -> list[SubdivisionPattern]:
    return partial_subdivisions(args.family_t, args.family_max)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="quarterdense",
        description="verification and experiments for the density-1/4 bi-clique threshold",
    )
    top.add_argument("--version", action="version", version=__version__)
    top.add_argument("--seed", type=int, default=0, help="base random seed")
    top.add_argument("--workers", type=int, default=1, help="parallel workers for sweeps")
    top.add_argument("--out-dir", type=Path, default=Path("out"), help="output directory")
    top.add_argument(
        "--format", choices=("json", "csv", "graph6"), default=None, help="output format override"
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run an exhaustive verifier")
    p.add_argument("scope", choices=("prop14", "s8", "observations", "clique-bound"))
    p.add_argument("--s", type=int, default=7, help="vertex count (prop14, clique-bound)")
    p.add_argument("--t", type=int, default=5, help="clique order (clique-bound)")
    p.add_argument("--family-t", type=int, default=5)
    p.add_argument("--family-max", type=int, default=8)

    p = sub.add_parser("enumerate-patterns", help="partial subdivisions up to isomorphism")
    p.add_argument("--t", type=int, default=5)
    p.add_argument("--max-vertices", type=int, default=8)

    p = sub.add_parser("admissible", help="search one graph for admissible subgraphs")
    p.add_argument("--graph6", help="graph6 string")
    p.add_argument("--input", help="file with a graph6 line")
    p.add_argument("--family-t", type=int, default=5)
    p.add_argument("--family-max", type=int, default=8)

    p = sub.add_parser("minimize-phi", help="exact simplex minimum for one graph")
    p.add_argument("--graph6", help="graph6 string")
    p.add_argument("--input", help="file with a graph6 line")

    p = sub.add_parser("reduce-weights", help="collapse + normalize a weighting, with quotient")
    p.add_argument("--input", required=True, help="weighted-graph JSON file")

    p = sub.add_parser("embed", help="embedding batch from a config file")
    p.add_argument("config", help="JSON config")

    p = sub.add_parser("geometry", help="curve-arrangement pipelines")
    p.add_argument("pipeline", choices=("crossings", "graph", "separator", "extremal"))
    p.add_argument("--input", help="curves JSON file")
    p.add_argument("--n", type=int, default=64, help="size for generated inputs")
    p.add_argument("--eps", type=_frac, default=Fraction(1, 10))
    p.add_argument("--seeds", help="comma-separated seed list")
    p.add_argument("--seed-count", type=int, default=5)

    p = sub.add_parser("extremal", help="four-clique construction growth table")
    p.add_argument("--ns", type=_int_list, default=[16, 20, 24, 28])
    p.add_argument("--eps", type=_frac, default=Fraction(1, 10))
    p.add_argument("--seeds", help="comma-separated seed list")
    p.add_argument("--seed-count", type=int, default=5)
    return top


# -- handlers ---------------------------------------------------------------


def _cmd_verify(args, argv) -> int:
    from .reports import fig_min_phi_histogram, write_json
    from .turan import (
        minimize_phi,
        verify_claim_s8,
        verify_clique_partition_bound,
        verify_observations,
        verify_prop_quarter,
    )

    family = _family(args)
    man = RunManifest.begin(
        f"verify-{args.scope}",
        {"s": args.s, "t": args.t, "workers": args.workers,
         "family_t": args.family_t, "family_max": args.family_max},
        seeds=[],
        argv=argv,
    )
    outputs = []
    if args.scope == "prop14":
        report = verify_prop_quarter(args.s, family, workers=args.workers)
    elif args.scope == "s8":
        report = verify_claim_s8(family, workers=args.workers)
    elif args.scope == "observations":
        report = verify_observations(family, workers=args.workers)
    else:
        report = verify_clique_partition_bound(args.t, args.s)
    out = args.out_dir / f"{report.scope}.report.json"
    outputs.append(write_json(out, report.to_json()))
    if args.scope == "prop14" and report.extremal_graphs:
        values = [minimize_phi(from_graph6(g)).value for g in report.extremal_graphs]
        outputs.append(
            fig_min_phi_histogram(values, args.out_dir / f"{report.scope}.minphi.png")
        )
    man.finish(outputs)
    man.write(args.out_dir / f"{report.scope}.manifest.json")
    print(f"{report.scope}: {'PASS' if report.ok else 'FAIL'} "
          f"({report.graph_count} graphs, {report.admissible_free_count} admissible-free)")
    return EXIT_OK if report.ok else EXIT_ASSERTION


def _cmd_enumerate_patterns(args, argv) -> int:
    from .reports import write_json

    pats = partial_subdivisions(args.t, args.max_vertices)
    man = RunManifest.begin(
        "enumerate-patterns", {"t": args.t, "max_vertices": args.max_vertices}, [], argv
    )
    out = args.out_dir / f"patterns-t{args.t}-max{args.max_vertices}.json"
    write_json(out, [p.to_json() for p in pats])
    man.finish([out])
    man.write(args.out_dir / f"patterns-t{args.t}-max{args.max_vertices}.manifest.json")
    print(f"{len(pats)} patterns")
    return EXIT_OK


def _cmd_admissible(args, argv) -> int:
    from .admissible import find_admissible_subgraph
    from .reports import write_json

    g = _load_graph(args)
    family = _family(args)
    hit = find_admissible_subgraph(g, family)
    out = args.out_dir / "admissible.json"
    if hit is None:
        write_json(out, {"admissible": False, "graph6": to_graph6(g)})
        print("admissible-free")
    else:
        write_json(
            out,
            {
                "admissible": True,
                "graph6": to_graph6(g),
                "subset": list(hit.subset),
                "pattern": family[hit.family_index].to_json(),
                "witness": hit.witness.to_json(),
            },
        )
        print(f"admissible: subset {list(hit.subset)} pattern #{hit.family_index}")
    man = RunManifest.begin("admissible", {"graph6": to_graph6(g)}, [], argv)
    man.finish([out])
    man.write(args.out_dir / "admissible.manifest.json")
    return EXIT_OK


def _cmd_minimize_phi(args, argv) -> int:
    from .reports import write_json
    from .turan import minimize_phi

    g = _load_graph(args)
    res = minimize_phi(g)
    out = args.out_dir / "minimize-phi.json"
    write_json(out, {"graph6": to_graph6(g), **res.to_json()})
    man = RunManifest.begin("minimize-phi", {"graph6": to_graph6(g)}, [], argv)
    man.finish([out])
    man.write(args.out_dir / "minimize-phi.manifest.json")
    print(f"min phi = {res.value} at support {list(res.support)}")
    return EXIT_OK


def _cmd_reduce_weights(args, argv) -> int:
    from .reports import write_json
    from .turan import WeightedCompleteGraph, collapse_weights, normalize_partition, quotient

    path = Path(args.input)
    try:
        obj = json.loads(path.read_text())
        r = WeightedCompleteGraph.from_json(obj)
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"bad weighted-graph file {path}: {exc}") from exc
    collapsed, tr1 = collapse_weights(r)
    partition, uniform, tr2 = normalize_partition(collapsed)
    q = quotient(partition, uniform)
    from .turan import phi_weight

    out = args.out_dir / "reduce-weights.json"
    write_json(
        out,
        {
            "input": r.to_json(),
            "collapse_trace": tr1.to_json(),
            "normalize_trace": tr2.to_json(),
            "partition": partition,
            "quotient": {
                "graph6": to_graph6(q.graph),
                "phi": [str(x) for x in q.phi],
                "phi_weight": str(phi_weight(q)),
            },
        },
    )
    man = RunManifest.begin("reduce-weights", {"input": str(path)}, [], argv, inputs=[path])
    man.finish([out])
    man.write(args.out_dir / "reduce-weights.manifest.json")
    print(f"reduced to {len(partition)} classes, phi(Q) = {phi_weight(q)}")
    return EXIT_OK


def _cmd_embed(args, argv) -> int:
    from .embedding import EmbedParams, run_embedding_batch
    from .reports import fig_embedding_outcomes, write_csv, write_json
    from .turan import WeightedCompleteGraph

    path = Path(args.config)
    if not path.exists():
        raise InputFormatError(f"config file not found: {path}")
    try:
        cfg = json.loads(path.read_text())
        hspec = cfg["h"]
        if isinstance(hspec, str):
            if not (hspec.startswith("K") and hspec[1:].isdigit()):
                raise ValueError(f"unknown H spec {hspec!r}")
            h = DenseGraph.complete(int(hspec[1:]))
        else:
            h = SubdivisionPattern.from_json(hspec)
        wspec = cfg["weights"]
        hn = h.total_vertices if isinstance(h, SubdivisionPattern) else h.n
        if isinstance(wspec, str):
            weights = WeightedCompleteGraph.constant(hn, Fraction(wspec))
        else:
            weights = WeightedCompleteGraph.from_json(wspec)
        params = EmbedParams(
            eps1=Fraction(cfg["eps1"]),
            lam=Fraction(cfg["lambda"]),
            beta=Fraction(cfg.get("beta", "1/5")),
            delta=Fraction(cfg.get("delta", "0")),
        )
        block_size = int(cfg["block_size"])
        p_in = Fraction(cfg["p_in"])
        seeds = cfg.get("seeds")
        if isinstance(seeds, dict):
            seeds = [int(seeds.get("start", 0)) + i for i in range(int(seeds["count"]))]
        elif seeds is None:
            seeds = [args.seed]
    except (KeyError, ValueError, TypeError) as exc:
        raise InputFormatError(f"bad embed config {path}: {exc}") from exc

    man = RunManifest.begin(
        "embed",
        {"config": str(path), "block_size": block_size, "p_in": p_in},
        seeds,
        argv,
        inputs=[path],
    )
    rows = run_embedding_batch(h, weights, block_size, p_in, params, seeds)
    rate = sum(r["success"] for r in rows) / len(rows)
    out_csv = write_csv(args.out_dir / "embed.csv", rows)
    out_png = fig_embedding_outcomes(rows, args.out_dir / "embed.png")
    outputs = [out_csv, out_png]
    first_success = next((r for r in rows if r["success"]), None)
    if first_success is not None:
        from .embedding import (
            RegularPartitionModel,
            embed_weak_2_subdivision,
            sample_block_model,
            trivial_witness_for_half_weights,
        )

        wit = trivial_witness_for_half_weights(weights, h, params.eps1)
        g, part = sample_block_model(
            RegularPartitionModel(weights, block_size, p_in, first_success["seed"])
        )
        res = embed_weak_2_subdivision(g, part, weights, h, wit, params)
        if res.success:
            outputs.append(
                write_json(args.out_dir / "embed.sample.json", res.mapping.to_json())
            )
    outputs.append(
        write_json(
            args.out_dir / "embed.summary.json",
            {"runs": len(rows), "success_rate": rate,
             "verified_all": all(r["verified"] == 1 for r in rows if r["success"])},
        )
    )
    man.finish(outputs)
    man.write(args.out_dir / "embed.manifest.json")
    print(f"{len(rows)} runs, success rate {rate:.2%}")
    return EXIT_OK


def _cmd_geometry(args, argv) -> int:
    from .geometry import (
        CurveArrangement,
        intersection_graph,
        planarize,
        separator_biclique,
    )
    from .reports import write_csv, write_json

    if args.pipeline == "extremal":
        return _cmd_extremal(args, argv, ns=[args.n], prefix="geometry-extremal")

    if not args.input:
        raise InputFormatError("geometry pipelines need --input curves.json")
    path = Path(args.input)
    try:
        arr = CurveArrangement.from_json(json.loads(path.read_text()))
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise InputFormatError(f"bad curve file {path}: {exc}") from exc
    man = RunManifest.begin(f"geometry-{args.pipeline}", {"input": str(path)}, [], argv, inputs=[path])
    outputs = []
    if args.pipeline == "crossings":
        out = args.out_dir / "crossings.json"
        write_json(
            out,
            [
                {
                    "curves": [x.curve_a, x.curve_b],
                    "point": [
                        [x.point[0].numerator, x.point[0].denominator],
                        [x.point[1].numerator, x.point[1].denominator],
                    ],
                }
                for x in arr.crossings
            ],
        )
        outputs.append(out)
        print(f"{len(arr.crossings)} crossings")
    elif args.pipeline == "graph":
        g = intersection_graph(arr)
        if args.format == "json":
            out = args.out_dir / "intersection-graph.json"
            write_json(out, {"n": g.n, "edges": g.edges()})
        else:
            out = args.out_dir / "intersection-graph.g6"
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(to_graph6(g) + "\n")
        outputs.append(out)
        print(f"intersection graph: {g.n} vertices, {g.edge_count()} edges")
    else:
        res = separator_biclique(arr)
        p = planarize(arr)
        out = args.out_dir / "separator.json"
        write_json(
            out,
            {
                "n": arr.n,
                "crossings": res.crossing_count,
                "planarization_vertices": p.vertex_count,
                "separator_curves": list(res.separator_curves),
                "pair": res.pair.to_json(),
                "groups": res.groups,
            },
        )
        outputs.append(out)
        print(
            f"removed {len(res.separator_curves)} curves, balanced empty pair of size {res.pair.size}"
        )
    man.finish(outputs)
    man.write(args.out_dir / f"geometry-{args.pipeline}.manifest.json")
    return EXIT_OK


def _cmd_extremal(args, argv, ns: Optional[list[int]] = None, prefix: str = "extremal") -> int:
    from .geometry import measure_biclique_growth
    from .reports import fig_biclique_growth, write_csv

    ns = ns if ns is not None else args.ns
    seeds = _seed_list(args)
    man = RunManifest.begin(prefix, {"ns": ns, "eps": args.eps}, seeds, argv)
    rows = measure_biclique_growth(ns, args.eps, seeds)
    out_csv = write_csv(args.out_dir / f"{prefix}.csv", rows)
    out_png = fig_biclique_growth(rows, args.out_dir / f"{prefix}.png")
    man.finish([out_csv, out_png])
    man.write(args.out_dir / f"{prefix}.manifest.json")
    print(f"{len(rows)} rows -> {out_csv}")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "verify": _cmd_verify,
        "enumerate-patterns": _cmd_enumerate_patterns,
        "admissible": _cmd_admissible,
        "minimize-phi": _cmd_minimize_phi,
        "reduce-weights": _cmd_reduce_weights,
        "embed": _cmd_embed,
        "geometry": _cmd_geometry,
        "extremal": _cmd_extremal,
    }
    try:
        return handlers[args.command](args, argv)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputFormatError, GeneralPositionError, GenerationError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
