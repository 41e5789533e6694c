"""``nct``: generate colored trees, build indexes, query, verify and benchmark.

Exit status is 0 on success, 1 when verification finds a mismatch and 2 on
bad input.
"""

import argparse
import sys
import time

import numpy as np

from . import serialize
from .colors import ColorSeq
from .errors import InputError, NCTError
from .large import LargeSigmaIndex
from .oracle import PointerTree, all_nearest
from .report import space_report
from .small import SmallSigmaIndex
from .treefile import TreeFile, generate

AUTO_SMALL_MAX_SIGMA = 8


def _pick(structure, sigma):
    if structure == "auto":
        return "small" if sigma <= AUTO_SMALL_MAX_SIGMA else "large"
    return structure


def build_index(tf, structure="auto", freq_threshold=None, micro=None, mini=None):
    tree = tf.tree()
    colors = ColorSeq(tf.colors, tf.sigma)
    if _pick(structure, tf.sigma) == "small":
        return SmallSigmaIndex(tree, colors, micro, mini)
    return LargeSigmaIndex(tree, colors, freq_threshold)


def _queries(n, sigma, colors, wanted, seed):
    present = [a for a in range(1, sigma + 1) if colors.count(a)]
    if wanted == "all":
        return [(x, a) for a in present for x in range(1, n + 1)]
    if not str(wanted).isdigit():
        raise InputError(f"--queries must be 'all' or a count, not {wanted!r}")
    count = int(wanted)
    rng = np.random.default_rng(seed)
    xs = rng.integers(1, n + 1, size=count).tolist()
    al = rng.choice(present, size=count).tolist()
    return list(zip(xs, al))


def cmd_gen(args, out):
    tf = generate(args.n, args.sigma, args.seed, args.model, args.zipf_s)
    if args.output:
        tf.write(args.output)
    else:
        out.write(tf.format())
    return 0


def cmd_build(args, out):
    tf = TreeFile.read(args.file)
    idx = build_index(tf, args.structure, args.freq_threshold, args.micro, args.mini)
    path = args.output or args.file + ".idx"
    serialize.save(idx, path)
    out.write(f"index {path}\n")
    out.write(space_report(idx, (args.k,)).format())
    return 0


def cmd_query(args, out):
    idx = serialize.load(args.index)
    node, dist = idx.query(args.x, args.alpha)
    out.write(f"{node} {dist}\n")
    return 0


def verify_index(idx, pt, queries):
    """Compare ``idx`` with the BFS oracle; returns the list of mismatches."""
    ref = {}
    bad = []
    for x, a in queries:
        if a not in ref:
            ref[a] = all_nearest(pt, a, ties=True)
        node, dist, unique = ref[a][x]
        got = idx.query(x, a)
        ok = got[1] == dist and pt.color[got[0]] == a and pt.distance(x, got[0]) == dist
        if ok and unique:
            ok = got[0] == node
        if not ok:
            bad.append((x, a, got, (node, dist)))
    return bad


def cmd_verify(args, out):
    tf = TreeFile.read(args.file)
    pt = PointerTree(tf.bp, tf.colors)
    colors = ColorSeq(tf.colors, tf.sigma)
    queries = _queries(tf.n, tf.sigma, colors, args.queries, args.seed)
    if args.index:
        idx = serialize.load(args.index)
        if idx.tree.parens() != tf.bp or idx.colors.to_numpy().tolist() != tf.colors:
            out.write("index does not match tree file\n")
            return 2
        indexes = [idx]
    else:
        kinds = ["small", "large"] if args.structure == "both" else [args.structure]
        indexes = [build_index(tf, k, args.freq_threshold, args.micro, args.mini) for k in kinds]
    failed = False
    for idx in indexes:
        name = "small" if isinstance(idx, SmallSigmaIndex) else "large"
        bad = verify_index(idx, pt, queries)
        out.write(f"verify {name}: {len(queries)} queries, {len(bad)} mismatches\n")
        for x, a, got, want in bad[:10]:
            out.write(f"  x={x} alpha={a} got={got[0]},{got[1]} want={want[0]},{want[1]}\n")
        failed |= bool(bad)
    out.write("FAIL\n" if failed else "PASS\n")
    return 1 if failed else 0


def cmd_bench(args, out):
    tf = TreeFile.read(args.file)
    t0 = time.perf_counter()
    idx = build_index(tf, args.structure, args.freq_threshold, args.micro, args.mini)
    build_s = time.perf_counter() - t0
    queries = _queries(tf.n, tf.sigma, idx.colors, str(args.queries), args.seed)
    lat = []
    for x, a in queries:
        s = time.perf_counter_ns()
        idx.query(x, a)
        lat.append(time.perf_counter_ns() - s)
    lat = np.asarray(lat, dtype=float) / 1000.0
    rep = space_report(idx, (args.k,))
    out.write(rep.format())
    name = "small" if isinstance(idx, SmallSigmaIndex) else "large"
    kv = {
        "structure": name,
        "n": tf.n,
        "sigma": tf.sigma,
        "queries": len(queries),
        "build_seconds": f"{build_s:.4f}",
        "query_median_us": f"{np.median(lat):.2f}" if lat.size else "nan",
        "query_p99_us": f"{np.percentile(lat, 99):.2f}" if lat.size else "nan",
        "space_total_bits": rep.total,
        "space_auxiliary_bits": rep.auxiliary,
    }
    out.write("--- bench\n")
    out.writelines(f"{k}={v}\n" for k, v in kv.items())
    return 0


def _add_params(p):
    p.add_argument("--structure", choices=["small", "large", "auto"], default="auto")
    p.add_argument("--freq-threshold", type=int, default=None, metavar="L",
                   help="occurrences needed for a color to get its own tree (large)")
    p.add_argument("--micro", type=int, default=None, metavar="L", help="micro piece size (small)")
    p.add_argument("--mini", type=int, default=None, metavar="L'", help="mini piece size (small)")


def make_parser():
    ap = argparse.ArgumentParser(prog="nct", description="Nearest colored node queries on trees.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="write a random colored tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", choices=["uniform", "zipf"], default="uniform")
    p.add_argument("--zipf-s", type=float, default=1.0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build", help="build and save an index, print its space report")
    p.add_argument("file")
    _add_params(p)
    p.add_argument("--k", type=int, default=2, help="entropy order for the report")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="nearest node of a color")
    p.add_argument("index")
    p.add_argument("x", type=int)
    p.add_argument("alpha", type=int)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="compare an index against brute force")
    p.add_argument("file")
    p.add_argument("--index")
    p.add_argument("--structure", choices=["small", "large", "auto", "both"], default="auto")
    p.add_argument("--freq-threshold", type=int, default=None)
    p.add_argument("--micro", type=int, default=None)
    p.add_argument("--mini", type=int, default=None)
    p.add_argument("--queries", default="all", help="'all' or a number of random queries")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time build and queries")
    p.add_argument("file")
    _add_params(p)
    p.add_argument("--queries", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = make_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (NCTError, ValueError) as exc:
        print(f"nct: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
