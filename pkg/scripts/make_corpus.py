"""Write every connected graph on 1..N vertices (up to isomorphism) as graph6.

Uses the networkx graph atlas (all graphs up to 7 vertices).

    python scripts/make_corpus.py --max-n 6 -o src/ncv/data/connected_upto6.g6
"""

import argparse

import networkx as nx

from ncv.graph import Graph, encode_graph6


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("-o", "--output", default="src/ncv/data/connected_upto6.g6")
    args = ap.parse_args()
    if args.max_n > 7:
        ap.error("the atlas only covers n <= 7")

    lines = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if not 1 <= n <= args.max_n or not nx.is_connected(h):
            continue
        lines.append(encode_graph6(Graph.from_edges(n, h.edges())))
    with open(args.output, "w") as fh:
        fh.write(f"# all {len(lines)} connected graphs with 1..{args.max_n} vertices\n")
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} graphs to {args.output}")


if __name__ == "__main__":
    main()
