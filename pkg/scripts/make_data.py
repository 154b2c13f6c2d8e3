"""Regenerate data/diagrams/*.dg from level words and check their fingerprints.

Run from the repository root:  python3 scripts/make_data.py
"""

from __future__ import annotations

import sys
from pathlib import Path

from dehncolor import build, moves
from dehncolor.coloring import count_colorings
from dehncolor.diagram import CROSSING, VERTEX, Builder, Diagram, Node
from dehncolor.doubling import doublable_sets, double
from dehncolor.tuples import TAU
from dehncolor.weights import phi

OUT = Path(__file__).resolve().parent.parent / "data" / "diagrams"

A = {((4, 1), (6, 1)): 216, ((4, 3), (6, 1)): 18, ((4, 3), (6, 3)): 9}
B = {((4, 1), (6, 1)): 144, ((4, 1), (6, 3)): 18, ((4, 3), (6, 1)): 72, ((4, 3), (6, 3)): 9}

# theta-curve plus a loop at the 5-valent vertex; G1 and G2 differ only in
# the over/under data of their three crossings
G1_WORD = [("vertex", 0, 0, 3), ("cap", 1), ("cross", 2, "L"), ("cross", 1, "L"),
           ("cross", 1, "L"), ("cap", 2), ("vertex", 2, 5, 0), ("cup", 0)]
G2_WORD = [("vertex", 0, 0, 3), ("cap", 1), ("cross", 2, "R"), ("cross", 1, "L"),
           ("cross", 1, "L"), ("cap", 2), ("vertex", 2, 5, 0), ("cup", 0)]

# 4-valent v1 on top, 6-valent v2 below, seven crossings, twelve regions
G_WORD = [("vertex", 0, 0, 4), ("cap", 3), ("cap", 3), ("cross", 6, "R"), ("cross", 4, "L"),
          ("cross", 2, "L"), ("cross", 4, "L"), ("cap", 3), ("cross", 2, "L"), ("cross", 6, "L"),
          ("cross", 5, "R"), ("vertex", 0, 6, 0), ("cup", 1), ("cup", 0)]


def fingerprint(d: Diagram) -> dict:
    return {tuple((w.valency, w.value) for w in ws): m for ws, m in phi(d, 3, TAU).entries}


def renamed(d: Diagram, names: dict[str, str] | None = None) -> Diagram:
    """Rename nodes (v1, v2, ... and c1, c2, ... by default) and canonicalise darts."""
    if names is None:
        names = {}
        for kind, prefix in ((VERTEX, "v"), (CROSSING, "c")):
            for k, n in enumerate(x for x in d.nodes if x.kind == kind):
                names[n.id] = f"{prefix}{k + 1}"
    nodes = [Node(names[n.id], n.kind, n.rotation, n.over) for n in d.nodes]
    return Diagram(nodes, d.partner).canonical()


def circle() -> Diagram:
    b = Builder()
    v = b.add_node(VERTEX, 2, prefix="v")
    b.join(v[0], v[1])
    return renamed(b.build())


def trefoil() -> Diagram:
    return renamed(build.from_pd([(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)]))


def theta() -> Diagram:
    return renamed(build.from_levels([("vertex", 0, 0, 3), ("vertex", 0, 3, 0)]))


def k4() -> Diagram:
    # triangle u-v-w with a centre vertex c joined to all three
    b = Builder()
    u, v, w, c = (b.add_node(VERTEX, 3, prefix=p) for p in "uvwc")
    b.join(u[0], v[2])
    b.join(u[1], c[2])
    b.join(u[2], w[0])
    b.join(v[0], w[2])
    b.join(v[1], c[0])
    b.join(w[1], c[1])
    return renamed(b.build())


def b_edge(d: Diagram) -> tuple[str, ...]:
    for s in doublable_sets(d, 1):
        if fingerprint(double(d, s)) == B:
            return s
    raise AssertionError("no doubled edge with fingerprint B")


def main() -> int:
    g1 = renamed(build.from_levels(G1_WORD))
    g2 = renamed(build.from_levels(G2_WORD))
    g = build.from_levels(G_WORD)
    v1, v2 = sorted(g.vertices, key=lambda n: n.valency)
    crossing_names = {x.id: f"c{k + 1}" for k, x in enumerate(g.crossings)}
    g = renamed(g, {v1.id: "v1", v2.id: "v2", **crossing_names})
    gprime = renamed(double(g2, b_edge(g2)))

    for name, labels in (("G1", "AAA"), ("G2", "AAB")):
        d = g1 if name == "G1" else g2
        got = "".join(sorted("A" if fingerprint(double(d, s)) == A else "B"
                             for s in doublable_sets(d, 1)))
        assert got == labels, (name, got)
    assert fingerprint(g) == A and fingerprint(gprime) == B
    for d in (g, gprime):
        assert all(count_colorings(d, p) == p ** 5 for p in (2, 3, 4, 5))

    # odd-valent diagram on which some R4 pass changes the 3-coloring count
    witness = renamed(moves.random_walk(g2, 12, seed=36, max_crossings=6))
    assert any(count_colorings(moves.apply(witness, s), 3) != count_colorings(witness, 3)
               for s in moves.find_sites(witness, "R4_under"))

    OUT.mkdir(parents=True, exist_ok=True)
    files = {
        "circle": circle(), "trefoil": trefoil(), "theta": theta(), "k4": k4(),
        "figure6_G": g, "figure6_Gprime": gprime, "figure9_G1": g1, "figure9_G2": g2,
        "odd_r4_witness": witness,
    }
    for name, d in files.items():
        (OUT / f"{name}.dg").write_text(d.dumps(), encoding="utf-8")
        print(f"{name}.dg: {d!r}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
