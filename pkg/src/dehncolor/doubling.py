"""Edge doubling for graphs with odd-valent vertices.

Doubling replaces an edge by two blackboard-parallel copies that both end at
the original endpoints, so each endpoint gains one dart.  A crossing between
a doubled strand and a single strand becomes two crossings; a crossing
between two doubled strands becomes a 2x2 grid of four.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .coloring import DEFAULT_CAP, CapExceeded, count_colorings
from .diagram import CROSSING, Diagram, DiagramError, Node
from .tuples import InvariantSpec
from .weights import PhiValue, phi


def _edge_set(d: Diagram, edge_ids: Iterable[str]) -> list[str]:
    ids = list(edge_ids)
    if len(set(ids)) != len(ids):
        raise DiagramError("duplicate edge", ",".join(ids))
    known = {e.id for e in d.graph_edges}
    for e in ids:
        if e not in known:
            raise DiagramError("unknown edge", e)
    return ids


def is_doublable(d: Diagram, edge_ids: Iterable[str]) -> bool:
    """Parity rule: every vertex must end up with even valency."""
    ids = _edge_set(d, edge_ids)
    extra = {v.id: 0 for v in d.vertices}
    for e in ids:
        for end in d.edge(e).ends:
            extra[d.node_of(end).id] += 1
    return all((d.node(v).valency + k) % 2 == 0 for v, k in extra.items())


def doublable_sets(d: Diagram, r: int) -> list[tuple[str, ...]]:
    if r < 1:
        raise ValueError("r must be >= 1")
    ids = [e.id for e in d.graph_edges]
    return [s for s in combinations(ids, r) if is_doublable(d, s)]


def double(d: Diagram, edge_ids: Iterable[str]) -> Diagram:
    ids = set(_edge_set(d, edge_ids))
    doubled = {x for e in d.graph_edges if e.id in ids for x in e.darts}
    subs: dict[str, list[str]] = {}
    nodes: list[Node] = []

    for n in d.nodes:
        if n.kind != CROSSING:
            rotation = []
            for x in n.rotation:
                subs[x] = [f"{x}+a", f"{x}+b"] if x in doubled else [x]
                rotation += subs[x]
            nodes.append(Node(n.id, n.kind, tuple(rotation), n.over))
            continue
        rot = n.rotation
        hits = [x in doubled for x in rot]
        if not any(hits):
            for x in rot:
                subs[x] = [x]
            nodes.append(n)
        elif hits[0] != hits[1]:
            r = 0 if hits[0] else 1
            y = [rot[(k + r) % 4] for k in range(4)]
            over = (n.over - r) % 2
            w = [f"{n.id}w.{k}" for k in range(4)]
            e = [f"{n.id}e.{k}" for k in range(4)]
            nodes.append(Node(f"{n.id}w", CROSSING, tuple(w), over))
            nodes.append(Node(f"{n.id}e", CROSSING, tuple(e), over))
            subs[y[0]] = [w[0], e[0]]
            subs[y[1]] = [e[1]]
            subs[y[2]] = [e[2], w[2]]
            subs[y[3]] = [w[3]]
            subs[(n.id, "inner")] = [w[1], e[3]]
        else:
            names = ("nw", "ne", "se", "sw")
            g = {k: [f"{n.id}{k}.{j}" for j in range(4)] for k in names}
            for k in names:
                nodes.append(Node(f"{n.id}{k}", CROSSING, tuple(g[k]), n.over))
            subs[rot[0]] = [g["nw"][0], g["ne"][0]]
            subs[rot[1]] = [g["ne"][1], g["se"][1]]
            subs[rot[2]] = [g["se"][2], g["sw"][2]]
            subs[rot[3]] = [g["sw"][3], g["nw"][3]]
            subs[(n.id, "inner")] = [
                g["nw"][1], g["ne"][3], g["ne"][2], g["se"][0],
                g["se"][3], g["sw"][1], g["sw"][0], g["nw"][2],
            ]

    partner: dict[str, str] = {}

    def join(a: str, b: str) -> None:
        partner[a] = b
        partner[b] = a

    for key, inner in subs.items():
        if isinstance(key, tuple):
            for a, b in zip(inner[::2], inner[1::2]):
                join(a, b)
    for a, b in d.arcs:
        sa, sb = subs[a], subs[b]
        if len(sa) == 1:
            join(sa[0], sb[0])
        else:
            join(sa[0], sb[1])
            join(sa[1], sb[0])
    try:
        return Diagram(nodes, partner)
    except DiagramError as exc:
        raise DiagramError("doubling produced an invalid diagram", str(exc)) from exc


def phi_r(d: Diagram, p: int, spec: InvariantSpec, r: int,
          cap: int = DEFAULT_CAP) -> list[PhiValue]:
    """Phi of every doubled diagram over the doublable r-sets, canonically sorted."""
    out = []
    for s in doublable_sets(d, r):
        try:
            out.append(phi(double(d, s), p, spec, cap=cap))
        except CapExceeded as exc:
            raise CapExceeded(exc.count, exc.cap, f"colorings for edge set {','.join(s)}") from exc
    return sorted(out, key=PhiValue.sort_key)


def count_r(d: Diagram, p: int, r: int) -> list[int]:
    return sorted(count_colorings(double(d, s), p) for s in doublable_sets(d, r))
