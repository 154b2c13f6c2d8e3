"""Spatial-graph diagrams as planar combinatorial maps.

A diagram is a set of nodes (graph vertices and 4-valent crossings), each
with a clockwise cyclic list of darts, plus an involution pairing darts into
arcs.  Faces of the map are the regions of the diagram.

File format (JSON)::

    {
      "nodes": [
        {"id": "v", "kind": "vertex", "darts": ["v0", "v1"]},
        {"id": "x", "kind": "crossing", "darts": ["a", "b", "c", "d"], "over": 0}
      ],
      "arcs": [["v0", "a"], ...],
      "outer": ["v0", ...]            # optional, one dart per component
    }

Rotations are clockwise.  At a crossing the strands are ``darts[0]-darts[2]``
and ``darts[1]-darts[3]``; ``over`` names which pair is on top.  When a
diagram has several connected components they all sit in one common
unbounded region; ``outer`` picks, for each component, a dart whose face is
that unbounded one (default: the face of the component's smallest dart).
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

VERTEX = "vertex"
CROSSING = "crossing"


class DiagramError(ValueError):
    """Invalid diagram.  ``rule`` names the violated condition."""

    def __init__(self, rule: str, message: str):
        super().__init__(f"{rule}: {message}")
        self.rule = rule


@dataclass(frozen=True)
class Node:
    id: str
    kind: str
    rotation: tuple[str, ...]
    over: int | None = None

    @property
    def valency(self) -> int:
        return len(self.rotation)

    def over_strand(self) -> tuple[str, str]:
        return self.rotation[self.over], self.rotation[self.over + 2]


@dataclass(frozen=True)
class GraphEdge:
    id: str
    darts: tuple[str, ...]
    ends: tuple[str, ...]

    @property
    def closed(self) -> bool:
        return not self.ends


class Diagram:
    """A validated, immutable diagram.

    ``nodes`` keeps file order; ``partner`` maps each dart to the other end
    of its arc.
    """

    def __init__(self, nodes: Sequence[Node], partner: Mapping[str, str],
                 outer: Sequence[str] | None = None):
        self.nodes: tuple[Node, ...] = tuple(nodes)
        self.partner: dict[str, str] = dict(partner)
        self._outer = tuple(outer) if outer else None
        self._validate()

    # -- basic lookups -------------------------------------------------

    @cached_property
    def node_by_id(self) -> dict[str, Node]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def dart_home(self) -> dict[str, tuple[Node, int]]:
        home = {}
        for n in self.nodes:
            for i, d in enumerate(n.rotation):
                home[d] = (n, i)
        return home

    def node(self, node_id: str) -> Node:
        try:
            return self.node_by_id[node_id]
        except KeyError:
            raise DiagramError("unknown node", node_id) from None

    def node_of(self, dart: str) -> Node:
        return self.dart_home[dart][0]

    def next_cw(self, dart: str, step: int = 1) -> str:
        n, i = self.dart_home[dart]
        return n.rotation[(i + step) % len(n.rotation)]

    def opposite(self, dart: str) -> str:
        """The dart across a crossing on the same strand."""
        n, i = self.dart_home[dart]
        assert n.kind == CROSSING
        return n.rotation[(i + 2) % 4]

    def is_over(self, dart: str) -> bool:
        n, i = self.dart_home[dart]
        return i % 2 == n.over

    @property
    def darts(self) -> list[str]:
        return [d for n in self.nodes for d in n.rotation]

    @property
    def vertices(self) -> list[Node]:
        return [n for n in self.nodes if n.kind == VERTEX]

    @property
    def crossings(self) -> list[Node]:
        return [n for n in self.nodes if n.kind == CROSSING]

    @property
    def arcs(self) -> list[tuple[str, str]]:
        order = {d: k for k, d in enumerate(self.darts)}
        return [(a, b) for a, b in self.partner.items() if order[a] < order[b]]

    # -- validation ----------------------------------------------------

    def _validate(self) -> None:
        ids = Counter(n.id for n in self.nodes)
        dup = [k for k, c in ids.items() if c > 1]
        if dup:
            raise DiagramError("duplicate node id", dup[0])
        seen: set[str] = set()
        for n in self.nodes:
            if n.kind not in (VERTEX, CROSSING):
                raise DiagramError("bad node kind", f"{n.id}: {n.kind!r}")
            if n.kind == CROSSING:
                if len(n.rotation) != 4:
                    raise DiagramError("crossing needs 4 darts", n.id)
                if n.over not in (0, 1):
                    raise DiagramError("crossing needs over in {0,1}", n.id)
            elif not n.rotation:
                raise DiagramError("vertex needs at least one dart", n.id)
            for d in n.rotation:
                if d in seen:
                    raise DiagramError("dart appears at two nodes", d)
                seen.add(d)
        if set(self.partner) != seen:
            missing = sorted(seen - set(self.partner))
            extra = sorted(set(self.partner) - seen)
            if extra:
                raise DiagramError("arc references unknown dart", extra[0])
            raise DiagramError("dart not on any arc", missing[0])
        for a, b in self.partner.items():
            if a == b or self.partner.get(b) != a:
                raise DiagramError("arc involution violated", a)
        self._check_planar()

    def _check_planar(self) -> None:
        comp_of = self.component_of
        faces_per = Counter(comp_of[self.node_of(f[0]).id] for f in self.faces)
        nodes_per = Counter(comp_of[n.id] for n in self.nodes)
        darts_per = Counter(comp_of[n.id] for n in self.nodes for _ in n.rotation)
        for c in nodes_per:
            chi = nodes_per[c] - darts_per[c] // 2 + faces_per[c]
            if chi != 2:
                raise DiagramError(
                    "not planar",
                    f"component {c}: nodes - arcs + faces = {chi}, expected 2",
                )
        if self._outer is not None:
            if len(self._outer) != self.num_components:
                raise DiagramError("outer needs one dart per component", str(self._outer))
            comps = sorted(comp_of[self.node_of(d).id] for d in self._outer
                           if d in self.dart_home)
            if comps != list(range(self.num_components)):
                raise DiagramError("outer needs one dart per component", str(self._outer))

    # -- structure -----------------------------------------------------

    @cached_property
    def component_of(self) -> dict[str, int]:
        """Node id -> connected component index (components in node order)."""
        comp: dict[str, int] = {}
        k = 0
        for n in self.nodes:
            if n.id in comp:
                continue
            stack = [n.id]
            comp[n.id] = k
            while stack:
                cur = self.node_by_id[stack.pop()]
                for d in cur.rotation:
                    other = self.node_of(self.partner[d]).id
                    if other not in comp:
                        comp[other] = k
                        stack.append(other)
            k += 1
        return comp

    @property
    def num_components(self) -> int:
        return len(set(self.component_of.values())) if self.nodes else 0

    def face_step(self, dart: str) -> str:
        return self.next_cw(self.partner[dart])

    @cached_property
    def faces(self) -> tuple[tuple[str, ...], ...]:
        """Orbits of ``d -> next_cw(partner(d))``, discovered from the smallest dart."""
        seen: set[str] = set()
        out = []
        for d in sorted(self.dart_home):
            if d in seen:
                continue
            orbit = []
            cur = d
            while cur not in seen:
                seen.add(cur)
                orbit.append(cur)
                cur = self.face_step(cur)
            out.append(tuple(orbit))
        return tuple(out)

    @cached_property
    def face_of_dart(self) -> dict[str, int]:
        return {d: k for k, f in enumerate(self.faces) for d in f}

    @cached_property
    def _region_of_face(self) -> tuple[int, ...]:
        outer_faces = set()
        if self.num_components > 1:
            chosen = self._outer
            if chosen is None:
                first: dict[int, str] = {}
                for d in sorted(self.dart_home):
                    first.setdefault(self.component_of[self.node_of(d).id], d)
                chosen = tuple(first.values())
            outer_faces = {self.face_of_dart[d] for d in chosen}
        mapping = []
        ids: dict[object, int] = {}
        for k in range(len(self.faces)):
            key = "outer" if k in outer_faces else k
            if key not in ids:
                ids[key] = len(ids)
            mapping.append(ids[key])
        return tuple(mapping)

    @property
    def num_regions(self) -> int:
        return len(set(self._region_of_face)) if self.nodes else 1

    def region_of_dart(self, dart: str) -> int:
        """Region on the left of ``dart`` (the face it starts)."""
        return self._region_of_face[self.face_of_dart[dart]]

    def corner_region(self, dart: str) -> int:
        """Region in the corner swept clockwise from ``dart`` to the next dart."""
        return self.region_of_dart(self.next_cw(dart))

    def corners(self, node_id: str) -> list[int]:
        n = self.node(node_id)
        return [self.corner_region(d) for d in n.rotation]

    def corners_at(self, node_id: str) -> list[int]:
        """Clockwise corner regions at a graph vertex, from the corner after darts[0]."""
        n = self.node(node_id)
        if n.kind != VERTEX:
            raise DiagramError("not a vertex", node_id)
        return self.corners(node_id)

    @cached_property
    def regions(self) -> list[list[tuple[str, int]]]:
        """Per region id, the (node id, corner position) pairs it contains."""
        out: list[list[tuple[str, int]]] = [[] for _ in range(self.num_regions)]
        for n in self.nodes:
            for i, d in enumerate(n.rotation):
                out[self.corner_region(d)].append((n.id, i))
        return out

    @cached_property
    def graph_edges(self) -> tuple[GraphEdge, ...]:
        """Strands of the underlying graph, passing straight through crossings."""
        used: set[str] = set()
        edges = []

        def walk(start: str) -> tuple[list[str], str | None]:
            path = [start]
            cur = start
            while True:
                nxt = self.partner[cur]
                path.append(nxt)
                node = self.node_of(nxt)
                if node.kind == VERTEX:
                    return path, nxt
                cur = self.opposite(nxt)
                if cur == start:
                    return path, None
                path.append(cur)

        for v in self.vertices:
            for d in v.rotation:
                if d in used:
                    continue
                path, end = walk(d)
                used.update(path)
                edges.append(GraphEdge(f"e{len(edges) + 1}", tuple(path), (d, end)))
        for x in self.crossings:
            for d in x.rotation:
                if d in used:
                    continue
                path, end = walk(d)
                assert end is None
                used.update(path)
                edges.append(GraphEdge(f"e{len(edges) + 1}", tuple(path), ()))
        return tuple(edges)

    def edge(self, edge_id: str) -> GraphEdge:
        for e in self.graph_edges:
            if e.id == edge_id:
                return e
        raise DiagramError("unknown edge", edge_id)

    @cached_property
    def edge_of_dart(self) -> dict[str, str]:
        return {d: e.id for e in self.graph_edges for d in e.darts}

    def is_euler(self) -> bool:
        return all(n.valency % 2 == 0 for n in self.vertices)

    # -- equality / serialisation -------------------------------------

    def canonical(self) -> "Diagram":
        """Same diagram with darts renamed ``<node>.<position>``."""
        name = {d: f"{n.id}.{i}" for n in self.nodes for i, d in enumerate(n.rotation)}
        nodes = [Node(n.id, n.kind, tuple(name[d] for d in n.rotation), n.over) for n in self.nodes]
        partner = {name[a]: name[b] for a, b in self.partner.items()}
        outer = [name[d] for d in self._outer] if self._outer else None
        return Diagram(nodes, partner, outer)

    def to_dict(self) -> dict:
        out: dict = {"nodes": [], "arcs": [list(a) for a in self.arcs]}
        for n in self.nodes:
            entry = {"id": n.id, "kind": n.kind, "darts": list(n.rotation)}
            if n.kind == CROSSING:
                entry["over"] = n.over
            out["nodes"].append(entry)
        if self._outer:
            out["outer"] = list(self._outer)
        return out

    def dumps(self) -> str:
        d = self.to_dict()
        lines = ["{", '  "nodes": [']
        lines.append(",\n".join("    " + json.dumps(n) for n in d["nodes"]))
        lines.append("  ],")
        lines.append('  "arcs": [')
        lines.append(",\n".join("    " + json.dumps(a) for a in d["arcs"]))
        lines.append("  ]" + ("," if "outer" in d else ""))
        if "outer" in d:
            lines.append('  "outer": ' + json.dumps(d["outer"]))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.nodes == other.nodes and self.partner == other.partner

    def __hash__(self):
        return hash(self.nodes)

    def __repr__(self) -> str:
        return (f"<Diagram: {len(self.vertices)} vertices, {len(self.crossings)} crossings, "
                f"{self.num_regions} regions>")

    def summary(self) -> dict:
        return {
            "vertices": len(self.vertices),
            "crossings": len(self.crossings),
            "arcs": len(self.partner) // 2,
            "regions": self.num_regions,
            "components": self.num_components,
            "valencies": sorted(n.valency for n in self.vertices),
            "euler": self.is_euler(),
            "edges": len(self.graph_edges),
        }


def from_dict(data: Mapping) -> Diagram:
    if not isinstance(data, Mapping) or "nodes" not in data or "arcs" not in data:
        raise DiagramError("syntax", "top level must be an object with 'nodes' and 'arcs'")
    nodes = []
    for k, entry in enumerate(data["nodes"]):
        try:
            kind = entry["kind"]
            darts = tuple(str(d) for d in entry["darts"])
            node_id = str(entry["id"])
        except (KeyError, TypeError):
            raise DiagramError("syntax", f"node #{k} needs id, kind and darts") from None
        over = entry.get("over")
        if kind == VERTEX and over is not None:
            raise DiagramError("vertex cannot have over", node_id)
        nodes.append(Node(node_id, kind, darts, over))
    partner: dict[str, str] = {}
    for k, arc in enumerate(data["arcs"]):
        if not isinstance(arc, (list, tuple)) or len(arc) != 2:
            raise DiagramError("syntax", f"arc #{k} must be a 2-element list")
        a, b = (str(x) for x in arc)
        if a in partner or b in partner or a == b:
            raise DiagramError("arc involution violated", f"arc #{k} {arc}")
        partner[a] = b
        partner[b] = a
    outer = data.get("outer")
    return Diagram(nodes, partner, [str(d) for d in outer] if outer else None)


def parse(text: str) -> Diagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError("syntax", f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_dict(data)


def load(path) -> Diagram:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


class Builder:
    """Mutable scratch copy of a diagram for local surgery."""

    def __init__(self, diagram: Diagram | None = None):
        self.nodes: dict[str, Node] = {}
        self.partner: dict[str, str] = {}
        self._taken: set[str] = set()
        self._counter = itertools.count()
        if diagram is not None:
            for n in diagram.nodes:
                self.nodes[n.id] = n
            self.partner.update(diagram.partner)
            self._taken.update(diagram.node_by_id)
            self._taken.update(diagram.partner)

    def fresh(self, prefix: str) -> str:
        while True:
            name = f"{prefix}{next(self._counter)}"
            if name not in self._taken:
                self._taken.add(name)
                return name

    def add_node(self, kind: str, size: int, over: int | None = None,
                 prefix: str | None = None) -> list[str]:
        node_id = self.fresh(prefix or ("x" if kind == CROSSING else "v"))
        darts = []
        for i in range(size):
            d = f"{node_id}.{i}"
            if d in self._taken:
                d = self.fresh(f"{node_id}.{i}_")
            self._taken.add(d)
            darts.append(d)
        self.nodes[node_id] = Node(node_id, kind, tuple(darts), over)
        return darts

    def set_rotation(self, node_id: str, rotation: Iterable[str]) -> None:
        n = self.nodes[node_id]
        self.nodes[node_id] = Node(n.id, n.kind, tuple(rotation), n.over)

    def new_dart(self, stem: str) -> str:
        d = self.fresh(stem)
        return d

    def remove_node(self, node_id: str) -> None:
        n = self.nodes.pop(node_id)
        for d in n.rotation:
            self.partner.pop(d, None)

    def join(self, a: str, b: str) -> None:
        if a == b:
            raise DiagramError("arc involution violated", f"self-arc {a}")
        self.partner[a] = b
        self.partner[b] = a

    def build(self) -> Diagram:
        return Diagram(list(self.nodes.values()), self.partner)
