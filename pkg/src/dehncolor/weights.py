"""Vertex weights and the vertex-weight invariant of Euler diagrams."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from . import tuples
from .coloring import DEFAULT_CAP, colorings_array, count_colorings
from .diagram import Diagram, DiagramError
from .tuples import InvariantSpec, Value, format_value, json_value, value_key


@dataclass(frozen=True)
class VertexWeight:
    valency: int
    value: Value

    def sort_key(self):
        return (self.valency, value_key(self.value))

    def __str__(self) -> str:
        return f"(valency={self.valency}, f={format_value(self.value)})"


WeightMultiset = tuple[VertexWeight, ...]


@dataclass(frozen=True)
class PhiValue:
    """Canonically sorted ``(weight multiset, multiplicity)`` pairs."""

    entries: tuple[tuple[WeightMultiset, int], ...]

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def as_dict(self) -> dict[WeightMultiset, int]:
        return dict(self.entries)

    def lines(self) -> list[str]:
        return [f"{format_multiset(ws)} x {m}" for ws, m in self.entries]

    def to_json(self) -> list:
        return [
            {"weights": [{"valency": w.valency, "f": json_value(w.value)} for w in ws],
             "multiplicity": m}
            for ws, m in self.entries
        ]

    def sort_key(self):
        return tuple((multiset_key(ws), m) for ws, m in self.entries)


def multiset_key(ws: WeightMultiset):
    return tuple(w.sort_key() for w in ws)


def format_multiset(ws: WeightMultiset) -> str:
    return "{" + ", ".join(str(w) for w in ws) + "}"


def canonical_multiset(weights) -> WeightMultiset:
    return tuple(sorted(weights, key=VertexWeight.sort_key))


def make_phi(counter: Counter) -> PhiValue:
    return PhiValue(tuple(sorted(counter.items(), key=lambda kv: multiset_key(kv[0]))))


def _check_even(d: Diagram) -> None:
    odd = [v.id for v in d.vertices if v.valency % 2]
    if odd:
        raise DiagramError("odd-valent vertex", ", ".join(odd))


def vertex_weight(d: Diagram, coloring: Sequence[int], vertex_id: str,
                  spec: InvariantSpec, p: int, start: int = 0) -> VertexWeight:
    """Weight of a vertex: its valency and ``f`` of its clockwise corner colors.

    ``start`` rotates the corner reading; the result does not depend on it.
    """
    corners = d.corners_at(vertex_id)
    if len(corners) % 2:
        raise DiagramError("odd-valent vertex", vertex_id)
    n = len(corners)
    t = tuple(coloring[corners[(i + start) % n]] % p for i in range(n))
    return VertexWeight(n, tuples.evaluate(spec, t, p))


def weight_multiset(d: Diagram, coloring: Sequence[int], spec: InvariantSpec,
                    p: int) -> WeightMultiset:
    _check_even(d)
    return canonical_multiset(vertex_weight(d, coloring, v.id, spec, p) for v in d.vertices)


def phi(d: Diagram, p: int, spec: InvariantSpec, cap: int = DEFAULT_CAP,
        check: bool = True) -> PhiValue:
    """Multiset of weight multisets over all Dehn p-colorings."""
    _check_even(d)
    spec.check(p)
    sols = colorings_array(d, p, cap)
    corner_lists = [d.corners_at(v.id) for v in d.vertices]
    counter: Counter = Counter()
    cache: dict = {}
    for row in sols.tolist():
        ws = []
        for corners in corner_lists:
            t = tuple(row[r] for r in corners)
            val = cache.get(t)
            if val is None:
                val = cache[t] = tuples.evaluate(spec, t, p)
            ws.append(VertexWeight(len(t), val))
        counter[canonical_multiset(ws)] += 1
    result = make_phi(counter)
    if check and result.total != count_colorings(d, p):
        raise AssertionError("phi multiplicities do not add up to the coloring count")
    return result


def phi_equal(x: PhiValue, y: PhiValue) -> bool:
    return x.entries == y.entries
