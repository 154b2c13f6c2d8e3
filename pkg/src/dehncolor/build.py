"""Constructors for diagrams: PD codes and top-to-bottom level words.

A level word describes a diagram drawn between two horizontal lines, read
from top to bottom, as a list of steps acting on the strands currently
crossing a horizontal line (numbered left to right from 0):

``("vertex", i, n_up, n_down)``
    a graph vertex absorbing strands ``i .. i+n_up-1`` and emitting
    ``n_down`` new strands at position ``i``;
``("cap", i)``
    two new strands at ``i, i+1`` joined above (a local maximum);
``("wrap", )``
    two new strands at the far left and far right, joined by an arc that
    passes above everything drawn so far;
``("cup", i)``
    strands ``i`` and ``i+1`` joined below (a local minimum);
``("cross", i, over)``
    strands ``i`` and ``i+1`` cross; ``over`` is ``"L"`` when the strand
    coming from the upper left is on top, ``"R"`` otherwise.

Every strand must be absorbed by the end of the word.
"""

from __future__ import annotations

import random
from typing import Sequence

from .diagram import CROSSING, VERTEX, Builder, Diagram, DiagramError, Node


def from_pd(pd: Sequence[Sequence[int]]) -> Diagram:
    """Knot/link diagram from a PD code.

    Each ``X[a, b, c, d]`` lists edge labels counterclockwise starting from
    the incoming under-strand, as in the Knot Atlas convention.
    """
    nodes = []
    ends: dict[int, list[str]] = {}
    for k, x in enumerate(pd):
        a, b, c, d = x
        darts = [f"x{k}.{j}" for j in range(4)]
        # counterclockwise a,b,c,d -> clockwise a,d,c,b; under strand is a-c
        labels = [a, d, c, b]
        for dart, lab in zip(darts, labels):
            ends.setdefault(lab, []).append(dart)
        nodes.append(Node(f"x{k}", CROSSING, tuple(darts), 1))
    partner = {}
    for lab, pair in ends.items():
        if len(pair) != 2:
            raise DiagramError("syntax", f"PD label {lab} used {len(pair)} times")
        partner[pair[0]] = pair[1]
        partner[pair[1]] = pair[0]
    return Diagram(nodes, partner)


class _End:
    """Upper end of an open strand: a dart, or one side of a pending cap."""

    __slots__ = ("dart", "twin", "closed")

    def __init__(self, dart=None):
        self.dart = dart
        self.twin: _End | None = None
        self.closed = False


def from_levels(word: Sequence[tuple]) -> Diagram:
    b = Builder()
    strands: list[_End] = []

    def attach(end: _End, dart: str) -> None:
        if end.dart is not None:
            b.join(end.dart, dart)
            return
        twin = end.twin
        assert twin is not None
        if twin.closed:
            raise DiagramError("syntax", "strand closed on itself")
        # the cap's other side now ends at ``dart``
        twin.dart = dart
        twin.twin = None
        end.closed = True

    def connect(e1: _End, e2: _End) -> None:
        if e1.dart is not None and e2.dart is not None:
            b.join(e1.dart, e2.dart)
        elif e1.dart is not None:
            attach(e2, e1.dart)
        elif e2.dart is not None:
            attach(e1, e2.dart)
        else:
            if e1.twin is e2:
                raise DiagramError("syntax", "closed strand without nodes")
            t1, t2 = e1.twin, e2.twin
            t1.twin, t2.twin = t2, t1

    for step in word:
        kind = step[0]
        if kind == "vertex":
            _, i, n_up, n_down = step
            darts = b.add_node(VERTEX, n_up + n_down, prefix="v")
            ups, downs = darts[:n_up], darts[n_up:]
            for end, d in zip(strands[i:i + n_up], ups):
                attach(end, d)
            # clockwise: upper darts left to right, then lower right to left
            rotation = ups + downs[::-1]
            node_id = darts[0].split(".")[0]
            b.set_rotation(node_id, rotation)
            strands[i:i + n_up] = [_End(d) for d in downs]
        elif kind == "cap":
            _, i = step
            left, right = _End(), _End()
            left.twin, right.twin = right, left
            strands[i:i] = [left, right]
        elif kind == "wrap":
            left, right = _End(), _End()
            left.twin, right.twin = right, left
            strands = [left] + strands + [right]
        elif kind == "cup":
            _, i = step
            e1, e2 = strands[i], strands[i + 1]
            del strands[i:i + 2]
            connect(e1, e2)
        elif kind == "cross":
            _, i, over = step
            darts = b.add_node(CROSSING, 4, over=1 if over == "L" else 0, prefix="x")
            ne, se, sw, nw = darts  # clockwise from the upper right
            attach(strands[i], nw)
            attach(strands[i + 1], ne)
            strands[i:i + 2] = [_End(sw), _End(se)]
        else:
            raise DiagramError("syntax", f"unknown level step {step!r}")
    if strands:
        raise DiagramError("syntax", f"{len(strands)} strands left open")
    return b.build()


def random_braid_word(strands: int, length: int, rng: random.Random) -> list[tuple]:
    return [("cross", rng.randrange(strands - 1), rng.choice("LR")) for _ in range(length)]


def random_knotlike(crossings: int, rng: random.Random, width: int = 2) -> Diagram:
    """A random connected diagram: a plat-style word on ``2 * width`` strands.

    ``width`` is lowered when there are too few crossings to connect the caps.
    """
    width = max(1, min(width, crossings + 1))
    n = 2 * width
    while True:
        word: list[tuple] = [("vertex", 0, 0, 2)] if rng.random() < 0.3 else [("cap", 0)]
        for k in range(1, width):
            word.append(("cap", 2 * k))
        word += random_braid_word(n, crossings, rng)
        for k in range(width - 1, 0, -1):
            word.append(("cup", 2 * k))
        word.append(("cup", 0) if word[0][0] == "cap" else ("vertex", 0, 2, 0))
        try:
            d = from_levels(word)
        except DiagramError:
            continue
        if d.num_components == 1:
            return d
