"""Reidemeister moves I-V as local rewrites of the combinatorial map.

Every move replaces the contents of a small disk.  The disk boundary is
described by *ports*: old darts just inside the disk whose arcs leave it.
After the rewrite each port is given a new inner endpoint (a new dart, a
surviving vertex dart, or a pass-through to another port) and
:func:`_rewire` reconnects the outside world.

Conventions for the local pictures: rotations are clockwise, so a crossing
drawn with strands N-S and E-W has rotation ``[N, E, S, W]``.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass

from .diagram import CROSSING, VERTEX, Builder, Diagram, DiagramError

KINDS = ("R1+", "R1-", "R2", "R3", "R4_over", "R4_under", "R5")
FORWARD = "forward"
INVERSE = "inverse"


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class MoveSite:
    kind: str
    direction: str
    anchor: tuple[str, ...]
    variant: tuple = ()

    def describe(self) -> str:
        extra = " ".join(str(v) for v in self.variant)
        return f"{self.kind} {self.direction} at {','.join(self.anchor)} {extra}".strip()


def crossing_sign(rotation, over: int, over_in: str, under_in: str) -> int:
    """+1 when the under strand passes from right to left of the over strand."""
    over_out = rotation[(rotation.index(over_in) + 2) % 4]
    return 1 if rotation[(rotation.index(over_out) + 1) % 4] == under_in else -1


def _rewire(b: Builder, old: Diagram, ports: dict) -> None:
    """Reconnect the outside of a rewritten disk.

    ``ports`` maps each port dart to its new inner endpoint: a dart name or
    ``("through", other_port)``.
    """
    adj: dict[tuple, set] = defaultdict(set)

    def link(x, y):
        adj[x].add(y)
        adj[y].add(x)

    for delta, ep in ports.items():
        link(("o", delta), ("o", old.partner[delta]))
        if isinstance(ep, tuple):
            link(("o", delta), ("o", ep[1]))
        else:
            link(("o", delta), ("n", ep))
    seen = set()
    for start in list(adj):
        if start in seen or len(adj[start]) != 1:
            continue
        prev, cur = None, start
        seen.add(cur)
        while True:
            nxt = [y for y in adj[cur] if y != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            seen.add(cur)
            if len(adj[cur]) == 1:
                break
        b.join(start[1], cur[1])
    if any(x not in seen for x in adj):
        raise MoveError("move would leave a closed strand without nodes")


def _finish(b: Builder, d: Diagram) -> Diagram:
    try:
        out = b.build()
    except DiagramError as exc:
        raise DiagramError("move produced an invalid diagram", str(exc)) from exc
    if out.num_components > d.num_components:
        raise MoveError("move would disconnect the diagram")
    return out


# -- R1 ---------------------------------------------------------------------

def _kink_sign(side: int, over: int) -> int:
    # strand a -> x0 -> x2 -> loop -> (x1 -> x3 | x3 -> x1) -> b
    rot = ("x0", "x1", "x2", "x3")
    first_in, second_in = "x0", ("x1" if side == 0 else "x3")
    if over == 0:
        return crossing_sign(rot, over, first_in, second_in)
    return crossing_sign(rot, over, second_in, first_in)


def _r1_sites(d: Diagram) -> list[MoveSite]:
    sites = []
    for a, _ in d.arcs:
        for side in (0, 1):
            for over in (0, 1):
                kind = "R1+" if _kink_sign(side, over) > 0 else "R1-"
                sites.append(MoveSite(kind, FORWARD, (a,), (side, over)))
    for x in d.crossings:
        rot = x.rotation
        for i in range(4):
            if d.partner[rot[i]] != rot[(i + 1) % 4]:
                continue
            if d.partner[rot[(i + 2) % 4]] == rot[(i + 3) % 4]:
                continue
            # strand enters at i+2, leaves at i, returns at i+1, exits at i+3
            a_in, b_in = rot[(i + 2) % 4], rot[(i + 1) % 4]
            if d.is_over(a_in):
                sign = crossing_sign(rot, x.over, a_in, b_in)
            else:
                sign = crossing_sign(rot, x.over, b_in, a_in)
            kind = "R1+" if sign > 0 else "R1-"
            sites.append(MoveSite(kind, INVERSE, (rot[i],)))
    return sites


def _apply_r1(d: Diagram, site: MoveSite) -> Diagram:
    b = Builder(d)
    if site.direction == FORWARD:
        (a,) = site.anchor
        side, over = site.variant
        end = d.partner[a]
        x = b.add_node(CROSSING, 4, over=over)
        b.join(a, x[0])
        if side == 0:
            b.join(x[1], x[2])
            b.join(x[3], end)
        else:
            b.join(x[2], x[3])
            b.join(x[1], end)
        return _finish(b, d)
    (loop,) = site.anchor
    node, i = d.dart_home[loop]
    rot = node.rotation
    if node.kind != CROSSING or d.partner[loop] != rot[(i + 1) % 4]:
        raise MoveError("no kink at this site")
    b.remove_node(node.id)
    _rewire(b, d, {rot[(i + 2) % 4]: ("through", rot[(i + 3) % 4]),
                   rot[(i + 3) % 4]: ("through", rot[(i + 2) % 4])})
    return _finish(b, d)


# -- R2 ---------------------------------------------------------------------

def _r2_sites(d: Diagram) -> list[MoveSite]:
    sites = []
    for face in d.faces:
        for d1 in face:
            for d2 in face:
                if d2 in (d1, d.partner[d1]):
                    continue
                for over in ("over", "under"):
                    sites.append(MoveSite("R2", FORWARD, (d1, d2), (over,)))
    for face in d.faces:
        if len(face) != 2:
            continue
        f1, f2 = face
        g1 = d.partner[f1]
        na, nb = d.node_of(f1), d.node_of(g1)
        if na.kind != CROSSING or nb.kind != CROSSING or na.id == nb.id:
            continue
        if d.is_over(f1) != d.is_over(g1):
            continue
        sites.append(MoveSite("R2", INVERSE, (f1, f2)))
    return sites


def _apply_r2(d: Diagram, site: MoveSite) -> Diagram:
    b = Builder(d)
    if site.direction == FORWARD:
        d1, d2 = site.anchor
        if d.face_of_dart[d1] != d.face_of_dart[d2] or d2 in (d1, d.partner[d1]):
            raise MoveError("darts do not share a face")
        e1, e2 = d.partner[d1], d.partner[d2]
        over = 0 if site.variant[0] == "over" else 1
        # arc 1 is pushed across arc 2: X then Y along arc 1
        xn, xe, xs, xw = b.add_node(CROSSING, 4, over=over)
        yn, ye, ys, yw = b.add_node(CROSSING, 4, over=over)
        b.join(d1, xs)
        b.join(xn, yn)
        b.join(ys, e1)
        b.join(d2, ye)
        b.join(yw, xe)
        b.join(xw, e2)
        return _finish(b, d)
    f1, f2 = site.anchor
    if len(d.faces[d.face_of_dart[f1]]) != 2 or d.face_step(f1) != f2:
        raise MoveError("not a bigon")
    g1, g2 = d.partner[f1], d.partner[f2]
    na, nb = d.node_of(f1), d.node_of(g1)
    if na.kind != CROSSING or nb.kind != CROSSING or na.id == nb.id:
        raise MoveError("bigon is not between two crossings")
    if d.is_over(f1) != d.is_over(g1):
        raise MoveError("bigon strands alternate; not an R2 bigon")
    b.remove_node(na.id)
    b.remove_node(nb.id)
    o = d.opposite
    _rewire(b, d, {o(f1): ("through", o(g1)), o(g1): ("through", o(f1)),
                   o(f2): ("through", o(g2)), o(g2): ("through", o(f2))})
    return _finish(b, d)


# -- R3 ---------------------------------------------------------------------

def _triangle(d: Diagram, face: tuple[str, ...]):
    """Return (nodes, t, u) for a triangular face between three crossings, else None."""
    if len(face) != 3:
        return None
    t = list(face)
    nodes = [d.node_of(x) for x in t]
    if any(n.kind != CROSSING for n in nodes) or len({n.id for n in nodes}) != 3:
        return None
    u = [d.partner[t[(k - 1) % 3]] for k in range(3)]
    if any(d.node_of(u[k]).id != nodes[k].id for k in range(3)):
        return None
    return nodes, t, u


def _r3_movable(d: Diagram, t, u) -> bool:
    # strand k runs t[k] -> u[k+1]; it is on top at both its crossings for some k
    for k in range(3):
        a, b = d.is_over(t[k]), d.is_over(u[(k + 1) % 3])
        if a and b:
            return True
    return False


def _r3_sites(d: Diagram) -> list[MoveSite]:
    sites = []
    for face in d.faces:
        tri = _triangle(d, face)
        if tri and _r3_movable(d, tri[1], tri[2]):
            sites.append(MoveSite("R3", FORWARD, face))
    return sites


def _apply_r3(d: Diagram, site: MoveSite) -> Diagram:
    tri = _triangle(d, site.anchor)
    if tri is None or not _r3_movable(d, tri[1], tri[2]):
        raise MoveError("no movable triangle at this site")
    (n0, n1, n2), t, u = tri
    bar = d.opposite
    # strands a, b, c run through arcs t0, t1, t2; old crossings P=a*c, Q=a*b, R=b*c
    over_ab = d.is_over(u[1])  # a at Q
    over_ac = d.is_over(t[0])  # a at P
    over_bc = d.is_over(u[2])  # b at R
    b = Builder(d)
    for n in (n0, n1, n2):
        b.remove_node(n.id)
    # new crossing P' = a*b: [a->Q', b->R', a->a1, b->b1], a at even slots
    p = b.add_node(CROSSING, 4, over=0 if over_ab else 1)
    # Q' = a*c: [c->c1, a->a2, c->R', a->P'], a at odd slots
    q = b.add_node(CROSSING, 4, over=1 if over_ac else 0)
    # R' = b*c: [c->Q', b->b2, c->c2, b->P'], b at odd slots
    r = b.add_node(CROSSING, 4, over=1 if over_bc else 0)
    b.join(p[0], q[3])
    b.join(p[1], r[3])
    b.join(q[2], r[0])
    _rewire(b, d, {
        bar(t[0]): p[2],  # a1
        bar(u[2]): p[3],  # b1
        bar(t[2]): q[0],  # c1
        bar(u[1]): q[1],  # a2
        bar(t[1]): r[1],  # b2
        bar(u[0]): r[2],  # c2
    })
    return _finish(b, d)


# -- R4 ---------------------------------------------------------------------

def _r4_pass(d: Diagram, v, i: int, k: int):
    """Crossings of a strand passing clockwise over/under rays i..i+k-1 of ``v``."""
    n = v.valency
    chain = []
    for m in range(k):
        y = d.partner[v.rotation[(i + m) % n]]
        x, q = d.dart_home[y]
        if x.kind != CROSSING:
            return None
        rot = x.rotation
        chain.append((x, rot[(q + 2) % 4], rot[(q + 3) % 4], rot[(q + 1) % 4]))  # out, fwd, back
    if len({c[0].id for c in chain}) != k:
        return None
    for m in range(k - 1):
        if d.partner[chain[m][2]] != chain[m + 1][3]:
            return None
    levels = {d.is_over(c[3]) for c in chain}
    if len(levels) != 1:
        return None
    return chain, levels.pop()


def _r4_sites(d: Diagram) -> list[MoveSite]:
    sites = []
    for v in d.vertices:
        n = v.valency
        for i in range(n):
            for k in range(1, n + 1):
                found = _r4_pass(d, v, i, k)
                if not found:
                    continue
                chain, on_top = found
                kind = "R4_over" if on_top else "R4_under"
                direction = FORWARD if n - k >= k else INVERSE
                sites.append(MoveSite(kind, direction, (v.rotation[i],), (k,)))
            # k = 0: an arc on the face at corner (i-1, i) not touching v
            face = d.faces[d.face_of_dart[v.rotation[i]]]
            for s in face:
                s2 = d.partner[s]
                if v.id in (d.node_of(s).id, d.node_of(s2).id):
                    continue
                if d.face_of_dart[s2] == d.face_of_dart[s]:
                    continue
                for kind in ("R4_over", "R4_under"):
                    sites.append(MoveSite(kind, FORWARD, (v.rotation[i], s), (0,)))
    return sites


def _apply_r4(d: Diagram, site: MoveSite) -> Diagram:
    start = site.anchor[0]
    v, i = d.dart_home[start]
    n = v.valency
    (k,) = site.variant
    on_top = site.kind == "R4_over"
    b = Builder(d)
    ports: dict = {}
    if k:
        found = _r4_pass(d, v, i, k)
        if not found or found[1] != on_top:
            raise MoveError("no strand passing the vertex at this site")
        chain = found[0]
        for m, (x, out, _, _) in enumerate(chain):
            b.remove_node(x.id)
            ports[out] = v.rotation[(i + m) % n]
        s_start, s_end = chain[0][3], chain[-1][2]
    else:
        s = site.anchor[1]
        s_start, s_end = d.partner[s], s
    # the strand now runs counterclockwise from sector (i-1, i) over the other rays
    new_rays = [(i - 1 - j) % n for j in range(n - k)]
    ys = []
    for j in new_rays:
        out, back, inn, fwd = b.add_node(CROSSING, 4, over=1 if on_top else 0)
        vd = v.rotation[j]
        ports[vd] = out
        b.join(inn, vd)
        ys.append((back, fwd))
    for (_, f), (bk, _) in zip(ys, ys[1:]):
        b.join(f, bk)
    if k:
        if ys:
            ports[s_start] = ys[0][0]
            ports[s_end] = ys[-1][1]
        else:
            ports[s_start] = ("through", s_end)
            ports[s_end] = ("through", s_start)
        _rewire(b, d, ports)
    else:
        _rewire(b, d, ports)
        b.join(s_start, ys[0][0])
        b.join(ys[-1][1], s_end)
    return _finish(b, d)


# -- R5 ---------------------------------------------------------------------

def _r5_sites(d: Diagram) -> list[MoveSite]:
    sites = []
    for v in d.vertices:
        n = v.valency
        if n < 2:
            continue
        for i in range(n):
            for over in (0, 1):
                sites.append(MoveSite("R5", FORWARD, (v.rotation[i],), (over,)))
            alpha, beta = v.rotation[i], v.rotation[(i + 1) % n]
            xa, ja = d.dart_home[d.partner[alpha]]
            xb, jb = d.dart_home[d.partner[beta]]
            if xa.kind == CROSSING and xa.id == xb.id and jb == (ja - 1) % 4:
                sites.append(MoveSite("R5", INVERSE, (alpha,)))
    return sites


def _apply_r5(d: Diagram, site: MoveSite) -> Diagram:
    (alpha,) = site.anchor
    v, i = d.dart_home[alpha]
    n = v.valency
    if v.kind != VERTEX or n < 2:
        raise MoveError("R5 needs a vertex of valency >= 2")
    vi, vj = v.rotation[i], v.rotation[(i + 1) % n]
    b = Builder(d)
    rot = list(v.rotation)
    if site.direction == FORWARD:
        (over,) = site.variant
        xn, xe, xs, xw = b.add_node(CROSSING, 4, over=over)
        a_new, b_new = b.fresh(f"{v.id}.t"), b.fresh(f"{v.id}.t")
        rot[i], rot[(i + 1) % n] = a_new, b_new
        b.set_rotation(v.id, rot)
        for x in (vi, vj):
            b.partner.pop(x, None)
        b.join(a_new, xw)
        b.join(b_new, xs)
        _rewire(b, d, {vi: xn, vj: xe})
        return _finish(b, d)
    x, j = d.dart_home[d.partner[vi]]
    xb, jb = d.dart_home[d.partner[vj]]
    if x.kind != CROSSING or xb.id != x.id or jb != (j - 1) % 4:
        raise MoveError("no twist bigon at this site")
    a_new, b_new = b.fresh(f"{v.id}.t"), b.fresh(f"{v.id}.t")
    rot[i], rot[(i + 1) % n] = a_new, b_new
    b.remove_node(x.id)
    b.set_rotation(v.id, rot)
    for y in (vi, vj):
        b.partner.pop(y, None)
    _rewire(b, d, {x.rotation[(j + 1) % 4]: a_new, x.rotation[(j + 2) % 4]: b_new})
    return _finish(b, d)


# -- dispatch ---------------------------------------------------------------

_FINDERS = {"R1": _r1_sites, "R2": _r2_sites, "R3": _r3_sites, "R4": _r4_sites, "R5": _r5_sites}
_APPLIERS = {"R1": _apply_r1, "R2": _apply_r2, "R3": _apply_r3, "R4": _apply_r4, "R5": _apply_r5}


def _family(kind: str) -> str:
    return kind[:2]


def find_sites(d: Diagram, kind: str | None = None) -> list[MoveSite]:
    """All candidate sites of ``kind`` (or of every kind), in a fixed order."""
    if kind is not None and kind not in KINDS:
        raise MoveError(f"unknown move kind {kind!r}")
    families = [_family(kind)] if kind else list(_FINDERS)
    out = []
    for fam in families:
        out += [s for s in _FINDERS[fam](d) if kind is None or s.kind == kind]
    return out


def apply(d: Diagram, site: MoveSite) -> Diagram:
    return _APPLIERS[_family(site.kind)](d, site)


def expected_region_delta(d: Diagram, site: MoveSite) -> int:
    fam = _family(site.kind)
    sign = 1 if site.direction == FORWARD else -1
    if fam == "R1":
        return sign
    if fam == "R2":
        return 2 * sign
    if fam == "R3":
        return 0
    if fam == "R4":
        return d.node_of(site.anchor[0]).valency - 2 * site.variant[0]
    return sign


def random_walk(d: Diagram, steps: int, seed: int, max_crossings: int | None = None) -> Diagram:
    """Apply ``steps`` random moves.

    Each step picks a (kind, direction) family uniformly among those with a
    site, then a site uniformly within it.  Once the diagram has
    ``max_crossings`` crossings, families that add crossings are skipped.
    """
    rng = random.Random(seed)
    if max_crossings is None:
        max_crossings = 2 * len(d.crossings) + 12
    cur = d
    for _ in range(steps):
        families: dict[tuple, list[MoveSite]] = defaultdict(list)
        for s in find_sites(cur):
            grows = expected_region_delta(cur, s) > 0
            if grows and len(cur.crossings) >= max_crossings:
                continue
            families[(s.kind, s.direction)].append(s)
        keys = sorted(families)
        while keys:
            key = rng.choice(keys)
            pool = families[key]
            site = pool.pop(rng.randrange(len(pool)))
            if not pool:
                keys.remove(key)
            try:
                cur = apply(cur, site)
                break
            except MoveError:
                continue
    return cur
