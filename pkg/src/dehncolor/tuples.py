"""Even-length residue tuples, the four elementary transformations and their invariants.

A tuple is a plain ``tuple[int, ...]`` of canonical residues in ``range(p)``.
The modulus is passed explicitly to every function.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

INF = math.inf

Value = Union[int, float, tuple]


class TupleError(ValueError):
    """Raised for malformed tuples or inapplicable invariants."""


def check_modulus(p: int) -> int:
    if not isinstance(p, int) or p < 2:
        raise TupleError(f"modulus must be an integer >= 2, got {p!r}")
    return p


def make_tuple(entries: Iterable[int], p: int) -> tuple[int, ...]:
    """Reduce ``entries`` mod ``p`` and check the length is even and positive."""
    check_modulus(p)
    t = tuple(int(a) % p for a in entries)
    if len(t) < 2 or len(t) % 2:
        raise TupleError(f"tuple length must be even and >= 2, got {len(t)}")
    return t


def op1(t: Sequence[int]) -> tuple[int, ...]:
    return tuple(t[1:]) + (t[0],)


def op2(t: Sequence[int], a: int, p: int) -> tuple[int, ...]:
    shift = t[0] - a
    # index i here is 0-based, so position i+1 gets sign (-1)**(i+1)
    return (a % p,) + tuple((t[i] + (-1) ** (i + 1) * shift) % p for i in range(1, len(t)))


def op3(t: Sequence[int], a: int, p: int) -> tuple[int, ...]:
    return (a % p,) + tuple((t[0] - x + a) % p for x in t[1:])


def op4(t: Sequence[int], p: int) -> tuple[int, ...]:
    if len(t) < 4:
        raise TupleError("op4 needs a tuple of length > 3")
    return (t[0], (-t[0] + t[1] + t[2]) % p) + tuple(t[2:])


def cyclic_sums(t: Sequence[int], p: int) -> list[int]:
    n = len(t)
    return [(t[i] + t[(i + 1) % n]) % p for i in range(n)]


def divisors(p: int) -> list[int]:
    return [k for k in range(1, p + 1) if p % k == 0]


def tau(t: Sequence[int], p: int) -> int:
    """Largest divisor k of p such that all cyclic neighbour sums agree mod k."""
    sums = cyclic_sums(t, p)
    best = 1
    for k in divisors(p):
        if len({s % k for s in sums}) == 1:
            best = k
    return best


def _require_even(p: int, name: str) -> None:
    if p % 2:
        raise TupleError(f"{name} is only defined for even p, got p={p}")


def eps(t: Sequence[int], p: int) -> Union[int, float]:
    _require_even(p, "eps")
    parities = {s % 2 for s in cyclic_sums(t, p)}
    if parities == {0}:
        return 0
    if parities == {1}:
        return 1
    return INF


def mu(t: Sequence[int], p: int) -> int:
    _require_even(p, "mu")
    sums = cyclic_sums(t, p)
    even = sum(1 for s in sums if s % 2 == 0)
    return even - (len(sums) - even)


def check_mu_tau(p: int, tau_value: int) -> None:
    if p % 2 or tau_value < 1 or tau_value % 2 or p % tau_value or (p // tau_value) % 2:
        raise TupleError(
            f"mu_tau needs even tau dividing even p with p/tau even; got p={p}, tau={tau_value}"
        )


def mu_tau(t: Sequence[int], p: int, tau_value: int) -> Union[int, float]:
    check_mu_tau(p, tau_value)
    if tau(t, p) != tau_value:
        return INF
    q = p // tau_value
    shifted = []
    for i, x in enumerate(t):
        base = t[0] if i % 2 == 0 else t[1]
        diff = (x - base) % p
        assert diff % tau_value == 0, "shifted entry not divisible by tau"
        shifted.append((diff // tau_value) % q)
    return abs(mu(shifted, q))


@dataclass(frozen=True)
class InvariantSpec:
    """Which tuple invariant to evaluate: tau, eps, mu, mutau (with ``tau``) or prod."""

    kind: str
    tau: int | None = None
    parts: tuple["InvariantSpec", ...] = ()

    def __post_init__(self):
        if self.kind not in ("tau", "eps", "mu", "mutau", "prod"):
            raise TupleError(f"unknown invariant {self.kind!r}")
        if self.kind == "mutau" and self.tau is None:
            raise TupleError("mutau needs a tau parameter")
        if self.kind == "prod":
            if not self.parts:
                raise TupleError("prod needs at least one component")
            if any(s.kind == "prod" for s in self.parts):
                raise TupleError("nested prod is not allowed")

    def __str__(self) -> str:
        if self.kind == "mutau":
            return f"mutau:{self.tau}"
        if self.kind == "prod":
            return "prod(" + ",".join(str(s) for s in self.parts) + ")"
        return self.kind

    def check(self, p: int) -> None:
        """Raise TupleError if this invariant is undefined for modulus ``p``."""
        check_modulus(p)
        if self.kind in ("eps", "mu"):
            _require_even(p, self.kind)
        elif self.kind == "mutau":
            check_mu_tau(p, self.tau)
        elif self.kind == "prod":
            for s in self.parts:
                s.check(p)


TAU = InvariantSpec("tau")
EPS = InvariantSpec("eps")
MU = InvariantSpec("mu")

_ATOM = re.compile(r"^(tau|eps|mu|mutau:(\d+))$")


def parse_spec(text: str) -> InvariantSpec:
    """Parse ``tau | eps | mu | mutau:T | prod(S1,S2,...)``."""
    s = text.replace(" ", "")
    if s.startswith("prod(") and s.endswith(")"):
        inner = s[5:-1]
        if not inner:
            raise TupleError("empty prod()")
        return InvariantSpec("prod", parts=tuple(_parse_atom(x) for x in inner.split(",")))
    return _parse_atom(s)


def _parse_atom(s: str) -> InvariantSpec:
    m = _ATOM.match(s)
    if not m:
        raise TupleError(f"cannot parse invariant spec {s!r}")
    if m.group(2) is not None:
        return InvariantSpec("mutau", tau=int(m.group(2)))
    return InvariantSpec(m.group(1))


def evaluate(spec: InvariantSpec, t: Sequence[int], p: int) -> Value:
    spec.check(p)
    return _evaluate(spec, t, p)


def _evaluate(spec: InvariantSpec, t: Sequence[int], p: int) -> Value:
    if spec.kind == "tau":
        return tau(t, p)
    if spec.kind == "eps":
        return eps(t, p)
    if spec.kind == "mu":
        return mu(t, p)
    if spec.kind == "mutau":
        return mu_tau(t, p, spec.tau)
    return tuple(_evaluate(s, t, p) for s in spec.parts)


def format_value(v: Value) -> str:
    if isinstance(v, tuple):
        return "(" + ", ".join(format_value(x) for x in v) + ")"
    if v == INF:
        return "inf"
    return str(int(v))


def json_value(v: Value):
    if isinstance(v, tuple):
        return [json_value(x) for x in v]
    if v == INF:
        return "inf"
    return int(v)


def value_key(v: Value):
    """Sort key putting INF above every finite value."""
    if isinstance(v, tuple):
        return tuple(value_key(x) for x in v)
    if v == INF:
        return (1, 0)
    return (0, int(v))


def neighbours(t: tuple[int, ...], p: int) -> set[tuple[int, ...]]:
    """All tuples one transformation away from ``t``."""
    out = {op1(t)}
    for a in range(p):
        out.add(op2(t, a, p))
        out.add(op3(t, a, p))
    if len(t) > 3:
        out.add(op4(t, p))
    return out


def orbit(t: Sequence[int], p: int, cap: int = 100_000) -> set[tuple[int, ...]]:
    """Closure of ``t`` under all four transformations.

    Raises TupleError once more than ``cap`` tuples have been reached.
    """
    if cap <= 0:
        raise TupleError("cap must be positive")
    start = make_tuple(t, p)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for w in neighbours(u, p):
                if w not in seen:
                    seen.add(w)
                    if len(seen) > cap:
                        raise TupleError(f"orbit exceeds cap={cap}")
                    nxt.append(w)
        frontier = nxt
    return seen
