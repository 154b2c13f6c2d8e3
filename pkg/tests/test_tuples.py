import itertools

import pytest

from dehncolor import tuples
from dehncolor.tuples import (EPS, INF, MU, TAU, InvariantSpec, TupleError, eps, evaluate,
                              make_tuple, mu, mu_tau, op1, op2, op3, op4, orbit, parse_spec, tau)


def all_tuples(p, n):
    return itertools.product(range(p), repeat=n)


def admissible_taus(p):
    out = []
    for t in range(2, p + 1, 2):
        try:
            tuples.check_mu_tau(p, t)
        except TupleError:
            continue
        out.append(t)
    return out


class TestOps:
    def test_op1(self):
        assert op1((0, 1, 2, 3)) == (1, 2, 3, 0)
        assert op1((5, 5)) == (5, 5)
        assert op1((0, 1, 0, 2)) == (1, 0, 2, 0)

    def test_op2_identity_when_a_is_first_entry(self):
        assert op2((0, 1, 0, 1), 0, 3) == (0, 1, 0, 1)

    def test_op2_formula(self):
        # entry i >= 2 becomes a_i + (-1)^i (a_1 - a): shift -2 = +1 mod 3
        assert op2((0, 1, 0, 1), 2, 3) == (2, 2, 2, 2)
        assert op2((1, 0), 0, 2) == (0, 1)

    def test_op2_round_trip(self):
        for p in (3, 4):
            for t in all_tuples(p, 4):
                for a in range(p):
                    assert op2(op2(t, a, p), t[0], p) == t

    def test_op3(self):
        assert op3((0, 1, 0, 1), 0, 3) == (0, 2, 0, 2)
        assert op3((2, 2, 2, 2), 2, 5) == (2, 2, 2, 2)

    def test_op3_involution(self):
        for p in (3, 4):
            for t in all_tuples(p, 4):
                for a in range(p):
                    assert op3(op3(t, a, p), t[0], p) == t

    def test_op4(self):
        assert op4((0, 1, 2, 0), 3) == (0, 0, 2, 0)
        assert op4((4, 4, 4, 4), 7) == (4, 4, 4, 4)
        with pytest.raises(TupleError):
            op4((0, 1), 3)

    def test_op4_power_is_identity(self):
        for p in (2, 3, 6):
            for t in all_tuples(p, 4):
                u = t
                for _ in range(p):
                    u = op4(u, p)
                assert u == t

    def test_op1_power_is_identity(self):
        t = (1, 2, 3, 4, 5, 0)
        u = t
        for _ in range(len(t)):
            u = op1(u)
        assert u == t

    def test_ops_keep_length_and_range(self):
        p = 5
        for t in all_tuples(p, 4):
            for u in tuples.neighbours(t, p):
                assert len(u) == 4 and all(0 <= x < p for x in u)


class TestInvariants:
    def test_tau(self):
        assert tau((0, 1, 0, 1), 3) == 3
        assert tau((2, 2, 2, 2, 2, 2), 6) == 6
        assert tau((0, 1, 2, 3), 4) == 2

    def test_eps(self):
        assert eps((0, 2, 0, 2), 4) == 0
        assert eps((0, 1, 0, 1), 2) == 1
        assert eps((0, 1, 2, 0), 4) == INF
        with pytest.raises(TupleError):
            eps((0, 1), 3)

    def test_mu(self):
        assert mu((0, 0), 2) == 2
        assert mu((0, 1, 2, 3), 4) == -4
        assert mu((0, 1, 1, 0), 2) == 0
        with pytest.raises(TupleError):
            mu((0, 1), 5)

    def test_mu_tau(self):
        assert mu_tau((0, 2, 0, 2), 4, 2) == INF
        assert mu_tau((3, 3, 3, 3), 8, 2) == INF
        assert mu_tau((0, 0, 2, 2), 4, 2) == 0
        with pytest.raises(TupleError):
            mu_tau((0, 1), 3, 2)
        with pytest.raises(TupleError):
            mu_tau((0, 1), 6, 2)  # p/tau odd

    def test_mu_tau_against_direct_formula(self):
        # independent evaluation: shift, divide, count parities of cyclic sums
        p, t_ = 8, 2
        q = p // t_
        for t in all_tuples(p, 4):
            if tau(t, p) != t_:
                assert mu_tau(t, p, t_) == INF
                continue
            b = [((x - (t[0] if i % 2 == 0 else t[1])) % p) // t_ for i, x in enumerate(t)]
            sums = [(b[i] + b[(i + 1) % 4]) % q for i in range(4)]
            e = sum(1 for s in sums if s % 2 == 0)
            assert mu_tau(t, p, t_) == abs(e - (4 - e))

    def test_tau_divides_p(self):
        for p in (2, 3, 4, 6, 8):
            for t in all_tuples(p, 4):
                k = tau(t, p)
                assert k >= 1 and p % k == 0

    def test_eps_mu_relations(self):
        for p in (2, 4, 6):
            for n in (2, 4):
                for t in all_tuples(p, n):
                    e, m = eps(t, p), mu(t, p)
                    assert (e == 0) == (m == n)
                    assert (e == 1) == (m == -n)
                    assert m % 2 == n % 2
                    if tau(t, p) % 2 == 0:
                        assert e != INF

    def test_reversal_invariance(self):
        for p in (4, 6, 8):
            for t in all_tuples(p, 4):
                r = tuple(reversed(t))
                assert tau(t, p) == tau(r, p)
                assert eps(t, p) == eps(r, p)
                assert mu(t, p) == mu(r, p)
                for k in admissible_taus(p):
                    assert mu_tau(t, p, k) == mu_tau(r, p, k)


class TestSpec:
    def test_parse(self):
        assert parse_spec("tau") == TAU
        assert parse_spec("mutau:2") == InvariantSpec("mutau", tau=2)
        assert str(parse_spec("prod(tau, eps)")) == "prod(tau,eps)"
        for bad in ("", "foo", "prod()", "mutau", "prod(prod(tau))"):
            with pytest.raises(TupleError):
                parse_spec(bad)

    def test_evaluate(self):
        assert evaluate(TAU, (0, 1, 0, 1), 3) == 3
        assert evaluate(parse_spec("prod(tau,eps)"), (0, 2, 0, 2), 4) == (4, 0)
        with pytest.raises(TupleError):
            evaluate(parse_spec("mutau:2"), (0, 1), 3)
        with pytest.raises(TupleError):
            evaluate(EPS, (0, 1), 3)

    def test_format(self):
        assert tuples.format_value(INF) == "inf"
        assert tuples.json_value((4, INF)) == [4, "inf"]
        assert tuples.value_key(INF) > tuples.value_key(10**9)

    def test_make_tuple(self):
        assert make_tuple([4, -1], 3) == (1, 2)
        with pytest.raises(TupleError):
            make_tuple([1, 2, 3], 5)
        with pytest.raises(TupleError):
            make_tuple([1, 2], 1)


class TestOrbit:
    def test_small_orbit(self):
        assert orbit((0, 0), 2) == {(0, 0), (1, 1)}
        assert (0, 1) not in orbit((0, 0), 2)

    def test_reflexive(self):
        assert (1, 2, 0, 1) in orbit((1, 2, 0, 1), 3)

    def test_constant_pair_orbit(self):
        # contains every pair summing to 2c; size checked against union-find
        for p in (2, 3, 4, 5, 6):
            parent = {t: t for t in all_tuples(p, 2)}

            def find(x):
                while parent[x] != x:
                    x = parent[x]
                return x

            for t in list(parent):
                for u in tuples.neighbours(t, p):
                    parent[find(t)] = find(u)
            for c in range(p):
                got = orbit((c, c), p)
                assert {(x, (2 * c - x) % p) for x in range(p)} <= got
                root = find((c, c))
                assert len(got) == sum(1 for t in parent if find(t) == root)

    def test_cap(self):
        with pytest.raises(TupleError):
            orbit((0, 1, 2, 3), 5, cap=3)

    def test_invariants_constant_on_orbits(self):
        p = 4
        for t in all_tuples(p, 4):
            orb = orbit(t, p)
            assert len({tau(u, p) for u in orb}) == 1
            assert len({mu(u, p) for u in orb}) == 1


CASES = [(2, 2), (2, 4), (3, 2), (3, 4), (4, 4), (6, 2), (6, 4), (8, 4)]


@pytest.mark.parametrize("p,n", CASES)
def test_single_step_invariance(p, n):
    taus = admissible_taus(p) if p % 2 == 0 else []
    for t in all_tuples(p, n):
        base = (tau(t, p),)
        if p % 2 == 0:
            base += (eps(t, p), mu(t, p)) + tuple(mu_tau(t, p, k) for k in taus)
        for u in tuples.neighbours(t, p):
            val = (tau(u, p),)
            if p % 2 == 0:
                val += (eps(u, p), mu(u, p)) + tuple(mu_tau(u, p, k) for k in taus)
            assert val == base, (t, u)
