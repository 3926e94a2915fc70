import itertools

import pytest
from hypothesis import given, settings, strategies as st

from nilgraph.ring import (
    OrderCapExceeded,
    RingDomainError,
    RingSyntaxError,
    build_ring,
    even_order_witness,
    factorize,
    is_nilpotent,
    nil_set,
    odd_halving_check,
    parse_ring_spec,
    radical,
)

from conftest import ring_specs


def naive_nilpotent(R, x):
    y = x
    for _ in range(R.order):
        if y == 0:
            return True
        y = R.mul(y, x)
    return y == 0


@pytest.mark.parametrize("text,factors", [
    ("Z12", (12,)),
    ("Z4xZ9", (4, 9)),
    ("  z4 X z9 ", (4, 9)),
    ("Z9xZ2", (9, 2)),
])
def test_parse(text, factors):
    spec = parse_ring_spec(text)
    assert spec.factors == factors


def test_canonical_text():
    assert parse_ring_spec(" z4 x Z9").canonical_text == "Z4xZ9"


@pytest.mark.parametrize("bad", ["", "Z", "12", "Z4*Z9", "Z4xx Z9", "Y5", "Z-3", "Z4x"])
def test_parse_syntax_errors(bad):
    with pytest.raises(RingSyntaxError):
        parse_ring_spec(bad)


@pytest.mark.parametrize("bad", ["Z1", "Z0", "Z4xZ1"])
def test_parse_domain_errors(bad):
    with pytest.raises(RingDomainError):
        parse_ring_spec(bad)


def test_build_ring_basic_arithmetic():
    R = build_ring("Z12")
    assert R.order == 12
    assert R.add(3, 10) == 1
    P = build_ring("Z4xZ9")
    assert P.order == 36
    assert P.add(P.encode((3, 8)), P.encode((1, 1))) == P.encode((0, 0)) == 0


def test_identity_in_product():
    R = build_ring("Z2xZ9")
    assert R.decode(R.one) == (1, 1)
    assert all(R.mul(R.one, x) == x for x in R.elements())


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        build_ring("Z64xZ64", max_order=4096 - 1)


@given(ring_specs())
@settings(max_examples=60, deadline=None)
def test_ring_axioms_on_sampled_triples(text):
    R = build_ring(text)
    elems = list(R.elements())
    triples = [(a, b, c) for a in elems[::7] for b in elems[::5] for c in elems[::11]][:400]
    for a, b, c in triples:
        assert R.add(a, b) == R.add(b, a)
        assert R.mul(a, b) == R.mul(b, a)
        assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))
        assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
        assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    for a in elems:
        assert R.add(a, R.zero) == a
        assert R.mul(a, R.one) == a
        assert R.add(a, R.neg(a)) == R.zero
        assert R.encode(R.decode(a)) == a


def test_is_nilpotent_examples():
    R = build_ring("Z12")
    assert is_nilpotent(R, 6)
    assert not is_nilpotent(R, 2)
    Z72 = build_ring("Z72")
    assert is_nilpotent(Z72, 60)


def test_z72_nil_count_against_powering():
    R = build_ring("Z72")
    brute = [x for x in R.elements() if naive_nilpotent(R, x)]
    assert len(brute) == 12
    assert 60 % radical(72) == 0
    assert nil_set(R).nilpotent_ids == tuple(brute)


@pytest.mark.parametrize("text,nil", [("Z12", (0, 6)), ("Z18", (0, 6, 12)), ("Z7", (0,)), ("Z13", (0,))])
def test_nil_set_examples(text, nil):
    data = nil_set(build_ring(text))
    assert data.nilpotent_ids == nil
    assert data.t == len(nil)


def test_squaring_matches_radical_test_for_all_zn():
    for n in range(2, 301):
        R = build_ring(f"Z{n}")
        r = radical(n)
        assert all(is_nilpotent(R, x) == (x % r == 0) for x in R.elements()), n


@given(ring_specs(max_order=120))
@settings(max_examples=50, deadline=None)
def test_squaring_matches_naive_powering(text):
    R = build_ring(text)
    assert all(is_nilpotent(R, x) == naive_nilpotent(R, x) for x in R.elements())


@given(ring_specs(max_order=150))
@settings(max_examples=50, deadline=None)
def test_nil_is_an_ideal_dividing_the_order(text):
    R = build_ring(text)
    nil = nil_set(R)
    assert 0 in nil
    assert R.order % nil.t == 0
    for a, b in itertools.product(nil.nilpotent_ids, repeat=2):
        assert R.add(a, b) in nil
    for a in nil.nilpotent_ids:
        for r in R.elements():
            assert R.mul(a, r) in nil


@pytest.mark.parametrize("text,expected", [("Z12", (3,)), ("Z8", (1,)), ("Z2xZ9", (1, 0))])
def test_even_order_witness(text, expected):
    R = build_ring(text)
    x = even_order_witness(R)
    assert R.decode(x) == expected
    nil = nil_set(R)
    assert x not in nil and R.add(x, x) in nil


def test_even_order_witness_rejects_odd():
    with pytest.raises(ValueError):
        even_order_witness(build_ring("Z9"))


@given(ring_specs(max_order=200))
@settings(max_examples=80, deadline=None)
def test_halving_and_witness_by_parity(text):
    R = build_ring(text)
    holds, cex = odd_halving_check(R)
    if R.order % 2:
        assert holds and cex is None
    else:
        assert not holds
        nil = nil_set(R)
        assert cex not in nil and R.add(cex, cex) in nil
        even_order_witness(R)


@pytest.mark.parametrize("text", ["Z9", "Z15"])
def test_odd_halving_holds(text):
    assert odd_halving_check(build_ring(text)) == (True, None)


def test_odd_halving_counterexample_z12():
    assert odd_halving_check(build_ring("Z12")) == (False, 3)


@given(st.integers(2, 10**6))
def test_factorize_roundtrip(n):
    f = factorize(n)
    prod = 1
    for p, e in f.items():
        assert all(p % d for d in range(2, int(p**0.5) + 1))
        prod *= p**e
    assert prod == n
