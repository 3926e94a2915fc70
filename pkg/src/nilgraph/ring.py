"""Finite commutative rings Z_n and their direct products.

Elements are dense integer indices in ``[0, |R|)``; a product ring decodes an
index to its residue tuple in mixed radix with the first factor most
significant.  Only these constructors are supported, which keeps arithmetic
total and exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property

DEFAULT_MAX_ORDER = 4096


class RingSpecError(ValueError):
    """Base class for ring specification problems."""


class RingSyntaxError(RingSpecError):
    pass


class RingDomainError(RingSpecError):
    pass


class OrderCapExceeded(RingSpecError):
    pass


_FACTOR_RE = re.compile(r"z(\d+)")


@dataclass(frozen=True)
class RingSpec:
    factors: tuple[int, ...]

    def __post_init__(self):
        if not self.factors:
            raise RingDomainError("a ring needs at least one factor")
        for m in self.factors:
            if m < 2:
                raise RingDomainError(
                    f"modulus {m} is not allowed: the identity must be nonzero (modulus >= 2)"
                )

    @property
    def canonical_text(self) -> str:
        return "x".join(f"Z{m}" for m in self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def __str__(self):
        return self.canonical_text


def parse_ring_spec(text: str) -> RingSpec:
    """Parse ``Z12`` or ``Z4xZ9`` style text (case-insensitive, whitespace ignored)."""
    compact = re.sub(r"\s+", "", text).lower()
    if not compact:
        raise RingSyntaxError("empty ring spec")
    factors = []
    for token in compact.split("x"):
        match = _FACTOR_RE.fullmatch(token)
        if match is None:
            raise RingSyntaxError(f"malformed factor {token!r} in ring spec {text!r}")
        factors.append(int(match.group(1)))
    return RingSpec(tuple(factors))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (desk-scale inputs)."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def radical(n: int) -> int:
    return math.prod(factorize(n))


@dataclass(frozen=True, eq=False)
class FiniteRing:
    spec: RingSpec
    _weights: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        weights = []
        w = 1
        for m in reversed(self.spec.factors):
            weights.append(w)
            w *= m
        object.__setattr__(self, "_weights", tuple(reversed(weights)))

    @property
    def order(self) -> int:
        return self.spec.order

    @property
    def factors(self) -> tuple[int, ...]:
        return self.spec.factors

    @property
    def is_cyclic_spec(self) -> bool:
        """True for a single-factor spec ``Z<n>``."""
        return len(self.spec.factors) == 1

    @property
    def zero(self) -> int:
        return 0

    @cached_property
    def one(self) -> int:
        return self.encode((1,) * len(self.factors))

    def decode(self, x: int) -> tuple[int, ...]:
        return tuple((x // w) % m for w, m in zip(self._weights, self.factors))

    def encode(self, residues) -> int:
        return sum((r % m) * w for r, m, w in zip(residues, self.factors, self._weights))

    def label(self, x: int) -> str:
        if self.is_cyclic_spec:
            return str(x)
        return "(" + ",".join(map(str, self.decode(x))) + ")"

    def elements(self) -> range:
        return range(self.order)

    def add(self, x: int, y: int) -> int:
        if self.is_cyclic_spec:
            return (x + y) % self.order
        return self.encode(a + b for a, b in zip(self.decode(x), self.decode(y)))

    def neg(self, x: int) -> int:
        if self.is_cyclic_spec:
            return -x % self.order
        return self.encode(-a for a in self.decode(x))

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.is_cyclic_spec:
            return x * y % self.order
        return self.encode(a * b for a, b in zip(self.decode(x), self.decode(y)))

    def scalar(self, k: int, x: int | None = None) -> int:
        """``k·x`` (``k·1`` when x is omitted) for an integer k."""
        if x is None:
            return self.encode((k,) * len(self.factors))
        return self.encode(k * a for a in self.decode(x))

    def check_element(self, x: int) -> None:
        if not 0 <= x < self.order:
            raise IndexError(f"element index {x} outside [0, {self.order})")

    def __repr__(self):
        return f"FiniteRing({self.spec.canonical_text})"


def build_ring(spec: RingSpec | str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteRing:
    if isinstance(spec, str):
        spec = parse_ring_spec(spec)
    if spec.order > max_order:
        raise OrderCapExceeded(f"|R| = {spec.order} exceeds the configured cap {max_order}")
    return FiniteRing(spec)


def is_nilpotent(R: FiniteRing, x: int) -> bool:
    """Decide ``x^k = 0`` for some k by repeated squaring.

    The nilpotency index never exceeds |R|, and ``ceil(log2 |R|)`` squarings
    reach the power ``x^(2^ceil(log2 |R|))``.
    """
    R.check_element(x)
    y = x
    for _ in range(max(1, (R.order - 1).bit_length())):
        y = R.mul(y, y)
    return y == R.zero


@dataclass(frozen=True)
class NilData:
    nilpotent_ids: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.nilpotent_ids)

    @cached_property
    def as_set(self) -> frozenset[int]:
        return frozenset(self.nilpotent_ids)

    def __contains__(self, x):
        return x in self.as_set


def nil_set(R: FiniteRing) -> NilData:
    return NilData(tuple(x for x in R.elements() if is_nilpotent(R, x)))


def even_order_witness(R: FiniteRing, nil: NilData | None = None) -> int:
    """Return ``m·1`` where ``|R| = 2^k m`` with m odd.

    The element is non-nilpotent while its double is nilpotent; both facts
    are checked and a violation raises ``AssertionError``.
    """
    if R.order % 2:
        raise ValueError(f"|R| = {R.order} is odd; the witness needs even order")
    nil = nil or nil_set(R)
    m = R.order
    while m % 2 == 0:
        m //= 2
    x = R.scalar(m)
    if x in nil or R.add(x, x) not in nil:
        raise AssertionError(f"m·1 = {R.label(x)} fails the even-order witness property in {R!r}")
    return x


def odd_halving_check(R: FiniteRing, nil: NilData | None = None) -> tuple[bool, int | None]:
    """Check ``2x ∈ Nil ⟹ x ∈ Nil`` over every element.

    Returns ``(holds, counterexample)``; the counterexample is the smallest
    index violating the implication, or None.  On odd-order rings the
    implication always holds.
    """
    nil = nil or nil_set(R)
    for x in R.elements():
        if x not in nil and R.add(x, x) in nil:
            return False, x
    return True, None
