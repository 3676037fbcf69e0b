"""Addition/multiplication tables for the finite fields GF(q).

Prime fields use integer arithmetic mod p.  Extension fields GF(p^k) encode an
element as the integer whose base-p digits are its polynomial coefficients
(constant term least significant) and reduce products by a fixed irreducible
polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)

# q -> (p, monic irreducible of degree k as coefficients, constant term first)
IRREDUCIBLE = {
    4: (2, (1, 1, 1)),        # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),     # x^3 + x + 1
    16: (2, (1, 1, 0, 0, 1)),  # x^4 + x + 1
    9: (3, (1, 0, 1)),        # x^2 + 1
    27: (3, (1, 2, 0, 1)),    # x^3 + 2x + 1
    25: (5, (2, 1, 1)),       # x^2 + x + 2
}

SUPPORTED = tuple(sorted(PRIMES + tuple(IRREDUCIBLE)))


def is_supported(q: int) -> bool:
    return q in SUPPORTED


def _digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        a, d = divmod(a, p)
        out.append(d)
    return out


def _undigits(ds: list[int], p: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


def _poly_mulmod(a: list[int], b: list[int], poly: tuple[int, ...], p: int) -> list[int]:
    k = len(poly) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * poly[i]) % p
    return prod[:k]


@dataclass(frozen=True, eq=False)
class FieldTable:
    q: int
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)  # inv[0] is unused and set to 0

    def validate(self) -> None:
        """Exhaustive field-axiom check; raises ValueError on the first failure."""
        q, add, mul = self.q, self.add, self.mul
        e = np.arange(q)
        if not (np.array_equal(add[0], e) and np.array_equal(mul[1], e)):
            raise ValueError(f"GF({q}): identity elements broken")
        if not (np.array_equal(add, add.T) and np.array_equal(mul, mul.T)):
            raise ValueError(f"GF({q}): not commutative")
        for t in (add, mul):
            # (a.b).c == a.(b.c) for every triple
            if not np.array_equal(t[t[:, :, None], e[None, None, :]], t[e[:, None, None], t[None, :, :]]):
                raise ValueError(f"GF({q}): not associative")
        left = mul[e[:, None, None], add[None, :, :]]
        right = add[mul[:, :, None], mul[:, None, :]]
        if not np.array_equal(left, right):
            raise ValueError(f"GF({q}): not distributive")
        if not np.all(add[e, self.neg] == 0):
            raise ValueError(f"GF({q}): additive inverses broken")
        if not np.all(mul[e[1:], self.inv[1:]] == 1):
            raise ValueError(f"GF({q}): multiplicative inverses broken")


@lru_cache(maxsize=None)
def gf(q: int) -> FieldTable:
    """Return the (validated) field table for GF(q)."""
    if q in PRIMES:
        e = np.arange(q)
        add = (e[:, None] + e[None, :]) % q
        mul = (e[:, None] * e[None, :]) % q
    elif q in IRREDUCIBLE:
        p, poly = IRREDUCIBLE[q]
        k = len(poly) - 1
        ds = [_digits(a, p, k) for a in range(q)]
        add = np.array([[_undigits([(x + y) % p for x, y in zip(ds[a], ds[b])], p) for b in range(q)]
                        for a in range(q)])
        mul = np.array([[_undigits(_poly_mulmod(ds[a], ds[b], poly, p), p) for b in range(q)]
                        for a in range(q)])
    else:
        raise ValueError(f"GF({q}) is not supported; supported orders: {list(SUPPORTED)}")
    add = add.astype(np.int64)
    mul = mul.astype(np.int64)
    neg = np.argmin(add, axis=1)
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = np.argmax(mul[1:] == 1, axis=1)
    table = FieldTable(q, add, mul, neg, inv)
    table.validate()
    return table
