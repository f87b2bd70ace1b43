"""Small prime-power fields GF(p^m) by log/antilog tables."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# x^m = -(c_0 + c_1 x + ... + c_{m-1} x^{m-1}); checked primitive on construction
PRIMITIVE_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 3): (1, 0, 1),
    (3, 3): (1, 0, 2),
    (2, 6): (1, 0, 0, 0, 0, 1),
    (7, 3): (2, 1, 1),
    (3, 6): (2, 0, 0, 0, 0, 1),
    (11, 3): (3, 0, 1),
}


@dataclass(frozen=True)
class PrimeField:
    p: int
    m: int
    antilog: np.ndarray  # antilog[i] = coefficient vector of omega^i, shape (q-1, m)

    @property
    def size(self) -> int:
        return self.p**self.m


def build_field(p: int, m: int) -> PrimeField:
    """GF(p^m) from the bundled polynomial; raises if it is not primitive."""
    try:
        coeffs = np.array(PRIMITIVE_POLYNOMIALS[(p, m)], dtype=np.int64)
    except KeyError:
        raise ValueError(f"no bundled primitive polynomial for GF({p}^{m})") from None
    order = p**m - 1
    antilog = np.zeros((order, m), dtype=np.int64)
    cur = np.zeros(m, dtype=np.int64)
    cur[0] = 1
    one = cur.copy()
    for i in range(order):
        if i and np.array_equal(cur, one):
            raise ValueError(f"polynomial for GF({p}^{m}) is not primitive (order {i})")
        antilog[i] = cur
        top = cur[-1]
        cur = np.concatenate(([0], cur[:-1]))
        cur = (cur - top * coeffs) % p
    if not np.array_equal(cur, one):
        raise ValueError(f"polynomial for GF({p}^{m}) does not give a cyclic group")
    return PrimeField(p, m, antilog)


def prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


def singer_difference_set(q: int) -> list[int]:
    """Perfect difference set of size q+1 in Z_{q^2+q+1}: exponents of trace-zero elements."""
    p, e = prime_power(q)
    field = build_field(p, 3 * e)
    order = q**3 - 1
    n = q * q + q + 1
    idx = np.arange(order)
    trace = (
        field.antilog[idx] + field.antilog[(idx * q) % order] + field.antilog[(idx * q * q) % order]
    ) % p
    zero = np.flatnonzero(~trace.any(axis=1))
    ds = sorted({int(i % n) for i in zero})
    if len(ds) != q + 1:
        raise AssertionError(f"trace-zero set has size {len(ds)}, expected {q + 1}")
    return ds
