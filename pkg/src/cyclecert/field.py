"""Exact arithmetic in GF(p^e) for small prime powers.

Elements are encoded as integers in [0, q): the little-endian base-p digits
of the index are the coefficients of the representative polynomial, so
index 0 is the additive identity and index 1 the multiplicative identity.
The reduction modulus is the lexicographically smallest monic irreducible
polynomial of degree e (coefficients compared low-degree-first), which makes
element indices, and everything built on top of them, stable across runs
and machines.

Arithmetic is plain polynomial arithmetic; for q <= 256 the constructor
additionally precomputes multiplication and inverse tables, which changes
speed but never results.
"""

from __future__ import annotations

from typing import Optional, Sequence

_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for desk-scale p."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_trim(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: Sequence[int], mod: Sequence[int], p: int) -> tuple[int, ...]:
    # mod is monic, so no leading-coefficient inversion is needed
    r = list(a)
    dm = len(mod) - 1
    while len(r) - 1 >= dm and r:
        lead = r[-1]
        if lead:
            shift = len(r) - 1 - dm
            for i in range(dm + 1):
                r[shift + i] = (r[shift + i] - lead * mod[i]) % p
        r.pop()
    return _poly_trim(r)


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Exhaustive check: no monic divisor of degree 1..deg//2."""
    deg = len(poly) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for div in _monic_polys(p, d):
            if not _poly_mod(poly, div, p):
                return False
    return True


def _monic_polys(p: int, deg: int):
    """Monic degree-deg polynomials in low-degree-first lexicographic order."""
    for rank in range(p**deg):
        coeffs = []
        r = rank
        for _ in range(deg):
            coeffs.append(r % p)
            r //= p
        coeffs.append(1)
        yield tuple(coeffs)


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e over F_p."""
    for poly in _monic_polys(p, e):
        if _is_irreducible(poly, p):
            return poly
    raise RuntimeError(f"no irreducible polynomial of degree {e} over F_{p}")


class Field:
    """GF(p^e) with a canonical integer encoding of its q = p^e elements."""

    def __init__(self, p: int, e: int = 1, use_tables: bool = True):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError(f"extension degree must be >= 1, got {e}")
        q = p**e
        if q > 1 << 20:
            raise ValueError(f"field order {q} exceeds the exhaustive-enumeration range")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = smallest_irreducible(p, e)
        self._mul_table: Optional[list[list[int]]] = None
        self._inv_table: Optional[list[int]] = None
        if use_tables and q <= _TABLE_LIMIT:
            self._build_tables()

    # -- encoding -----------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Length-e coefficient vector (little-endian base-p digits of a)."""
        self._check(a)
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.e:
            raise ValueError("too many coefficients")
        a = 0
        for c in reversed(coeffs):
            a = a * self.p + c % self.p
        return a

    def elements(self) -> range:
        return range(self.q)

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element index of GF({self.q})")

    # -- arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.e):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.e):
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._mul_raw(a, b)

    def _mul_raw(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        prod = _poly_mul(self.coeffs(a), self.coeffs(b), self.p)
        return self.from_coeffs(_poly_mod(prod, self.modulus, self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self._inv_raw(a)

    def _inv_raw(self, a: int) -> int:
        # a^(q-2) = a^(-1) in the multiplicative group of order q-1
        return self.pow(a, self.q - 2) if self.q > 2 else a

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            raise ValueError("negative exponents are not supported")
        result = 1
        base = a
        while n:
            if n & 1:
                result = self._mul_raw(result, base) if self._mul_table is None else self._mul_table[result][base]
            base = self._mul_raw(base, base) if self._mul_table is None else self._mul_table[base][base]
            n >>= 1
        return result

    def _build_tables(self) -> None:
        q = self.q
        table = [[0] * q for _ in range(q)]
        for a in range(q):
            row = table[a]
            for b in range(a, q):
                v = self._mul_raw(a, b)
                row[b] = v
                table[b][a] = v
        self._mul_table = table
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self._inv_raw(a)
        self._inv_table = inv

    # -- misc ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"Field(p={self.p}, e={self.e}, modulus={list(self.modulus)})"


def solve2(
    field: Field,
    m00: int,
    m01: int,
    m10: int,
    m11: int,
    r0: int,
    r1: int,
) -> Optional[tuple[int, int]]:
    """Solve the 2x2 system [[m00,m01],[m10,m11]] (s,t) = (r0,r1) over GF(q).

    Returns the unique solution, or None when the matrix is singular
    (callers read that as parallel or skew geometry).
    """
    det = field.sub(field.mul(m00, m11), field.mul(m01, m10))
    if det == 0:
        return None
    dinv = field.inv(det)
    s = field.mul(dinv, field.sub(field.mul(r0, m11), field.mul(m01, r1)))
    t = field.mul(dinv, field.sub(field.mul(m00, r1), field.mul(r0, m10)))
    return s, t


def moment_row(field: Field, a: int, k: int) -> tuple[int, ...]:
    """(1, a, a^2, ..., a^(k-1)): the direction vector of parallel class a."""
    if k < 2:
        raise ValueError("moment rows need k >= 2")
    row = [1]
    for _ in range(k - 1):
        row.append(field.mul(row[-1], a))
    return tuple(row)


def rank(field: Field, rows: Sequence[Sequence[int]]) -> int:
    """Rank of a matrix over GF(q) by Gaussian elimination."""
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rk = 0
    for col in range(ncols):
        pivot = next((r for r in range(rk, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        pinv = field.inv(work[rk][col])
        for r in range(len(work)):
            if r != rk and work[r][col] != 0:
                factor = field.mul(work[r][col], pinv)
                work[r] = [
                    field.sub(x, field.mul(factor, y)) for x, y in zip(work[r], work[rk])
                ]
        rk += 1
        if rk == len(work):
            break
    return rk


def moment_directions_independent(field: Field, k: int) -> bool:
    """True iff every k-subset of moment-curve directions has full rank k."""
    from itertools import combinations

    if field.q < k:
        raise ValueError(f"need q >= k, got q={field.q}, k={k}")
    rows = [moment_row(field, a, k) for a in field.elements()]
    return all(rank(field, subset) == k for subset in combinations(rows, k))
