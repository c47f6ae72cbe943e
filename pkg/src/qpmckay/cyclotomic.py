"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) modulo the
N-th cyclotomic polynomial, always at the minimal conductor, so equality and
hashing are plain tuple comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import DivisionByZero

__all__ = [
    "CycNum",
    "DivisionByZero",
    "root_of_unity",
    "arith",
    "invert",
    "cyc",
    "cyclotomic_poly",
    "totient",
]

Number = Union["CycNum", int, Fraction]


# ---------------------------------------------------------------------------
# polynomial helpers over Q (lists of Fractions, lowest degree first)


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, bc in enumerate(b):
            a[i + shift] -= f * bc
        a.pop()
    return _trim(q), a


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    p = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            p, r = _poly_divmod(p, [Fraction(c) for c in cyclotomic_poly(d)])
            assert not r
    return tuple(int(c) for c in p)


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _powers(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row k holds the coordinates of z^k (0 <= k < n) modulo Phi_n."""
    phi_poly = cyclotomic_poly(n)
    deg = len(phi_poly) - 1
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z and reduce by the monic Phi_n
        top = cur[-1]
        nxt = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(deg):
                nxt[i] -= top * phi_poly[i]
        cur = nxt
    return tuple(rows)


@lru_cache(maxsize=None)
def _sparse_powers(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    return tuple(tuple((t, int(e)) for t, e in enumerate(row) if e) for row in _powers(n))


def _common_den(xs: Sequence[Fraction]) -> int:
    d = 1
    for x in xs:
        q = x.denominator
        if q != 1:
            d = d * q // gcd(d, q)
    return d


def _normalize_conductor(n: int) -> int:
    return n // 2 if n % 4 == 2 else n


def _root_coords(n: int, k: int) -> tuple[int, tuple[Fraction, ...]]:
    """Coordinates of zeta_n^k in Q(zeta_n') with n' the normalized conductor."""
    k %= n
    g = gcd(n, k) if k else n
    n, k = n // g, (k // g) % (n // g)
    sign = 1
    if n % 4 == 2:
        m = n // 2
        # zeta_{2m} = -zeta_m^((m+1)/2) for odd m
        if k % 2:
            sign = -1
        k = (k * ((m + 1) // 2)) % m if m > 1 else 0
        n = m
    row = _powers(n)[k]
    if sign < 0:
        row = tuple(-c for c in row)
    return n, row


@lru_cache(maxsize=None)
def _embedding(m: int, n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Columns: images of the power basis of Q(zeta_m) inside Q(zeta_n), m | n."""
    step = n // m
    pw = _powers(n)
    return tuple(pw[(i * step) % n] for i in range(totient(m)))


def _embed(coeffs: Sequence[Fraction], m: int, n: int) -> list[Fraction]:
    if m == n:
        return list(coeffs)
    cols = _embedding(m, n)
    out = [Fraction(0)] * totient(n)
    for c, col in zip(coeffs, cols):
        if c:
            for j, e in enumerate(col):
                if e:
                    out[j] += c * e
    return out


@lru_cache(maxsize=None)
def _left_inverse(m: int, n: int):
    """Pivot rows and the inverse of the square submatrix of the embedding."""
    cols = _embedding(m, n)
    k = len(cols)
    rows_full = [[cols[j][i] for j in range(k)] for i in range(totient(n))]
    # choose k independent rows greedily
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for i, row in enumerate(rows_full):
        v = list(row)
        for b, piv in basis:
            if v[piv]:
                f = v[piv] / b[piv]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is not None:
            basis.append((v, piv))
            chosen.append(i)
            if len(chosen) == k:
                break
    sub = [list(rows_full[i]) for i in chosen]
    inv = _mat_inverse(sub)
    return tuple(chosen), inv


def _mat_inverse(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        f = aug[c][c]
        aug[c] = [x / f for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                g = aug[r][c]
                aug[r] = [x - g * y for x, y in zip(aug[r], aug[c])]
    return [r[n:] for r in aug]


def _restrict(coeffs: Sequence[Fraction], m: int, n: int):
    """Coordinates in Q(zeta_m) if the element lies there, else None."""
    chosen, inv = _left_inverse(m, n)
    rhs = [coeffs[i] for i in chosen]
    y = [sum((r * b for r, b in zip(row, rhs)), Fraction(0)) for row in inv]
    if _embed(y, m, n) == list(coeffs):
        return y
    return None


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _canonical(n: int, coeffs: list[Fraction]) -> tuple[int, tuple[Fraction, ...]]:
    if all(c == 0 for c in coeffs[1:]):
        return 1, (coeffs[0] if coeffs else Fraction(0),)
    changed = True
    while changed and n > 1:
        changed = False
        for p in _prime_factors(n):
            m = _normalize_conductor(n // p)
            if m == n or m == 1:
                # m == 1 is already covered by the rational fast path
                continue
            y = _restrict(coeffs, m, n)
            if y is not None:
                n, coeffs = m, y
                changed = True
                break
    return n, tuple(coeffs)


# ---------------------------------------------------------------------------


class CycNum:
    """An exact element of Q(zeta_N), stored at its minimal conductor."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, value: Number = 0):
        if isinstance(value, CycNum):
            self.conductor, self.coeffs = value.conductor, value.coeffs
        else:
            self.conductor, self.coeffs = 1, (Fraction(value),)
        self._hash = None

    @classmethod
    def from_coeffs(cls, n: int, coeffs: Iterable[Number]) -> "CycNum":
        """Build from power-basis coordinates in Q(zeta_n)."""
        coeffs = [Fraction(c) for c in coeffs]
        if n % 4 == 2:
            # re-express through zeta_n = -zeta_{n/2}^((n/2+1)/2)
            total = CycNum(0)
            for k, c in enumerate(coeffs):
                if c:
                    total = total + c * root_of_unity(n, k)
            return total
        if len(coeffs) != totient(n):
            raise ValueError(f"expected {totient(n)} coefficients for conductor {n}")
        return cls._make(n, coeffs)

    @classmethod
    def _make(cls, n: int, coeffs: list[Fraction]) -> "CycNum":
        obj = cls.__new__(cls)
        obj.conductor, obj.coeffs = _canonical(n, coeffs)
        obj._hash = None
        return obj

    # -- conversion ---------------------------------------------------------

    @staticmethod
    def coerce(x: Number) -> "CycNum":
        return x if isinstance(x, CycNum) else CycNum(x)

    def is_rational(self) -> bool:
        return self.conductor == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return self.conductor == 1 and self.coeffs[0] == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _lift(self, n: int) -> list[Fraction]:
        return _embed(self.coeffs, self.conductor, n)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Number) -> "CycNum":
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        o = CycNum.coerce(other)
        n = _lcm(self.conductor, o.conductor)
        a, b = self._lift(n), o._lift(n)
        return CycNum._make(n, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        obj = CycNum.__new__(CycNum)
        obj.conductor, obj.coeffs, obj._hash = self.conductor, tuple(-c for c in self.coeffs), None
        return obj

    def __sub__(self, other: Number) -> "CycNum":
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        return self + (-CycNum.coerce(other))

    def __rsub__(self, other: Number) -> "CycNum":
        return CycNum.coerce(other) - self

    def __mul__(self, other: Number) -> "CycNum":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return CycNum(0)
            obj = CycNum.__new__(CycNum)
            obj.conductor, obj._hash = self.conductor, None
            obj.coeffs = tuple(c * other for c in self.coeffs)
            return obj
        if not isinstance(other, CycNum):
            return NotImplemented
        if other.conductor == 1:
            return self * other.coeffs[0]
        if self.conductor == 1:
            return other * self.coeffs[0]
        n = _lcm(self.conductor, other.conductor)
        a, b = self._lift(n), other._lift(n)
        # integer numerators over a common denominator; convolve modulo
        # z^n - 1, then reduce each power once (Phi_n is monic over Z)
        da, db = _common_den(a), _common_den(b)
        ia = [x.numerator * (da // x.denominator) for x in a]
        ib = [y.numerator * (db // y.denominator) for y in b]
        conv = [0] * n
        for i, x in enumerate(ia):
            if x:
                for j, y in enumerate(ib):
                    if y:
                        conv[(i + j) % n] += x * y
        iacc = [0] * totient(n)
        for k, c in enumerate(conv):
            if c:
                for t, e in _sparse_powers(n)[k]:
                    iacc[t] += c * e
        den = da * db
        acc = [Fraction(x, den) for x in iacc]
        return CycNum._make(n, acc)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.conductor == 1:
            return CycNum(1 / self.coeffs[0])
        n = self.conductor
        # extended Euclid: find s with s*x + t*Phi_n = 1
        phi = [Fraction(c) for c in cyclotomic_poly(n)]
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant (Phi_n irreducible)
        c = r1[0]
        s = [x / c for x in s1]
        _, s = _poly_divmod(s, phi)
        s = s + [Fraction(0)] * (totient(n) - len(s))
        return CycNum._make(n, s)

    def __truediv__(self, other: Number) -> "CycNum":
        return self * CycNum.coerce(other).inverse()

    def __rtruediv__(self, other: Number) -> "CycNum":
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inverse() ** (-e)
        out, base = CycNum(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "CycNum":
        """Complex conjugate, the Galois automorphism z -> z^-1."""
        return self.galois(-1)

    def galois(self, j: int) -> "CycNum":
        """Apply the automorphism z -> z^j (j coprime to the conductor)."""
        n = self.conductor
        if n == 1:
            return self
        if gcd(j, n) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        pw = _powers(n)
        acc = [Fraction(0)] * totient(n)
        for i, c in enumerate(self.coeffs):
            if c:
                row = pw[(i * j) % n]
                for t, e in enumerate(row):
                    if e:
                        acc[t] += c * e
        return CycNum._make(n, acc)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.conductor == 1 and self.coeffs[0] == other
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            if self.conductor == 1:
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.conductor, self.coeffs))
        return self._hash

    def sort_key(self) -> tuple:
        return (self.conductor, self.coeffs)

    # -- display / serialization -------------------------------------------

    def __repr__(self) -> str:
        return f"CycNum({self})"

    def __str__(self) -> str:
        if self.conductor == 1:
            return _frac_str(self.coeffs[0])
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if k == 0 else (f"E({self.conductor})" if k == 1 else f"E({self.conductor})^{k}")
            if k == 0:
                term = _frac_str(c)
            elif c == 1:
                term = mono
            elif c == -1:
                term = "-" + mono
            else:
                term = f"{_frac_str(c)}*{mono}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def to_json(self) -> dict:
        return {
            "N": self.conductor,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CycNum":
        coeffs = [Fraction(int(p), int(q)) for p, q in obj["coeffs"]]
        return cls.from_coeffs(int(obj["N"]), coeffs)


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def root_of_unity(n: int, k: int) -> CycNum:
    """zeta_n^k with zeta_n = exp(2 pi i / n)."""
    if n < 1:
        raise ValueError("n must be positive")
    m, row = _root_coords(n, k)
    return CycNum._make(m, list(row))


def arith(x: Number, y: Number, op: str) -> CycNum:
    x, y = CycNum.coerce(x), CycNum.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def invert(x: Number) -> CycNum:
    return CycNum.coerce(x).inverse()


def cyc(x: Number) -> CycNum:
    return CycNum.coerce(x)
