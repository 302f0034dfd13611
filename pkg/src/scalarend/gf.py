"""Arithmetic in GF(p^m) for small prime powers.

Elements are packed integers ``c0 + c1*p + ... + c_{m-1}*p^(m-1)`` holding the
coefficients of a residue polynomial modulo a fixed irreducible modulus.  All
array operations work elementwise on numpy integer arrays of such codes, which
is what the matrix layer uses.  :class:`FieldElem` wraps a single code for
scalar work.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import product

import numpy as np

MAX_ORDER = 1 << 16
_TABLE_LIMIT = 256

# Conway polynomials, coefficients in ascending degree.
CANONICAL_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo monic-or-not b over GF(p); ascending coefficients."""
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(coeffs, p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= deg/2."""
    coeffs = [c % p for c in coeffs]
    m = len(coeffs) - 1
    if m < 1 or coeffs[-1] == 0:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_rem(coeffs, list(low) + [1], p):
                return False
    return True


def first_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree m (low coefficients ascending)."""
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        if low[0] == 0:
            continue
        poly = tuple(low) + (1,)
        if is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


class FieldSpec:
    """GF(p^m) with an explicit modulus.  Immutable after construction."""

    def __init__(self, p: int, m: int, modulus):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if m < 1 or p**m > MAX_ORDER:
            raise FieldError(f"unsupported field size {p}^{m}")
        modulus = tuple(int(c) % p for c in modulus)
        if m == 1 and modulus == (0, 1):
            pass
        elif len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree m")
        elif not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p, self.m, self.modulus = p, m, modulus
        self.q = p**m
        self._build_tables()

    # -- construction ----------------------------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        da = [(a // p**i) % p for i in range(m)]
        db = [(b // p**i) % p for i in range(m)]
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                for i in range(m):
                    prod[k - m + i] = (prod[k - m + i] - c * self.modulus[i]) % p
        return sum(prod[i] * p**i for i in range(m))

    def _build_tables(self):
        q, p = self.q, self.p
        factors = _prime_factors(q - 1)
        gen = None
        for g in range(2 if q > 2 else 1, q):
            # order test by repeated squaring with _slow_mul
            def spow(x, e):
                r = 1
                while e:
                    if e & 1:
                        r = self._slow_mul(r, x)
                    x = self._slow_mul(x, x)
                    e >>= 1
                return r

            if all(spow(g, (q - 1) // r) != 1 for r in factors):
                gen = g
                break
        self.generator = gen
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        exp[q - 1 :] = exp[: q - 1]
        self._exp, self._log = exp, log
        self._pw = p ** np.arange(self.m, dtype=np.int64)
        if self.m > 1 and p != 2 and q <= _TABLE_LIMIT:
            d = (np.arange(q)[:, None] // self._pw) % p
            s = (d[:, None, :] + d[None, :, :]) % p
            self._add_tab = (s * self._pw).sum(-1)
            s = (d[:, None, :] - d[None, :, :]) % p
            self._sub_tab = (s * self._pw).sum(-1)
        if q <= _TABLE_LIMIT:
            a = np.arange(q)
            self._mul_tab = self._mul_log(a[:, None], a[None, :])
        inv = np.zeros(q, dtype=np.int64)
        nz = np.arange(1, q)
        inv[nz] = exp[(q - 1 - log[nz]) % (q - 1)]
        self._inv = inv
        if self.m > 1:
            self._neg = self.sub(np.zeros(q, dtype=np.int64), np.arange(q))

    # -- identity ---------------------------------------------------------

    def __repr__(self):
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.m, self.modulus) == (
            other.p,
            other.m,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def header(self) -> str:
        return "GF %d %d %s" % (self.p, self.m, " ".join(map(str, self.modulus)))

    @staticmethod
    def from_header(line: str) -> "FieldSpec":
        tok = line.split()
        if not tok or tok[0] != "GF":
            raise FieldError(f"bad field header: {line!r}")
        p, m = int(tok[1]), int(tok[2])
        return FieldSpec(p, m, [int(t) for t in tok[3:]])

    # -- elementwise array arithmetic --------------------------------------

    def _digits(self, a):
        return (np.asarray(a, dtype=np.int64)[..., None] // self._pw) % self.p

    def _mul_log(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def add(self, a, b):
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(np.asarray(a, dtype=np.int64), b)
        if self.q <= _TABLE_LIMIT:
            return self._add_tab[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]
        s = (self._digits(a) + self._digits(b)) % self.p
        return (s * self._pw).sum(-1)

    def sub(self, a, b):
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        if self.p == 2:
            return np.bitwise_xor(np.asarray(a, dtype=np.int64), b)
        if self.q <= _TABLE_LIMIT:
            return self._sub_tab[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]
        s = (self._digits(a) - self._digits(b)) % self.p
        return (s * self._pw).sum(-1)

    def neg(self, a):
        if self.m == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        if self.p == 2:
            return np.asarray(a, dtype=np.int64)
        return self._neg[np.asarray(a, dtype=np.int64)]

    def mul(self, a, b):
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        if self.q <= _TABLE_LIMIT:
            return self._mul_tab[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]
        return self._mul_log(a, b)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        q1 = self.q - 1
        if e == 0:
            return np.ones_like(a)
        r = self._exp[(self._log[a] * (e % q1)) % q1]
        if e < 0:
            if np.any(a == 0):
                raise ZeroDivisionError("negative power of zero")
            return r
        return np.where(a == 0, 0, r)

    def frobenius(self, a, k: int = 1):
        return self.pow(a, self.p**k)

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p)."""
        return n % self.p

    # -- matrix product ---------------------------------------------------

    def prepare(self, a) -> "Prepared":
        """Matrix with its base-p digit planes cached, for repeated products."""
        return Prepared(self, a)

    def _planes(self, a):
        if isinstance(a, Prepared):
            return a.planes
        a = np.asarray(a, dtype=np.int64)
        return [(a // self.p**i) % self.p for i in range(self.m)]

    def dot(self, a, b):
        """Matrix product of code arrays (either side may be :class:`Prepared`)."""
        p, m = self.p, self.m
        if m == 1:
            a = a.array if isinstance(a, Prepared) else np.asarray(a, dtype=np.int64)
            b = b.array if isinstance(b, Prepared) else np.asarray(b, dtype=np.int64)
            if a.shape[-1] * (p - 1) ** 2 < (1 << 62):
                return (a @ b) % p
            return ((a.astype(object) @ b.astype(object)) % p).astype(np.int64)
        da, db = self._planes(a), self._planes(b)
        shape = da[0].shape[:-1] + db[0].shape[1:]
        coeffs = [np.zeros(shape, dtype=np.int64) for _ in range(2 * m - 1)]
        for i in range(m):
            if not da[i].any():
                continue
            for j in range(m):
                coeffs[i + j] += da[i] @ db[j]
        coeffs = [c % p for c in coeffs]
        for k in range(2 * m - 2, m - 1, -1):
            c = coeffs[k]
            for i in range(m):
                if self.modulus[i]:
                    coeffs[k - m + i] = (coeffs[k - m + i] - c * self.modulus[i]) % p
        res = coeffs[0].copy()
        for i in range(1, m):
            res += coeffs[i] * p**i
        return res

    # -- scalars ----------------------------------------------------------

    def __call__(self, value: int) -> "FieldElem":
        return FieldElem(self, int(value))

    def elements(self) -> list["FieldElem"]:
        return [FieldElem(self, v) for v in range(self.q)]

    def gen_elem(self) -> "FieldElem":
        """Residue of x (or the integer 1 for a prime field)."""
        return FieldElem(self, self.p if self.m > 1 else 1 % self.p)


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldSpec:
    """Field GF(p^m) with the shipped canonical modulus."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1 or p**m > MAX_ORDER:
        raise FieldError(f"unsupported field size {p}^{m}")
    if m == 1:
        return FieldSpec(p, 1, (0, 1))
    mod = CANONICAL_MODULI.get((p, m)) or first_irreducible(p, m)
    return FieldSpec(p, m, mod)


def field_of_order(q: int) -> FieldSpec:
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1 or not is_prime(p):
        raise FieldError(f"{q} is not a prime power")
    return make_field(p, m)


class Prepared:
    __slots__ = ("array", "planes")

    def __init__(self, F: FieldSpec, a):
        self.array = np.asarray(a, dtype=np.int64)
        self.planes = None if F.m == 1 else [(self.array // F.p**i) % F.p for i in range(F.m)]

    @property
    def shape(self):
        return self.array.shape


@dataclass(frozen=True)
class FieldElem:
    field: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"code {self.value} out of range for GF({self.field.q})")

    def _check(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if other.field != self.field:
            raise FieldError("operands from different fields")
        return other.value

    def __add__(self, other):
        return FieldElem(self.field, int(self.field.add(self.value, self._check(other))))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, int(self.field.sub(self.value, self._check(other))))

    def __neg__(self):
        return FieldElem(self.field, int(self.field.neg(self.value)))

    def __mul__(self, other):
        return FieldElem(self.field, int(self.field.mul(self.value, self._check(other))))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElem(self.field, int(self.field.inv(self.value)))

    def __truediv__(self, other):
        return self * FieldElem(self.field, self._check(other)).inverse()

    def __pow__(self, e: int):
        return FieldElem(self.field, int(self.field.pow(self.value, e)))

    def coefficients(self) -> list[int]:
        p = self.field.p
        return [(self.value // p**i) % p for i in range(self.field.m)]

    @staticmethod
    def from_coefficients(field: FieldSpec, coeffs) -> "FieldElem":
        coeffs = list(coeffs) + [0] * (field.m - len(coeffs))
        return FieldElem(field, sum((c % field.p) * field.p**i for i, c in enumerate(coeffs[: field.m])))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.field.q})<{self.value}>"
