"""2x2 matrices over Z/p^kZ.

Matrices are value objects holding canonical integer entries. Hot loops work
on plain ``(a, b, c, d)`` tuples and on integer encodings

    code = ((a * m + b) * m + c) * m + d,    0 <= code < m**4

so that subgroup element sets are sets of ints. The ``*_array`` helpers do the
same arithmetic on numpy arrays for whole-group scans.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from gassmann.errors import BadParameter, BudgetExceeded, ModulusMismatch, NotInKernel, NotInvertible
from gassmann.residue import Modulus, Residue


# -- tuple kernels -----------------------------------------------------------

def mul_t(x, y, m):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % m, (a * f + b * h) % m, (c * e + d * g) % m, (c * f + d * h) % m)


def det_t(x, m):
    return (x[0] * x[3] - x[1] * x[2]) % m


def inv_t(x, m, p):
    det = det_t(x, m)
    if det % p == 0:
        raise NotInvertible(f"{x} has determinant {det}, not a unit mod {m}")
    u = pow(det, -1, m)
    a, b, c, d = x
    return ((d * u) % m, (-b * u) % m, (-c * u) % m, (a * u) % m)


def encode_t(x, m):
    return ((x[0] * m + x[1]) * m + x[2]) * m + x[3]


def decode_t(code, m):
    code, d = divmod(code, m)
    code, c = divmod(code, m)
    a, b = divmod(code, m)
    return (a, b, c, d)


def conj_t(x, g, m, p):
    """x g x^-1."""
    return mul_t(mul_t(x, g, m), inv_t(x, m, p), m)


# -- value type --------------------------------------------------------------

@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int
    modulus: Modulus

    def __post_init__(self):
        m = self.modulus.m
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, int(getattr(self, name)) % m)

    @classmethod
    def of(cls, rows, modulus: Modulus) -> Mat2:
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d), modulus)

    @classmethod
    def from_tuple(cls, x, modulus: Modulus) -> Mat2:
        return cls(x[0], x[1], x[2], x[3], modulus)

    @classmethod
    def identity(cls, modulus: Modulus) -> Mat2:
        return cls(1, 0, 0, 1, modulus)

    @classmethod
    def scalar(cls, w: int, modulus: Modulus) -> Mat2:
        return cls(w, 0, 0, w, modulus)

    @classmethod
    def diag(cls, w: int, z: int, modulus: Modulus) -> Mat2:
        return cls(w, 0, 0, z, modulus)

    @classmethod
    def decode(cls, code: int, modulus: Modulus) -> Mat2:
        if not 0 <= code < modulus.m**4:
            raise BadParameter(f"code {code} out of range for {modulus}")
        return cls.from_tuple(decode_t(code, modulus.m), modulus)

    @property
    def t(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def entries(self):
        return tuple(Residue(v, self.modulus) for v in self.t)

    def encode(self) -> int:
        return encode_t(self.t, self.modulus.m)

    def _check(self, other: Mat2):
        if not isinstance(other, Mat2):
            raise TypeError(f"expected Mat2, got {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ModulusMismatch(f"cannot combine {self.modulus} with {other.modulus}")

    def __mul__(self, other):
        if isinstance(other, (int, Residue)):
            return self.scale(int(other))
        self._check(other)
        return Mat2.from_tuple(mul_t(self.t, other.t, self.modulus.m), self.modulus)

    __matmul__ = __mul__

    def __rmul__(self, other):
        if isinstance(other, (int, Residue)):
            return self.scale(int(other))
        return NotImplemented

    def __add__(self, other):
        self._check(other)
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d, self.modulus)

    def __sub__(self, other):
        self._check(other)
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d, self.modulus)

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d, self.modulus)

    def scale(self, k: int) -> Mat2:
        return Mat2(self.a * k, self.b * k, self.c * k, self.d * k, self.modulus)

    def det(self) -> Residue:
        return Residue(det_t(self.t, self.modulus.m), self.modulus)

    def trace(self) -> Residue:
        return Residue(self.a + self.d, self.modulus)

    def is_invertible(self) -> bool:
        return gcd(det_t(self.t, self.modulus.m), self.modulus.p) == 1

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def is_diagonal(self) -> bool:
        return self.b == 0 and self.c == 0

    def is_identity(self) -> bool:
        return self.t == (1, 0, 0, 1)

    def inv(self) -> Mat2:
        return Mat2.from_tuple(inv_t(self.t, self.modulus.m, self.modulus.p), self.modulus)

    def __pow__(self, n: int) -> Mat2:
        return pow_(self, n)

    def conjugate_by(self, x: Mat2) -> Mat2:
        """x self x^-1."""
        self._check(x)
        return Mat2.from_tuple(conj_t(x.t, self.t, self.modulus.m, self.modulus.p), self.modulus)

    def reduce_mod_p(self) -> Mat2:
        return reduce_mod_p(self)

    def lift(self) -> Mat2:
        """Least-nonnegative lift of a matrix mod p to Z/p^2Z."""
        if self.modulus.k != 1:
            raise BadParameter("lift expects a matrix mod p")
        return Mat2(self.a, self.b, self.c, self.d, self.modulus.lifted())

    def in_kernel(self) -> bool:
        p = self.modulus.p
        return (
            self.modulus.k == 2
            and self.a % p == 1
            and self.b % p == 0
            and self.c % p == 0
            and self.d % p == 1
        )

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"

    def __repr__(self):
        return f"Mat2({self}, p={self.modulus.p}, k={self.modulus.k})"


@dataclass(frozen=True)
class PPart:
    """The matrix A mod p of a kernel element I + A p."""

    A: Mat2

    def __post_init__(self):
        if self.A.modulus.k != 1:
            raise BadParameter("a p-part lives mod p")

    def embed(self) -> Mat2:
        return embed(self)

    def __add__(self, other: PPart) -> PPart:
        return PPart(self.A + other.A)

    def code(self) -> int:
        """Base-p digits (a, b, c, d) of the p-part, in [0, p^4)."""
        p = self.A.modulus.p
        return ((self.A.a * p + self.A.b) * p + self.A.c) * p + self.A.d


def mul(g: Mat2, h: Mat2) -> Mat2:
    return g * h


def det(g: Mat2) -> Residue:
    return g.det()


def trace(g: Mat2) -> Residue:
    return g.trace()


def inv(g: Mat2) -> Mat2:
    return g.inv()


def reduce_mod_p(g: Mat2) -> Mat2:
    if g.modulus.k != 2:
        raise BadParameter("reduce_mod_p expects a matrix mod p^2")
    return Mat2(g.a, g.b, g.c, g.d, g.modulus.reduced())


def p_part(kappa: Mat2) -> PPart:
    if not kappa.in_kernel():
        raise NotInKernel(f"{kappa} is not congruent to I mod {kappa.modulus.p}")
    p = kappa.modulus.p
    small = kappa.modulus.reduced()
    return PPart(Mat2((kappa.a - 1) // p, kappa.b // p, kappa.c // p, (kappa.d - 1) // p, small))


def embed(A: PPart | Mat2) -> Mat2:
    """I + A p as a matrix mod p^2."""
    if isinstance(A, PPart):
        A = A.A
    p = A.modulus.p
    return Mat2(1 + A.a * p, A.b * p, A.c * p, 1 + A.d * p, A.modulus.lifted())


def pow_(g: Mat2, n: int) -> Mat2:
    """Square-and-multiply; negative n goes through the inverse."""
    if n < 0:
        g, n = g.inv(), -n
    m = g.modulus.m
    result = (1, 0, 0, 1)
    base = g.t
    while n:
        if n & 1:
            result = mul_t(result, base, m)
        base = mul_t(base, base, m)
        n >>= 1
    return Mat2.from_tuple(result, g.modulus)


def order(g: Mat2) -> int:
    """Multiplicative order of an invertible matrix."""
    if not g.is_invertible():
        raise NotInvertible(f"{g} is singular")
    m = g.modulus.m
    x, n = g.t, 1
    while x != (1, 0, 0, 1):
        x = mul_t(x, g.t, m)
        n += 1
    return n


def commutator(g: Mat2, h: Mat2) -> Mat2:
    return g * h * g.inv() * h.inv()


# -- numpy helpers -----------------------------------------------------------

def decode_array(codes, m):
    codes = np.asarray(codes, dtype=np.int64)
    d = codes % m
    rest = codes // m
    c = rest % m
    rest //= m
    b = rest % m
    a = rest // m
    return a, b, c, d


def encode_array(a, b, c, d, m):
    return ((a * m + b) * m + c) * m + d


def mul_arrays(x, y, m):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % m, (a * f + b * h) % m, (c * e + d * g) % m, (c * f + d * h) % m)


def conjugate_codes(x, codes, modulus: Modulus):
    """Codes of x h x^-1 for every code h in ``codes`` (x a single tuple)."""
    m = modulus.m
    xi = inv_t(x, m, modulus.p)
    h = decode_array(codes, m)
    left = mul_arrays(tuple(np.int64(v) for v in x), h, m)
    out = mul_arrays(left, tuple(np.int64(v) for v in xi), m)
    return encode_array(*out, m)


@dataclass(frozen=True, eq=False)
class Ambient:
    """Every element of GL_2(Z/p^kZ) as numpy entry arrays, with inverses."""

    modulus: Modulus
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    ia: np.ndarray
    ib: np.ndarray
    ic: np.ndarray
    id: np.ndarray
    codes: np.ndarray

    def __len__(self):
        return len(self.codes)

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def inverses(self):
        return (self.ia, self.ib, self.ic, self.id)

    def conjugates_of(self, h, start=0, stop=None):
        """Codes of g h g^-1 for g in a slice of the group, h a tuple."""
        m = self.modulus.m
        sl = slice(start, stop)
        g = (self.a[sl], self.b[sl], self.c[sl], self.d[sl])
        gi = (self.ia[sl], self.ib[sl], self.ic[sl], self.id[sl])
        hh = tuple(np.int64(v) for v in h)
        return encode_array(*mul_arrays(mul_arrays(g, hh, m), gi, m), m)

    def element(self, i) -> Mat2:
        return Mat2(int(self.a[i]), int(self.b[i]), int(self.c[i]), int(self.d[i]), self.modulus)


def _with_inverses(modulus: Modulus, a, b, c, d) -> Ambient:
    m = modulus.m
    det = (a * d - b * c) % m
    # det^-1 = det^(phi(m) - 1)
    u = np.ones_like(det)
    base = det.copy()
    e = modulus.unit_count - 1
    while e:
        if e & 1:
            u = (u * base) % m
        base = (base * base) % m
        e >>= 1
    return Ambient(
        modulus, a, b, c, d,
        (d * u) % m, (-b * u) % m, (-c * u) % m, (a * u) % m,
        encode_array(a, b, c, d, m),
    )


@lru_cache(maxsize=8)
def _build_ambient(modulus: Modulus) -> Ambient:
    m, p = modulus.m, modulus.p
    a, b, c, d = decode_array(np.arange(m**4, dtype=np.int64), m)
    keep = ((a * d - b * c) % m) % p != 0
    return _with_inverses(modulus, a[keep], b[keep], c[keep], d[keep])


@lru_cache(maxsize=8)
def lifted_ambient(p: int) -> Ambient:
    """GL_2(Z/pZ) with entries read in Z/p^2Z: one lift per residue class mod p.

    Conjugating a kernel element by any lift of x gives the same result, so
    these p^4-scale arrays replace the full group for kernel searches.
    """
    small = _build_ambient(Modulus(p, 1))
    return _with_inverses(Modulus(p, 2), small.a, small.b, small.c, small.d)


def gl2_order(modulus: Modulus) -> int:
    p, k = modulus.p, modulus.k
    return p ** (4 * (k - 1)) * (p * p - 1) * (p * p - p)


def ambient(modulus: Modulus, limit: int | None = None) -> Ambient:
    """All of GL_2(Z/p^kZ); refuses when the group is larger than ``limit``."""
    if limit is not None and gl2_order(modulus) > limit:
        raise BudgetExceeded(
            f"GL_2({modulus}) has {gl2_order(modulus)} elements, above the full-scan limit {limit}",
            {"group_order": gl2_order(modulus), "limit": limit},
        )
    return _build_ambient(modulus)


@lru_cache(maxsize=8)
def matrix_space(p: int):
    """Entry arrays (a, b, c, d) of all p^4 matrices mod p, in code order."""
    return decode_array(np.arange(p**4, dtype=np.int64), p)


def arrays_of(modulus: Modulus, codes) -> Ambient:
    """Entry arrays, with inverses, for an arbitrary set of invertible element codes."""
    a, b, c, d = decode_array(np.sort(np.asarray(list(codes), dtype=np.int64)), modulus.m)
    return _with_inverses(modulus, a, b, c, d)
