"""Closed forms for powers and conjugates of matrices mod p^2.

These are oracles for the tests and for the power-formula verification
suite; ``mat2.pow_`` stays the one authoritative power routine. Coefficients
w, z, x, y are units mod p standing for their Teichmuller lifts, and
A = (a, b, c, d) is a p-part read mod p.
"""
from __future__ import annotations

from math import comb

from gassmann.errors import BadParameter
from gassmann.mat2 import Mat2
from gassmann.residue import Modulus, teichmuller_value


def _plus_p(base, A, p) -> Mat2:
    m = p * p
    return Mat2(*((x + y * p) % m for x, y in zip(base, A)), Modulus(p, 2))


def _units(p, *values):
    for v in values:
        if v % p == 0:
            raise BadParameter(f"{v} is not a unit mod {p}")


def lifted(w: int, p: int) -> int:
    return teichmuller_value(w, p)


def scalar_element(w, A, p) -> Mat2:
    """wI + Ap."""
    wt = lifted(w, p)
    return _plus_p((wt, 0, 0, wt), A, p)


def scalar_power(w, A, n, p) -> Mat2:
    """(wI + Ap)^n = w^n I + n w^(n-1) A p."""
    _units(p, w)
    m = p * p
    wt = lifted(w, p)
    lead = pow(wt, n, m)
    coef = (n * pow(w, n - 1, p)) % p if n else 0
    return _plus_p((lead, 0, 0, lead), tuple((coef * x) % p for x in A), p)


def scalar_cycle(w, A, p) -> tuple[Mat2, Mat2]:
    """The (p-1)-th and p-th powers of wI + Ap: I - (1/w)Ap and wI."""
    _units(p, w)
    winv = pow(w, -1, p)
    wt = lifted(w, p)
    return _plus_p((1, 0, 0, 1), tuple((-winv * x) % p for x in A), p), _plus_p((wt, 0, 0, wt), (0, 0, 0, 0), p)


def diagonal_element(w, z, A, p) -> Mat2:
    """diag(w, z) + Ap."""
    return _plus_p((lifted(w, p), 0, 0, lifted(z, p)), A, p)


def diagonal_power(w, z, A, n, p) -> Mat2:
    """(diag(w, z) + Ap)^n for w != z mod p.

    The p-part is [[a n w^(n-1), b s], [c s, d n z^(n-1)]] with
    s = (w^n - z^n) / (w - z).
    """
    _units(p, w, z)
    if (w - z) % p == 0:
        raise BadParameter("diagonal_power needs w != z mod p")
    m = p * p
    a, b, c, d = A
    s = ((pow(w, n, p) - pow(z, n, p)) * pow(w - z, -1, p)) % p
    dw = (n * pow(w, n - 1, p)) % p if n else 0
    dz = (n * pow(z, n - 1, p)) % p if n else 0
    base = (pow(lifted(w, p), n, m), 0, 0, pow(lifted(z, p), n, m))
    return _plus_p(base, ((a * dw) % p, (b * s) % p, (c * s) % p, (d * dz) % p), p)


def diagonal_cycle(w, z, A, p) -> tuple[Mat2, Mat2]:
    """(p-1)-th power I + diag(-a/w, -d/z)p and p-th power diag(w, z) + [[0, b], [c, 0]]p."""
    _units(p, w, z)
    a, b, c, d = A
    first = _plus_p((1, 0, 0, 1), ((-a * pow(w, -1, p)) % p, 0, 0, (-d * pow(z, -1, p)) % p), p)
    second = _plus_p((lifted(w, p), 0, 0, lifted(z, p)), (0, b % p, c % p, 0), p)
    return first, second


def diagonal_conjugate(w, z, M, modulus: Modulus) -> Mat2:
    """diag(w, z) M diag(w, z)^-1 = [[a, b w/z], [c z/w, d]], over any Z/p^kZ."""
    mm = modulus.m
    a, b, c, d = M
    r = (w * pow(z, -1, mm)) % mm
    ri = (z * pow(w, -1, mm)) % mm
    return Mat2(a, b * r, c * ri, d, modulus)


def antidiagonal_conjugate(x, y, M, modulus: Modulus) -> Mat2:
    """[[0, x], [y, 0]] M [[0, x], [y, 0]]^-1 = [[d, c x/y], [b y/x, a]]."""
    mm = modulus.m
    a, b, c, d = M
    return Mat2(d, c * x * pow(y, -1, mm), b * y * pow(x, -1, mm), a, modulus)


T = (1, 1, 0, 1)


def unipotent_element(A, p) -> Mat2:
    """t + Ap with t = [[1, 1], [0, 1]]."""
    return _plus_p(T, A, p)


def unipotent_power(A, n, p) -> Mat2:
    """(t + Ap)^n for n >= 0.

    [[1, n], [0, 1]] + [[a n + c C(n,2), (a + d) C(n,2) + b n + c C(n,3)],
                        [c n, d n + c C(n,2)]] p
    """
    if n < 0:
        raise BadParameter("unipotent_power takes n >= 0")
    a, b, c, d = A
    n2, n3 = comb(n, 2), comb(n, 3)
    part = (a * n + c * n2, (a + d) * n2 + b * n + c * n3, c * n, d * n + c * n2)
    return _plus_p((1, n % (p * p), 0, 1), tuple(x % p for x in part), p)


def t_conjugate(M, modulus: Modulus) -> Mat2:
    """t M t^-1 = [[a + c, -a + b - c + d], [c, -c + d]]."""
    a, b, c, d = M
    return Mat2(a + c, -a + b - c + d, c, d - c, modulus)


def t_product(A, B, p) -> Mat2:
    """(t + Ap)(I + Bp) = t + [[a + al + ga, b + be + de], [c + ga, d + de]]p."""
    a, b, c, d = A
    al, be, ga, de = B
    return _plus_p(T, (a + al + ga, b + be + de, c + ga, d + de), p)
