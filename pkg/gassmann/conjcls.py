"""Conjugacy-class invariants of GL_2(Z/p^kZ) and similarity classes of Mat_2(Z/pZ).

Write g = d I + beta p^l with l maximal (g scalar mod p^l). The data
(l, d, trace beta, det beta) label the class of g, where d is read in the
section K_l: K_0 = {0}, K_1 = {0, ..., p-1}, K_k = Z/p^kZ.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from sympy.ntheory import sqrt_mod

from gassmann.errors import BadParameter
from gassmann.mat2 import Mat2, decode_t, p_part
from gassmann.residue import Modulus, epsilon, is_square, Residue


class ClassInvariant(NamedTuple):
    l: int
    d: int
    tr: Optional[int] = None
    det: Optional[int] = None

    @property
    def is_scalar(self) -> bool:
        return self.tr is None

    def to_json(self):
        out = {"l": self.l, "d": self.d}
        if self.tr is not None:
            out["tr"] = self.tr
            out["det"] = self.det
        return out

    def __str__(self):
        if self.tr is None:
            return f"(l={self.l}, d={self.d})"
        return f"(l={self.l}, d={self.d}, tr={self.tr}, det={self.det})"


def invariant_t(x, p: int, k: int) -> ClassInvariant:
    """class_invariant on a raw entry tuple."""
    a, b, c, d = x
    m = p**k
    if b == 0 and c == 0 and a == d:
        return ClassInvariant(k, a)
    if k == 2 and b % p == 0 and c % p == 0 and (a - d) % p == 0:
        d0 = a % p
        ba, bb, bc, bd = ((a - d0) // p) % p, (b // p) % p, (c // p) % p, ((d - d0) // p) % p
        return ClassInvariant(1, d0, (ba + bd) % p, (ba * bd - bb * bc) % p)
    return ClassInvariant(0, 0, (a + d) % m, (a * d - b * c) % m)


def invariant_of_code(code: int, modulus: Modulus) -> ClassInvariant:
    return invariant_t(decode_t(code, modulus.m), modulus.p, modulus.k)


def class_invariant(g: Mat2) -> ClassInvariant:
    return invariant_t(g.t, g.modulus.p, g.modulus.k)


# -- similarity classes mod p ------------------------------------------------

KINDS = ("scalar", "jordan", "split", "nonsplit")


@dataclass(frozen=True, order=True)
class SimilarityRep:
    kind: str
    params: tuple

    def matrix(self, p: int) -> Mat2:
        modulus = Modulus(p, 1)
        if self.kind == "scalar":
            (w,) = self.params
            return Mat2(w, 0, 0, w, modulus)
        if self.kind == "jordan":
            (w,) = self.params
            return Mat2(w, 1, 0, w, modulus)
        if self.kind == "split":
            w, z = self.params
            return Mat2(w, 0, 0, z, modulus)
        w, y = self.params
        return Mat2(w, epsilon(p) * y, y, w, modulus)

    def to_json(self):
        names = {"scalar": ("w",), "jordan": ("w",), "split": ("w", "z"), "nonsplit": ("w", "y")}
        return {"kind": self.kind, **dict(zip(names[self.kind], self.params))}

    def __str__(self):
        return f"{self.kind}{self.params}"


def table1(p: int) -> list[SimilarityRep]:
    """Representatives of every similarity class of Mat_2(Z/pZ), in table order."""
    reps = [SimilarityRep("scalar", (w,)) for w in range(p)]
    reps += [SimilarityRep("jordan", (w,)) for w in range(p)]
    reps += [SimilarityRep("split", (w, z)) for w in range(p) for z in range(w + 1, p)]
    reps += [SimilarityRep("nonsplit", (w, y)) for w in range(p) for y in range(1, (p - 1) // 2 + 1)]
    return reps


def rep_from_trace_det(tr: int, det: int, p: int) -> SimilarityRep:
    """The nonscalar class with characteristic polynomial x^2 - tr x + det."""
    modulus = Modulus(p, 1)
    two_inv = pow(2, -1, p)
    disc = (tr * tr - 4 * det) % p
    if disc == 0:
        return SimilarityRep("jordan", ((tr * two_inv) % p,))
    if is_square(Residue(disc, modulus)):
        r = min(sqrt_mod(disc, p, all_roots=True))
        w, z = sorted((((tr - r) * two_inv) % p, ((tr + r) * two_inv) % p))
        return SimilarityRep("split", (w, z))
    w = (tr * two_inv) % p
    y_sq = ((w * w - det) * pow(epsilon(p), -1, p)) % p
    y = min(sqrt_mod(y_sq, p, all_roots=True))
    return SimilarityRep("nonsplit", (w, y))


def similarity_rep(A: Mat2) -> SimilarityRep:
    if A.modulus.k != 1:
        raise BadParameter("similarity_rep expects a matrix mod p")
    p = A.modulus.p
    if A.is_scalar():
        return SimilarityRep("scalar", (A.a,))
    return rep_from_trace_det((A.a + A.d) % p, (A.a * A.d - A.b * A.c) % p, p)


def kernel_conjugate(kappa1: Mat2, kappa2: Mat2) -> bool:
    """Kernel elements are conjugate iff their p-parts are similar mod p."""
    return similarity_rep(p_part(kappa1).A) == similarity_rep(p_part(kappa2).A)
