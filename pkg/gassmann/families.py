"""Named subgroups of GL_2(Z/p^kZ) and the parameterized families and pairs
that the classification lists, each built from explicit generators."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from gassmann.errors import BadParameter, DegeneratePair
from gassmann.mat2 import Mat2, embed, order
from gassmann.residue import Modulus, epsilon, teichmuller_value, unit_generator
from gassmann.subgrp import Subgroup, closure, conjugate_subgroup, generating_set

logger = logging.getLogger(__name__)

NAMED = ("Z", "Cs", "Cns", "B", "NCs", "NCns", "SL2", "GL2", "KerPhi", "T")
TAU_KINDS = ("plain", "plus-scalar-p", "lower-1", "lower-eps")
K_KINDS = ("I", "lower")


def kern(p: int, a: int, b: int, c: int, d: int) -> Mat2:
    """I + [[a, b], [c, d]] p."""
    return embed(Mat2(a, b, c, d, Modulus(p, 1)))


def t_matrix(modulus: Modulus) -> Mat2:
    return Mat2(1, 1, 0, 1, modulus)


def swap_matrix(modulus: Modulus) -> Mat2:
    return Mat2(0, 1, 1, 0, modulus)


# -- named subgroups ---------------------------------------------------------

def _nonsplit_generator(modulus: Modulus) -> Mat2:
    """An element of C_ns(p^k) of order p^2 - 1."""
    p, k = modulus.p, modulus.k
    eps = epsilon(p)
    small = modulus.reduced()
    for w in range(p):
        for y in range(1, p):
            x = Mat2(w, eps * y, y, w, small)
            if x.is_invertible() and order(x) == p * p - 1:
                lifted = Mat2(w, eps * y, y, w, modulus)
                return lifted ** (p ** (k - 1))
    raise BadParameter(f"no generator of C_ns mod {p}")


def named_generators(name: str, modulus: Modulus) -> list[Mat2]:
    p, k = modulus.p, modulus.k
    r = unit_generator(p, k)
    eps = epsilon(p)
    split = [Mat2.diag(r, 1, modulus), Mat2.diag(1, r, modulus)]
    sl2 = [t_matrix(modulus), Mat2(1, 0, 1, 1, modulus)]

    if name == "Z":
        return [Mat2.scalar(r, modulus)]
    if name == "Cs":
        return split
    if name == "B":
        return split + [t_matrix(modulus)]
    if name == "NCs":
        return split + [swap_matrix(modulus)]
    if name in ("Cns", "NCns"):
        gens = [_nonsplit_generator(modulus)]
        if k == 2:
            gens += [kern(p, 1, 0, 0, 1), kern(p, 0, eps, 1, 0)]
        if name == "NCns":
            gens.append(Mat2.diag(1, -1, modulus))
        return gens
    if name == "SL2":
        return sl2
    if name == "GL2":
        return sl2 + [Mat2.diag(r, 1, modulus)]
    if name in ("KerPhi", "T"):
        if k != 2:
            raise BadParameter(f"{name} is a subgroup mod p^2")
        if name == "T":
            return [kern(p, 1, 0, 0, p - 1), kern(p, 0, 1, 0, 0), kern(p, 0, 0, 1, 0)]
        return [kern(p, 1, 0, 0, 0), kern(p, 0, 1, 0, 0), kern(p, 0, 0, 1, 0), kern(p, 0, 0, 0, 1)]
    raise BadParameter(f"unknown named subgroup {name!r}; expected one of {', '.join(NAMED)}")


@lru_cache(maxsize=64)
def named(name: str, p: int, k: int = 2) -> Subgroup:
    """Z, Cs, Cns, B, their normalizers, SL2, GL2, KerPhi or T over Z/p^kZ."""
    modulus = Modulus(p, k)
    H = closure(named_generators(name, modulus), modulus)
    logger.debug("built %s mod %d: order %d", name, modulus.m, H.order)
    return H


def named_order(name: str, p: int, k: int = 2) -> int:
    """Closed-form order of a named subgroup."""
    u = p ** (k - 1) * (p - 1)
    cns = (p * p - 1) * p ** (2 * (k - 1))
    sl2 = p ** (3 * (k - 1)) * p * (p * p - 1)
    return {
        "Z": u,
        "Cs": u * u,
        "Cns": cns,
        "B": u * u * p**k,
        "NCs": 2 * u * u,
        "NCns": 2 * cns,
        "SL2": sl2,
        "GL2": sl2 * u,
        "KerPhi": p**4,
        "T": p**3,
    }[name]


def preimage(Q: Subgroup) -> Subgroup:
    """phi^-1(Q) for Q a subgroup mod p."""
    if Q.modulus.k != 1:
        raise BadParameter("preimage takes a subgroup mod p")
    gens = [g.lift() for g in generating_set(Q)] + named_generators("KerPhi", Q.modulus.lifted())
    return closure(gens, Q.modulus.lifted())


# -- kernel families ---------------------------------------------------------

@dataclass(frozen=True, order=True)
class FamilyId:
    name: str
    params: tuple = field(default=())

    def __str__(self):
        if not self.params:
            return self.name
        args = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({args})"

    def param(self, key, default=None):
        return dict(self.params).get(key, default)

    def to_json(self):
        return {"name": self.name, **dict(self.params)}


def _half(p):
    return (p - 1) // 2


@dataclass(frozen=True)
class KernelFamily:
    name: str
    params: tuple
    parts: Callable  # (p, eps, **params) -> list of p-parts (a, b, c, d)
    domain: Callable  # (p) -> iterable of param dicts

    def check(self, p, values):
        allowed = list(self.domain(p))
        if values not in allowed:
            raise BadParameter(f"{self.name}: parameters {values} outside the allowed range at p={p}")


def _all(p):
    return range(p)


KERNEL_FAMILIES = {
    f.name: f
    for f in [
        KernelFamily("ker01.1", (), lambda p, e: [], lambda p: [{}]),
        KernelFamily("ker01.2", (), lambda p, e: [(0, 1, 0, 0)], lambda p: [{}]),
        KernelFamily("ker01.3", (), lambda p, e: [(1, 1, 0, 1)], lambda p: [{}]),
        KernelFamily("ker01.4", ("d",), lambda p, e, d: [(1, 0, 0, d)], lambda p: [{"d": d} for d in _all(p)]),
        KernelFamily("ker01.5", (), lambda p, e: [(0, e, 1, 0)], lambda p: [{}]),
        KernelFamily(
            "ker01.6", ("c",), lambda p, e, c: [(1, e * c, c, 1)],
            lambda p: [{"c": c} for c in range(1, _half(p) + 1)],
        ),
        KernelFamily("t2.h1", (), lambda p, e: [(1, 0, 0, -1), (0, 1, 0, 0)], lambda p: [{}]),
        KernelFamily("t2.h2", (), lambda p, e: [(1, 0, 0, -1), (0, 1, 1, 0)], lambda p: [{}]),
        KernelFamily("t2.h3", (), lambda p, e: [(1, 0, 0, -1), (0, e, 1, 0)], lambda p: [{}]),
        KernelFamily("t", (), lambda p, e: [(1, 0, 0, -1), (0, 1, 0, 0), (0, 0, 1, 0)], lambda p: [{}]),
        KernelFamily("ker2.h1", (), lambda p, e: [(0, 1, 0, 0), (0, 0, 1, 1)], lambda p: [{}]),
        KernelFamily("ker2.h2", (), lambda p, e: [(0, 1, 0, 0), (0, 0, 0, 1)], lambda p: [{}]),
        KernelFamily(
            "ker2.h3", ("d",), lambda p, e, d: [(0, 1, 0, 0), (1, 0, 0, d)],
            lambda p: [{"d": d} for d in _all(p) if d != p - 1],
        ),
        KernelFamily(
            "ker2.h4", ("c",), lambda p, e, c: [(1, 0, 0, -1), (0, 1, c, 1)],
            lambda p: [{"c": c} for c in _all(p)],
        ),
        KernelFamily("ker2.h5", (), lambda p, e: [(1, 0, 0, -1), (0, 0, 0, 1)], lambda p: [{}]),
        KernelFamily(
            "ker2.h6", ("a", "b"), lambda p, e, a, b: [(0, e, 1, 0), (1 + a, -e * b, b, 1 - a)],
            lambda p: [{"a": a, "b": b} for a in _all(p) for b in _all(p)],
        ),
        KernelFamily(
            "ker3.h1", (), lambda p, e: [(1, 0, 0, -1), (0, 1, 0, 0), (0, 0, 1, 1)], lambda p: [{}],
        ),
        KernelFamily(
            "ker3.h2", (), lambda p, e: [(1, 0, 0, -1), (0, 1, 0, 0), (0, 0, 0, 1)], lambda p: [{}],
        ),
        KernelFamily(
            "ker3.h3", ("c",), lambda p, e, c: [(1, 0, 0, -1), (0, 1, 1, 0), (0, 0, c, 1)],
            lambda p: [{"c": c} for c in range(0, _half(p) + 1)],
        ),
        KernelFamily(
            "ker3.h4", ("c",), lambda p, e, c: [(1, 0, 0, -1), (0, e, 1, 0), (0, 0, c, 1)],
            lambda p: [{"c": c} for c in range(0, _half(p) + 1)],
        ),
        KernelFamily(
            "kerphi", (), lambda p, e: [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], lambda p: [{}],
        ),
    ]
}


def kernel_family(name: str, p: int, **params) -> Subgroup:
    """A listed subgroup of ker(phi), built from its p-part generators."""
    try:
        family = KERNEL_FAMILIES[name.lower()]
    except KeyError:
        raise BadParameter(f"unknown kernel family {name!r}") from None
    values = {k: int(params[k]) % p for k in family.params if k in params}
    missing = [k for k in family.params if k not in values]
    if missing:
        raise BadParameter(f"{name} needs parameter(s) {', '.join(missing)}")
    family.check(p, values)
    eps = epsilon(p)
    gens = [kern(p, *(x % p for x in part)) for part in family.parts(p, eps, **values)]
    return closure(gens, Modulus(p, 2))


def kernel_catalog(p: int) -> Iterator[tuple[FamilyId, Subgroup]]:
    """Every listed kernel subgroup at every allowed parameter value."""
    for family in KERNEL_FAMILIES.values():
        for values in family.domain(p):
            fid = FamilyId(family.name, tuple(sorted(values.items())))
            yield fid, kernel_family(family.name, p, **values)


# -- pairs -------------------------------------------------------------------

def diagonal_swap(D: Subgroup) -> Subgroup:
    """[[0, 1], [1, 0]] D [[0, 1], [1, 0]]^-1."""
    for a, b, c, d in D.tuples():
        if b or c:
            raise BadParameter(f"diagonal_swap: [[{a},{b}],[{c},{d}]] is not diagonal")
    return conjugate_subgroup(D, swap_matrix(D.modulus))


def _swapped(D: Subgroup) -> Subgroup:
    Dp = diagonal_swap(D)
    if Dp == D:
        raise DegeneratePair("D equals its diagonal swap")
    return Dp


def _with(D: Subgroup, extra: list[Mat2]) -> Subgroup:
    gens = list(D.generators) if D.generators else generating_set(D)
    return closure(gens + extra, D.modulus)


def glp_pair(D: Subgroup) -> tuple[Subgroup, Subgroup]:
    """<D, t> and <D', t> in GL_2(Z/pZ)."""
    if D.modulus.k != 1:
        raise BadParameter("glp_pair takes D mod p")
    Dp = _swapped(D)
    t = t_matrix(D.modulus)
    return _with(D, [t]), _with(Dp, [t])


def cartan_pair(D: Subgroup) -> tuple[Subgroup, Subgroup]:
    """<D, I + E12 p> and <D', I + E12 p> in GL_2(Z/p^2Z)."""
    if D.modulus.k != 2:
        raise BadParameter("cartan_pair takes D mod p^2")
    Dp = _swapped(D)
    u = kern(D.modulus.p, 0, 1, 0, 0)
    return _with(D, [u]), _with(Dp, [u])


def tau_element(kind: str, a: int, modulus: Modulus) -> Mat2:
    p = modulus.p
    t = t_matrix(modulus)
    if kind == "plain":
        return t
    if kind == "plus-scalar-p":
        return t + Mat2(p, 0, 0, p, modulus)
    if kind == "lower-1":
        return t + Mat2(a * p, 0, p, a * p, modulus)
    if kind == "lower-eps":
        return t + Mat2(a * p, 0, epsilon(p) * p, a * p, modulus)
    raise BadParameter(f"unknown tau kind {kind!r}; expected one of {', '.join(TAU_KINDS)}")


def k_element(kind: str, modulus: Modulus) -> Mat2:
    if kind == "I":
        return Mat2.identity(modulus)
    if kind == "lower":
        return kern(modulus.p, 0, 0, 1, 0)
    raise BadParameter(f"unknown k kind {kind!r}; expected one of {', '.join(K_KINDS)}")


def borel_pair(tau_kind: str, a: int, k_kind: str, D: Subgroup) -> tuple[Subgroup, Subgroup]:
    """<tau, k, D> and <tau, k, D'> for p > 3."""
    modulus = D.modulus
    if modulus.k != 2:
        raise BadParameter("borel_pair takes D mod p^2")
    if modulus.p == 3:
        raise BadParameter("borel_pair is defined for p > 3; p = 3 pairs are found by search")
    Dp = _swapped(D)
    extra = [tau_element(tau_kind, a, modulus), k_element(k_kind, modulus)]
    return _with(D, extra), _with(Dp, extra)


def cyclic_diagonal(w: int, z: int, modulus: Modulus, teichmuller: bool = True) -> Subgroup:
    """<diag(w, z)>, with unit entries read through the Teichmuller lift when asked."""
    p = modulus.p
    if teichmuller and modulus.k == 2:
        w, z = teichmuller_value(w, p), teichmuller_value(z, p)
    return closure([Mat2.diag(w, z, modulus)], modulus)


SL2_P3_GENERATORS = (
    (((7, 6), (4, 4)), ((7, 4), (6, 4))),
    (((1, 1), (0, 1)), ((1, 0), (7, 1))),
    (((4, 1), (0, 1)), ((7, 0), (4, 1))),
    (((1, 1), (0, 1)), ((4, 0), (1, 1))),
    (((7, 6), (1, 7)), ((7, 4), (6, 4))),
    (((1, 6), (7, 7)), ((4, 7), (6, 4))),
)


def sl2_p3_list() -> list[Subgroup]:
    """The six subgroups mod 9 whose image mod 3 is SL_2(Z/3Z), up to conjugacy."""
    modulus = Modulus(3, 2)
    return [closure([Mat2.of(g, modulus) for g in pair], modulus) for pair in SL2_P3_GENERATORS]
