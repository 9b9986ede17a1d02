from hypothesis import strategies as st

from gassmann.mat2 import Mat2
from gassmann.residue import Modulus

PRIMES = (3, 5, 7)

primes = st.sampled_from(PRIMES)


@st.composite
def moduli(draw, k=None):
    return Modulus(draw(primes), draw(st.sampled_from((1, 2))) if k is None else k)


@st.composite
def units(draw, modulus):
    return draw(st.sampled_from([u for u in range(1, modulus.m) if u % modulus.p]))


@st.composite
def invertible_matrices(draw, modulus=None):
    """W^s L D U: every invertible matrix over Z/p^kZ has this form."""
    modulus = modulus or draw(moduli())
    entry = st.integers(0, modulus.m - 1)
    lower = Mat2(1, 0, draw(entry), 1, modulus)
    diag = Mat2.diag(draw(units(modulus)), draw(units(modulus)), modulus)
    upper = Mat2(1, draw(entry), 0, 1, modulus)
    g = lower * diag * upper
    if draw(st.booleans()):
        g = Mat2(0, 1, 1, 0, modulus) * g
    return g


@st.composite
def matrices(draw, modulus=None, invertible=False):
    modulus = modulus or draw(moduli())
    if invertible:
        return draw(invertible_matrices(modulus))
    entry = st.integers(0, modulus.m - 1)
    return Mat2(draw(entry), draw(entry), draw(entry), draw(entry), modulus)
