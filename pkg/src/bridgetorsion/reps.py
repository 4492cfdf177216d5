"""SL2(C) representation families of the two-bridge knot group.

Two families matter here: the discrete metabelian representatives rho_k
(one per character of the double branched cover) and the continuous Riley
family rho_{sqrt(s),u} that deforms them along the character variety.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRange, ZeroParameter
from .numerics import LaurentPoly, RingMatrix
from .precision import DOUBLE
from .words import GroupRingElement, Word


@dataclass(frozen=True)
class Rep2:
    """Pair of SL2 images for the generators x and y."""

    img_x: RingMatrix
    img_y: RingMatrix
    kind: str  # "metabelian" or "riley"
    params: tuple


@dataclass(frozen=True)
class MetabelianIndex:
    """Index data of the k-th metabelian class: u_k = -4 sin^2(k*pi/p)."""

    k: int
    p: int
    u_k: complex


def metabelian_u(p, k, prec=DOUBLE):
    """u_k = (e^{k pi i/p} - e^{-k pi i/p})^2 = -4 sin^2(k pi / p)."""
    s = prec.sin(k * prec.pi / p)
    return -4 * s * s


def metabelian_index(p, k, prec=DOUBLE):
    if not 1 <= k <= (p - 1) // 2:
        raise IndexOutOfRange(f"k = {k} outside 1..{(p - 1) // 2}")
    return MetabelianIndex(k, p, metabelian_u(p, k, prec))


def metabelian_rep(p, k, prec=DOUBLE):
    """The representative rho_k of the k-th irreducible metabelian class."""
    idx = metabelian_index(p, k, prec)
    i = prec.imag_unit
    zero = i * 0
    img_x = RingMatrix(2, (i, -i, zero, -i))
    img_y = RingMatrix(2, (i, zero, -i * idx.u_k, -i))
    return Rep2(img_x, img_y, "metabelian", (k, p))


def riley_rep(s, u, prec=DOUBLE, branch=1):
    """Riley's parametrized non-abelian pair; principal branch of sqrt(s).

    ``branch=-1`` flips the square root; every quantity of record downstream
    is branch-independent (verified by the invariant suite).
    """
    if s == 0:
        raise ZeroParameter("riley_rep needs s != 0")
    rs = prec.sqrt(s) * branch
    inv = 1 / rs
    zero = rs * 0
    img_x = RingMatrix(2, (rs, inv, zero, inv))
    img_y = RingMatrix(2, (rs, zero, -u * rs, inv))
    return Rep2(img_x, img_y, "riley", (s, u))


def word_product(img_x, img_y, w):
    """Product of generator images along a word; negative exponents use the
    adjugate, which is the inverse because the images have determinant one."""
    result = RingMatrix.identity_like(img_x.entries[0], img_x.n)
    images = {"x": img_x, "y": img_y}
    for g, e in w.letters:
        m = images[g] if e > 0 else images[g].adjugate()
        for _ in range(abs(e)):
            result = result * m
    return result


def evaluate_word(rep, w):
    """Image of a word under the representation; the empty word maps to 1."""
    return word_product(rep.img_x, rep.img_y, w)


def abelianization(w):
    """x, y -> t; returns the exponent of t, i.e. the total exponent sum."""
    return w.exponent_sum()


def phi_map(rep, element):
    """The evaluation Phi = alpha (x) rho on a group-ring element.

    Returns the 2x2 matrix over C[t, 1/t] given by
    sum_terms coeff * t^{alpha(word)} * rho(word).
    """
    if isinstance(element, Word):
        element = GroupRingElement.from_word(element)
    acc = [{} for _ in range(4)]
    for w, c in element.terms.items():
        a = abelianization(w)
        m = evaluate_word(rep, w)
        for pos in range(4):
            d = acc[pos]
            d[a] = d.get(a, 0) + c * m.entries[pos]
    return RingMatrix(2, tuple(LaurentPoly(d) for d in acc))
