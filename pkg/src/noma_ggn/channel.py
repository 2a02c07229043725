"""Ordered Rayleigh fading: order-statistics density and sorted-gain sampling.

Users are ranked by channel gain, so the l-th user's envelope is the l-th
smallest of L i.i.d. Rayleigh draws with per-draw density w * exp(-w^2 / 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import DomainError

__all__ = ["OrderStatsTerm", "order_terms", "ordered_pdf", "sample_ordered_gains"]


@dataclass(frozen=True)
class OrderStatsTerm:
    """One term of the order-statistics expansion for user l of L.

    a_l = L! / [(l-1)! (L-l)!] is shared by all terms of a user; the i-th
    term carries exponent coefficient delta = L - l + 1 + i and sign (-1)^i
    (the sign is applied by the caller).
    """

    l: int
    i: int
    a_l: float
    delta: int


def _check_indices(L: int, l: int) -> None:
    if L < 1:
        raise DomainError(f"user count must be >= 1, got {L!r}")
    if not 1 <= l <= L:
        raise DomainError(f"user index must be in 1..{L}, got {l!r}")


def order_terms(L: int, l: int) -> list[OrderStatsTerm]:
    """The l expansion terms (i = 0 .. l-1) for the l-th of L ordered gains."""
    _check_indices(L, l)
    a_l = math.factorial(L) / (math.factorial(l - 1) * math.factorial(L - l))
    return [OrderStatsTerm(l=l, i=i, a_l=a_l, delta=L - l + 1 + i) for i in range(l)]


def ordered_pdf(L: int, l: int, w):
    """Density of the l-th smallest of L Rayleigh gains at w >= 0.

    Equals A_l * w * sum_i C(l-1, i) (-1)^i exp(-delta_{l,i} w^2 / 2);
    evaluated in the equivalent product form
    A_l * w * exp(-(L-l+1) w^2 / 2) * (1 - exp(-w^2 / 2))^(l-1),
    which stays accurate at small w where the alternating sum cancels.
    """
    _check_indices(L, l)
    w = np.asarray(w, dtype=float)
    a_l = math.factorial(L) / (math.factorial(l - 1) * math.factorial(L - l))
    half_w2 = 0.5 * w * w
    out = (
        a_l
        * w
        * np.exp(-(L - l + 1) * half_w2)
        * (-np.expm1(-half_w2)) ** (l - 1)
    )
    return out if out.ndim else float(out)


def sample_ordered_gains(L: int, rng: np.random.Generator, size=None):
    """Ascending vector(s) of L gains: draw L i.i.d. Rayleigh, sort.

    With size=None returns shape (L,); with integer size returns (size, L),
    rows sorted ascending.
    """
    _check_indices(L, 1)
    shape = (L,) if size is None else (size, L)
    draws = rng.rayleigh(scale=1.0, size=shape)
    return np.sort(draws, axis=-1)
