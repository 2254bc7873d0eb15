"""Element surgery: the centralizing lift and vector-based order probes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .errors import BoundExceeded, EnablerFails, VerificationFails, ZeroVector
from .linalg import DenseMatrix


@dataclass(frozen=True)
class LiftSpec:
    """Lift ``x`` so that it maps ``i`` to ``i**k`` exactly.

    ``i`` must have odd order.  ``k = 1`` asks for an element centralizing ``i``;
    other values ask for one normalizing ``<i>`` with a prescribed action.
    """

    i: Any
    x: Any
    k: int = 1

    def __post_init__(self):
        n = self.i.order()
        if n == 1:
            raise ValueError("i must not be the identity")
        if n % 2 == 0:
            raise ValueError(f"i must have odd order, not {n}")


def lift_formula(spec: LiftSpec):
    """Return ``x' = i * x * (i^k * i^x)^3`` after checking it sends ``i`` to ``i^k``.

    The cube ``y = (i^k i^x)^3`` is required to conjugate ``i^x`` to ``i^k``;
    then ``x y`` maps ``i`` to ``i^k`` and the leading ``i`` keeps ``x'`` in the
    coset of ``x`` modulo the subgroup in which the surgery takes place.
    """
    i, x, k = spec.i, spec.x, spec.k
    ik = i ** k
    ix = x.inverse() * i * x
    y = (ik * ix) ** 3
    if y.inverse() * ix * y != ik:
        raise EnablerFails("(i^k i^x)^3 does not conjugate i^x to i^k")
    lifted = i * x * y
    if lifted.inverse() * i * lifted != ik:
        raise VerificationFails("lifted element does not send i to i^k")
    return lifted


def probable_order(M: DenseMatrix, v: int, bound: int = 10**6) -> int:
    """Least n >= 1 with v M^n = v.

    This is the order of M on the cyclic submodule generated by ``v``, hence a
    divisor of the order of M.
    """
    if v == 0:
        raise ZeroVector("probable_order needs a nonzero vector")
    w = M.vec_mul(v)
    n = 1
    while w != v:
        if n >= bound:
            raise BoundExceeded(f"no return to the start vector within {bound} steps")
        w = M.vec_mul(w)
        n += 1
    return n
