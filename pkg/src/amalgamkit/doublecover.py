"""The double covers 2.S_n built from Clifford algebra matrices mod 17.

Jordan-Wigner products of Pauli matrices give ``2m+1`` pairwise anticommuting
involutions ``g_1..g_{2m+1}`` of size ``2^m``.  The adjacent transposition
``(j, j+1)`` lifts to ``(c g_j - c g_{j+1}) / sqrt 2`` where ``c = 1`` or
``c = sqrt(-1)``.  The two choices give the two isoclinism types: with ``c = 1``
the lifted transpositions are involutions, with ``c = sqrt(-1)`` they have
order 4.  Over GF(17) both square roots exist (6^2 = 2 and 4^2 = -1).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .actions import Perm, involutions_of_type

P = 17
SQRT2 = 6
SQRT_MINUS1 = 4


@dataclass(frozen=True, eq=False)
class ModPMatrix:
    """An invertible square matrix over GF(17), hashable by content."""

    a: np.ndarray

    def __post_init__(self):
        self.a.setflags(write=False)

    @cached_property
    def _key(self) -> bytes:
        return self.a.astype(np.uint8).tobytes()

    def __hash__(self):
        return hash(self._key)

    def __eq__(self, other):
        return isinstance(other, ModPMatrix) and self._key == other._key

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def __mul__(self, other: "ModPMatrix") -> "ModPMatrix":
        return ModPMatrix((self.a @ other.a) % P)

    def __neg__(self) -> "ModPMatrix":
        return ModPMatrix((-self.a) % P)

    def scale(self, c: int) -> "ModPMatrix":
        return ModPMatrix((self.a * c) % P)

    @classmethod
    def identity(cls, n: int) -> "ModPMatrix":
        return cls(np.eye(n, dtype=np.int64))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.a, np.eye(self.n, dtype=np.int64)))

    def inverse(self) -> "ModPMatrix":
        n = self.n
        aug = np.concatenate([self.a % P, np.eye(n, dtype=np.int64)], axis=1)
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r, col])
            aug[[col, piv]] = aug[[piv, col]]
            aug[col] = (aug[col] * pow(int(aug[col, col]), -1, P)) % P
            for r in range(n):
                if r != col and aug[r, col]:
                    aug[r] = (aug[r] - aug[r, col] * aug[col]) % P
        return ModPMatrix(aug[:, n:].copy())

    def __pow__(self, e: int) -> "ModPMatrix":
        base = self.inverse() if e < 0 else self
        e = abs(e)
        out = ModPMatrix.identity(self.n)
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def order(self, bound: int = 10_000) -> int:
        x = self
        for k in range(1, bound + 1):
            if x.is_identity():
                return k
            x = x * self
        raise ValueError("order exceeds bound")


def clifford_generators(count: int) -> list[np.ndarray]:
    """``count`` pairwise anticommuting involutions of size 2^ceil((count-1)/2)."""
    m = max(1, (count) // 2)
    X = np.array([[0, 1], [1, 0]], dtype=np.int64)
    Y = np.array([[0, -1], [1, 0]], dtype=np.int64)  # i*Pauli Y, squares to -1
    Z = np.array([[1, 0], [0, -1]], dtype=np.int64)
    I2 = np.eye(2, dtype=np.int64)

    def kron(ms):
        out = np.eye(1, dtype=np.int64)
        for mm in ms:
            out = np.kron(out, mm)
        return out

    gens = []
    for q in range(m):
        gens.append(kron([Z] * q + [X] + [I2] * (m - q - 1)))
        # Y here squares to -1; multiply by sqrt(-1) to get an involution
        gens.append(kron([Z] * q + [Y] + [I2] * (m - q - 1)) * SQRT_MINUS1)
    gens.append(kron([Z] * m))
    return [g % P for g in gens[:count]]


@dataclass
class DoubleCover:
    """A double cover of S_n with a chosen isoclinism type.

    ``transposition_order`` is 2 or 4: the order of the lifted transpositions.
    """

    n: int
    transposition_order: int

    def __post_init__(self):
        if self.transposition_order not in (2, 4):
            raise ValueError("lifted transpositions have order 2 or 4")
        g = clifford_generators(self.n)
        c = 1 if self.transposition_order == 2 else SQRT_MINUS1
        inv_sqrt2 = pow(SQRT2, -1, P)
        self.transpositions = [
            ModPMatrix(((g[j] - g[j + 1]) * c * inv_sqrt2) % P) for j in range(self.n - 1)
        ]
        self.dim = g[0].shape[0]
        self.central = ModPMatrix.identity(self.dim).scale(P - 1)

    def lift(self, perm: Perm) -> ModPMatrix:
        """One of the two preimages of ``perm``, via a bubble-sort factorization."""
        word = []
        arr = list(perm.images)
        # swapping entries j, j+1 of the image array multiplies by s_j on the left
        for end in range(len(arr) - 1, 0, -1):
            for j in range(end):
                if arr[j] > arr[j + 1]:
                    arr[j], arr[j + 1] = arr[j + 1], arr[j]
                    word.append(j)
        # so perm = s_{w_1} s_{w_2} ... s_{w_k}
        out = ModPMatrix.identity(self.dim)
        for j in word:
            out = out * self.transpositions[j]
        return out

    def elements(self) -> dict[ModPMatrix, Perm]:
        """All 2 n! elements with their images in S_n."""
        n = self.n
        swaps = [Perm.from_cycles(n, [(j, j + 1)]) for j in range(n - 1)]
        start = ModPMatrix.identity(self.dim)
        seen = {start: Perm.identity(n)}
        queue = deque([start])
        while queue:
            m = queue.popleft()
            p = seen[m]
            for t, s in zip(self.transpositions, swaps):
                mt = m * t
                if mt not in seen:
                    seen[mt] = p * s
                    queue.append(mt)
        return seen

    def preimages(self, perms, table=None) -> list[ModPMatrix]:
        table = table if table is not None else self.elements()
        wanted = set(perms)
        return [m for m, p in table.items() if p in wanted]


def choose_type_for_involution_class(n: int, cycle_type) -> DoubleCover:
    """The isoclinism type in which the given involution class lifts to involutions."""
    rep = involutions_of_type(n, cycle_type)[0]
    for t in (2, 4):
        cover = DoubleCover(n, t)
        if cover.lift(rep).order() == 2:
            return cover
    raise ValueError("no isoclinism type lifts this class to involutions")
