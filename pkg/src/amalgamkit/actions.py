"""Permutation groups and group actions.

Permutations act on the right: ``p(i)`` is the image of point ``i`` and the
product ``p * q`` applies ``p`` first.  Conjugation is ``g^h = h^-1 g h``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from collections import deque
from dataclasses import dataclass
from math import lcm, prod
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence

from .errors import (
    BadCycleType,
    DegreeMismatch,
    IndexOutOfRange,
    NotClosed,
    PermutationError,
    PointNotClosed,
)
from .fields import BinaryField
from .linalg import DenseMatrix, Subspace


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise PermutationError(f"not a permutation: {self.images}")

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> "Perm":
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls._trusted(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]], base: int = 0) -> "Perm":
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            cyc = [c - base for c in cyc]
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if a in seen or not 0 <= a < n:
                    raise PermutationError(f"bad cycle {cyc}")
                seen.add(a)
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        if len(other.images) != len(self.images):
            raise PermutationError("degree mismatch in product")
        return Perm._trusted(tuple(map(other.images.__getitem__, self.images)))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm._trusted(tuple(inv))

    def __pow__(self, n: int) -> "Perm":
        base = self.inverse() if n < 0 else self
        n = abs(n)
        result = Perm.identity(self.degree)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self, h: "Perm") -> "Perm":
        return h.inverse() * self * h

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.degree else 1

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def moved_point(self) -> int | None:
        return next((i for i, j in enumerate(self.images) if i != j), None)

    def digest(self) -> str:
        return hashlib.sha256((f"perm:{self.degree}:" + ",".join(map(str, self.images))).encode()).hexdigest()

    def __str__(self) -> str:
        cyc = [c for c in self.cycles() if len(c) > 1]
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


def disjoint_sum(perms: Sequence[Perm]) -> Perm:
    """Permutation acting as ``perms[0]`` on the first block, ``perms[1]`` on the next, and so on."""
    out: list[int] = []
    offset = 0
    for p in perms:
        out.extend(i + offset for i in p.images)
        offset += p.degree
    return Perm._trusted(tuple(out))


def restrict(p: Perm, start: int, stop: int) -> Perm:
    return Perm(tuple(p.images[i] - start for i in range(start, stop)))


# ---------------------------------------------------------------------------
# point sets

@dataclass(frozen=True)
class PointSet:
    """Canonically indexed, duplicate-free points (any hashable values)."""

    points: tuple[Hashable, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate points")
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int):
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def index(self, p) -> int:
        return self._index[p]

    def get(self, p) -> int | None:
        return self._index.get(p)


def normalize_projective(v: int, F: BinaryField, d: int) -> int:
    """Scale ``v`` so its first nonzero coordinate is 1."""
    for j in range(d):
        c = F.entry(v, j)
        if c:
            return v if c == 1 else F.scale_packed(v, F.inv(c), d)
    raise ValueError("zero vector has no projective point")


def projective_points(F: BinaryField, d: int) -> PointSet:
    """All 1-spaces of F^d as normalized packed vectors, in lexicographic coordinate order."""
    if d < 1:
        raise ValueError("dimension must be positive")
    pts = []
    for lead in range(d):
        # coordinates before ``lead`` are zero, coordinate ``lead`` is one
        for tail in itertools.product(F.elements(), repeat=d - lead - 1):
            coords = [0] * lead + [1] + list(tail)
            pts.append((tuple(coords), F.pack(coords)))
    pts.sort(key=lambda cp: cp[0])
    return PointSet(tuple(p for _, p in pts))


def action_on_points(gens: Sequence[DenseMatrix], pts: PointSet) -> list[Perm]:
    """The permutations the matrices induce on projective points."""
    out = []
    for M in gens:
        F, d = M.field, M.nrows
        img = []
        for p in pts:
            q = pts.get(normalize_projective(M.vec_mul(p), F, d))
            if q is None:
                raise PointNotClosed("image of a point lies outside the point set")
            img.append(q)
        out.append(Perm(tuple(img)))
    return out


# ---------------------------------------------------------------------------
# orbits

@dataclass(frozen=True)
class OrbitPartition:
    orbit_of: tuple[int, ...]
    representatives: tuple[int, ...]
    sizes: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.orbit_of)

    @property
    def sorted_sizes(self) -> list[int]:
        return sorted(self.sizes)

    def members(self, k: int) -> list[int]:
        return [i for i, o in enumerate(self.orbit_of) if o == k]

    def __len__(self) -> int:
        return len(self.sizes)


def orbits(gens: Sequence[Perm], degree: int | None = None) -> OrbitPartition:
    if degree is None:
        if not gens:
            raise ValueError("degree needed when there are no generators")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise DegreeMismatch("generators of different degrees")
    orbit_of = [-1] * degree
    reps, sizes = [], []
    images = [g.images for g in gens]
    for start in range(degree):
        if orbit_of[start] >= 0:
            continue
        k = len(reps)
        orbit_of[start] = k
        queue = deque([start])
        size = 0
        while queue:
            i = queue.popleft()
            size += 1
            for im in images:
                j = im[i]
                if orbit_of[j] < 0:
                    orbit_of[j] = k
                    queue.append(j)
        reps.append(start)
        sizes.append(size)
    return OrbitPartition(tuple(orbit_of), tuple(reps), tuple(sizes))


# ---------------------------------------------------------------------------
# Schreier-Sims

class _Level:
    """One level of a stabilizer chain, with its orbit stored as a Schreier tree."""

    def __init__(self, point: int, gens: list[Perm]):
        self.point = point
        self.gens = gens
        self.rebuild()

    def rebuild(self) -> None:
        parent: dict[int, tuple[int, int]] = {self.point: (-1, -1)}
        queue = deque([self.point])
        while queue:
            b = queue.popleft()
            for gi, g in enumerate(self.gens):
                c = g.images[b]
                if c not in parent:
                    parent[c] = (b, gi)
                    queue.append(c)
        self.parent = parent
        # coset representatives and their inverses, filled on demand
        self._reps: dict[int, Perm] = {}
        self._inv_reps: dict[int, Perm] = {}

    @property
    def orbit(self):
        return self.parent.keys()

    def __len__(self) -> int:
        return len(self.parent)

    def _rep(self, b: int, n: int) -> Perm:
        path = []
        while b not in self._reps and b != self.point:
            prev, gi = self.parent[b]
            path.append((b, gi))
            b = prev
        rep = self._reps.get(b) or Perm.identity(n)
        for c, gi in reversed(path):
            rep = rep * self.gens[gi]
            self._reps[c] = rep
        return rep

    def _inv_rep(self, b: int, n: int) -> Perm:
        inv = self._inv_reps.get(b)
        if inv is None:
            inv = self._rep(b, n).inverse()
            self._inv_reps[b] = inv
        return inv

    def strip(self, g: Perm) -> Perm:
        """Multiply ``g`` on the right by the inverse coset representative of its image of the point."""
        b = g.images[self.point]
        if b == self.point:
            return g
        return g * self._inv_rep(b, g.degree)

    def coset_rep(self, b: int, n: int) -> Perm:
        """An element mapping the level's point to ``b``."""
        return self._rep(b, n)


class BSGS:
    """Base and strong generating set of a permutation group."""

    def __init__(self, degree: int, levels: list[_Level]):
        self.degree = degree
        self.levels = levels

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    @property
    def strong_generators(self) -> list[Perm]:
        seen, out = set(), []
        for lv in self.levels:
            for g in lv.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    @property
    def generators(self) -> list[Perm]:
        return list(self.levels[0].gens) if self.levels else []

    def order(self) -> int:
        return prod(len(lv) for lv in self.levels)

    def orbit_sizes(self) -> list[int]:
        return [len(lv) for lv in self.levels]

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        """Strip ``g`` through levels ``start..``; returns (residue, level where it stopped)."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            if g.images[lv.point] not in lv.parent:
                return g, i
            g = lv.strip(g)
        return g, len(self.levels)

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            return False
        h, j = self.sift(g)
        return j == len(self.levels) and h.is_identity()

    def __contains__(self, g: Perm) -> bool:
        return self.contains(g)

    def elements(self) -> Iterator[Perm]:
        """Stream every group element as a product of coset representatives."""
        n = self.degree
        reps = [[lv.coset_rep(b, n) for b in lv.orbit] for lv in self.levels]

        def rec(i: int, acc: Perm) -> Iterator[Perm]:
            if i < 0:
                yield acc
                return
            for u in reps[i]:
                yield from rec(i - 1, acc * u)

        yield from rec(len(self.levels) - 1, Perm.identity(n))

    def verify(self) -> bool:
        """Every strong generator strips to the identity."""
        return all(self.contains(g) for g in self.strong_generators)


def schreier_sims(gens: Sequence[Perm], degree: int | None = None,
                  base_prefix: Sequence[int] = ()) -> BSGS:
    """Deterministic Schreier-Sims; the base starts with ``base_prefix``."""
    if degree is None:
        if not gens:
            raise ValueError("degree needed when there are no generators")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise DegreeMismatch("generators of different degrees")
    gens = [g for g in dict.fromkeys(gens) if not g.is_identity()]
    base = list(base_prefix)
    for g in gens:
        if all(g.images[b] == b for b in base):
            base.append(g.moved_point())
    levels = []
    for i, b in enumerate(base):
        fixing = [g for g in gens if all(g.images[c] == c for c in base[:i])]
        levels.append(_Level(b, fixing))
    bsgs = BSGS(degree, levels)

    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        added = False
        for beta in list(lv.orbit):
            u = lv.coset_rep(beta, degree)
            for s in lv.gens:
                h = lv.strip(u * s)
                if h.is_identity():
                    continue
                h, j = bsgs.sift(h, i + 1)
                if j < len(levels) or not h.is_identity():
                    if j == len(levels):
                        levels.append(_Level(h.moved_point(), []))
                    for lvl in range(i + 1, j + 1):
                        levels[lvl].gens.append(h)
                        levels[lvl].rebuild()
                    i = j
                    added = True
                    break
            if added:
                break
        if not added:
            i -= 1
    # drop trailing trivial levels introduced by base_prefix
    while len(levels) > len(base_prefix) and len(levels[-1]) == 1:
        levels.pop()
    return bsgs


def group_order(gens: Sequence[Perm], degree: int | None = None) -> int:
    return schreier_sims(gens, degree).order()


def stabilizer(g: BSGS, pt: int) -> tuple[list[Perm], int]:
    """Generators and order of the stabilizer of ``pt``."""
    if not 0 <= pt < g.degree:
        raise IndexOutOfRange(f"point {pt} outside 0..{g.degree - 1}")
    chain = schreier_sims(g.strong_generators, g.degree, base_prefix=(pt,))
    if not chain.levels:
        return [], 1
    rest = chain.levels[1:]
    gens = list(rest[0].gens) if rest else []
    return gens, prod(len(lv) for lv in rest)


def derived_subgroup(gens: Sequence[Perm], degree: int | None = None) -> BSGS:
    """Normal closure of the commutators of the generators."""
    degree = degree or gens[0].degree
    comms = []
    for a, b in itertools.combinations(gens, 2):
        c = a.inverse() * b.inverse() * a * b
        if not c.is_identity():
            comms.append(c)
    current = schreier_sims(comms, degree)
    changed = True
    while changed:
        changed = False
        for n in list(current.strong_generators):
            for g in gens:
                c = n.conj(g)
                if not current.contains(c):
                    current = schreier_sims(current.strong_generators + [c], degree)
                    changed = True
    return current


def is_perfect(gens: Sequence[Perm], degree: int | None = None) -> bool:
    degree = degree or gens[0].degree
    return derived_subgroup(gens, degree).order() == group_order(gens, degree)


# ---------------------------------------------------------------------------
# involutions and conjugation orbits

def involutions_of_type(n: int, cycle_type: Sequence[int]) -> PointSet:
    """All permutations of ``n`` points with the given cycle type (parts 1 and 2 only)."""
    parts = list(cycle_type)
    if any(p not in (1, 2) for p in parts) or sum(parts) != n:
        raise BadCycleType(f"{cycle_type} is not an involution cycle type on {n} points")
    k = parts.count(2)
    found = []

    def rec(free: list[int], pairs: list[tuple[int, int]]):
        if len(pairs) == k:
            found.append(Perm.from_cycles(n, pairs))
            return
        if len(free) < 2 * (k - len(pairs)):
            return
        a = free[0]
        # either a is fixed, or a pairs with a later point
        for j in range(1, len(free)):
            rec(free[1:j] + free[j + 1:], pairs + [(a, free[j])])
        if len(free) - 1 >= 2 * (k - len(pairs)):
            rec(free[1:], pairs)

    rec(list(range(n)), [])
    return PointSet(tuple(sorted(found, key=lambda p: p.images)))


@dataclass(frozen=True)
class ConjugationOrbits:
    """Orbits of a group acting by conjugation, with words reaching every point.

    ``words[i]`` is a sequence of actor indices ``(a_1, ..., a_m)`` such that
    conjugating the representative of point i's orbit by
    ``actors[a_1] * ... * actors[a_m]`` gives point i.
    """

    partition: OrbitPartition
    words: tuple[tuple[int, ...], ...]

    def to_json(self, points_repr: Callable[[Any], Any] = str) -> dict:
        p = self.partition
        return {
            "orbit_sizes": list(p.sizes),
            "representatives": list(p.representatives),
            "conjugator_words": [list(self.words[i]) for i in range(p.degree)],
        }


def conj_orbits(targets: PointSet, actors: Sequence[Any]) -> ConjugationOrbits:
    """Orbits of ``actors`` acting on ``targets`` by conjugation ``t -> a^-1 t a``."""
    n = len(targets)
    inverses = [a.inverse() for a in actors]
    orbit_of = [-1] * n
    words: list[tuple[int, ...] | None] = [None] * n
    reps, sizes = [], []
    for start in range(n):
        if orbit_of[start] >= 0:
            continue
        k = len(reps)
        orbit_of[start] = k
        words[start] = ()
        queue = deque([start])
        size = 0
        while queue:
            i = queue.popleft()
            size += 1
            t = targets[i]
            for ai, (a, ainv) in enumerate(zip(actors, inverses)):
                j = targets.get(ainv * t * a)
                if j is None:
                    raise NotClosed(f"conjugation by actor {ai} leaves the target set")
                if orbit_of[j] < 0:
                    orbit_of[j] = k
                    words[j] = words[i] + (ai,)
                    queue.append(j)
        reps.append(start)
        sizes.append(size)
    return ConjugationOrbits(OrbitPartition(tuple(orbit_of), tuple(reps), tuple(sizes)),
                             tuple(words))


def orbit_report_json(partition: OrbitPartition, words=None, **extra) -> str:
    doc = {"orbit_sizes": sorted(partition.sizes),
           "representatives": list(partition.representatives)}
    if words is not None:
        doc["conjugator_words"] = [list(w) for w in words]
    doc.update(extra)
    return json.dumps(doc, sort_keys=True)


# ---------------------------------------------------------------------------
# small named groups on 7 points

FANO_LINES = tuple(frozenset({i % 7, (i + 1) % 7, (i + 3) % 7}) for i in range(7))


def fano_automorphisms(lines: Iterable[frozenset] = FANO_LINES) -> list[Perm]:
    """Every permutation of 0..6 preserving the given line set (168 for a Fano plane)."""
    lines = frozenset(lines)
    out = []
    for img in itertools.permutations(range(7)):
        if all(frozenset(img[x] for x in ln) in lines for ln in lines):
            out.append(Perm(img))
    return out


def fano_psl32_generators() -> list[Perm]:
    """Generators of the PSL(3,2) preserving the lines {i, i+1, i+3} mod 7."""
    shift = Perm(tuple((i + 1) % 7 for i in range(7)))
    double = Perm(tuple((2 * i) % 7 for i in range(7)))
    inv = next(p for p in fano_automorphisms() if p.order() == 2)
    return [shift, double, inv]


def act_on_line_systems(perm: Perm, system: frozenset) -> frozenset:
    return frozenset(frozenset(perm(x) for x in ln) for ln in system)


def vector_orbit_perms(gens: Sequence[DenseMatrix]) -> list[Perm]:
    """Faithful permutation images of a matrix group.

    Orbits of standard basis vectors are added until their union spans the
    space; the group acts faithfully on any spanning invariant set.
    """
    F, n = gens[0].field, gens[0].nrows
    points: list[int] = []
    index: dict[int, int] = {}
    span = Subspace(F, n, (), ())
    for j in range(n):
        e = 1 << (F.degree * j)
        if e in index:
            continue
        queue = deque([e])
        index[e] = len(points)
        points.append(e)
        start = len(points) - 1
        while queue:
            v = queue.popleft()
            for M in gens:
                w = M.vec_mul(v)
                if w not in index:
                    index[w] = len(points)
                    points.append(w)
                    queue.append(w)
        span = Subspace.span(F, n, span.basis + tuple(points[start:]))
        if span.dim == n:
            break
    return [Perm(tuple(index[M.vec_mul(v)] for v in points)) for M in gens]
