"""Construct standard generators of A7 as 4x4 matrices over GF(2).

A7 < A8 = GL(4,2).  We fix the permutations a = (1,2,3), b = (3,4,5,6,7) and
search GL(4,2) for matrices A, B such that a -> A, b -> B extends to an
isomorphism.  The test is brute force: the group generated by the pairs
(A acting on the 15 nonzero vectors, a) must have exactly 2520 elements, the
same as each projection.  Self-contained on purpose (no package imports).

Usage: python oracles/make_a7_f2r4.py [data_dir]
"""

import itertools
import sys
from pathlib import Path

DATA = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "src/amalgamkit/data"


def vec_mul(v, M):
    r = 0
    for i in range(4):
        if v >> i & 1:
            r ^= M[i]
    return r


def mat_mul(A, B):
    return tuple(vec_mul(row, B) for row in A)


IDENT = (1, 2, 4, 8)


def order(M):
    X, n = M, 1
    while X != IDENT:
        X, n = mat_mul(X, M), n + 1
    return n


def perm_of(M):
    return tuple(vec_mul(v, M) - 1 for v in range(1, 16))


def compose(p, q):  # p first
    return tuple(q[i] for i in p)


def closure(gens):
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


def perm_order(p):
    x, n = p, 1
    while x != tuple(range(len(p))):
        x, n = compose(x, p), n + 1
    return n


def main():
    gl = []
    for rows in itertools.product(range(1, 16), repeat=4):
        span = {0}
        for r in rows:
            span |= {s ^ r for s in span}
        if len(span) == 16:
            gl.append(rows)
    assert len(gl) == 20160
    a = (1, 2, 0, 3, 4, 5, 6)            # (1,2,3) on points 0..6
    b = (0, 1, 3, 4, 5, 6, 2)            # (3,4,5,6,7)
    target = {}
    for w in ["ab", "abb", "abab", "ababb", "aabb", "abaabb"]:
        p = tuple(range(7))
        for ch in w:
            p = compose(p, a if ch == "a" else b)
        target[w] = perm_order(p)
    threes = [M for M in gl if order(M) == 3]
    fives = [M for M in gl if order(M) == 5]
    B = fives[0]
    for A in threes:
        env = {"a": A, "b": B}
        ok = True
        for w, n in target.items():
            X = IDENT
            for ch in w:
                X = mat_mul(X, env[ch])
            if order(X) != n:
                ok = False
                break
        if not ok:
            continue
        diag = [perm_of(A) + tuple(15 + i for i in a), perm_of(B) + tuple(15 + i for i in b)]
        if len(closure(diag)) == 2520:
            break
    else:
        raise SystemExit("no isomorphic pair found")
    for k, M in enumerate((A, B), start=1):
        lines = ["1 2 4 4"] + ["".join(str(row >> j & 1) for j in range(4)) for row in M]
        (DATA / f"A7G1-f2r4B0.m{k}").write_text("\n".join(lines) + "\n")
        print(f"wrote A7G1-f2r4B0.m{k}")


if __name__ == "__main__":
    main()
