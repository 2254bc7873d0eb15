"""Reduce the integral 2.Co1 standard generators mod 2 and write MeatAxe files.

The 24-dimensional integral representation of 2.Co1 reduces mod 2 to the
Leech lattice mod 2, on which the centre acts trivially, so the images are
standard generators of Co1 over GF(2).

Usage: python oracles/make_co1_mod2.py [data_dir]
"""

import ast
import sys
from pathlib import Path

DATA = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "src/amalgamkit/data"


def integral_generators(text: str):
    body = text.split("result.generators:=", 1)[1].split("];\n\nreturn", 1)[0] + "]"
    return ast.literal_eval(body.replace("\\\n", "").replace("\n", ""))


def main():
    gens = integral_generators((DATA / "2Co1G1-Zr24aB0.g").read_text())
    for k, M in enumerate(gens, start=1):
        lines = [f"1 2 {len(M)} {len(M[0])}"] + ["".join(str(x % 2) for x in row) for row in M]
        (DATA / f"Co1G1-f2r24B0.m{k}").write_text("\n".join(lines) + "\n")
        print(f"wrote Co1G1-f2r24B0.m{k}")


if __name__ == "__main__":
    main()
