#!/usr/bin/env python3
"""Regenerates the bundled OEIS b-file fixtures.

Each fixture is computed from the sequence's well-known closed form (the
formula stated on its OEIS page), so the offline verifier has reference
data without touching the network. Re-running the script is idempotent.
"""

import math
import pathlib

HERE = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = HERE / "fixtures"
TESTDATA = HERE / "tests" / "data"


def block_derangements(n: int, k: int) -> int:
    return sum(
        (-1) ** i * math.comb(n, i) * math.factorial(k) ** i * math.factorial((n - i) * k)
        for i in range(n + 1)
    )


SEQUENCES = {
    # a_number: (offset, count, formula)
    "A000027": (1, 50, lambda j: j),
    "A000079": (0, 50, lambda j: 2**j),
    "A000244": (0, 40, lambda j: 3**j),
    "A000290": (0, 50, lambda j: j**2),
    "A000578": (0, 50, lambda j: j**3),
    "A000583": (0, 50, lambda j: j**4),
    "A001477": (0, 50, lambda j: j),
    "A001563": (0, 25, lambda j: j * math.factorial(j)),
    "A001564": (0, 25, lambda j: math.factorial(j + 2) - 2 * math.factorial(j + 1) + math.factorial(j)),
    "A001565": (0, 25, lambda j: math.factorial(j + 3) - 3 * math.factorial(j + 2) + 3 * math.factorial(j + 1) - math.factorial(j)),
    "A002001": (0, 40, lambda j: 1 if j == 0 else 3 * 4 ** (j - 1)),
    "A002061": (0, 50, lambda j: j * j - j + 1),
    "A002063": (0, 40, lambda j: 9 * 4**j),
    "A002378": (0, 50, lambda j: j * (j + 1)),
    "A003946": (0, 40, lambda j: 1 if j == 0 else 4 * 3 ** (j - 1)),
    "A004171": (0, 40, lambda j: 2 ** (2 * j + 1)),
    "A005030": (0, 40, lambda j: 5 * 3**j),
    "A005032": (0, 40, lambda j: 7 * 3**j),
    "A005051": (0, 40, lambda j: 8 * 3**j),
    "A005563": (0, 50, lambda j: j * (j + 2)),
    "A007531": (0, 50, lambda j: j * (j - 1) * (j - 2)),
    "A008776": (0, 40, lambda j: 2 * 3**j),
    "A011379": (0, 50, lambda j: j * j * (j + 1)),
    "A027444": (0, 50, lambda j: j**3 + j**2 + j),
    "A045991": (0, 50, lambda j: j**3 - j**2),
    # injections [j] -> [2j] avoiding one point pair
    "A061079": (1, 25, lambda j: math.perm(2 * j, j) - math.perm(2 * j - 1, j - 1)),
}

# Synthetic reference used only by the unit tests to exercise the
# unbound-entry slice search: block derangements with 2-blocks.
TEST_SEQUENCES = {
    "A128805": (0, 13, lambda j: block_derangements(j, 2)),
}


def write_bfile(directory: pathlib.Path, a_number: str, offset: int, count: int, formula) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    lines = [f"{i} {formula(i)}" for i in range(offset, offset + count)]
    path = directory / f"b{a_number[1:]}.txt"
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path} ({count} terms)")


def main() -> None:
    for a_number, (offset, count, formula) in sorted(SEQUENCES.items()):
        write_bfile(FIXTURES, a_number, offset, count, formula)
    for a_number, (offset, count, formula) in sorted(TEST_SEQUENCES.items()):
        write_bfile(TESTDATA, a_number, offset, count, formula)


if __name__ == "__main__":
    main()
