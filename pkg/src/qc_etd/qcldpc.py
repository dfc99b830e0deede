"""Transformed generator matrices built from QC(-LDPC) parity-check arrays.

Each transformed parity block B_t is systemized by Gaussian elimination with
pivots taken from the rightmost usable columns; the generator block D_t puts an
identity on the remaining (free) columns and P_t^T on the pivot columns, so it
has sigma_t = n - rank(B_t) rows. Rank-deficient arrays simply give blocks of
different heights.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .galois import FieldSpec
from .transform import (
    Circulant,
    CirculantArray,
    ConjugacyClasses,
    DiagonalBlockMatrix,
    Matrix,
    conjugacy_partition,
    conjugate_block,
    transform_array,
)


@dataclass
class SystemizedBlock:
    """Row-reduced B: pivot row b has a 1 at ``pivot_cols[b]`` and P[b] on ``free_cols``."""

    n: int
    pivot_cols: list[int]
    free_cols: list[int]
    P: Matrix
    reduced: Matrix = field(repr=False, default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)


@dataclass
class RankProfile:
    rho: list[int]
    n: int

    @property
    def sigma(self) -> list[int]:
        return [self.n - r for r in self.rho]

    @property
    def K(self) -> int:
        return sum(self.sigma)

    def to_dict(self) -> dict:
        return {"rho": self.rho, "sigma": self.sigma, "K": self.K, "n": self.n, "e": len(self.rho)}


def transform_parity(H: CirculantArray) -> DiagonalBlockMatrix:
    """Blocks B_t of H, indexed so that c H^T = 0 exactly when every
    transform-domain block c_t satisfies c_t B_t^T = 0.

    The plain transform would pair generator block t with parity block -t;
    transforming the transposed circulants lines the indices up.
    """
    return transform_array(H.transposed_circulants())


def systemize(f: FieldSpec, B: Matrix) -> SystemizedBlock:
    rows = [list(r) for r in B]
    n = len(rows[0]) if rows else 0
    m = len(rows)
    used = [False] * m
    pivot_of: dict[int, int] = {}
    for col in range(n - 1, -1, -1):
        r = next((i for i in range(m) if not used[i] and rows[i][col]), None)
        if r is None:
            continue
        inv = f.inv(rows[r][col])
        rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                g = rows[i][col]
                rows[i] = [x ^ f.mul(g, y) for x, y in zip(rows[i], rows[r])]
        used[r] = True
        pivot_of[col] = r
    pivot_cols = sorted(pivot_of)
    free_cols = [j for j in range(n) if j not in pivot_of]
    reduced = [rows[pivot_of[p]] for p in pivot_cols]
    P = [[row[j] for j in free_cols] for row in reduced]
    return SystemizedBlock(n, pivot_cols, free_cols, P, reduced)


def build_generator_block(sb: SystemizedBlock, n: int | None = None) -> tuple[Matrix, list[int]]:
    """D with identity on the free columns and P^T on the pivot columns; D B^T = 0."""
    n = sb.n if n is None else n
    D = []
    for a, fc in enumerate(sb.free_cols):
        row = [0] * n
        row[fc] = 1
        for b, pc in enumerate(sb.pivot_cols):
            row[pc] = sb.P[b][a]
        D.append(row)
    return D, list(sb.free_cols)


def block_product_is_zero(f: FieldSpec, D: Matrix, B: Matrix) -> bool:
    """D B^T == 0."""
    for d in D:
        for b in B:
            acc = 0
            for x, y in zip(d, b):
                acc ^= f.mul(x, y)
            if acc:
                return False
    return True


def build_transformed_generator(H: CirculantArray) -> tuple[DiagonalBlockMatrix, RankProfile, ConjugacyClasses]:
    """Generator blocks D_t from the parity blocks B_t.

    For binary H only class representatives are eliminated; conjugate blocks
    are entrywise Frobenius powers, checked against their own B and
    re-systemized on failure. Non-binary H has every block eliminated.
    """
    f, e, n = H.field, H.e, H.cols
    Bd = transform_parity(H)
    classes = conjugacy_partition(e, f)
    blocks: list[Matrix] = [[] for _ in range(e)]
    free: list[list[int]] = [[] for _ in range(e)]
    rho = [0] * e

    def solve(t: int) -> None:
        sb = systemize(f, Bd.blocks[t])
        blocks[t], free[t] = build_generator_block(sb, n)
        rho[t] = sb.rank

    if H.is_binary():
        for cls in classes:
            t0 = cls.rep
            solve(t0)
            for mu, t in enumerate(cls.members[1:], start=1):
                D = conjugate_block(f, blocks[t0], mu)
                if block_product_is_zero(f, D, Bd.blocks[t]):
                    blocks[t], free[t], rho[t] = D, list(free[t0]), rho[t0]
                else:
                    solve(t)
    else:
        for t in range(e):
            solve(t)
    Gd = DiagonalBlockMatrix(f, n, blocks, free)
    return Gd, RankProfile(rho, n), classes


# --- random instances -----------------------------------------------------

def random_circulant_array(f: FieldSpec, rows: int, cols: int, rng: np.random.Generator,
                           binary: bool = False, weight: int | None = None) -> CirculantArray:
    """Random generators; ``weight`` gives each binary circulant exactly that many ones."""
    e = f.e
    cells = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            if weight is not None:
                g = [0] * e
                for p in rng.choice(e, size=weight, replace=False):
                    g[int(p)] = 1
            else:
                hi = 2 if binary else f.q
                g = [int(x) for x in rng.integers(0, hi, size=e)]
            row.append(Circulant(tuple(g)))
        cells.append(row)
    return CirculantArray(f, e, cells)


def random_full_rank_code(f: FieldSpec, k: int, n: int, rng: np.random.Generator, binary: bool = False,
                          weight: int | None = None, aligned: bool = False, max_tries: int = 1000):
    """Random (n-k) x n parity array whose blocks all have rank n-k.

    ``aligned`` additionally requires the identity of every D_t on columns
    0..k-1, so that the circulant generator is [I | P] as an array.
    Returns (H, Gd, profile, classes).
    """
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    for _ in range(max_tries):
        H = random_circulant_array(f, n - k, n, rng, binary=binary, weight=weight)
        Gd, prof, classes = build_transformed_generator(H)
        if any(r != n - k for r in prof.rho):
            continue
        if aligned and any(fc != list(range(k)) for fc in Gd.free_cols):
            continue
        return H, Gd, prof, classes
    raise RuntimeError(f"no full-rank instance found in {max_tries} tries")
