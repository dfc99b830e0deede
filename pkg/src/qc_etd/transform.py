"""Galois Fourier transform of e-tuples and of circulant arrays.

An array of e x e circulants transforms into e diagonal blocks D_0..D_{e-1};
entry (i, j) of D_t is the t-th Fourier coefficient of the generator of the
circulant at block position (i, j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .galois import CountingField, FieldSpec, OpCounter, subfield_basis

Matrix = list[list[int]]


@dataclass(frozen=True)
class Circulant:
    """e x e circulant; each row is the previous one shifted right by one."""

    generator: tuple[int, ...]

    @property
    def e(self) -> int:
        return len(self.generator)

    @property
    def is_zero(self) -> bool:
        return not any(self.generator)

    def dense(self) -> np.ndarray:
        e = self.e
        g = np.asarray(self.generator, dtype=np.int64)
        idx = (np.arange(e)[None, :] - np.arange(e)[:, None]) % e
        return g[idx]


@dataclass
class CirculantArray:
    """rows x cols array of circulants over ``field``, all of size e."""

    field: FieldSpec
    e: int
    cells: list[list[Circulant]]

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int, e: int | None = None) -> CirculantArray:
        e = field.e if e is None else e
        zero = Circulant((0,) * e)
        return cls(field, e, [[zero] * cols for _ in range(rows)])

    @classmethod
    def from_generators(cls, field: FieldSpec, gens: Sequence[Sequence[Sequence[int]]]) -> CirculantArray:
        cells = [[Circulant(tuple(int(x) for x in g)) for g in row] for row in gens]
        e = len(cells[0][0].generator)
        for row in cells:
            for c in row:
                if c.e != e:
                    raise ValueError("circulants of different sizes in one array")
        return cls(field, e, cells)

    def generator(self, i: int, j: int) -> tuple[int, ...]:
        return self.cells[i][j].generator

    def is_binary(self) -> bool:
        return all(x in (0, 1) for row in self.cells for c in row for x in c.generator)

    def dense(self) -> np.ndarray:
        """Expanded (rows*e) x (cols*e) matrix. Only for small instances."""
        return np.block([[c.dense() for c in row] for row in self.cells])

    def transposed_circulants(self) -> CirculantArray:
        """Replace every circulant by its transpose, keeping block positions."""
        e = self.e
        cells = [[Circulant(tuple(c.generator[(-l) % e] for l in range(e))) for c in row]
                 for row in self.cells]
        return CirculantArray(self.field, e, cells)

    def __eq__(self, other):
        return (isinstance(other, CirculantArray) and self.field == other.field
                and self.e == other.e and self.cells == other.cells)


@dataclass
class DiagonalBlockMatrix:
    """Transformed matrix diag(D_0, ..., D_{e-1}); block t is sigma_t x n.

    ``free_cols[t]``, when known, lists the columns of D_t holding an identity
    (row a of D_t has a 1 at ``free_cols[t][a]`` and 0 at the other free
    columns). It is what makes copy-free systematic encoding possible.
    """

    field: FieldSpec
    n: int
    blocks: list[Matrix]
    free_cols: list[list[int]] | None = None

    @property
    def e(self) -> int:
        return len(self.blocks)

    @property
    def sigma(self) -> list[int]:
        return [len(b) for b in self.blocks]

    @property
    def K(self) -> int:
        return sum(self.sigma)

    @property
    def systematic(self) -> bool:
        return self.free_cols is not None

    def parity_cols(self, t: int) -> list[int]:
        free = set(self.free_cols[t])
        return [j for j in range(self.n) if j not in free]

    def satisfies_conjugacy(self) -> bool:
        """D_{(2t)_e} is the entrywise square of D_t for every t."""
        e, f = self.e, self.field
        for t in range(e):
            a, b = self.blocks[t], self.blocks[(2 * t) % e]
            if len(a) != len(b):
                return False
            for ra, rb in zip(a, b):
                if any(f.mul(x, x) != y for x, y in zip(ra, rb)):
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, DiagonalBlockMatrix) and self.field == other.field
                and self.n == other.n and self.blocks == other.blocks)


@dataclass
class ConjugacyClass:
    rep: int
    members: list[int]
    basis: list[int] = field(default_factory=list)

    @property
    def eta(self) -> int:
        return len(self.members)


@dataclass
class ConjugacyClasses:
    e: int
    classes: list[ConjugacyClass]

    @property
    def size(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def class_of(self) -> list[int]:
        """Index of the class containing each t."""
        out = [0] * self.e
        for ci, c in enumerate(self.classes):
            for t in c.members:
                out[t] = ci
        return out


@dataclass(frozen=True)
class Permutation:
    """``forward[p]`` is the source index placed at position p."""

    forward: tuple[int, ...]
    inverse: tuple[int, ...]

    @classmethod
    def from_forward(cls, forward: Sequence[int]) -> Permutation:
        inv = [0] * len(forward)
        for p, s in enumerate(forward):
            inv[s] = p
        return cls(tuple(forward), tuple(inv))

    def apply(self, v: Sequence[int]) -> list[int]:
        return [v[s] for s in self.forward]

    def unapply(self, v: Sequence[int]) -> list[int]:
        return [v[p] for p in self.inverse]


def _check_len(w: Sequence[int], e: int) -> None:
    if len(w) != e:
        raise ValueError(f"expected an e-tuple of length {e}, got {len(w)}")


def _transform(f: FieldSpec, w: Sequence[int], sign: int, ops: OpCounter | None) -> list[int]:
    e = f.e
    _check_len(w, e)
    exp, log = f.exp_table, f.log_table
    logs = [(l, log[x]) for l, x in enumerate(w) if x]
    out = []
    for t in range(e):
        acc = 0
        for l, lx in logs:
            acc ^= exp[(lx + sign * l * t) % e]
        out.append(acc)
    if ops is not None:
        # direct evaluation: e-1 products (w_0 needs none) and e-1 sums per output
        ops.multiplications += e * (e - 1)
        ops.additions += e * (e - 1)
    return out


def fourier(f: FieldSpec, w: Sequence[int], ops: OpCounter | None = None) -> list[int]:
    """d_t = sum_l w_l alpha^(-l t)."""
    return _transform(f, w, -1, ops)


def inverse_fourier(f: FieldSpec, d: Sequence[int], ops: OpCounter | None = None) -> list[int]:
    """w_l = sum_t d_t alpha^(l t). No scale factor is needed since e is odd."""
    return _transform(f, d, 1, ops)


def circulant_diag(f: FieldSpec, c: Circulant) -> list[int]:
    return fourier(f, c.generator)


def conjugacy_partition(e: int, field: FieldSpec | None = None) -> ConjugacyClasses:
    """Orbits of t -> 2t mod e, representatives first-seen minima."""
    seen = [False] * e
    classes = []
    for t in range(e):
        if seen[t]:
            continue
        members = []
        s = t
        while not seen[s]:
            seen[s] = True
            members.append(s)
            s = (2 * s) % e
        basis = subfield_basis(field, len(members)) if field is not None else []
        classes.append(ConjugacyClass(t, members, basis))
    return ConjugacyClasses(e, classes)


def build_permutations(e: int, k: int, n: int) -> tuple[Permutation, Permutation]:
    """Row permutation over ek indices and column permutation over en indices."""
    row = [l * e + i for i in range(e) for l in range(k)]
    col = [l * e + j for j in range(e) for l in range(n)]
    return Permutation.from_forward(row), Permutation.from_forward(col)


def transform_array(G: CirculantArray) -> DiagonalBlockMatrix:
    f = G.field
    if G.e != f.e:
        raise ValueError(f"circulant size {G.e} differs from field order {f.e}")
    coeffs = [[fourier(f, c.generator) for c in row] for row in G.cells]
    blocks = [[[coeffs[i][j][t] for j in range(G.cols)] for i in range(G.rows)]
              for t in range(f.e)]
    return DiagonalBlockMatrix(f, G.cols, blocks)


def inverse_transform_array(D: DiagonalBlockMatrix) -> CirculantArray:
    f = D.field
    sig = D.sigma
    if len(set(sig)) != 1:
        raise ValueError(f"blocks have unequal row counts {sig}; no circulant array corresponds")
    k, n = sig[0], D.n
    cells = [[Circulant(tuple(inverse_fourier(f, [D.blocks[t][i][j] for t in range(D.e)])))
              for j in range(n)] for i in range(k)]
    return CirculantArray(f, D.e, cells)


def vandermonde(f: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    """V = [alpha^(-ij)] and its inverse [alpha^(ij)]."""
    e = f.e
    ij = np.outer(np.arange(e), np.arange(e))
    exp = np.asarray(f.exp_table, dtype=np.int64)
    return exp[(-ij) % e], exp[ij % e]


def conjugate_block(f: FieldSpec, block: Matrix, mu: int) -> Matrix:
    """Entrywise 2^mu power."""
    return [[f.frobenius(x, mu) for x in row] for row in block]


def counted(f: FieldSpec, ops: OpCounter | None) -> CountingField:
    return f.counting(ops if ops is not None else OpCounter())
