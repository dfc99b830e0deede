"""Encoders for QC codes: the generator-matrix oracle and the two transform-domain encoders.

Vector layouts used throughout:

* codeword ``c`` and transformed codeword ``cF``: n blocks of length e,
  symbol (j, l) at index e*j + l;
* transform-domain blocks ``cFpi``: e blocks of length n, a list of lists,
  related to ``cF`` by ``cFpi[i][j] == cF[e*j + i]``;
* ETD message: e blocks, block i of length sigma_i, concatenated;
* traditional message: k blocks of length e, concatenated (rows of G).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .galois import FieldSpec, OpCounter
from .transform import (
    CirculantArray,
    ConjugacyClasses,
    DiagonalBlockMatrix,
    fourier,
    inverse_fourier,
)

StepOps = dict[str, OpCounter]


class EncodingError(ValueError):
    pass


def _step(ops: StepOps | None, name: str) -> OpCounter:
    if ops is None:
        return OpCounter()
    return ops.setdefault(name, OpCounter())


def total_ops(ops: StepOps, exclude: Sequence[str] = ()) -> OpCounter:
    out = OpCounter()
    for name, c in ops.items():
        if name not in exclude:
            out.merge(c)
    return out


def split_blocks(m: Sequence[int], sizes: Sequence[int]) -> list[list[int]]:
    if len(m) != sum(sizes):
        raise EncodingError(f"message has {len(m)} symbols, generator expects {sum(sizes)}")
    out, pos = [], 0
    for s in sizes:
        out.append(list(m[pos:pos + s]))
        pos += s
    return out


def blocks_to_cF(blocks: Sequence[Sequence[int]], n: int) -> list[int]:
    e = len(blocks)
    cF = [0] * (e * n)
    for i, row in enumerate(blocks):
        for j, x in enumerate(row):
            cF[e * j + i] = x
    return cF


def cF_to_blocks(cF: Sequence[int], e: int) -> list[list[int]]:
    n = len(cF) // e
    return [[cF[e * j + i] for j in range(n)] for i in range(e)]


def _require_binary(m: Sequence[int], what: str = "message") -> None:
    bad = [x for x in m if x not in (0, 1)]
    if bad:
        raise EncodingError(f"{what} must be binary, found symbol {bad[0]:x}")


# --- traditional encoding -------------------------------------------------

def systematic_block_columns(G: CirculantArray) -> dict[int, int]:
    """Block columns that are a single identity circulant: {column: row}."""
    ident = (1,) + (0,) * (G.e - 1)
    out = {}
    for j in range(G.cols):
        nz = [i for i in range(G.rows) if not G.cells[i][j].is_zero]
        if len(nz) == 1 and G.cells[nz[0]][j].generator == ident:
            out[j] = nz[0]
    return out


def encode_traditional(m: Sequence[int], G: CirculantArray, ops: StepOps | None = None) -> list[int]:
    """c = m G, expanding G one circulant row at a time.

    Block columns that are a lone identity circulant are copied, so a
    systematic G = [I | P] costs e^2 k (n-k) products.
    """
    f, e, k, n = G.field, G.e, G.rows, G.cols
    if len(m) != e * k:
        raise EncodingError(f"message has {len(m)} symbols, G needs {e * k}")
    F = f.counting(_step(ops, "encode"))
    copies = systematic_block_columns(G)
    c = [0] * (e * n)
    for j in range(n):
        if j in copies:
            i0 = copies[j]
            c[e * j:e * (j + 1)] = m[e * i0:e * (i0 + 1)]
            continue
        gens = [G.cells[i][j].generator for i in range(k)]
        for u in range(e):
            acc = None
            for i in range(k):
                w = gens[i]
                for l in range(e):
                    term = F.mul(m[e * i + l], w[(u - l) % e])
                    acc = term if acc is None else F.add(acc, term)
            c[e * j + u] = acc
    return c


# --- non-binary ETD -------------------------------------------------------

def transform_encode(m: Sequence[int], Gd: DiagonalBlockMatrix, ops: StepOps | None = None) -> list[list[int]]:
    """cFpi_i = m_i D_i for every i. Identity columns of systematic blocks are copies."""
    F = Gd.field.counting(_step(ops, "step1"))
    n = Gd.n
    out = []
    for t, (mt, D) in enumerate(zip(split_blocks(m, Gd.sigma), Gd.blocks)):
        row = [0] * n
        if not D:
            out.append(row)
            continue
        if Gd.systematic:
            for a, col in enumerate(Gd.free_cols[t]):
                row[col] = mt[a]
            cols = Gd.parity_cols(t)
        else:
            cols = range(n)
        for j in cols:
            acc = F.mul(mt[0], D[0][j])
            for a in range(1, len(D)):
                acc = F.add(acc, F.mul(mt[a], D[a][j]))
            row[j] = acc
        out.append(row)
    return out


def inverse_transform_codeword(f: FieldSpec, cF: Sequence[int], ops: OpCounter | None = None) -> list[int]:
    e = f.e
    c = []
    for j in range(len(cF) // e):
        c.extend(inverse_fourier(f, cF[e * j:e * (j + 1)], ops))
    return c


def forward_transform_codeword(f: FieldSpec, c: Sequence[int], ops: OpCounter | None = None) -> list[int]:
    e = f.e
    if len(c) % e:
        raise EncodingError(f"codeword length {len(c)} is not a multiple of e={e}")
    cF = []
    for j in range(len(c) // e):
        cF.extend(fourier(f, c[e * j:e * (j + 1)], ops))
    return cF


def encode_etd(m: Sequence[int], Gd: DiagonalBlockMatrix, ops: StepOps | None = None) -> list[int]:
    """Encode in the transform domain, then inverse-transform each length-e block."""
    blocks = transform_encode(m, Gd, ops)
    cF = blocks_to_cF(blocks, Gd.n)
    return inverse_transform_codeword(Gd.field, cF, _step(ops, "inverse_transform"))


# --- binary ETD -----------------------------------------------------------

def preprocess_message(f: FieldSpec, m: Sequence[int], sigma: Sequence[int],
                       classes: ConjugacyClasses) -> list[int]:
    """Pack each class's binary blocks into one subfield block and spread it by Frobenius.

    Position (members[mu], s) receives (sum_l basis[l] * m[members[l], s])^(2^mu).
    """
    _require_binary(m)
    mb = split_blocks(m, sigma)
    out = [list(b) for b in mb]
    for cls in classes:
        size = sigma[cls.rep]
        if any(sigma[t] != size for t in cls.members):
            raise EncodingError(f"class {cls.members} has unequal block sizes")
        for s in range(size):
            packed = 0
            for beta, t in zip(cls.basis, cls.members):
                if mb[t][s]:
                    packed ^= beta
            for mu, t in enumerate(cls.members):
                out[t][s] = f.frobenius(packed, mu)
    return [x for b in out for x in b]


def binary_transform_encode(m: Sequence[int], Gd: DiagonalBlockMatrix, classes: ConjugacyClasses,
                            ops: StepOps | None = None) -> list[list[int]]:
    """Step 1 for binary messages: every block of a class is multiplied by the
    class representative's D, so only additions occur.
    """
    _require_binary(m)
    F = Gd.field.counting(_step(ops, "step1"))
    n = Gd.n
    mb = split_blocks(m, Gd.sigma)
    out: list[list[int]] = [[0] * n for _ in range(Gd.e)]
    for cls in classes:
        t0 = cls.rep
        D = Gd.blocks[t0]
        if not D:
            continue
        if Gd.systematic:
            free = Gd.free_cols[t0]
            cols = Gd.parity_cols(t0)
        else:
            free, cols = [], range(n)
        for t in cls.members:
            mt, row = mb[t], out[t]
            for a, col in enumerate(free):
                row[col] = mt[a]
            for j in cols:
                acc = D[0][j] if mt[0] else 0
                for a in range(1, len(D)):
                    acc = F.add(acc, D[a][j] if mt[a] else 0)
                row[j] = acc
    return out


def postprocess_codeword(f: FieldSpec, blocks: Sequence[Sequence[int]], classes: ConjugacyClasses,
                         ops: StepOps | None = None) -> list[list[int]]:
    """Representative positions get sum_l basis[l] * block[members[l]]; the
    rest of the class is filled by repeated squaring.
    """
    F = f.counting(_step(ops, "step2"))
    n = len(blocks[0]) if blocks else 0
    out = [[0] * n for _ in blocks]
    for cls in classes:
        members, basis = cls.members, cls.basis
        for j in range(n):
            acc = F.mul(basis[0], blocks[members[0]][j])
            for beta, t in zip(basis[1:], members[1:]):
                acc = F.add(acc, F.mul(beta, blocks[t][j]))
            out[members[0]][j] = acc
            for t in members[1:]:
                acc = F.square(acc)
                out[t][j] = acc
    return out


def encode_etd_binary(m: Sequence[int], Gd: DiagonalBlockMatrix, classes: ConjugacyClasses,
                      ops: StepOps | None = None) -> list[int]:
    """Binary message in, binary codeword out (as 0/1 field symbols)."""
    if not Gd.satisfies_conjugacy():
        raise EncodingError("generator blocks violate D_(2t) = D_t^2; codeword would not be binary")
    blocks = binary_transform_encode(m, Gd, classes, ops)
    hat = postprocess_codeword(Gd.field, blocks, classes, ops)
    cF = blocks_to_cF(hat, Gd.n)
    c = inverse_transform_codeword(Gd.field, cF, _step(ops, "inverse_transform"))
    _require_binary(c, "codeword")
    return c


def check_conjugacy(f: FieldSpec, cF: Sequence[int]) -> bool:
    """cF[j, (2i)_e] == cF[j, i]^2 for every block j and index i."""
    e = f.e
    for j in range(len(cF) // e):
        base = e * j
        for i in range(e):
            x = cF[base + i]
            if f.mul(x, x) != cF[base + (2 * i) % e]:
                return False
    return True


@lru_cache(maxsize=256)
def _coordinate_table(basis: tuple[int, ...]) -> tuple[tuple[int, int, int], ...]:
    """Reduced echelon form of the basis as (pivot bit, vector, combination mask)."""
    rows: list[tuple[int, int, int]] = []
    for l, b in enumerate(basis):
        v, mask = b, 1 << l
        for top, rv, rm in rows:
            if v >> top & 1:
                v ^= rv
                mask ^= rm
        if v == 0:
            raise ValueError("basis is linearly dependent")
        top = v.bit_length() - 1
        # keep rows fully reduced on each other's pivots
        rows = [(pt, rv ^ v, rm ^ mask) if rv >> top & 1 else (pt, rv, rm) for pt, rv, rm in rows]
        rows.append((top, v, mask))
    return tuple(rows)


def subfield_coordinates(basis: Sequence[int], y: int) -> list[int]:
    """Bits u with sum_l u_l basis[l] == y; raises if y is outside the span."""
    rows = _coordinate_table(tuple(basis))
    mask = 0
    for top, rv, rm in rows:
        if y >> top & 1:
            y ^= rv
            mask ^= rm
    if y:
        raise EncodingError("symbol is not in the span of the subfield basis")
    return [mask >> l & 1 for l in range(len(basis))]


def recover_message(c: Sequence[int], Gd: DiagonalBlockMatrix, classes: ConjugacyClasses | None = None,
                    binary: bool = False) -> list[int]:
    """Invert ETD for a systematic ``Gd``: forward-transform, read the identity columns."""
    f = Gd.field
    if not Gd.systematic:
        raise EncodingError("message recovery needs systematic generator blocks")
    if len(c) != f.e * Gd.n:
        raise EncodingError(f"codeword has {len(c)} symbols, expected {f.e * Gd.n}")
    cF = forward_transform_codeword(f, c)
    blocks = cF_to_blocks(cF, f.e)
    hat = [[blocks[t][col] for col in Gd.free_cols[t]] for t in range(f.e)]
    if not binary:
        return [x for b in hat for x in b]
    if classes is None:
        raise EncodingError("binary recovery needs the conjugacy classes")
    if not check_conjugacy(f, cF):
        raise EncodingError("codeword spectrum is not conjugacy-consistent")
    out = [[0] * len(b) for b in hat]
    for cls in classes:
        for s, y in enumerate(hat[cls.rep]):
            bits = subfield_coordinates(cls.basis, y)
            for t, u in zip(cls.members, bits):
                out[t][s] = u
    return [x for b in out for x in b]


# --- parity check ---------------------------------------------------------

def syndrome(c: Sequence[int], H: CirculantArray) -> np.ndarray:
    """c H^T as a (rows, e) array, one circulant at a time."""
    f, e = H.field, H.e
    if len(c) != e * H.cols:
        raise EncodingError(f"codeword has {len(c)} symbols, H has {e * H.cols} columns")
    cv = np.asarray(c, dtype=np.int64).reshape(H.cols, e)
    # row u of circ(a) has a[(l - u) % e] at column l
    idx = (np.arange(e)[None, :] - np.arange(e)[:, None]) % e
    out = np.zeros((H.rows, e), dtype=np.int64)
    for i in range(H.rows):
        for j in range(H.cols):
            cell = H.cells[i][j]
            if cell.is_zero or not cv[j].any():
                continue
            A = np.asarray(cell.generator, dtype=np.int64)[idx]
            prod = f.mul_array(cv[j][None, :], A)
            out[i] ^= np.bitwise_xor.reduce(prod, axis=1)
    return out


def verify_parity(c: Sequence[int], H: CirculantArray) -> bool:
    return not syndrome(c, H).any()
