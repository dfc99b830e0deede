"""Text formats: QCA circulant arrays, QCPC sparse parity checks, DBM block
matrices and hex symbol vectors. All are LF-terminated, hex symbols lower case.

QCA::

    QCA q=8 e=7 rows=2 cols=4 poly=b
    0 1 : 1 0 5 0 0 0 3        # one line per nonzero circulant

QCPC::

    QCPC e=7 rows=2 cols=4
    0 1 : 0 3                  # positions of the ones in the generator

DBM::

    DBM 8 7 4 2 2 2 2 2 2 2 poly=b
    classes 3                  # optional; only representative blocks follow
    class 1 eta=3 members=1,2,4 basis=1,2,4
    block 1 free=0,1           # free= marks identity columns, rows then
    3 5                        # hold only the remaining columns ('-' if none)
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .galois import FieldSpec, build_field, field_for_e
from .transform import (
    Circulant,
    CirculantArray,
    ConjugacyClass,
    ConjugacyClasses,
    DiagonalBlockMatrix,
    conjugacy_partition,
    conjugate_block,
)


class FormatError(ValueError):
    pass


def _lines(text: str, source: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _err(source: str, no: int, col: int, msg: str) -> FormatError:
    return FormatError(f"{source}:{no}:{col}: {msg}")


def _keyvals(tokens: Sequence[str], source: str, no: int, line: str) -> dict[str, str]:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise _err(source, no, line.find(tok) + 1, f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _int(tok: str, base: int, source: str, no: int, line: str, what: str) -> int:
    try:
        return int(tok, base)
    except ValueError:
        raise _err(source, no, line.find(tok) + 1, f"bad {what} {tok!r}") from None


def _field_for(q: int | None, e: int, poly: int | None) -> FieldSpec:
    if q is not None:
        r = q.bit_length() - 1
        if 1 << r != q:
            raise FormatError(f"q={q} is not a power of two")
        f = build_field(r, poly)
        if f.e != e:
            raise FormatError(f"e={e} does not match q={q}; only e = q - 1 is supported")
        return f
    return field_for_e(e, poly)


def detect_format(text: str) -> str:
    for _, line in _lines(text, ""):
        return line.split()[0]
    raise FormatError("empty file")


# --- hex vectors ----------------------------------------------------------

def write_vectors(vectors: Iterable[Sequence[int]]) -> str:
    return "".join(" ".join(format(x, "x") for x in v) + "\n" for v in vectors)


def read_vectors(text: str, source: str = "<vectors>", q: int | None = None) -> list[list[int]]:
    out = []
    for no, line in _lines(text, source):
        vec = [_int(tok, 16, source, no, line, "hex symbol") for tok in line.split()]
        if q is not None:
            for tok, x in zip(line.split(), vec):
                if x >= q:
                    raise _err(source, no, line.find(tok) + 1, f"symbol {tok} is not below q={q}")
        out.append(vec)
    return out


# --- QCA ------------------------------------------------------------------

def write_qca(G: CirculantArray) -> str:
    f = G.field
    lines = [f"QCA q={f.q} e={G.e} rows={G.rows} cols={G.cols} poly={f.poly:x}"]
    for i, row in enumerate(G.cells):
        for j, c in enumerate(row):
            if not c.is_zero:
                lines.append(f"{i} {j} : " + " ".join(format(x, "x") for x in c.generator))
    return "\n".join(lines) + "\n"


def read_qca(text: str, source: str = "<qca>", poly: int | None = None) -> CirculantArray:
    it = _lines(text, source)
    try:
        no, line = next(it)
    except StopIteration:
        raise FormatError(f"{source}: empty file") from None
    toks = line.split()
    if toks[0] != "QCA":
        raise _err(source, no, 1, f"expected QCA header, got {toks[0]!r}")
    kv = _keyvals(toks[1:], source, no, line)
    try:
        q, e, rows, cols = (int(kv[k]) for k in ("q", "e", "rows", "cols"))
    except (KeyError, ValueError) as exc:
        raise _err(source, no, 1, f"header needs integer q, e, rows, cols ({exc})") from None
    if poly is None and "poly" in kv:
        poly = _int(kv["poly"], 16, source, no, line, "polynomial")
    try:
        f = _field_for(q, e, poly)
    except ValueError as exc:
        raise _err(source, no, 1, str(exc)) from None
    G = CirculantArray.zeros(f, rows, cols, e)
    for no, line in it:
        left, sep, right = line.partition(":")
        pos = left.split()
        if not sep or len(pos) != 2:
            raise _err(source, no, 1, "expected '<row> <col> : <symbols>'")
        i, j = (_int(t, 10, source, no, line, "index") for t in pos)
        if not (0 <= i < rows and 0 <= j < cols):
            raise _err(source, no, 1, f"cell ({i}, {j}) outside {rows}x{cols} array")
        syms = right.split()
        if len(syms) != e:
            raise _err(source, no, line.find(":") + 2, f"expected {e} symbols, got {len(syms)}")
        gen = []
        for tok in syms:
            x = _int(tok, 16, source, no, line, "hex symbol")
            if x >= q:
                raise _err(source, no, line.find(tok, line.find(":")) + 1, f"symbol {tok} is not below q={q}")
            gen.append(x)
        G.cells[i][j] = Circulant(tuple(gen))
    return G


# --- QCPC -----------------------------------------------------------------

def write_qcpc(H: CirculantArray) -> str:
    if not H.is_binary():
        raise FormatError("QCPC holds binary arrays only")
    lines = [f"QCPC e={H.e} rows={H.rows} cols={H.cols}"]
    for i, row in enumerate(H.cells):
        for j, c in enumerate(row):
            if not c.is_zero:
                lines.append(f"{i} {j} : " + " ".join(str(p) for p, x in enumerate(c.generator) if x))
    return "\n".join(lines) + "\n"


def read_qcpc(text: str, source: str = "<qcpc>", poly: int | None = None) -> CirculantArray:
    it = _lines(text, source)
    try:
        no, line = next(it)
    except StopIteration:
        raise FormatError(f"{source}: empty file") from None
    toks = line.split()
    if toks[0] != "QCPC":
        raise _err(source, no, 1, f"expected QCPC header, got {toks[0]!r}")
    kv = _keyvals(toks[1:], source, no, line)
    try:
        e, rows, cols = (int(kv[k]) for k in ("e", "rows", "cols"))
    except (KeyError, ValueError) as exc:
        raise _err(source, no, 1, f"header needs integer e, rows, cols ({exc})") from None
    if poly is None and "poly" in kv:
        poly = _int(kv["poly"], 16, source, no, line, "polynomial")
    try:
        f = _field_for(None, e, poly)
    except ValueError as exc:
        raise _err(source, no, 1, str(exc)) from None
    H = CirculantArray.zeros(f, rows, cols, e)
    for no, line in it:
        left, sep, right = line.partition(":")
        pos = left.split()
        if not sep or len(pos) != 2:
            raise _err(source, no, 1, "expected '<row> <col> : <positions>'")
        i, j = (_int(t, 10, source, no, line, "index") for t in pos)
        if not (0 <= i < rows and 0 <= j < cols):
            raise _err(source, no, 1, f"cell ({i}, {j}) outside {rows}x{cols} array")
        gen = [0] * e
        for tok in right.split():
            p = _int(tok, 10, source, no, line, "position")
            if not 0 <= p < e:
                raise _err(source, no, line.find(tok, line.find(":")) + 1, f"position {p} outside [0, {e})")
            gen[p] = 1
        H.cells[i][j] = Circulant(tuple(gen))
    return H


def read_array(text: str, source: str = "<array>", poly: int | None = None) -> CirculantArray:
    kind = detect_format(text)
    if kind == "QCA":
        return read_qca(text, source, poly)
    if kind == "QCPC":
        return read_qcpc(text, source, poly)
    raise FormatError(f"{source}: expected a QCA or QCPC file, found {kind!r}")


# --- DBM ------------------------------------------------------------------

def _hexrow(row: Sequence[int]) -> str:
    return " ".join(format(x, "x") for x in row) if row else "-"


def write_dbm(D: DiagonalBlockMatrix, classes: ConjugacyClasses | None = None) -> str:
    """Serialize D; with ``classes`` only representative blocks are written."""
    f = D.field
    lines = [f"DBM {f.q} {D.e} {D.n} " + " ".join(map(str, D.sigma)) + f" poly={f.poly:x}"]
    if classes is not None:
        if not D.satisfies_conjugacy():
            raise FormatError("compact DBM needs blocks satisfying D_(2t) = D_t^2")
        lines.append(f"classes {classes.size}")
        for c in classes:
            lines.append(f"class {c.rep} eta={c.eta} members={','.join(map(str, c.members))} "
                         f"basis={','.join(format(b, 'x') for b in c.basis)}")
        stored = [c.rep for c in classes]
    else:
        stored = range(D.e)
    for t in stored:
        block = D.blocks[t]
        if D.systematic:
            free = D.free_cols[t]
            lines.append(f"block {t} free={','.join(map(str, free))}")
            cols = D.parity_cols(t)
            lines.extend(_hexrow([row[j] for j in cols]) for row in block)
        else:
            lines.append(f"block {t}")
            lines.extend(_hexrow(row) for row in block)
    return "\n".join(lines) + "\n"


def stored_symbol_count(text: str) -> int:
    """Number of matrix symbols a DBM file actually stores."""
    count = 0
    for _, line in _lines(text, ""):
        head = line.split()[0]
        if head in ("DBM", "classes", "class", "block") or line == "-":
            continue
        count += len(line.split())
    return count


def _csv_ints(s: str, base: int = 10) -> list[int]:
    return [int(x, base) for x in s.split(",") if x]


def read_dbm(text: str, source: str = "<dbm>", poly: int | None = None
             ) -> tuple[DiagonalBlockMatrix, ConjugacyClasses | None]:
    lines = list(_lines(text, source))
    if not lines:
        raise FormatError(f"{source}: empty file")
    no, line = lines[0]
    toks = line.split()
    if toks[0] != "DBM":
        raise _err(source, no, 1, f"expected DBM header, got {toks[0]!r}")
    pos = [t for t in toks[1:] if "=" not in t]
    kv = _keyvals([t for t in toks[1:] if "=" in t], source, no, line)
    nums = [_int(t, 10, source, no, line, "header field") for t in pos]
    if len(nums) < 3:
        raise _err(source, no, 1, "header needs q, e, n and e sigma values")
    q, e, n, sigma = nums[0], nums[1], nums[2], nums[3:]
    if len(sigma) != e:
        raise _err(source, no, 1, f"expected {e} sigma values, got {len(sigma)}")
    if poly is None and "poly" in kv:
        poly = _int(kv["poly"], 16, source, no, line, "polynomial")
    try:
        f = _field_for(q, e, poly)
    except ValueError as exc:
        raise _err(source, no, 1, str(exc)) from None

    idx = 1
    classes = None
    if idx < len(lines) and lines[idx][1].split()[0] == "classes":
        no, line = lines[idx]
        lam = _int(line.split()[1], 10, source, no, line, "class count")
        cls_list = []
        for no, line in lines[idx + 1: idx + 1 + lam]:
            t = line.split()
            if t[0] != "class":
                raise _err(source, no, 1, "expected a class line")
            ckv = _keyvals(t[2:], source, no, line)
            try:
                members = _csv_ints(ckv["members"])
                basis = _csv_ints(ckv["basis"], 16)
            except (KeyError, ValueError):
                raise _err(source, no, 1, "class line needs members= and basis=") from None
            if len(basis) != len(members) or not all(f.in_subfield(x, len(members)) for x in basis):
                raise _err(source, no, 1, f"basis is not {len(members)} elements of GF(2^{len(members)})")
            cls_list.append(ConjugacyClass(int(t[1]), members, basis))
        classes = ConjugacyClasses(e, cls_list)
        expected = conjugacy_partition(e)
        if [c.members for c in classes] != [c.members for c in expected]:
            raise _err(source, lines[idx][0], 1, "classes section does not match the doubling orbits mod e")
        idx += 1 + lam

    blocks: list = [None] * e
    free: list = [None] * e
    while idx < len(lines):
        no, line = lines[idx]
        t = line.split()
        if t[0] != "block" or len(t) < 2:
            raise _err(source, no, 1, f"expected 'block <t>', got {line!r}")
        b = _int(t[1], 10, source, no, line, "block index")
        if not 0 <= b < e:
            raise _err(source, no, 1, f"block index {b} outside [0, {e})")
        bkv = _keyvals(t[2:], source, no, line)
        fc = _csv_ints(bkv["free"]) if "free" in bkv else None
        rows = lines[idx + 1: idx + 1 + sigma[b]]
        if len(rows) != sigma[b]:
            raise _err(source, no, 1, f"block {b} needs {sigma[b]} rows")
        if fc is not None and len(fc) != sigma[b]:
            raise _err(source, no, 1, f"block {b} lists {len(fc)} free columns for {sigma[b]} rows")
        width = n - sigma[b] if fc is not None else n
        mat = []
        for a, (rno, rline) in enumerate(rows):
            vals = [] if rline == "-" else [_int(x, 16, source, rno, rline, "hex symbol") for x in rline.split()]
            if len(vals) != width:
                raise _err(source, rno, 1, f"expected {width} symbols, got {len(vals)}")
            if any(v >= q for v in vals):
                raise _err(source, rno, 1, f"symbol not below q={q}")
            if fc is None:
                mat.append(vals)
            else:
                row = [0] * n
                row[fc[a]] = 1
                parity = [j for j in range(n) if j not in set(fc)]
                for j, v in zip(parity, vals):
                    row[j] = v
                mat.append(row)
        blocks[b], free[b] = mat, fc
        idx += 1 + sigma[b]

    if classes is not None:
        for c in classes:
            if blocks[c.rep] is None:
                raise FormatError(f"{source}: representative block {c.rep} missing")
            for mu, t in enumerate(c.members[1:], start=1):
                blocks[t] = conjugate_block(f, blocks[c.rep], mu)
                free[t] = free[c.rep]
    missing = [t for t in range(e) if blocks[t] is None]
    if missing:
        raise FormatError(f"{source}: blocks {missing} missing")
    systematic = all(fc is not None for fc in free)
    D = DiagonalBlockMatrix(f, n, blocks, free if systematic else None)
    return D, classes
