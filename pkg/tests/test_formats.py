import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qc_etd.formats import (
    FormatError,
    detect_format,
    read_array,
    read_dbm,
    read_qca,
    read_qcpc,
    read_vectors,
    stored_symbol_count,
    write_dbm,
    write_qca,
    write_qcpc,
    write_vectors,
)
from qc_etd.galois import build_field
from qc_etd.qcldpc import build_transformed_generator, random_circulant_array
from qc_etd.transform import CirculantArray, transform_array

from conftest import make_code


def test_qca_roundtrip(q8_code_e7, gf8):
    H = q8_code_e7[0]
    text = write_qca(H)
    assert text.startswith("QCA q=8 e=7 rows=2 cols=4 poly=b\n")
    assert read_qca(text) == H
    assert read_array(text) == H
    assert detect_format(text) == "QCA"


def test_qca_skips_zero_cells(gf8):
    Z = CirculantArray.zeros(gf8, 1, 2)
    text = write_qca(Z)
    assert text == "QCA q=8 e=7 rows=1 cols=2 poly=b\n"
    assert read_qca(text) == Z


def test_qcpc_roundtrip(binary_code_e7):
    H = binary_code_e7[0]
    text = write_qcpc(H)
    assert read_qcpc(text) == H
    assert read_array(text) == H
    assert detect_format(text) == "QCPC"


def test_qcpc_rejects_nonbinary(q8_code_e7):
    with pytest.raises(FormatError):
        write_qcpc(q8_code_e7[0])


@pytest.mark.parametrize("r", [2, 3, 4])
def test_dbm_roundtrip_full_and_compact(r):
    f = build_field(r)
    _, Gd, _, classes = make_code(f, 1, 3, seed=r, binary=True)
    D, cls = read_dbm(write_dbm(Gd))
    assert D == Gd
    Dc, cls_c = read_dbm(write_dbm(Gd, classes))
    assert Dc == Gd
    assert [c.members for c in cls_c] == [c.members for c in classes]
    assert [c.basis for c in cls_c] == [c.basis for c in classes]


def test_dbm_non_systematic_roundtrip(gf8):
    rng = np.random.default_rng(0)
    D = transform_array(random_circulant_array(gf8, 2, 3, rng))
    back, cls = read_dbm(write_dbm(D))
    assert back == D and cls is None


def test_dbm_compact_needs_conjugacy(q8_code_e7):
    _, Gd, _, classes = q8_code_e7
    with pytest.raises(FormatError):
        write_dbm(Gd, classes)


def test_compact_dbm_stores_representatives_only(binary_code_e7):
    _, Gd, _, classes = binary_code_e7
    k, n = 2, 4
    assert stored_symbol_count(write_dbm(Gd, classes)) == classes.size * k * (n - k)
    assert stored_symbol_count(write_dbm(Gd)) == 7 * k * (n - k)


def test_rank_deficient_dbm_roundtrip(gf8):
    rng = np.random.default_rng(1)
    row = random_circulant_array(gf8, 1, 4, rng, binary=True, weight=3)
    H = CirculantArray(gf8, 7, [list(row.cells[0])] * 2)
    Gd, _, classes = build_transformed_generator(H)
    for text in (write_dbm(Gd), write_dbm(Gd, classes)):
        assert read_dbm(text)[0] == Gd


@settings(max_examples=30)
@given(st.lists(st.lists(st.integers(0, 255), min_size=1, max_size=12), max_size=6))
def test_vectors_roundtrip(vectors):
    assert read_vectors(write_vectors(vectors)) == vectors


def test_vectors_reject_large_symbol():
    with pytest.raises(FormatError, match=r"^<vectors>:2:3: symbol 9 is not below q=8"):
        read_vectors("1 2\n0 9\n", q=8)


@pytest.mark.parametrize("text,pattern", [
    ("QCA q=8 e=7 rows=1 cols=1 poly=b\n0 0 : 1 2 3\n", r"h\.qca:2:\d+: expected 7 symbols, got 3"),
    ("QCA q=8 e=7 rows=1 cols=1 poly=b\n\n3 0 : 1 0 0 0 0 0 0\n", r"h\.qca:3:1: cell \(3, 0\) outside 1x1"),
    ("QCA q=8 e=7 rows=1 cols=1 poly=b\n0 0 : 1 0 0 0 0 9 0\n", r"h\.qca:2:\d+: symbol 9 is not below q=8"),
    ("QCX q=8\n", r"h\.qca:1:1: expected QCA header"),
    ("QCA q=6 e=5 rows=1 cols=1\n", r"not a power of two"),
])
def test_qca_errors_are_located(text, pattern):
    with pytest.raises(FormatError, match=pattern):
        read_qca(text, source="h.qca")


def test_qcpc_position_error_is_located():
    with pytest.raises(FormatError, match=r"h\.qcpc:2:\d+: position 7 outside \[0, 7\)"):
        read_qcpc("QCPC e=7 rows=1 cols=1\n0 0 : 1 7\n", source="h.qcpc")


def test_dbm_errors_are_located():
    bad_sigma = "DBM 8 7 3 1 1 1\n"
    with pytest.raises(FormatError, match=r"g\.dbm:1:1: expected 7 sigma values"):
        read_dbm(bad_sigma, source="g.dbm")
    header = "DBM 8 7 3 1 1 1 1 1 1 1 poly=b\n"
    with pytest.raises(FormatError, match=r"g\.dbm:2:1: block index 9"):
        read_dbm(header + "block 9 free=0\n1 0\n", source="g.dbm")
    with pytest.raises(FormatError, match=r"g\.dbm:3:1: expected 2 symbols, got 3"):
        read_dbm(header + "block 0 free=0\n1 0 1\n", source="g.dbm")
    with pytest.raises(FormatError, match=r"blocks .* missing"):
        read_dbm(header + "block 0 free=0\n1 0\n", source="g.dbm")


def test_read_array_rejects_dbm():
    with pytest.raises(FormatError):
        read_array("DBM 8 7 3 1 1 1 1 1 1 1\n")


def test_detect_empty():
    with pytest.raises(FormatError):
        detect_format("# only a comment\n")
