import numpy as np
import pytest

from qc_etd.galois import build_field
from qc_etd.qcldpc import random_full_rank_code


@pytest.fixture(scope="session")
def gf8():
    return build_field(3)


@pytest.fixture(scope="session")
def gf16():
    return build_field(4)


@pytest.fixture(scope="session")
def gf64():
    return build_field(6)


def make_code(f, k, n, seed, binary=False, aligned=False):
    rng = np.random.default_rng(seed)
    return random_full_rank_code(f, k, n, rng, binary=binary, aligned=aligned)


@pytest.fixture(scope="session")
def binary_code_e7(gf8):
    """(H, Gd, profile, classes) for a binary e=7, k=2, n=4 code with G = [I | P]."""
    return make_code(gf8, 2, 4, seed=11, binary=True, aligned=True)


@pytest.fixture(scope="session")
def q8_code_e7(gf8):
    return make_code(gf8, 2, 4, seed=12, binary=False, aligned=True)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        title, ok, dt, limit = mod.RESULTS[num]
        budget = f" (limit {limit:g}s)" if limit else ""
        tr.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {dt:6.2f}s{budget}  {title}")
