"""Arithmetic in GF(2^r) with exp/log tables and optional operation counting."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_R = 16

# bit-encoded primitive polynomials, bit i is the coefficient of x^i
DEFAULT_POLYS = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    8: 0b100011101,
    9: 0b1000010001,
}


class FieldError(ValueError):
    pass


@dataclass
class OpCounter:
    """Galois additions and multiplications performed so far."""

    additions: int = 0
    multiplications: int = 0

    def __add__(self, other: OpCounter) -> OpCounter:
        return OpCounter(self.additions + other.additions,
                         self.multiplications + other.multiplications)

    def merge(self, other: OpCounter) -> None:
        self.additions += other.additions
        self.multiplications += other.multiplications

    def as_dict(self) -> dict:
        return {"adds": self.additions, "muls": self.multiplications}


def poly_to_str(poly: int) -> str:
    terms = []
    for i in range(poly.bit_length() - 1, -1, -1):
        if poly >> i & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return " + ".join(terms) if terms else "0"


def _exp_table(r: int, poly: int) -> list[int] | None:
    """Powers of x modulo poly, or None if x does not have order 2^r - 1."""
    e = (1 << r) - 1
    table = [0] * e
    seen = bytearray(1 << r)
    a = 1
    for i in range(e):
        if seen[a]:
            return None
        seen[a] = 1
        table[i] = a
        a <<= 1
        if a >> r:
            a ^= poly
    return table if a == 1 else None


@lru_cache(maxsize=None)
def smallest_primitive_poly(r: int) -> int:
    for poly in range((1 << r) | 1, 1 << (r + 1), 2):
        if _exp_table(r, poly) is not None:
            return poly
    raise FieldError(f"no primitive polynomial of degree {r}")  # unreachable


def default_poly(r: int) -> int:
    """Default polynomial for GF(2^r); ``QC_DEFAULT_POLY_<r>`` (hex) overrides."""
    env = os.environ.get(f"QC_DEFAULT_POLY_{r}")
    if env:
        return int(env, 16)
    return DEFAULT_POLYS.get(r) or smallest_primitive_poly(r)


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(2^r) built on a primitive polynomial; alpha is the class of x.

    Elements are ints whose bits are polynomial coefficients. The plain
    ``add``/``mul`` methods do not count; use :meth:`counting` for that.
    """

    r: int
    poly: int
    exp_table: tuple[int, ...] = field(repr=False)
    log_table: tuple[int, ...] = field(repr=False)

    @property
    def q(self) -> int:
        return 1 << self.r

    @property
    def e(self) -> int:
        return (1 << self.r) - 1

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.r, self.poly) == (other.r, other.poly)

    def __hash__(self):
        return hash((self.r, self.poly))

    def alpha_pow(self, k: int) -> int:
        return self.exp_table[k % self.e]

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % self.e]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp_table[(self.e - self.log_table[a]) % self.e]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k else 1
        return self.exp_table[(self.log_table[a] * k) % self.e]

    def frobenius(self, a: int, mu: int) -> int:
        """a^(2^mu)."""
        if a == 0:
            return 0
        return self.exp_table[(self.log_table[a] << (mu % self.r)) % self.e]

    def counting(self, counter: OpCounter) -> CountingField:
        return CountingField(self, counter)

    # vectorised helpers, uncounted; used for verification paths
    def mul_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        exp = np.asarray(self.exp_table, dtype=np.int64)
        log = np.asarray(self.log_table, dtype=np.int64)
        out = exp[(log[a] + log[b]) % self.e]
        return np.where((a == 0) | (b == 0), 0, out)

    def in_subfield(self, a: int, eta: int) -> bool:
        return self.frobenius(a, eta) == a

    def subfield_elements(self, eta: int) -> list[int]:
        return [a for a in range(self.q) if self.in_subfield(a, eta)]

    def is_binary(self, values) -> bool:
        return all(v in (0, 1) for v in values)


class CountingField:
    """Field view that tallies every add/mul call into an :class:`OpCounter`."""

    def __init__(self, spec: FieldSpec, counter: OpCounter):
        self.spec = spec
        self.counter = counter
        self._exp = spec.exp_table
        self._log = spec.log_table
        self._e = spec.e

    def add(self, a: int, b: int) -> int:
        self.counter.additions += 1
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        self.counter.multiplications += 1
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self._e]

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def frobenius(self, a: int, mu: int) -> int:
        for _ in range(mu):
            a = self.mul(a, a)
        return a


@lru_cache(maxsize=64)
def _build(r: int, poly: int) -> FieldSpec:
    table = _exp_table(r, poly)
    if table is None:
        raise FieldError(f"{poly_to_str(poly)} is not a primitive polynomial of degree {r}")
    log = [0] * (1 << r)
    for i, a in enumerate(table):
        log[a] = i
    return FieldSpec(r, poly, tuple(table), tuple(log))


def build_field(r: int, poly: int | None = None) -> FieldSpec:
    """Build GF(2^r). ``poly`` must be primitive of degree r when given."""
    if not 2 <= r <= MAX_R:
        raise FieldError(f"unsupported extension degree r={r} (need 2..{MAX_R})")
    if poly is None:
        poly = default_poly(r)
    if poly.bit_length() != r + 1:
        raise FieldError(f"polynomial {poly_to_str(poly)} does not have degree {r}")
    return _build(r, poly)


def field_for_e(e: int, poly: int | None = None) -> FieldSpec:
    """Field with multiplicative order e, i.e. e = 2^r - 1."""
    r = (e + 1).bit_length() - 1
    if (1 << r) - 1 != e:
        raise FieldError(f"e={e} is not of the form 2^r - 1")
    return build_field(r, poly)


def subfield_basis(spec: FieldSpec, eta: int) -> list[int]:
    """GF(2)-basis of GF(2^eta) inside ``spec``, scanning alpha^0, alpha^1, ... in order."""
    if eta <= 0 or spec.r % eta:
        raise FieldError(f"GF(2^{eta}) is not a subfield of GF(2^{spec.r})")
    basis: list[int] = []
    # xor basis keyed by leading bit, for independence tests
    reduced: dict[int, int] = {}
    for k in range(spec.e):
        a = spec.exp_table[k]
        if not spec.in_subfield(a, eta):
            continue
        x = a
        while x:
            top = x.bit_length() - 1
            if top not in reduced:
                reduced[top] = x
                basis.append(a)
                break
            x ^= reduced[top]
        if len(basis) == eta:
            break
    return basis
