"""Encoding of quasi-cyclic codes in the Galois Fourier transform domain."""

from .galois import FieldSpec, OpCounter, build_field, subfield_basis
from .transform import (
    Circulant,
    CirculantArray,
    ConjugacyClasses,
    DiagonalBlockMatrix,
    build_permutations,
    conjugacy_partition,
    fourier,
    inverse_fourier,
    inverse_transform_array,
    transform_array,
)
from .codec import (
    check_conjugacy,
    encode_etd,
    encode_etd_binary,
    encode_traditional,
    postprocess_codeword,
    preprocess_message,
    recover_message,
    verify_parity,
)
from .qcldpc import build_transformed_generator, systemize, transform_parity

__version__ = "0.1.0"
