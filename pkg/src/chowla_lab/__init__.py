"""chowla-lab: certified one-sided estimates for sparse cosine sums.

A desk-scale laboratory around the quantity -min_x sum cos(2 pi a x) for
finite symmetric frequency sets: exact set algebra, exact Fourier-side
convolution, certified global minimization, machine checks for a family of
convolution/energy inequalities, and a brute-force frontier oracle.
"""

from .errors import ChowlaLabError
from .gridfn import GridFn, circ_convolve, pos_neg_split, q1_q2_decompose, sample, t1_t2_split
from .reports import LemmaReport, SubCheck
from .sets import (
    ApPartition,
    IntSet,
    SymSet,
    additive_energy,
    ap_partition,
    bt_lower_bound_check,
    derived_sets,
    from_positive,
    longest_ap,
    make_symset,
    quadruple_energy,
    sidon_difference_construction,
    sidon_set,
)
from .trigpoly import (
    MinCertificate,
    Norms,
    TrigPoly,
    conv_pow,
    convolve,
    indicator,
    min_norm,
    norms,
    parseval_inner,
)
from .verify import GeneralCosinePoly

__version__ = "0.1.0"

__all__ = [
    "ApPartition",
    "ChowlaLabError",
    "GeneralCosinePoly",
    "GridFn",
    "IntSet",
    "LemmaReport",
    "MinCertificate",
    "Norms",
    "SubCheck",
    "SymSet",
    "TrigPoly",
    "additive_energy",
    "ap_partition",
    "bt_lower_bound_check",
    "circ_convolve",
    "conv_pow",
    "convolve",
    "derived_sets",
    "from_positive",
    "indicator",
    "longest_ap",
    "make_symset",
    "min_norm",
    "norms",
    "parseval_inner",
    "pos_neg_split",
    "q1_q2_decompose",
    "quadruple_energy",
    "sample",
    "sidon_difference_construction",
    "sidon_set",
    "t1_t2_split",
]
