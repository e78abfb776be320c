"""Tripartite state-space checks: PPT on every cut, unextendible product
bases, and range-criterion tests for three-party quantum states."""

from .hilbert import CUTS, Cut, Operator, Party, PartyDims, StateVector, partial_transpose, permute_parties, tensor3
from .linalg import NumericalError, Spectrum, eig_hermitian, orthonormal_span, rank_tol, residual_outside_span
from .ppt import ppt_report, ppt_threshold
from .range_criterion import range_criterion_AB_C
from .report import ClassificationReport, classify
from .upb import ProductSet, UpbVerdict, complement_state, verify_mutual_orthogonality, verify_unextendible

__version__ = "0.1.0"
