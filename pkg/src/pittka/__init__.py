"""Pitt inequalities, uncertainty principles and kernels for the
a-deformed Hankel transform and the one-dimensional (k, a)-generalized
Fourier transform."""
__version__ = "0.1.0"

from .errors import (ConvergenceError, DegenerateInputError, DivergenceError, DomainError, PittkaError,
                     UnsupportedParameterError)
from .transform import (MeasureSpec, TestFunction, hankel, hankel_deformed, normalization_b,
                        plancherel_defect, transform_norm, weighted_norm)
from .pitt import (AdmissibilityVerdict, FkaParams, PittParams, admissible, heisenberg_defect, log_up_gap,
                   pitt_quotient, sharp_constant, sharp_constant_fka, sharpness_probe)
from .fka1d import BasisIndex, ParityFunction, fka_transform, parity_decompose
from .kernel1d import KernelParams, SweepResult, find_k0, kernel_a1, kernel_general, kernel_sup
from .gmclass import GMRangeVerdict, GMWitness, gm_defect, gm_pitt_range, gm_witness_search
