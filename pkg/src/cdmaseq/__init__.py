"""Binary CDMA sequence families, arrays, hop patterns and their analysis."""

from .analysis import (
    ComplexityReport,
    ConjectureResult,
    CorrelationReport,
    autocorrelation,
    berlekamp_massey,
    conjecture_check,
    crosscorrelation,
    family_correlation_report,
    linear_complexity_periodic,
)
from .arrays import (
    BLANK,
    BinaryArray,
    DotGrid,
    ShiftSequence,
    array_shift,
    extract_shift_sequence,
    fold,
    rotate_ccw,
    substitute_columns,
    to_shift_sequence,
    unfold,
)
from .families import (
    FamilyKind,
    SequenceFamily,
    generalized_no_kumar_family,
    gold_family,
    kasami_family,
    no_kumar_family,
)
from .fields import (
    BinaryFieldTable,
    Poly2,
    QuadExtField,
    build_binary_field,
    build_quad_ext,
    discrete_log,
    poly_gcd,
    primitive_root,
    trace_to_subfield,
)
from .sequences import BinarySequence, decimate, hall, legendre, m_sequence, shift
from .shiftseq import (
    HopPattern,
    ShiftFamily,
    family_a_shifts,
    family_b_shifts,
    family_c_shifts,
    hop_hamming_max,
    kasami_hop_family,
    mt_sequence_family,
)

__version__ = "0.1.0"
