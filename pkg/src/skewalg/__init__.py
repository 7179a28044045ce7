"""skewalg: exact-arithmetic partial groupoid actions, skew groupoid rings,
and separability certificates for the extension A in A*G."""

from .algebra import Algebra, AlgebraError, IdealByIdempotent, NotCentralIdempotent
from .groupoid import (ComponentPartition, Groupoid, GroupoidError,
                       GroupoidReport, UnknownObject, build_groupoid,
                       validate_groupoid)
from .linalg import (AffineSolutionSet, DimensionMismatch, Echelon, Field,
                     LinalgError, Matrix, ModP, echelon, intersect, kernel,
                     rref, solve_affine)
from .partial_action import (ActionError, ActionReport, DecompositionRequired,
                             NotUnitalAction, OverlappingObjects,
                             PartialAction, glue_components, invariant_suite,
                             validate_partial_action)
from .separability import (ComponentVerdict, EmptyHomSet, IsotropyIso,
                           NotConnected, NotGlobal, OracleResult,
                           SeparabilityCertificate, SeparabilityVerdict,
                           TraceMap, TransportResult, WitnessInvalid,
                           build_certificate, check_sufficient_condition,
                           decide_global, decide_separability, extract_witness,
                           invariant_subring, isotropy_transport_psi,
                           isotropy_witness_transport,
                           normal_form_coefficients, oracle_separability,
                           trace_between, trace_into, trace_invariant_suite,
                           trace_total)
from .skew_ring import (ComponentIdeal, SkewRing, SkewRingElement,
                        SkewRingError, TensorOverA, TensorTooLarge,
                        build_skew_ring, tensor_over)

__version__ = "0.1.0"
