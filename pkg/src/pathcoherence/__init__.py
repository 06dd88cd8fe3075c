"""Path-sum amplitudes, path coherence and Hadamard-pair synthesis for H + classical circuits."""

from .circuit import Circuit, Gate, ParseError, build_marginal_gadget, gate, parse_circuit, serialize_circuit
from .coherence import CoherenceReport, enumerate_solutions, parameterize_mnk, path_coherence, sample_solution
from .errors import CapExceeded, InconsistentInstance, InvariantViolation
from .estimate import Estimate, estimate_amplitude, estimate_marginal, exact_amplitude, mc_estimate, sample_count
from .gf2 import BitMatrix, BitVector, generalized_inverse, rank
from .oracle import statevector_amplitude, statevector_marginal
from .qcalc import rank_counts, plot_data, q_binomial
from .sop import AffineForm, PathSystem, encode, specialize
from .synth import eliminate_pairs, find_candidate

__all__ = [
    "AffineForm", "BitMatrix", "BitVector", "CapExceeded", "Circuit", "CoherenceReport", "Estimate", "Gate",
    "InconsistentInstance", "InvariantViolation", "ParseError", "PathSystem", "build_marginal_gadget",
    "eliminate_pairs", "encode", "enumerate_solutions", "estimate_amplitude", "estimate_marginal",
    "exact_amplitude", "find_candidate", "gate", "generalized_inverse", "mc_estimate", "parameterize_mnk",
    "parse_circuit", "path_coherence", "plot_data", "q_binomial", "rank", "rank_counts", "sample_count",
    "sample_solution", "serialize_circuit", "specialize", "statevector_amplitude", "statevector_marginal",
]
