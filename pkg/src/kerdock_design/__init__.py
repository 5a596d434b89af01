"""Kerdock codes, Kerdock mutually unbiased bases and the Kerdock unitary 2-design."""
from __future__ import annotations

from .circuit_synth import CliffordCircuit, Gate, decompose, synthesize
from .design import PSLElement, kerdock_circuit, psl_to_symplectic, sample_design_element, verify_design
from .f2linalg import BitMatrix, BitVector
from .gf2m import FieldContext, make_context
from .logical_synth import StabilizerCode, synthesize_logical
from .pauli import PauliLabel
from .symplectic import SymplecticMatrix

__all__ = [
    "BitMatrix", "BitVector", "CliffordCircuit", "FieldContext", "Gate", "PSLElement",
    "PauliLabel", "StabilizerCode", "SymplecticMatrix", "decompose", "kerdock_circuit",
    "make_context", "psl_to_symplectic", "sample_design_element", "synthesize",
    "synthesize_logical", "verify_design",
]
__version__ = "0.1.0"
