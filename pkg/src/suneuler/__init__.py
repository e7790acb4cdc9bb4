"""Generalized Gell-Mann bases, Euler-angle parameterizations of SU(4) and SU(6),
coherence vectors, partial-transpose entanglement tests and Fubini-Study volumes."""

from suneuler.algebra import (
    GellMannBasis,
    InvalidDimensionError,
    StructureTensors,
    expand_product,
    generate_basis,
    structure_tensors,
)
from suneuler.bloch import (
    CoherenceVector,
    DensityMatrix,
    bell_density,
    bell_state,
    coherence_vector,
    density_from_coherence,
    is_pure,
    purity,
    star_product,
)
from suneuler.entangle import PptReport, partial_transpose, ppt_report, trace_criterion
from suneuler.euler import EulerFactorization, compose_unitary, su4_euler, su6_euler
from suneuler.volume import cpn_volume, entangling_volume, integrate_volume

__version__ = "0.1.0"

__all__ = [
    "CoherenceVector",
    "DensityMatrix",
    "EulerFactorization",
    "GellMannBasis",
    "InvalidDimensionError",
    "PptReport",
    "StructureTensors",
    "bell_density",
    "bell_state",
    "coherence_vector",
    "compose_unitary",
    "cpn_volume",
    "density_from_coherence",
    "entangling_volume",
    "expand_product",
    "generate_basis",
    "integrate_volume",
    "is_pure",
    "partial_transpose",
    "ppt_report",
    "purity",
    "star_product",
    "structure_tensors",
    "su4_euler",
    "su6_euler",
    "trace_criterion",
]
