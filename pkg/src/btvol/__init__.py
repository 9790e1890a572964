"""Exact vertex counting in affine buildings of split classical type.

Computes sphere and ball counts around a special vertex as exact polynomials
in the residue cardinality q, closed-form super q-exponential polynomials in
the radius, and asymptotic leading profiles, for the families A, B, C, D.
"""

from .qnum import ParityQNumber, QNumber, q_even_factorial, q_factorial, q_int, qn
from .qcalc import SuperQExpPoly
from .multisum import SummationSpec, brute_force, closed_form
from .rootsys import ClassicalRootSystem, TypeSubset, build, poincare, poincare_parabolic
from .apartment import ApartmentPoint, enumerate_ball, enumerate_sphere
from .volume import (
    AsymptoticProfile,
    asymptote,
    convolve,
    closed_form_threshold,
    ssa_closed_form,
    ssa_exact,
    sv_closed_form,
    sv_exact,
    table1_expected,
)

__version__ = "1.0.0"

__all__ = [
    "ApartmentPoint",
    "AsymptoticProfile",
    "ClassicalRootSystem",
    "ParityQNumber",
    "QNumber",
    "SummationSpec",
    "SuperQExpPoly",
    "TypeSubset",
    "asymptote",
    "brute_force",
    "build",
    "closed_form",
    "closed_form_threshold",
    "convolve",
    "enumerate_ball",
    "enumerate_sphere",
    "poincare",
    "poincare_parabolic",
    "q_even_factorial",
    "q_factorial",
    "q_int",
    "qn",
    "ssa_closed_form",
    "ssa_exact",
    "sv_closed_form",
    "sv_exact",
    "table1_expected",
]
