"""Exact trace-zero matrices as commutators over ℤ, fields and ℤ/p^k."""
from .certificate import VERSION as __version__
from .commute import (
    CommutatorCertificate,
    Obstruction,
    decompose_2x2_field,
    decompose_field,
    decompose_field_gl,
    decompose_pid,
    decompose_pid_gl,
    decompose_residue,
)
from .exactring import QQ, ZZ, Matrix, Polynomial, Ring, charpoly, commutator, companion
from .sl2grp import GroupWitness, group_commutator_gl, group_commutator_sl

__all__ = [
    "__version__", "CommutatorCertificate", "Obstruction", "decompose_2x2_field",
    "decompose_field", "decompose_field_gl", "decompose_pid", "decompose_pid_gl",
    "decompose_residue", "QQ", "ZZ", "Matrix", "Polynomial", "Ring", "charpoly",
    "commutator", "companion", "GroupWitness", "group_commutator_gl", "group_commutator_sl",
]
