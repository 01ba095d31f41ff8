"""Closed-set expressions over sequence spaces with certified closure oracles."""
from .closure import ClosureBracket, EmptinessUndecided, closure, explain_no_loss, no_loss, norm_bound, to_cnf
from .expr import (
    Ball, Fatten, Intersection, Interval, KernelSlice, Points, SetExpr, SetExprError, Sphere, TruncImage, Union,
    UnitVectors, expr_length, fatten, from_json, omega,
)
from .membership import (
    IN, OUT, UNKNOWN, Cert, PaddedVec, TriState, Witness, ball_gap, check_witness, contains, find_witness,
    in_closure, prefix_gap, sample_member,
)

__all__ = [
    "Ball", "Cert", "ClosureBracket", "EmptinessUndecided", "Fatten", "IN", "Intersection", "Interval",
    "KernelSlice", "OUT", "PaddedVec", "Points", "SetExpr", "SetExprError", "Sphere", "TriState", "TruncImage",
    "UNKNOWN", "Union", "UnitVectors", "Witness", "ball_gap", "check_witness", "closure", "contains",
    "expr_length", "explain_no_loss", "fatten", "find_witness", "from_json", "in_closure", "no_loss",
    "norm_bound", "omega", "prefix_gap", "sample_member", "to_cnf",
]
