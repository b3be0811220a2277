"""Symbolic pi-finite p-spaces, their cardinalities and the free rig."""

from .evaluate import (
    EvalTarget,
    Height,
    Rational,
    SpaceProfile,
    cardinality,
    dimension,
    evaluate_rig,
    gbinom,
    profile,
)
from .expr import (
    EM,
    EMPTY,
    POINT,
    Disjoint,
    Empty,
    FreeLoop,
    Loop,
    Point,
    Product,
    SpaceExpr,
    Wreath,
    disjoint,
    free_loop,
    is_loop_space,
    loop,
    normalize,
    power,
    product,
    sort_key,
    to_text,
    wreath,
)
from .parse import parse
from .rig import RigElement, parse_rig, rig_add, rig_delta, rig_mul

__all__ = [
    "EM", "EMPTY", "POINT", "Disjoint", "Empty", "EvalTarget", "FreeLoop", "Height", "Loop",
    "Point", "Product", "Rational", "RigElement", "SpaceExpr", "SpaceProfile", "Wreath",
    "cardinality", "dimension", "disjoint", "evaluate_rig", "free_loop", "gbinom",
    "is_loop_space", "loop", "normalize", "parse", "parse_rig", "power", "product", "profile",
    "rig_add", "rig_delta", "rig_mul", "sort_key", "to_text", "wreath",
]
