"""Exact modified traces and ambidexterity tests for pivotal Hopf algebras."""

from ._core import (
    Algebra,
    ModtraceError,
    MalformedInput,
    Module,
    NoSplitting,
    NotAbsolutelySimple,
    NotAmbi,
    TraceFunctional,
    Unsupported,
    algebra,
    ambi,
    decompose,
    dual,
    hom_dim,
    iso,
    pivotal_trace_of_identity,
    tensor,
)

__all__ = [
    "Algebra",
    "ModtraceError",
    "MalformedInput",
    "Module",
    "NoSplitting",
    "NotAbsolutelySimple",
    "NotAmbi",
    "TraceFunctional",
    "Unsupported",
    "algebra",
    "ambi",
    "decompose",
    "dual",
    "hom_dim",
    "iso",
    "pivotal_trace_of_identity",
    "tensor",
]
