"""Compose, decompose and generate rooted bidirected graphs of each class."""

from .compose import COMPOSE_KINDS, Composition, CompositionError, compose, compose_detailed, disjoint_copy, glue_targets
from .decompose import (
    DecompositionError,
    DecompositionNode,
    GroundDecomposition,
    TriplexSplit,
    auto_step,
    decompose_full,
    decompose_step,
    split_triplex,
)
from .generate import CLASSES, GenerationError, generate
from .grammar import GRAMMARS, completeness, grammar_shapes

__all__ = [
    "COMPOSE_KINDS",
    "Composition",
    "CompositionError",
    "compose",
    "compose_detailed",
    "disjoint_copy",
    "glue_targets",
    "DecompositionError",
    "DecompositionNode",
    "GroundDecomposition",
    "TriplexSplit",
    "auto_step",
    "decompose_full",
    "decompose_step",
    "split_triplex",
    "CLASSES",
    "GenerationError",
    "generate",
    "GRAMMARS",
    "completeness",
    "grammar_shapes",
]
