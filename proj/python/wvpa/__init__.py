"""Weighted visibly pushdown automata: evaluation, Hankel blocks, synthesis."""

from wvpa._core import (
    Automaton,
    decode,
    encode,
    HankelBlock,
    InputError,
    Oracle,
    SynthesisError,
    SynthesisReport,
    build_block,
    enumerate_well_matched,
    is_well_matched,
    stabilized_rank,
    synthesize,
    verify_equivalence,
    word_hankel_rank_growth,
)

__all__ = [
    "Automaton",
    "decode",
    "encode",
    "HankelBlock",
    "InputError",
    "Oracle",
    "SynthesisError",
    "SynthesisReport",
    "build_block",
    "enumerate_well_matched",
    "is_well_matched",
    "stabilized_rank",
    "synthesize",
    "verify_equivalence",
    "word_hankel_rank_growth",
]

__version__ = "0.1.0"
