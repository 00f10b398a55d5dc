"""Fast inverse square root: kernel, closed-form seed model and optimal magic constants."""

from ._fisr import (
    CLASSIC_MAGIC,
    DerivationResult,
    FloatRepr,
    absolute_error,
    decode,
    derive_all,
    encode,
    invsqrt,
    magic_from_t,
    newton_step,
    nr_error,
    relative_error,
    satisfies_seed_model,
    seed_bits,
    seed_model,
    sweep,
    t_from_magic,
    verify_theorem1,
)

__all__ = [
    "CLASSIC_MAGIC",
    "DerivationResult",
    "FloatRepr",
    "absolute_error",
    "decode",
    "derive_all",
    "encode",
    "invsqrt",
    "magic_from_t",
    "newton_step",
    "nr_error",
    "relative_error",
    "satisfies_seed_model",
    "seed_bits",
    "seed_model",
    "sweep",
    "t_from_magic",
    "verify_theorem1",
]
