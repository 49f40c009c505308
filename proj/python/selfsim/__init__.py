"""Self-similar tilings from rational power series over finite fields."""

from ._core import (
    Config,
    SelfsimError,
    Substitution,
    Synthesis,
    binomial_tiling,
    block_tiling,
    count_colors,
    encode_ppm,
    expand,
    preset_names,
    razpet_check,
    render,
    synthesize,
    verify_invariance,
)

__all__ = [
    "Config",
    "SelfsimError",
    "Substitution",
    "Synthesis",
    "binomial_tiling",
    "block_tiling",
    "count_colors",
    "encode_ppm",
    "expand",
    "preset_names",
    "razpet_check",
    "render",
    "synthesize",
    "verify_invariance",
]
