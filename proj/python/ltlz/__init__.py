from ._ltlz import (
    EngineMismatch,
    ParseError,
    check,
    classify,
    generate,
    normalize,
    oracle,
    reprint,
    solve,
)

__all__ = [
    "EngineMismatch",
    "ParseError",
    "check",
    "classify",
    "generate",
    "normalize",
    "oracle",
    "reprint",
    "solve",
]
