from ._wmpda import (
    Mpda,
    RegSet,
    WmpdaError,
    ParseError,
    PreconditionFailed,
    parse_mpda,
    parse_regset,
    classify,
    generate,
    oracle_reach,
    decide_wqo,
    decide_marked,
    decide_separator,
    replay,
)

__all__ = [
    "Mpda",
    "RegSet",
    "WmpdaError",
    "ParseError",
    "PreconditionFailed",
    "parse_mpda",
    "parse_regset",
    "classify",
    "generate",
    "oracle_reach",
    "decide_wqo",
    "decide_marked",
    "decide_separator",
    "replay",
]
