"""Cyclotomic multiple zeta values, the twisted group law and the Ihara bracket.

Words over the alphabet ``e_0, e_zeta (zeta in mu_N)`` are integer tuples
(see :mod:`cyclomzv.alphabet`); series, Lie elements and group-like
elements are all :class:`~cyclomzv.series.Series`.
"""
from .alphabet import E1, ZERO, Dihedral, WordError, format_word, is_convergent, parse_word
from .dims import bound_table, generator_series, lie_v_dims
from .ihara import (
    circ, circ_inverse, dihedral, exp_ihara, ihara_bracket, rotate, special_derivation,
    torsor_act, twist_auto,
)
from .lie import (
    NotPrimitiveError, bracket, from_coords, is_primitive, lyndon_expand, lyndon_words,
    to_lyndon_coords, witt_dim,
)
from .polylog import (
    ConvergenceError, Embedding, InconsistentInputError, MultiIndex, PrecisionCfg, dch, mpl,
    quadrature_oracle, regularize, stuffle_check,
)
from .relations import InsufficientPrecisionError, find_integer_relation, weight_scan
from .series import (
    CC, QQ, Series, SeriesError, concat_mul, exp_concat, grouplike_inverse, is_grouplike,
    log_concat, monomial, shuffle_mul,
)

__version__ = "0.1.0"


__all__ = [
    "CC",
    "ConvergenceError",
    "Dihedral",
    "E1",
    "Embedding",
    "InconsistentInputError",
    "InsufficientPrecisionError",
    "MultiIndex",
    "NotPrimitiveError",
    "PrecisionCfg",
    "QQ",
    "Series",
    "SeriesError",
    "WordError",
    "ZERO",
    "bound_table",
    "bracket",
    "circ",
    "circ_inverse",
    "concat_mul",
    "dch",
    "dihedral",
    "exp_concat",
    "exp_ihara",
    "find_integer_relation",
    "format_word",
    "from_coords",
    "generator_series",
    "grouplike_inverse",
    "ihara_bracket",
    "is_convergent",
    "is_grouplike",
    "is_primitive",
    "lie_v_dims",
    "log_concat",
    "lyndon_expand",
    "lyndon_words",
    "monomial",
    "mpl",
    "parse_word",
    "quadrature_oracle",
    "regularize",
    "rotate",
    "shuffle_mul",
    "special_derivation",
    "stuffle_check",
    "to_lyndon_coords",
    "torsor_act",
    "twist_auto",
    "weight_scan",
    "witt_dim",
]
