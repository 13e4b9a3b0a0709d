"""Word maps on free groups and on finite groups of Lie type SL2/GL2/PGL2."""

__version__ = "0.1.0"

from .errors import BudgetExceeded, InputError, WordMapError, WordSyntaxError
from .fields import FieldSpec
from .groups import ElementSet, GroupTable, build_group
from .images import (
    count_Tw,
    count_Ww,
    identity_scan,
    image_stats,
    sampled_image,
    trace_image,
    word_counts,
    word_image,
    word_image_with_constants,
)
from .magnus import f_w, magnus_image, prime_set_S
from .parsing import parse_plain_word, parse_word
from .trace import trace_polynomial
from .words import Letter, Word, WordWithConstants, commutator, make_family

__all__ = [
    "BudgetExceeded", "InputError", "WordMapError", "WordSyntaxError",
    "FieldSpec", "ElementSet", "GroupTable", "build_group",
    "count_Tw", "count_Ww", "identity_scan", "image_stats", "sampled_image", "trace_image",
    "word_counts", "word_image", "word_image_with_constants",
    "f_w", "magnus_image", "prime_set_S", "parse_plain_word", "parse_word", "trace_polynomial",
    "Letter", "Word", "WordWithConstants", "commutator", "make_family",
]
