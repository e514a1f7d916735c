"""Čech cohomology of decomposition spaces of line patterns in free groups.

The core objects are a :class:`LinePattern` (finitely many words in a free
group), the Whitehead graphs ``Wh(X)`` of finite subtrees of its Cayley
tree, and the covers ``U_X`` whose Čech cohomology approximates that of the
decomposition space.
"""

from __future__ import annotations

from .cech import LimitClass0, LimitClass1, cover_cohomology
from .group import Subtree, ball, format_word, hull, parse_word, subtree
from .h0 import ConnectivityPolicy, bounds, generators0, is_connected, presentation0, support0
from .h1 import generators1, is_trivial_class1, presentation1, strip_all
from .oracle import minimize_multiword, oracle_connected
from .pattern import LinePattern, PatternError, parse_pattern, validate_pattern
from .whitehead import components, wh_subtree

__all__ = [
    "ConnectivityPolicy",
    "LimitClass0",
    "LimitClass1",
    "LinePattern",
    "PatternError",
    "Subtree",
    "ball",
    "bounds",
    "components",
    "cover_cohomology",
    "format_word",
    "generators0",
    "generators1",
    "hull",
    "is_connected",
    "is_trivial_class1",
    "minimize_multiword",
    "oracle_connected",
    "parse_pattern",
    "parse_word",
    "presentation0",
    "presentation1",
    "strip_all",
    "subtree",
    "support0",
    "validate_pattern",
    "wh_subtree",
]
