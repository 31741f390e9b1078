"""Exact valuations, barycentric algebras and cone constructions.

Thin re-export of the compiled extension; all inputs and outputs are JSON
strings with rationals rendered as "p/q" (and "inf").
"""

from _valcone import *  # noqa: F401,F403
from _valcone import __doc__  # noqa: F401
