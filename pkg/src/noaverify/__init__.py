"""Legal-consistency verification of benefit-decision explanations.

Statutes and explanation clauses are compiled into one typed constraint
vocabulary and checked for joint satisfiability; unsatisfiable cases are
reported with a minimal, citation-anchored core.
"""

from .errors import NoaVerifyError

__version__ = "0.1.0"

__all__ = ["NoaVerifyError", "__version__"]
