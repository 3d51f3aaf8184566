"""
hoprep eliminates literals, clauses and predicate symbols from higher-order clause sets.
"""

__all__ = [
    "core",
    "cholparser",
    "choldownload",
    "cc",
    "sat",
    "modelcheck",
    "hlbe",
    "pe",
    "bce",
    "qle",
    "report",
    "hoprep",
    "cli",
]
