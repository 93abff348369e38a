"""
Built-in Lie algebra library in the algebra input format.

Each entry is exactly what an algebra JSON file would contain: 1-based
indices, only i < j brackets listed, rationals as strings.
"""
from typing import Dict

# ============================================================================
# BUILT-IN ALGEBRAS (SINGLE SOURCE OF TRUTH)
# ============================================================================

# Nilpotent: [x, y] = z
HEISENBERG3 = {
    "name": "heisenberg3",
    "dim": 3,
    "basis": ["x", "y", "z"],
    "brackets": [
        {"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]},
    ],
}

# Non-unimodular, c_n = (x*)^n for every n
AFF1 = {
    "name": "aff1",
    "dim": 2,
    "basis": ["x", "y"],
    "brackets": [
        {"i": 1, "j": 2, "terms": [{"k": 2, "c": "1"}]},
    ],
}

# [h, e] = 2e, [h, f] = -2f, [e, f] = h
SL2 = {
    "name": "sl2",
    "dim": 3,
    "basis": ["e", "f", "h"],
    "brackets": [
        {"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]},
        {"i": 1, "j": 3, "terms": [{"k": 1, "c": "-2"}]},
        {"i": 2, "j": 3, "terms": [{"k": 2, "c": "2"}]},
    ],
}

# [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
GL2 = {
    "name": "gl2",
    "dim": 4,
    "basis": ["e11", "e12", "e21", "e22"],
    "brackets": [
        {"i": 1, "j": 2, "terms": [{"k": 2, "c": "1"}]},
        {"i": 1, "j": 3, "terms": [{"k": 3, "c": "-1"}]},
        {"i": 2, "j": 3, "terms": [{"k": 1, "c": "1"}, {"k": 4, "c": "-1"}]},
        {"i": 2, "j": 4, "terms": [{"k": 2, "c": "1"}]},
        {"i": 3, "j": 4, "terms": [{"k": 3, "c": "-1"}]},
    ],
}

# Upper-triangular 2x2 matrices, c_n = (e11* - e22*)^n
T2 = {
    "name": "t2",
    "dim": 3,
    "basis": ["e11", "e12", "e22"],
    "brackets": [
        {"i": 1, "j": 2, "terms": [{"k": 2, "c": "1"}]},
        {"i": 2, "j": 3, "terms": [{"k": 2, "c": "1"}]},
    ],
}


def abelian(dim: int) -> Dict:
    """Abelian algebra of dimension `dim` with basis x1..xd"""
    return {
        "name": f"abelian{dim}",
        "dim": dim,
        "basis": [f"x{i + 1}" for i in range(dim)],
        "brackets": [],
    }


BUILTIN_ALGEBRAS = {
    "abelian2": abelian(2),
    "abelian3": abelian(3),
    "heisenberg3": HEISENBERG3,
    "aff1": AFF1,
    "sl2": SL2,
    "gl2": GL2,
    "t2": T2,
}

# One-line descriptions for list-algebras
ALGEBRA_DESCRIPTIONS = {
    "abelian2": "abelian, d=2 (Duflo element is the identity)",
    "abelian3": "abelian, d=3 (Duflo element is the identity)",
    "heisenberg3": "Heisenberg, nilpotent: [x,y]=z",
    "aff1": "affine line, non-unimodular: [x,y]=y",
    "sl2": "sl(2), unimodular with vanishing odd traces",
    "gl2": "gl(2), unimodular, reductive",
    "t2": "upper-triangular 2x2, non-unimodular",
}
