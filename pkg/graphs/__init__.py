"""
Admissible graphs and their weights.

Modules:
- admissible: graph type, enumeration, multidifferential operators B_G
- propagators: standard, logarithmic and four-colored logarithmic 1-forms
- weights: Monte-Carlo graph weights and graph-side star product orders
- tolerances: numeric acceptance gates
"""

__all__ = [
    "admissible",
    "propagators",
    "weights",
    "tolerances",
]
