"""
Configuration file for the star product engine
"""
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

__version__ = "1.0.0"


@dataclass
class Config:
    """Main configuration class"""

    # Exact arithmetic caps
    lambda_weight_cap: int = 8  # total weight sum(n_i) of any l_{n1}*...*l_{nk} monomial
    degree_cap: int = 6  # truncation order of operator series = max input degree

    # Exponent of the Duflo / logarithmic elements
    c1_coefficient: Fraction = None  # coefficient of c_1 in both exponents
    zeta_precision_digits: int = 30  # mpmath working precision for zeta(n)

    # UEA rewriting cache persistence (content-addressed by algebra digest)
    cache_dir: Optional[str] = None

    # Graph enumeration and Monte-Carlo weights
    max_graph_vertices: int = 3
    mc_samples: int = 1_000_000
    mc_samples_large: int = 4_000_000  # default when n = 3
    mc_batch_size: int = 100_000
    singular_guard: float = 1e-6
    max_std_error: float = 0.05  # estimates above this are flagged non-convergent
    graph_hbar: float = 0.5  # order-k graph term is hbar^k/k! * sum_G w_G * B_G
    weight_processes: int = 1

    # Verification suites
    default_trials: int = 200
    default_seed: int = 0
    progress_interval: int = 50

    def __post_init__(self):
        """Initialize default values"""
        if self.c1_coefficient is None:
            self.c1_coefficient = Fraction(-1, 4)

        if self.cache_dir is None:
            self.cache_dir = os.environ.get("QUANT_CACHE_DIR") or None


# Global config instance
config = Config()


# ============================================================================
# STAR PRODUCT KINDS AND SUITES (SINGLE SOURCE OF TRUTH)
# ============================================================================

STAR_KINDS = ("standard", "logarithmic", "gutt")

VERIFICATION_SUITES = (
    "assoc",
    "derivation",
    "equivalence",
    "nilpotent-collapse",
    "pbw",
    "first-order",
    "duflo-coefficients",
)
