# Copyright (c) 2026 The meanking developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""Simulation of the Mean King's problem with conventional strategies."""

__version__ = "0.1.0-dev"

from .bounds import (
    LemmaCertificate,
    TheoremCertificate,
    VectorSet,
    abs_gram,
    certify_lemma,
    certify_theorem,
    gelfand_sequence,
    lemma_bound,
    theorem_bound,
)
from .fixtures import (
    CounterexampleFixture,
    counterexample_d3,
    counterexample_d4,
    fixture,
)
from .game import (
    DecisionTable,
    DensityOperator,
    GameReport,
    aravind_bound,
    bijective_decision,
    brute_force_decision,
    optimal_decision,
    outcome_probability,
    success_probability,
    zero_overlap_pairs,
)
from .linalg import (
    Basis,
    Ket,
    MeanKingError,
    Operator,
    haar_random_basis,
    inner_product,
    operator_norm,
)
from .mub import MubCertificate, MubFamily, d4_table, mub_family, verify_mub
from .search import (
    HillClimbConfig,
    HillClimbResult,
    ScanConfig,
    ScanRecord,
    ScanSummary,
    hill_climb,
    scan,
)

__all__ = [
    "__version__",
    "Basis",
    "CounterexampleFixture",
    "DecisionTable",
    "DensityOperator",
    "GameReport",
    "HillClimbConfig",
    "HillClimbResult",
    "Ket",
    "LemmaCertificate",
    "MeanKingError",
    "MubCertificate",
    "MubFamily",
    "Operator",
    "ScanConfig",
    "ScanRecord",
    "ScanSummary",
    "TheoremCertificate",
    "VectorSet",
    "abs_gram",
    "aravind_bound",
    "bijective_decision",
    "brute_force_decision",
    "certify_lemma",
    "certify_theorem",
    "counterexample_d3",
    "counterexample_d4",
    "d4_table",
    "fixture",
    "gelfand_sequence",
    "haar_random_basis",
    "hill_climb",
    "inner_product",
    "lemma_bound",
    "mub_family",
    "operator_norm",
    "optimal_decision",
    "outcome_probability",
    "scan",
    "success_probability",
    "theorem_bound",
    "verify_mub",
    "zero_overlap_pairs",
]
