"""Classical and MUB-restricted quantum correlations of bipartite states.

The main entry point is :func:`compute_correlation_vector`, which returns
``(C1, Q2, ..., QM)``: the Holevo quantity of B's ensemble maximised over
A's projective bases, then over bases unbiased to every earlier optimum.
"""

from .errors import InvalidInputError, MubcorrError, NotPSDError, UnsupportedDimensionError
from .qmath import (binary_entropy, partial_trace, shannon_entropy, tensor_product,
                    von_neumann_entropy)
from .states import (BipartiteState, bell_state, classical_example, make_bell_diagonal,
                     make_counterexample, make_cq, make_pure_from_schmidt, make_rho1,
                     make_rho2, make_two_qubit_correlated, make_werner, random_unitary,
                     sample_random_state)
from .measure import (MeasurementEnsemble, ProjectiveBasis, classical_mutual_information,
                      holevo, measure_joint, measure_side_A, measure_side_B)
from .mub import (MubFamily, chart_mu_to_many, chart_mu_to_one, is_unbiased,
                  standard_mub_family)
from .corrvec import (CorrelationVector, InequalityReport, OptimizerConfig, Optimum,
                      SymmetricCorrelationVector, check_inequality_9,
                      check_uncertainty_relation, compute_c1, compute_correlation_vector,
                      compute_discord, compute_q_next, compute_symmetric_vector)
from . import oracles

__version__ = "0.1.0"
