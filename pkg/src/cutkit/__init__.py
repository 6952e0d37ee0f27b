"""cutkit: exact computational algebra for cuts of graphs.

Subpackages cover graph combinatorics, the cut-variable model, an exact
binomial Groebner/Markov engine with a compiled fast path, lattice
polytope geometry of cut polytopes, two-piece composition of
generating sets along clique intersections, and the statistical model
bridges (binary graph models, split systems in Fourier coordinates).
"""

from .graphs import Graph, make_named
from .binomials import Binomial
from .cutmodel import Partition, VariableSet, exponent_matrix

__all__ = [
    "Graph",
    "make_named",
    "Binomial",
    "Partition",
    "VariableSet",
    "exponent_matrix",
]

__version__ = "0.1.0"
