"""Invariant geometry of the Jacobi group G^J_1(R) and its homogeneous spaces.

Modules:

* ``lie_core``: generators, structure constants, exponential, Killing form
* ``group_atlas``: charts, composition, actions, metric parameters
* ``moving_frame``: left-invariant coframes and frames
* ``metric_lab``: invariant metrics, Christoffel symbols, Killing fields
* ``geodesic_lab``: geodesics, geodesic vectors, natural reductivity
* ``contact_lab``: almost contact and Sasaki structures
* ``transform_lab``: Cayley and FC transforms, Kahler two-forms
* ``suites`` and ``cli``: verification suites and the command line
"""

from .group_atlas import ChartPoint, GroupElement, MetricParams
from .lie_core import AlgebraBasis, AlgebraVector

__all__ = ["AlgebraBasis", "AlgebraVector", "ChartPoint", "GroupElement", "MetricParams"]
__version__ = "0.1.0"
