"""Security bounds and brute-force checks for round-robin differential-phase-shift QKD.

Subpackages and modules:

* :mod:`rrdps.numerics` -- dense linear algebra and entropies
* :mod:`rrdps.protocol` -- states, POVMs and symmetrisation
* :mod:`rrdps.attack` -- Eve's attack family and her conditional states
* :mod:`rrdps.bounds` -- closed-form leakage bounds and key rates
* :mod:`rrdps.oracle` -- independent numerical verification and simulation
"""

__version__ = "0.1.0"

from .errors import (DimensionError, DomainError, FeasibilityError, RootError,
                     RRDPSError, SizeError, ValidationError)

__all__ = [
    "DimensionError", "DomainError", "FeasibilityError", "RRDPSError", "RootError",
    "SizeError", "ValidationError", "__version__",
]
