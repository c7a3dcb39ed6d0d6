"""zetakkr: critical-line zero counting meets one-dimensional
multiple-scattering determinants.

The package evaluates the smooth counting phase and Hardy Z on the
critical line, locates zeros and maintains catalogs, implements the
family of two-term counting models, and builds the scattering side:
inverted-oscillator far fields, chain quantization, the one-channel
determinant, and Kronig-Penney bands with a transfer-matrix oracle.
"""

from . import countmodels, errors, specfun, zeroscan
from . import scatterkkr

__version__ = "0.1.0"

__all__ = ["countmodels", "errors", "scatterkkr", "specfun", "zeroscan", "__version__"]
