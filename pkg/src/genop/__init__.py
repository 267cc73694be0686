"""Generating operators for Rankin-Cohen brackets, symmetry breaking operators and de Sitter transforms."""
__version__ = "0.1.0"

from .errors import (  # noqa: F401
    ChartError, DecayContractError, DomainError, GenopError, NonConvergenceError, ParameterError,
    PoleError, QuadratureDomainError,
)
from .contour import (  # noqa: F401
    CircleContour, Domain, HoloFn1, HoloFn2, cauchy_derivative, contour_integral, mixed_partial,
    taylor_coefficients, taylor_coefficients_2d,
)
from .rankin_cohen import rc_bracket, rc_brackets, rc_via_lemma  # noqa: F401
from .generating import (  # noqa: F401
    GeneratingParams, generating_apply, generating_values, recover_bracket, recover_brackets,
    series_truncation,
)
from .powers import (  # noqa: F401
    PowerParameter, TestFunction1D, beta_pairing, kernel_K, pair_power, residue_at_pole,
)
from .sbo import (  # noqa: F401
    GroupElement, LineBundleParam, duality_pair, holographic_apply, sbo_apply,
)
from .desitter import DeSitterPoint, fourier_apply, poisson_apply  # noqa: F401
