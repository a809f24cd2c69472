"""Heavy-tailed (1+(lambda,lambda)) GA experiments, backed by a C++ core."""

from ._core import PowerLaw, SatInstance, bounds, progress_probability, run

__all__ = ["PowerLaw", "SatInstance", "bounds", "progress_probability", "run"]
