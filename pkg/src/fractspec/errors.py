"""Shared exception types."""


class CapExceededError(RuntimeError):
    """An enumeration, polyline, or raster grid would exceed its configured cap."""


class SolverError(RuntimeError):
    """A numerical solve failed to reach its residual target."""
