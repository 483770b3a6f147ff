"""Brjuno sums, Siegel-disk radii, and the continuous size function."""

from ._brjuno import (
    AlphaParseError,
    canonical,
    distance_sequence,
    expand,
    explosion_cycle,
    farey,
    mirror,
    parabolic,
    phi,
    phi_trunc,
    radius,
    surd_grid,
    upsilon,
    upsilon_rational,
)

__all__ = [
    "AlphaParseError",
    "canonical",
    "distance_sequence",
    "expand",
    "explosion_cycle",
    "farey",
    "mirror",
    "parabolic",
    "phi",
    "phi_trunc",
    "radius",
    "surd_grid",
    "upsilon",
    "upsilon_rational",
]
