"""Classification of jets of map germs to the plane, multigerm admissibility,
and tangent-space computations in exact rational arithmetic."""

__version__ = "0.1.0"
