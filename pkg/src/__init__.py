"""chowstab - Exact GIT stability checks for curves, families and singularities."""

__version__ = "0.1.0"
