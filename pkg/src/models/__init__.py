"""Data models: curves, quotient types, family intersections, torus problems."""
