"""Services layer: stability criteria, singularity arithmetic and the corpus runner."""
