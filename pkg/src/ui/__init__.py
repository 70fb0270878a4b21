"""User interface and display logic."""
