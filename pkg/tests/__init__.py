"""Test package for chowstab."""
