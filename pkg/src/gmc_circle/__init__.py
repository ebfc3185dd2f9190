"""Simulation and verification toolkit for Gaussian multiplicative chaos on the circle."""

__version__ = "0.1.0"
