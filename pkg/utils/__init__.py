"""Utility modules for the fftmul tools."""
