"""Exact verification toolkit for (m, d)-nets of lines and the signature
computations that decide which nets exist in the complex projective plane."""

__version__ = "0.1.0"
