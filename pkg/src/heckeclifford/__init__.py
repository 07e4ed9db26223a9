"""Exact computational algebra for affine Hecke-Clifford superalgebras at a
primitive 4l-th root of unity, and bounded-depth crystal graphs of the
associated twisted affine type."""

__version__ = "0.1.0"
