"""Exact Bernoulli and Stickelberger arithmetic, high-precision theta values on
CM lattices, and numerical checks of elliptic-versus-cyclotomic unit
identities for the nine imaginary quadratic fields of class number one."""

__version__ = "0.1.0"
