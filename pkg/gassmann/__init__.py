"""Exact computation with subgroups of GL_2(Z/p^2Z): conjugacy classes, kernel
subgroups, local conjugacy and the classification suites."""

__version__ = "0.1.0"
