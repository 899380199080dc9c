"""q-deformed real numbers as exact power series, their continued fractions,
and their shifted Hankel determinants."""

__version__ = "0.1.0"
