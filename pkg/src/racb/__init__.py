"""Right-angled Coxeter groups, firmness, and semi-regular right-angled buildings."""

__version__ = "0.1.0"
