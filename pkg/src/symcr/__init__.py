"""Numerical toolkit for bounded symmetric domains, their Shilov boundaries and symmetric CR models."""

from .config import DEFAULT_TOL, Tolerances
from .jts import CartanI, CartanII, Element, Product, Tripotent, element, parse_system

__all__ = ["DEFAULT_TOL", "Tolerances", "CartanI", "CartanII", "Element", "Product",
           "Tripotent", "element", "parse_system"]
