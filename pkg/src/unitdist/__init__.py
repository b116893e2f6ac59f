"""Unit-distance graphs over finite fields and small number fields, exact
chromatic numbers with certificates, and reduction-based coloring oracles."""

__version__ = "0.1.0"
