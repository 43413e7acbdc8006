"""pynomkit test suite."""
