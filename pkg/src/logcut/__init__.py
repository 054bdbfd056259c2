"""Log-qubit variational MaxCut."""
__version__ = "0.1.0"
