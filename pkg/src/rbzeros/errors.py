class RBonacciError(Exception):
    """Base class for errors raised by rbzeros."""
