class RejectedInput(ValueError):
    """Raised when an operation receives input outside its domain."""
