"""Exception types raised by the embedding pipeline."""

import numpy as np


class LNPEError(Exception):
    """Base class for numerical failures in the pipeline."""


class SingularSystemError(LNPEError, np.linalg.LinAlgError):
    """A local reconstruction problem has no unique constrained minimizer.

    Usually means ``sigma`` is too small for a degenerate neighborhood.
    """

    def __init__(self, message, samples=(), pass_index=None):
        super().__init__(message)
        self.samples = tuple(int(s) for s in samples)
        self.pass_index = pass_index

    def __str__(self):
        msg = super().__str__()
        if self.pass_index is not None:
            msg = f"pass {self.pass_index}: {msg}"
        return msg


class DisconnectedGraphError(LNPEError):
    """The objective matrix has a null space of dimension > 1."""

    def __init__(self, message, multiplicity):
        super().__init__(message)
        self.multiplicity = int(multiplicity)
