"""Exact lambda-ring machinery: big Witt vectors, zeta functions of classes
over finite fields, and rationality certificates."""

from .errors import WittZetaError
from .series import OneUnit, TruncatedSeries
from .witt import WittVector

__version__ = "0.1.0"
