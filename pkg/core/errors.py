"""Exceptions raised by the hypersect core"""


class HypersectError(Exception):
    """Base class for all hypersect errors"""


class UnsupportedContextError(HypersectError, ValueError):
    """Invalid type/rank/variant, or a computation not available for the context"""


class NotARootError(HypersectError, ValueError):
    """A vector used as a mirror or coroot is not a root"""


class ConsistencyError(HypersectError, ArithmeticError):
    """An exact identity that must hold failed (inexact division, nonzero residual, ...)"""


class CatalogLookupError(HypersectError, KeyError):
    """No catalog record for the requested triple"""
