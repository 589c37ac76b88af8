"""Shared exception types.

A Refusal means the request was understood but is outside what this package
will compute (enumeration bounds, failed hypotheses, exceeded budgets).  The
CLI maps Refusal to exit code 1.  Malformed input raises ValueError and maps
to exit code 2.
"""


class Refusal(Exception):
    """Well-formed request that exceeds a documented bound or hypothesis."""
