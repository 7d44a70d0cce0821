"""CM elliptic directions for primes p = 3 mod 4."""

import json

from ._cmdir import SCHEMA_VERSION, UsageError, canonical_integers, class_number, run_json

__all__ = ["SCHEMA_VERSION", "UsageError", "canonical_integers", "class_number", "run", "run_json"]


def run(command, p, order=None, terms=1000, prec=256):
    """Same document as `cmtool <command>`, parsed."""
    return json.loads(run_json(command, p, order, terms, prec))
