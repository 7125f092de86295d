"""Verification, bounds and constructions for k-collapsing vector families."""

import json

from ._kcollapse import (
    BudgetExceeded,
    InexactError,
    InvariantError,
    PreconditionError,
    UsageError,
    gamma,
    run,
)
from . import _kcollapse

__all__ = [
    "BudgetExceeded",
    "InexactError",
    "InvariantError",
    "PreconditionError",
    "UsageError",
    "best_bounds",
    "command",
    "gamma",
    "run",
    "verify",
]


def best_bounds(k, d):
    """Best lower/upper bounds on the largest k-collapsing family in dimension d."""
    return json.loads(_kcollapse.best_bounds(k, d))


def verify(family, k):
    """Check the k-collapsing condition; `family` is a dict or a JSON string."""
    text = family if isinstance(family, str) else json.dumps(family)
    return json.loads(_kcollapse.verify(text, k))


def command(*args):
    """Run a CLI command and parse its JSON output. Raises on usage errors."""
    code, out, err = run([str(a) for a in args])
    if code >= 2:
        raise UsageError(err.strip()) if code == 2 else InvariantError(err.strip())
    return code, json.loads(out) if out.lstrip().startswith(("{", "[")) else out
