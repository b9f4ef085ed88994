"""Process-wide knobs: worker thread count and the set cardinality cap.

``SUMPRODLAB_CAP`` in the environment takes precedence over any cap set in
code or on the command line.
"""

import os
from contextlib import contextmanager

DEFAULT_CAP = 10**8

_state = {"threads": None, "cap": None}


def get_threads() -> int:
    n = _state["threads"]
    if n is None:
        n = os.cpu_count() or 1
    return max(1, int(n))


def get_cap() -> int:
    env = os.environ.get("SUMPRODLAB_CAP")
    if env:
        return int(env)
    cap = _state["cap"]
    return DEFAULT_CAP if cap is None else cap


def set_threads(n):
    if n is not None and int(n) < 1:
        raise ValueError("threads must be >= 1")
    _state["threads"] = None if n is None else int(n)


def set_cap(cap):
    if cap is not None and int(cap) < 1:
        raise ValueError("cap must be >= 1")
    _state["cap"] = None if cap is None else int(cap)


@contextmanager
def options(threads=None, cap=None):
    """Temporarily override ``threads`` and/or ``cap``."""
    saved = dict(_state)
    try:
        if threads is not None:
            set_threads(threads)
        if cap is not None:
            set_cap(cap)
        yield
    finally:
        _state.update(saved)
