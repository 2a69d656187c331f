"""Internal utilities."""

import functools
import threading


def locked_cache(fn):
    """An lru_cache that never runs the builder twice concurrently.

    Elements carry identity-based algebra membership, so each presentation
    must be constructed exactly once per process even under threads.
    """
    cached = functools.lru_cache(maxsize=None)(fn)
    lock = threading.Lock()

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with lock:
            return cached(*args, **kwargs)

    wrapper.cache_clear = cached.cache_clear
    return wrapper
