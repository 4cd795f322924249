import functools
import logging
import time


def timer(active=True, msg=None, level=logging.DEBUG):
    """Log the wall time of each call of the decorated function on its module's logger."""
    def decorator(func):
        log = logging.getLogger(func.__module__)

        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            if not active:
                return func(*args, **kwargs)
            start_time = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                elapsed_time = time.perf_counter() - start_time
                if msg:
                    log.log(level, msg)
                log.log(level, f"Function '{func.__name__}' executed in {elapsed_time:.4f} seconds.")
        return wrapper
    return decorator
