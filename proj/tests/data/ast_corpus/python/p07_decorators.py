import functools
import time


def retry(times=3, delay=0.1):
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            last = None
            for attempt in range(times):
                try:
                    return func(*args, **kwargs)
                except Exception as exc:  # noqa: BLE001
                    last = exc
                    time.sleep(delay * (attempt + 1))
            raise last
        return wrapper
    return decorator
