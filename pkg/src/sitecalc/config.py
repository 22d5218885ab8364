import os

DEFAULT_CAP = 10**6


def cap(override: int | None = None) -> int:
    """Enumeration cap: explicit override, else SITECALC_CAP, else the default."""
    if override is not None:
        return override
    env = os.environ.get("SITECALC_CAP")
    if env:
        return int(env)
    return DEFAULT_CAP
