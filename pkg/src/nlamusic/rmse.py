"""Root-mean-square error over Monte-Carlo trials."""
import numpy as np

RMSE_MODES = ("paper", "standard")


def rmse(errors, mode: str = "paper") -> float:
    """RMSE of angle errors.

    ``paper`` is ``sqrt(sum e_i^2)`` with no 1/L factor; ``standard`` is
    ``sqrt(mean e_i^2)``. The two differ by exactly ``sqrt(L)``.
    """
    e = np.asarray(errors, dtype=float).ravel()
    if e.size == 0:
        raise ValueError("rmse needs at least one error value")
    ss = float(np.sum(e * e))
    if mode == "paper":
        return float(np.sqrt(ss))
    if mode == "standard":
        return float(np.sqrt(ss / e.size))
    raise ValueError(f"unknown rmse mode {mode!r}; expected one of {RMSE_MODES}")
