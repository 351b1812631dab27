import numpy as np


def fit_slope(rows):
    """Ordinary least squares of log y on log x.

    ``rows`` is a sequence of (x, y) pairs with x, y > 0 and at least three
    distinct x. Returns (slope, intercept, residual) where residual is the
    root-mean-square deviation in log space.
    """
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2 or len(data) < 3:
        raise ValueError("need at least 3 (x, y) rows")
    if not np.all(np.isfinite(data)) or np.any(data <= 0):
        raise ValueError("log-log fit needs finite positive values")
    lx, ly = np.log(data[:, 0]), np.log(data[:, 1])
    if np.ptp(lx) == 0:
        raise ValueError("degenerate fit: all x equal")
    A = np.column_stack([lx, np.ones_like(lx)])
    (slope, intercept), *_ = np.linalg.lstsq(A, ly, rcond=None)
    resid = float(np.sqrt(np.mean((A @ [slope, intercept] - ly) ** 2)))
    return float(slope), float(intercept), resid
