"""Shared log-space plumbing for kernel evaluation over grids."""

from __future__ import annotations

import numpy as np

from ..logspace import slog_sum_columns

__all__ = ["pair_and_sum", "materialize_columns", "combine_positive_logs"]


def pair_and_sum(s_left, l_left, s_right, l_right):
    """Sum over the family index of products left_j(x) * right_j(x).

    Inputs are (r, npts) sign/log stacks; returns (sign, log) of shape (npts,).
    """
    signs = (s_left * s_right).astype(np.int8)
    logs = l_left + l_right
    return slog_sum_columns(signs, logs)


def materialize_columns(sign, log):
    """(sign, log) arrays -> floats; underflow becomes 0, overflow raises."""
    sign = np.asarray(sign)
    log = np.asarray(log)
    if np.any(log[sign != 0] > 709.0):
        raise OverflowError("kernel value overflows a double; keep it in log space")
    out = np.zeros(log.shape)
    live = sign != 0
    out[live] = sign[live] * np.exp(log[live])
    return out


def combine_positive_logs(logs):
    """Column-wise log-sum-exp of nonnegative contributions (nterms, npts)."""
    logs = np.asarray(logs)
    m = np.max(logs, axis=0)
    out = np.full(m.shape, -np.inf)
    live = np.isfinite(m)
    if np.any(live):
        out[live] = m[live] + np.log(np.sum(np.exp(logs[:, live] - m[live]), axis=0))
    return out
