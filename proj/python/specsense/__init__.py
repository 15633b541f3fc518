"""Closed forms and seeded event simulation for three spectrum sensing strategies.

The heavy lifting lives in the compiled `_core` module; this package
re-exports its public names. `ncs`, `cs` and `ds` hold the per-strategy
closed forms, `metrics` the slot/energy/fairness summaries and `sim` the
Monte Carlo cross-check.
"""

from ._core import (
    Hypothesis,
    Snr,
    Strategy,
    SystemParams,
    binomial_tail_exceeds_half,
    cs,
    ds,
    erlang_survival,
    metrics,
    ncs,
    phi,
    sim,
    strategy_from_string,
    strategy_name,
)

__version__ = "0.1.0"

__all__ = [
    "Hypothesis",
    "Snr",
    "Strategy",
    "SystemParams",
    "binomial_tail_exceeds_half",
    "cs",
    "ds",
    "erlang_survival",
    "metrics",
    "ncs",
    "phi",
    "sim",
    "strategy_from_string",
    "strategy_name",
    "__version__",
]
