"""Markov trace and link invariant engine for Yokonuma–Hecke algebras.

The package computes the traces tr_d and tr_{d,D} on the algebras Y_{d,n}(q)
and the invariants of framed, classical, singular and transverse links built
from them. ``create_engine`` follows the factory pattern: it wires settings,
logging and the result cache into a ready-to-use engine.
"""

__version__ = "0.1.0"


def create_engine(settings=None, strategy=None):
    """Create and configure a trace engine.

    Args:
        settings (Settings, optional): Engine settings. Defaults to
            ``Settings.from_env()``.
        strategy (str, optional): Overrides the configured trace strategy.

    Returns:
        TraceEngine: An engine whose memo cache and strategy follow the settings.
    """
    from .logging_config import configure_logging
    from .trace import TraceEngine
    from .utils.config import Settings

    settings = settings or Settings.from_env()
    configure_logging("ykh", level=settings.log_level)
    return TraceEngine(strategy=strategy or settings.strategy)
