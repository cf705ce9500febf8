"""
Description: error types shared by the models, the estimators and the harness.
"""
from typing import Optional


class MarketSimError(Exception):
    """Base class of every error raised by the simulator."""


class DomainError(MarketSimError, ValueError):
    """An argument lies outside the domain of a pure function."""

    def __init__(self, message: str, tick: Optional[int] = None) -> None:
        super().__init__(message)
        self.tick = tick


class RunAbort(MarketSimError):
    """A model step produced a state the run cannot continue from."""

    def __init__(self, tick: int, reason: str) -> None:
        super().__init__(f"run aborted at tick {tick}: {reason}")
        self.tick = tick
        self.reason = reason


class ClearingError(RunAbort):
    """The market-clearing root finder failed; carries the bracket diagnostics."""

    def __init__(self, tick: int, reason: str, diagnostics: Optional[dict] = None) -> None:
        super().__init__(tick, reason)
        self.diagnostics = diagnostics if diagnostics is not None else {}
