"""Yield-curve extrapolation beyond the last liquid point and hedging of long liabilities."""

import json

from ._curvehedge import (
    CalibrationError,
    CashFlow,
    CurveShift,
    DefectError,
    DomainError,
    Error,
    EvaluationError,
    ExtrapolatedCurve,
    ForwardCurve,
    IoError,
    NotWellDefinedError,
    ParseError,
    PreconditionError,
    YieldCurve,
    convexity,
    dollar_duration,
    duration,
    present_value,
)
from . import _curvehedge as _core

__all__ = [
    "CalibrationError", "CashFlow", "CurveShift", "DefectError", "DomainError", "Error",
    "EvaluationError", "ExtrapolatedCurve", "ForwardCurve", "IoError", "NotWellDefinedError", "ParseError", "PreconditionError", "YieldCurve",
    "arbitrage_scan", "convexity", "dollar_duration", "duration", "extrapolate", "first_order_residual",
    "hedge", "liability_variation", "method_variation", "present_value", "resolved_spec",
    "revaluation_gap", "ufr_sensitivity",
]


def _spec(spec):
    return spec if isinstance(spec, str) else json.dumps(spec)


def extrapolate(market, spec):
    """Extrapolated curve for a method spec given as a dict, e.g. {"kind": "M3", "tau": 10, "ufr": 0.042}."""
    return ExtrapolatedCurve(market, _spec(spec))


def resolved_spec(curve):
    return json.loads(curve._spec_json())


def arbitrage_scan(curve, step=0.25):
    return json.loads(_core._arbitrage_scan(curve, step))


def hedge(spec, market, liabilities):
    """Hedge plan as a dict; amounts are present values."""
    return json.loads(_core._hedge(extrapolate(market, spec), liabilities))


def ufr_sensitivity(spec, market, liabilities):
    return json.loads(_core._ufr_sensitivity(_spec(spec), market, liabilities))


def method_variation(spec, market, shift, t):
    return _core._method_variation(_spec(spec), market, shift, t)


def liability_variation(spec, market, shift, liabilities):
    """Analytic against numeric variation of the liability value."""
    return json.loads(_core._liability_variation(_spec(spec), market, shift, liabilities))


def first_order_residual(spec, market, liabilities, shift):
    return _core._first_order_residual(_spec(spec), market, liabilities, shift)


def revaluation_gap(spec, market, liabilities, shift):
    return _core._revaluation_gap(_spec(spec), market, liabilities, shift)
