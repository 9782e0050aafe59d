"""Input coercion and parameter checks shared by the estimator and the command line."""

from __future__ import annotations

import os
from collections.abc import Mapping

from .model import Interpretation, require_total
from .sexpr import parse_model, parse_system, read_model, read_system
from .terms import Constraint, ConstraintSystem


def check_system(X) -> ConstraintSystem:
    """Coerce ``X`` to a constraint system.

    Accepts a :class:`ConstraintSystem`, an iterable of constraints, a path
    to a ``.cs`` file, or the s-expression text itself.
    """
    if isinstance(X, ConstraintSystem):
        return X
    if isinstance(X, os.PathLike):
        return read_system(X)
    if isinstance(X, str):
        if X.lstrip().startswith("(") or not X.strip():
            return parse_system(X)
        return read_system(X)
    try:
        items = list(X)
    except TypeError:
        raise TypeError(f"cannot read a constraint system from {type(X).__name__}") from None
    if not all(isinstance(c, Constraint) for c in items):
        raise TypeError("expected an iterable of Constraint objects")
    return ConstraintSystem(items)


def check_interpretation(model, cs: ConstraintSystem | None = None) -> Interpretation:
    """Coerce ``model`` (Interpretation, mapping, path or model text) and check it covers ``cs``."""
    if isinstance(model, Interpretation):
        interp = model
    elif isinstance(model, Mapping):
        interp = Interpretation(model)
    elif isinstance(model, os.PathLike):
        interp = read_model(model)
    elif isinstance(model, str):
        interp = read_model(model) if os.path.isfile(model) else parse_model(model)
    else:
        raise TypeError(f"cannot read a model from {type(model).__name__}")
    if cs is not None:
        require_total(cs, interp)
    return interp


def check_int(name: str, value, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be at least {minimum}, got {value}")
    return value


def check_timeout(value) -> float | None:
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)) or value <= 0:
        raise ValueError(f"timeout must be a positive number of seconds or None, got {value!r}")
    return float(value)


def check_choice(name: str, value, choices) -> str:
    if value not in choices:
        raise ValueError(f"{name} must be one of {', '.join(map(str, choices))}; got {value!r}")
    return value
