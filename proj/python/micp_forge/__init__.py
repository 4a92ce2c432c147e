"""Exact MICP formulation tools."""

import json
from fractions import Fraction

from . import _core
from ._core import MicpError, even_parity_points, hermite_normal_form, s_epsilon_member, unimodular_completion

__all__ = [
    "MicpError",
    "brunn_minkowski_gap",
    "check_ideal",
    "classify_family",
    "detect_periodicity",
    "emit_lp",
    "even_parity_points",
    "fixture",
    "hermite_normal_form",
    "nat_compile",
    "parse_lp",
    "pwl_decompose",
    "s_epsilon_member",
    "slice_union",
    "strongest_witness",
    "to_fraction",
    "unimodular_completion",
]


def to_fraction(value):
    """Convert a "p/q" string (or nested lists of them) to Fraction."""
    if isinstance(value, list):
        return [to_fraction(v) for v in value]
    return Fraction(value)


def _arg(value):
    if isinstance(value, (list, tuple)):
        return [_arg(v) for v in value]
    return str(value)


def _doc(value):
    return value if isinstance(value, str) else json.dumps(value)


def strongest_witness(points, exact=True):
    out = json.loads(_core.strongest_witness(_arg(points), exact))
    out["witness"] = to_fraction(out["witness"])
    return out


def detect_periodicity(members, bound, max_period):
    return json.loads(_core.detect_periodicity(list(members), bound, max_period))


def nat_compile(offsets, period, exceptional=()):
    return json.loads(_core.nat_compile(list(offsets), period, list(exceptional)))


def pwl_decompose(prefix, slopes):
    return json.loads(_core.pwl_decompose(_arg(prefix), _arg(slopes)))


def fixture(name, **params):
    return json.loads(_core.fixture(name, {k: str(v) for k, v in params.items()}))


def emit_lp(formulation):
    return _core.emit_lp(_doc(formulation))


def parse_lp(text):
    return json.loads(_core.parse_lp(text))


def slice_union(formulation, window=None):
    return json.loads(_core.slice_union(_doc(formulation), window))


def check_ideal(formulation):
    return json.loads(_core.check_ideal(_doc(formulation)))


def brunn_minkowski_gap(p, q):
    out = json.loads(_core.brunn_minkowski_gap(_arg(p), _arg(q)))
    out["surrogate"] = Fraction(out["surrogate"])
    out["mixed_volume"] = Fraction(out["mixed_volume"])
    return out


def classify_family(family):
    return json.loads(_core.classify_family(_doc(family)))
