"""Exact exploration schedules for lines, rings and stars with deadlines and crash faults.

Instances and schedules are JSON documents; they may be passed as text or as
already-parsed dictionaries. Times come back as ``fractions.Fraction`` (or
``None`` for infinity).
"""

import json
from fractions import Fraction

from . import _core
from ._core import InstanceError, ScheduleError, SearchRefused, Unsupported

__all__ = [
    "InstanceError",
    "ScheduleError",
    "SearchRefused",
    "Unsupported",
    "decide",
    "n3dm_instance",
    "oracle",
    "partition_instance",
    "resilience",
    "solve",
    "verify",
]


def _text(document):
    return document if isinstance(document, str) else json.dumps(document)


def _time(value):
    return None if value is None else Fraction(value)


def _with_times(result, *keys):
    for key in keys:
        result[key] = _time(result[key])
    return result


def solve(instance, max_n=None, max_k=None):
    """Optimum, routing method and schedule (JSON text) of an instance."""
    return _with_times(_core.solve(_text(instance), max_n, max_k), "optimum")


def decide(instance, delta, max_n=None, max_k=None):
    """True when some schedule meets every deadline and finishes by ``delta``."""
    return _core.decide(_text(instance), str(Fraction(delta)), max_n, max_k)["feasible"]


def resilience(instance, delta, max_n=None, max_k=None):
    """Largest number of crashes a schedule finishing by ``delta`` survives, or None."""
    return _core.resilience(_text(instance), str(Fraction(delta)), max_n, max_k)


def verify(instance, schedule):
    return _with_times(_core.verify(_text(instance), _text(schedule)), "makespan")


def oracle(instance):
    return _with_times(_core.oracle(_text(instance)), "optimum")


def n3dm_instance(a, b, c, s):
    return json.loads(_core.n3dm_instance(a, b, c, s))


def partition_instance(values):
    return json.loads(_core.partition_instance(values))
