"""JSON reports with exact rationals.

Every rational is written as a ``"p/q"`` string and rational functions as
expression strings that :func:`holocert.parsing.parse_expression` reads
back.  Keys are sorted; wall-clock time lives only under ``"timing"`` so two
runs on the same input differ in nothing else.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import fields, is_dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .bounds import BoundCertificate, BoundPair
from .ratfunc import RationalFunction
from .recurrence import Recurrence

__all__ = [
    "rational_str",
    "jsonable",
    "recurrence_dict",
    "pair_dict",
    "certificate_dict",
    "digest",
    "dumps",
    "write_report",
    "decimal_str",
]


def rational_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def decimal_str(q, digits: int = 30) -> str:
    q = Fraction(q)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str, float)):
        return obj
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, RationalFunction):
        return obj.to_str("n")
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in fields(obj)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def recurrence_dict(rec: Recurrence) -> dict:
    return {
        "name": rec.name,
        "order": rec.order,
        "coeffs": [c.to_str("n") for c in rec.coeffs],
        "initials": [rational_str(v) for v in rec.initials],
        "offset": rec.offset,
        "scale": None if rec.scale is None else rec.scale.to_str("n"),
        "form": "a[n+d] = sum_i coeffs[i-1](n) a[n+d-i]; terms are h(n) a[n] with h(offset)=1, h(n+1)/h(n)=scale(n)",
    }


def certificate_dict(cert: BoundCertificate) -> dict:
    return {
        "claim": "lower(n) <= b_n <= upper(n) for all n >= base_index, b_n = a[n+1]/a[n] of the unscaled recurrence",
        "lower": cert.lower.to_str("n"),
        "upper": cert.upper.to_str("n"),
        "base_index": cert.base_index,
        "base_check": [rational_str(v) for v in cert.base_check],
        "induction_holds_from": list(cert.induction_holds_from),
        "positivity_holds_from": list(cert.positivity_holds_from),
        "r2_sign": cert.r2_sign,
        "search": jsonable(cert.search),
    }


def pair_dict(pair: BoundPair, cert: Optional[BoundCertificate] = None) -> dict:
    return {
        "g": pair.g.to_str("n"),
        "f": pair.f.to_str("n"),
        "valid_from": pair.valid_from,
        "provenance": pair.provenance,
        "note": pair.note,
        "certificate": None if cert is None else certificate_dict(cert),
    }


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def dumps(report: dict) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2) + "\n"


def write_report(report: dict, path) -> None:
    Path(path).write_text(dumps(report), encoding="utf-8")
