"""Input files and JSON certificate reports.

Reports contain only JSON-native values.  Exact rationals are written as
``"num/den"`` strings, integers as numbers, curves as ``[p, q]``, and words
as both their syllable list and a printable form.  ``dumps`` sorts keys so
that output is byte-identical for identical inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .certificates import Verdict, Witness
from .errors import InputError, TwistGroupError
from .pingpong import PingPongParams, VerificationReport, Violation, lemma34_lambda
from .systems import CurveSystem
from .torus import ALL_SLOPES, Slope, UnimodularMatrix
from .words import Word

TOOL = "twistgroups"


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text) -> Fraction:
    """Inverse of :func:`fraction_str`; also accepts integers and ``"n"``."""
    if isinstance(text, bool) or isinstance(text, float):
        raise InputError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"not an exact rational: {text!r}") from exc


def encode_fixed(f) -> Any:
    if f is ALL_SLOPES:
        return "all"
    if f is None:
        return None
    return [f.p, f.q]


def encode_witness(w: Witness) -> dict:
    m = w.matrix
    return {
        "kind": w.kind,
        "word": w.word.to_json(),
        "word_text": str(w.word),
        "curves": [[c.p, c.q] for c in w.curves],
        "exponents": list(w.exponents),
        "matrix": m.rows(),
        "fixed": encode_fixed(w.fixed),
        "note": w.note,
    }


def decode_witness(data: dict) -> Witness:
    fixed = data["fixed"]
    if fixed == "all":
        fixed = ALL_SLOPES
    elif fixed is not None:
        fixed = Slope(*fixed)
    return Witness(data["kind"], Word.from_json(data["word"]), tuple(Slope(*c) for c in data["curves"]),
                   tuple(data["exponents"]), fixed, data.get("note", ""))


def to_native(obj) -> Any:
    """Recursively convert library values to JSON-native data."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(obj, Slope):
        return [obj.p, obj.q]
    if isinstance(obj, Word):
        return {"word": obj.to_json(), "word_text": str(obj)}
    if isinstance(obj, Witness):
        return encode_witness(obj)
    if isinstance(obj, UnimodularMatrix):
        return obj.rows()
    if isinstance(obj, (VerificationReport, Violation)):
        return obj.to_json()
    if obj is ALL_SLOPES:
        return "all"
    if isinstance(obj, dict):
        return {str(k): to_native(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_native(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


@dataclass(frozen=True)
class CertificateReport:
    question: str
    status: str
    certificate_kind: str
    input: dict = field(default_factory=dict)
    payload: dict = field(default_factory=dict)
    tool: str = TOOL
    version: str = __version__

    def __post_init__(self):
        object.__setattr__(self, "input", to_native(self.input))
        object.__setattr__(self, "payload", to_native(self.payload))

    @classmethod
    def from_verdict(cls, verdict: Verdict, input_echo: dict) -> "CertificateReport":
        return cls(verdict.question, verdict.status, verdict.certificate_kind, input_echo, verdict.payload)

    def to_json(self) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "input": self.input,
            "question": self.question,
            "status": self.status,
            "certificate_kind": self.certificate_kind,
            "payload": self.payload,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CertificateReport":
        return cls(data["question"], data["status"], data["certificate_kind"], data["input"],
                   data["payload"], data["tool"], data["version"])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "CertificateReport":
        return cls.from_json(json.loads(text))


# ---------------------------------------------------------------- inputs

def system_from_json(data) -> CurveSystem:
    if not isinstance(data, dict):
        raise InputError("system file must hold a JSON object")
    for key in ("h", "intersection"):
        if key not in data:
            raise InputError(f"missing field {key!r}")
    h = data["h"]
    if not isinstance(h, int) or isinstance(h, bool) or h < 2:
        raise InputError("field 'h' must be an integer >= 2")
    inter = data["intersection"]
    if not isinstance(inter, list) or len(inter) != h:
        raise InputError(f"field 'intersection' must be a list of {h} rows")
    for r, row in enumerate(inter):
        if not isinstance(row, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
            raise InputError(f"field 'intersection' row {r} must be a list of integers")
    slopes = data.get("torus_slopes")
    if slopes is not None:
        if not isinstance(slopes, list) or not all(isinstance(s, list) and len(s) == 2 for s in slopes):
            raise InputError("field 'torus_slopes' must be a list of [p, q] pairs")
        try:
            slopes = tuple(Slope(int(p), int(q)) for p, q in slopes)
        except ValueError as exc:
            raise InputError(f"field 'torus_slopes': {exc}") from exc
    punctured = data.get("punctured", False)
    if not isinstance(punctured, bool):
        raise InputError("field 'punctured' must be a boolean")
    filling = data.get("pairwise_filling")
    if filling is None:
        filling = slopes is not None and len(set(slopes)) == len(slopes)
    if not isinstance(filling, bool):
        raise InputError("field 'pairwise_filling' must be a boolean")
    return CurveSystem(tuple(tuple(r) for r in inter), slopes, punctured, filling)


def system_to_json(system: CurveSystem) -> dict:
    out = {"h": system.h, "intersection": [list(r) for r in system.inter],
           "punctured": system.punctured, "pairwise_filling": system.pairwise_filling}
    if system.realized:
        out["torus_slopes"] = [[s.p, s.q] for s in system.torus_slopes]
    return out


def load_system(path) -> CurveSystem:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    try:
        return system_from_json(data)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def parse_int_list(text: str, length: Optional[int] = None, what: str = "exponents") -> tuple[int, ...]:
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise InputError(f"{what}: expected comma-separated integers, got {text!r}") from exc
    if length is not None and len(vals) != length:
        raise InputError(f"{what}: expected {length} values, got {len(vals)}")
    if any(v < 1 for v in vals):
        raise InputError(f"{what}: values must be positive")
    return vals


def parse_mu(text: Optional[str], h: int) -> dict[tuple[int, int], Fraction]:
    """``"21=2/3,31=1/3"`` (1-based indices) to 0-based entries."""
    entries: dict[tuple[int, int], Fraction] = {}
    if not text:
        return entries
    for item in text.split(","):
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or len(key) != 2 or not key.isdigit():
            raise InputError(f"--mu entry {item!r} is not of the form ij=value")
        i, j = int(key[0]) - 1, int(key[1]) - 1
        if not (0 <= i < h and 0 <= j < h) or i == j:
            raise InputError(f"--mu entry {item!r} has invalid indices for h={h}")
        v = parse_fraction(val.strip())
        if v <= 0:
            raise InputError(f"--mu entry {item!r} must be positive")
        entries[(i, j)] = v
    return entries


def build_params(system: CurveSystem, mu_text: Optional[str], lam_text: Optional[str]) -> PingPongParams:
    """Parameters from the ``--mu`` and ``--lambda`` options.

    ``--lambda`` is ``infinite``, ``auto`` (the filling-surface choice),
    ``triangle`` (``1 + mu_ij``, three curves meeting pairwise once) or a
    rational number used for every ``lam_ijk``.  The default is ``auto`` for
    pairwise filling systems and ``infinite`` otherwise.
    """
    entries = parse_mu(mu_text, system.h)
    lam = lam_text or ("auto" if system.pairwise_filling else "infinite")
    try:
        if lam == "infinite":
            return PingPongParams.from_mu(system.h, entries)
        if lam == "auto":
            return lemma34_lambda(system, PingPongParams.from_mu(system.h, entries))
        if lam == "triangle":
            if system.h != 3 or any(v != 1 for v in system.off_diagonal()):
                raise InputError("--lambda triangle needs three curves meeting pairwise once")
            return PingPongParams.triangle(entries)
        return PingPongParams.from_mu(system.h, entries, lam=parse_fraction(lam))
    except TwistGroupError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc
