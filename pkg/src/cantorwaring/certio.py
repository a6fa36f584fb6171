"""JSON certificate files.

Every file is ``{"schema_version", "kind", "payload", "replay_status"}``.
Rationals are written as "num/den" strings, p-adic values as digit arrays,
and no float ever appears. A payload carries everything needed to replay it.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .bounds import check_conditions, profile
from .cantor import CantorParams, SymbolWord
from .coverage import CoverageSet, enumerate_image
from .dust import ComplexRational, DustCertificate
from .padic import PadicCantorParams, PadicCertificate, PadicInt
from .powersum import DecompositionCertificate, PowerSumProblem

SCHEMA_VERSION = "1"
KINDS = ("real", "dust", "padic", "coverage", "bounds")


class SchemaError(ValueError):
    pass


def qstr(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def qparse(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise SchemaError(f"expected a rational string, got {type(s).__name__}")
    return Fraction(s)


def _jsonable(obj):
    """Route dictionaries contain tuples and Fractions; make them plain JSON."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return qstr(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    return str(obj)


# ---------------------------------------------------------------------------
# payload encoders


def encode_real(cert: DecompositionCertificate) -> dict:
    pr = cert.problem
    return {
        "r": qstr(pr.params.r), "k": pr.k, "m": pr.m,
        "target": qstr(cert.target),
        "entries": [[str(w), c] for w, c in cert.entries],
        "depth": cert.depth,
        "residual_bound": qstr(cert.residual_bound),
        "route": cert.route,
    }


def decode_real(d: dict) -> DecompositionCertificate:
    prob = PowerSumProblem(CantorParams(qparse(d["r"])), int(d["k"]), int(d["m"]))
    entries = tuple((SymbolWord.parse(w), int(c)) for w, c in d["entries"])
    return DecompositionCertificate(prob, qparse(d["target"]), entries, int(d["depth"]),
                                    qparse(d["residual_bound"]), d.get("route", ""))


def encode_dust(cert: DustCertificate) -> dict:
    return {
        "r": qstr(cert.params.r), "m": cert.m, "k": cert.k,
        "target": [qstr(cert.target.re), qstr(cert.target.im)],
        "summands": [[str(x), str(y), c] for (x, y), c in cert.summands],
        "residual_bound": qstr(cert.residual_bound),
        "route": _jsonable(cert.route),
    }


def decode_dust(d: dict) -> DustCertificate:
    summands = tuple(((SymbolWord.parse(x), SymbolWord.parse(y)), int(c))
                     for x, y, c in d["summands"])
    target = ComplexRational(qparse(d["target"][0]), qparse(d["target"][1]))
    return DustCertificate(CantorParams(qparse(d["r"])), int(d["m"]), int(d["k"]), target,
                           summands, qparse(d["residual_bound"]), d.get("route", {}))


def _encode_gamma(g):
    if isinstance(g, tuple):
        return {"digits": list(g)}
    return {"rational": qstr(g)}


def _decode_gamma(d):
    if "digits" in d:
        return tuple(int(x) for x in d["digits"])
    q = qparse(d["rational"])
    return q.numerator if q.denominator == 1 else q


def encode_padic(cert: PadicCertificate) -> dict:
    pr = cert.params
    return {
        "p": pr.p, "gamma": _encode_gamma(pr.gamma), "precision": pr.precision,
        "m": cert.m,
        "target": list(cert.target.digits),
        "summands": [list(w) for w in cert.summands],
        "congruence_depth": cert.congruence_depth,
        "y_count": cert.y_count,
    }


def decode_padic(d: dict) -> PadicCertificate:
    pr = PadicCantorParams.make(int(d["p"]), _decode_gamma(d["gamma"]), int(d["precision"]))
    digits = [int(x) for x in d["target"]]
    target = PadicInt.of(digits, pr.p, len(digits))
    return PadicCertificate(pr, target, int(d["m"]), tuple(tuple(int(b) for b in w)
                                                           for w in d["summands"]),
                            int(d["congruence_depth"]), int(d.get("y_count", 0)))


def encode_coverage(cov: CoverageSet) -> dict:
    return {
        "r": qstr(cov.params.r), "k": cov.k, "m": cov.m, "n": cov.n,
        "intervals": [[qstr(a), qstr(b)] for a, b in cov.intervals],
    }


def decode_coverage(d: dict) -> CoverageSet:
    ivs = tuple((qparse(a), qparse(b)) for a, b in d["intervals"])
    return CoverageSet(ivs, int(d["k"]), int(d["m"]), int(d["n"]), CantorParams(qparse(d["r"])))


def encode_bounds(r, m: int, k: int) -> dict:
    params = CantorParams(r)
    prof = profile(params, m)
    rep = check_conditions(prof, k)
    return {
        "r": qstr(params.r), "m": m, "k": k,
        "n_star": prof.n_star, "k_star": prof.k_star,
        "a": qstr(prof.a), "b": qstr(prof.b),
        "conditions": rep.as_row(),
        "values": {key: qstr(v) for key, v in sorted(rep.values.items())},
    }


# ---------------------------------------------------------------------------
# replay from payload


def replay_payload(kind: str, payload: dict) -> bool:
    if kind == "real":
        return decode_real(payload).replay()[0]
    if kind == "dust":
        return decode_dust(payload).replay()[0]
    if kind == "padic":
        return decode_padic(payload).replay()
    if kind == "coverage":
        cov = decode_coverage(payload)
        fresh = enumerate_image(PowerSumProblem(cov.params, cov.k, cov.m), cov.n)
        return fresh.intervals == cov.intervals
    if kind == "bounds":
        again = encode_bounds(qparse(payload["r"]), int(payload["m"]), int(payload["k"]))
        return again == payload
    raise SchemaError(f"unknown kind {kind!r}")


ENCODERS = {
    DecompositionCertificate: ("real", encode_real),
    DustCertificate: ("dust", encode_dust),
    PadicCertificate: ("padic", encode_padic),
    CoverageSet: ("coverage", encode_coverage),
}


def wrap(kind: str, payload: dict, verify: bool = True) -> dict:
    status = "unverified"
    if verify:
        status = "verified" if replay_payload(kind, payload) else "failed"
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload,
            "replay_status": status}


def to_document(obj, verify: bool = True) -> dict:
    for cls, (kind, enc) in ENCODERS.items():
        if isinstance(obj, cls):
            return wrap(kind, enc(obj), verify)
    raise TypeError(f"no encoder for {type(obj).__name__}")


def dumps(doc: dict) -> str:
    """Deterministic text: keys sorted, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def loads(text: str) -> dict:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise SchemaError("certificate file must hold a JSON object")
    ver = doc.get("schema_version")
    if ver != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {ver!r}")
    if doc.get("kind") not in KINDS:
        raise SchemaError(f"unknown kind {doc.get('kind')!r}")
    if not isinstance(doc.get("payload"), dict):
        raise SchemaError("missing payload")
    return doc


def decode(doc: dict):
    kind, payload = doc["kind"], doc["payload"]
    return {"real": decode_real, "dust": decode_dust, "padic": decode_padic,
            "coverage": decode_coverage, "bounds": lambda d: d}[kind](payload)


def verify_document(doc: dict) -> bool:
    return replay_payload(doc["kind"], doc["payload"])
