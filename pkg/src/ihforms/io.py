"""JSON formats for complexes, cochains, fluxes and bundles.

Rationals are written as ``"p/q"`` strings and never as floats; simplices
are keyed by comma-joined vertex ids in the complex's sorted order.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .complex import Cochain, ComplexError, SimplicialComplex, build_complex


class FormatError(ComplexError):
    pass


def fmt_rational(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(s, where: str = "value") -> Fraction:
    if isinstance(s, bool):
        raise FormatError(f"{where}: expected a rational, got {s!r}")
    if isinstance(s, float):
        raise FormatError(f"{where}: floats are not accepted; use an integer or a 'p/q' string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: cannot parse rational {s!r}") from exc


# ---------------------------------------------------------------- complexes


def complex_to_json(c: SimplicialComplex) -> dict:
    return {
        "dimension": c.dimension,
        "top_simplices": [list(c.label(c.dimension, i)) for i in range(c.count(c.dimension))],
    }


def complex_from_json(obj) -> SimplicialComplex:
    if not isinstance(obj, dict):
        raise FormatError("complex: expected a JSON object")
    if "top_simplices" not in obj:
        raise FormatError("complex: missing field 'top_simplices'")
    tops = obj["top_simplices"]
    if not isinstance(tops, list) or not all(isinstance(t, list) for t in tops):
        raise FormatError("complex: 'top_simplices' must be a list of lists")
    for t in tops:
        for v in t:
            if not isinstance(v, str):
                raise FormatError(f"complex: vertex ids must be strings, got {v!r}")
            if "," in v:
                raise FormatError(f"complex: vertex id {v!r} contains a comma")
    c = build_complex([tuple(t) for t in tops])
    if "dimension" in obj and obj["dimension"] != c.dimension:
        raise FormatError(f"complex: 'dimension' is {obj['dimension']} but simplices have dimension {c.dimension}")
    return c


# ---------------------------------------------------------------- cochains


def _key(c: SimplicialComplex, k: int, i: int) -> str:
    return ",".join(c.label(k, i))


def _values_to_json(c: SimplicialComplex, k: int, values, integer: bool = False) -> dict:
    out = {}
    for i, v in enumerate(values):
        if v:
            out[_key(c, k, i)] = int(v) if integer else fmt_rational(v)
    return out


def values_from_json(c: SimplicialComplex, k: int, mapping, field_name: str) -> Cochain:
    if not isinstance(mapping, dict):
        raise FormatError(f"{field_name}: expected an object keyed by simplices")
    parsed = {}
    for key, val in mapping.items():
        ids = tuple(key.split(","))
        if len(ids) != k + 1:
            raise FormatError(f"{field_name}: key {key!r} is not a {k}-simplex")
        try:
            sgn, skey = c.simplex_from_ids(ids)
            c.index(k, skey)
        except KeyError as exc:
            raise FormatError(f"{field_name}: {key!r} is not a simplex of the complex") from exc
        parsed[ids] = parse_rational(val, f"{field_name}[{key!r}]")
    return Cochain.from_dict(c, k, parsed)


def cochain_to_json(z: Cochain) -> dict:
    return {"degree": z.degree, "values": _values_to_json(z.complex, z.degree, z.values)}


def cochain_from_json(c: SimplicialComplex, obj) -> Cochain:
    if not isinstance(obj, dict) or "degree" not in obj or "values" not in obj:
        raise FormatError("cochain: expected fields 'degree' and 'values'")
    k = obj["degree"]
    if not isinstance(k, int) or not 0 <= k <= c.dimension:
        raise FormatError(f"cochain: 'degree' must be an integer in 0..{c.dimension}")
    return values_from_json(c, k, obj["values"], "values")


def flux_to_json(omega: Cochain) -> dict:
    c = omega.complex
    return {"complex": complex_to_json(c), "flux": _values_to_json(c, c.dimension - 1, omega.values)}


def flux_from_json(obj) -> Cochain:
    if not isinstance(obj, dict) or "complex" not in obj or "flux" not in obj:
        raise FormatError("flux: expected fields 'complex' and 'flux'")
    c = complex_from_json(obj["complex"])
    return values_from_json(c, c.dimension - 1, obj["flux"], "flux")


def bundle_to_json(base: SimplicialComplex, euler: Cochain) -> dict:
    return {"base": complex_to_json(base), "euler": _values_to_json(base, 2, euler.values, integer=True)}


def bundle_from_json(obj):
    if not isinstance(obj, dict) or "base" not in obj or "euler" not in obj:
        raise FormatError("bundle: expected fields 'base' and 'euler'")
    base = complex_from_json(obj["base"])
    for key, v in (obj["euler"] or {}).items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise FormatError(f"euler[{key!r}]: expected an integer, got {v!r}")
    return base, values_from_json(base, 2, obj["euler"], "euler")


def dumps(obj) -> str:
    return json.dumps(obj, indent=None, sort_keys=False)


def loads(text: str, what: str = "input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{what}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
