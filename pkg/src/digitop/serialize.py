"""JSON interchange for images, maps, homotopies, loops and certificates.

Every number is an integer or a ``"num/den"`` string; nothing is a float.
Decoding errors name the offending location as a ``$.a[3].b`` path.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .ecpath import ECHomotopy, ECPath
from .errors import DigitopError
from .homotopy import EquivalenceCertificate, Homotopy
from .lattice import DigitalImage
from .longhtpy import LHomotopy, LongEquivalenceCertificate, LongHomotopy
from .maps import DigitalMap
from .realhtpy import RealEquivalenceCertificate, RealHomotopy
from .similarity import Filtration, SimilarityCertificate


class SchemaError(DigitopError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def read_json(path: str | Path) -> Any:
    """Parse a file, turning syntax errors into ``file:line:col`` messages."""
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}:{e.lineno}:{e.colno}", e.msg) from None


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj) + "\n")


# -- small decoding helpers --------------------------------------------------

def _get(d, key, path):
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object")
    if key not in d:
        raise SchemaError(path, f"missing key {key!r}")
    return d[key]


def _int(v, path) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(path, "expected an integer")
    return v


def _list(v, path) -> list:
    if not isinstance(v, list):
        raise SchemaError(path, "expected a list")
    return v


def _point(v, path, dim: int | None = None) -> tuple:
    v = _list(v, path)
    p = tuple(_int(c, f"{path}[{i}]") for i, c in enumerate(v))
    if dim is not None and len(p) != dim:
        raise SchemaError(path, f"expected {dim} coordinates")
    return p


def _opt_point(v, path):
    return None if v is None else _point(v, path)


def _frac(v, path) -> Fraction:
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    if not isinstance(v, str):
        raise SchemaError(path, 'expected a "num/den" string')
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(path, f"bad rational {v!r}") from None


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _wrap(fn, path):
    try:
        return fn()
    except SchemaError:
        raise
    except DigitopError as e:
        raise SchemaError(path, str(e)) from None


# -- images and maps ---------------------------------------------------------

def image_to_json(X: DigitalImage, basepoint=None) -> dict:
    out = {"dim": X.adjacency.ambient_dim, "u": X.adjacency.u, "points": [list(p) for p in X.ordered]}
    if basepoint is not None:
        out["basepoint"] = list(basepoint)
    return out


def image_from_json(d, path: str = "$") -> DigitalImage:
    dim = _int(_get(d, "dim", path), f"{path}.dim")
    u = _int(_get(d, "u", path), f"{path}.u")
    raw = _list(_get(d, "points", path), f"{path}.points")
    pts = [_point(p, f"{path}.points[{i}]", dim) for i, p in enumerate(raw)]
    seen = set()
    for i, p in enumerate(pts):
        if p in seen:
            raise SchemaError(f"{path}.points[{i}]", f"duplicate point {list(p)}")
        seen.add(p)
    return _wrap(lambda: DigitalImage.of(pts, u=u, dim=dim), path)


def basepoint_from_json(d, path: str = "$"):
    return _opt_point(d.get("basepoint"), f"{path}.basepoint") if isinstance(d, dict) else None


def map_to_json(f: DigitalMap) -> dict:
    return {"domain": image_to_json(f.domain), "codomain": image_to_json(f.codomain),
            "pairs": [[list(p), list(v)] for p, v in f.items()]}


def map_from_json(d, path: str = "$", domain: DigitalImage | None = None,
                  codomain: DigitalImage | None = None) -> DigitalMap:
    X = domain if domain is not None else image_from_json(_get(d, "domain", path), f"{path}.domain")
    Y = codomain if codomain is not None else image_from_json(_get(d, "codomain", path), f"{path}.codomain")
    assignment = {}
    for i, pair in enumerate(_list(_get(d, "pairs", path), f"{path}.pairs")):
        pp = f"{path}.pairs[{i}]"
        pair = _list(pair, pp)
        if len(pair) != 2:
            raise SchemaError(pp, "expected [point, value]")
        p = _point(pair[0], f"{pp}[0]")
        if p in assignment:
            raise SchemaError(pp, f"point {list(p)} assigned twice")
        assignment[p] = _point(pair[1], f"{pp}[1]")
    return _wrap(lambda: DigitalMap.from_dict(X, Y, assignment), path)


def _maps_from(lst, path) -> tuple:
    return tuple(map_from_json(m, f"{path}[{i}]") for i, m in enumerate(_list(lst, path)))


def _pointmap_to_json(d: dict) -> list:
    return [[list(p), n] for p, n in sorted(d.items())]


def _pointmap_from_json(lst, path) -> dict:
    out = {}
    for i, item in enumerate(_list(lst, path)):
        ip = f"{path}[{i}]"
        item = _list(item, ip)
        if len(item) != 2:
            raise SchemaError(ip, "expected [point, integer]")
        out[_point(item[0], f"{ip}[0]")] = _int(item[1], f"{ip}[1]")
    return out


# -- homotopies --------------------------------------------------------------

def _pointed(x):
    return None if x is None else list(x)


def homotopy_to_json(F: Homotopy) -> dict:
    return {"type": "homotopy", "layers": [map_to_json(l) for l in F.layers], "pointed_at": _pointed(F.pointed_at)}


def homotopy_from_json(d, path: str = "$") -> Homotopy:
    layers = _maps_from(_get(d, "layers", path), f"{path}.layers")
    if not layers:
        raise SchemaError(f"{path}.layers", "need at least one layer")
    return _wrap(lambda: Homotopy(layers, _opt_point(d.get("pointed_at"), f"{path}.pointed_at")), path)


def l_homotopy_to_json(F: LHomotopy) -> dict:
    return {"type": "l-homotopy", "layers": [map_to_json(l) for l in F.layers],
            "stab": _pointmap_to_json(F.stab), "pointed_at": _pointed(F.pointed_at)}


def l_homotopy_from_json(d, path: str = "$") -> LHomotopy:
    layers = _maps_from(_get(d, "layers", path), f"{path}.layers")
    if not layers:
        raise SchemaError(f"{path}.layers", "need at least one layer")
    stab = _pointmap_from_json(_get(d, "stab", path), f"{path}.stab")
    return _wrap(lambda: LHomotopy(layers, stab, _opt_point(d.get("pointed_at"), f"{path}.pointed_at")), path)


def long_to_json(F: LongHomotopy) -> dict:
    return {"type": "long", "t_min": F.t_min, "layers": [map_to_json(l) for l in F.layers],
            "bounds": _pointmap_to_json(F.bounds), "pointed_at": _pointed(F.pointed_at)}


def long_from_json(d, path: str = "$") -> LongHomotopy:
    layers = _maps_from(_get(d, "layers", path), f"{path}.layers")
    t_min = _int(_get(d, "t_min", path), f"{path}.t_min")
    if len(layers) != 1 - 2 * t_min:
        raise SchemaError(f"{path}.t_min", f"window {t_min}..{-t_min} does not match {len(layers)} layers")
    bounds = _pointmap_from_json(_get(d, "bounds", path), f"{path}.bounds")
    return _wrap(lambda: LongHomotopy(layers, bounds, _opt_point(d.get("pointed_at"), f"{path}.pointed_at")), path)


def real_to_json(F: RealHomotopy) -> dict:
    return {"type": "real", "jumps": [_frac_str(q) for q in F.jumps], "at0": map_to_json(F.at0),
            "open": [map_to_json(l) for l in F.open_layers], "atjump": [map_to_json(l) for l in F.jump_layers],
            "at1": map_to_json(F.at1), "pointed_at": _pointed(F.pointed_at)}


def real_from_json(d, path: str = "$") -> RealHomotopy:
    jumps = [_frac(q, f"{path}.jumps[{i}]") for i, q in enumerate(_list(_get(d, "jumps", path), f"{path}.jumps"))]
    at0 = map_from_json(_get(d, "at0", path), f"{path}.at0")
    at1 = map_from_json(_get(d, "at1", path), f"{path}.at1")
    opens = _maps_from(_get(d, "open", path), f"{path}.open")
    atj = _maps_from(_get(d, "atjump", path), f"{path}.atjump")
    return _wrap(lambda: RealHomotopy(jumps, at0, opens, atj, at1,
                                      _opt_point(d.get("pointed_at"), f"{path}.pointed_at")), path)


# -- loops -------------------------------------------------------------------

def ecpath_to_json(p: ECPath) -> dict:
    return {"type": "ec-path", "image": image_to_json(p.image), "prefix": [list(v) for v in p.prefix],
            "tail": list(p.tail)}


def ecpath_from_json(d, path: str = "$", image: DigitalImage | None = None) -> ECPath:
    X = image if image is not None else image_from_json(_get(d, "image", path), f"{path}.image")
    prefix = [_point(v, f"{path}.prefix[{i}]") for i, v in enumerate(_list(_get(d, "prefix", path), f"{path}.prefix"))]
    tail = _point(_get(d, "tail", path), f"{path}.tail")
    return _wrap(lambda: ECPath(tuple(prefix), tail, X), path)


def ec_homotopy_to_json(H: ECHomotopy) -> dict:
    return {"type": "ec-homotopy", "rows": [ecpath_to_json(r) for r in H.rows], "endpoints_fixed": H.endpoints_fixed}


def ec_homotopy_from_json(d, path: str = "$") -> ECHomotopy:
    rows = tuple(ecpath_from_json(r, f"{path}.rows[{i}]")
                 for i, r in enumerate(_list(_get(d, "rows", path), f"{path}.rows")))
    fixed = d.get("endpoints_fixed", True)
    if not isinstance(fixed, bool):
        raise SchemaError(f"{path}.endpoints_fixed", "expected a boolean")
    return _wrap(lambda: ECHomotopy(rows, fixed), path)


# -- certificates ------------------------------------------------------------

_H_ENC = {"plain": homotopy_to_json, "long": long_to_json, "real": real_to_json}
_H_DEC = {"plain": homotopy_from_json, "long": long_from_json, "real": real_from_json}
_CERT_CLS = {"plain": EquivalenceCertificate, "long": LongEquivalenceCertificate, "real": RealEquivalenceCertificate}


def _bp_to_json(bp):
    return None if bp is None else [list(bp[0]), list(bp[1])]


def _bp_from_json(v, path):
    if v is None:
        return None
    v = _list(v, path)
    if len(v) != 2:
        raise SchemaError(path, "expected [x0, y0]")
    return (_point(v[0], f"{path}[0]"), _point(v[1], f"{path}[1]"))


def filtration_to_json(F: Filtration) -> dict:
    return {"levels": [image_to_json(X) for X in F.levels], "exhausts": F.exhausts,
            "whole": None if F.whole is None else image_to_json(F.whole)}


def filtration_from_json(d, path: str = "$") -> Filtration:
    levels = tuple(image_from_json(X, f"{path}.levels[{i}]")
                   for i, X in enumerate(_list(_get(d, "levels", path), f"{path}.levels")))
    whole = d.get("whole")
    whole = None if whole is None else image_from_json(whole, f"{path}.whole")
    exhausts = d.get("exhausts")
    return _wrap(lambda: Filtration(levels, exhausts, whole), path)


def certificate_kind(cert) -> str:
    if isinstance(cert, SimilarityCertificate):
        return "similarity"
    for k, cls in _CERT_CLS.items():
        if isinstance(cert, cls):
            return k
    raise DigitopError(f"not a certificate: {type(cert).__name__}")


def certificate_to_json(cert) -> dict:
    kind = certificate_kind(cert)
    if kind == "similarity":
        def pairs(R):
            return [{"v": v, "w": w, "homotopy": homotopy_to_json(h)} for (v, w), h in sorted(R.items())]
        return {"type": "certificate", "kind": kind, "FX": filtration_to_json(cert.FX),
                "FY": filtration_to_json(cert.FY),
                "f": [map_to_json(m) for m in cert.f], "g": [map_to_json(m) for m in cert.g],
                "H": [homotopy_to_json(h) for h in cert.H], "K": [homotopy_to_json(h) for h in cert.K],
                "Rf": pairs(cert.Rf), "Rg": pairs(cert.Rg), "basepoints": _bp_to_json(cert.basepoints)}
    enc = _H_ENC[kind]
    return {"type": "certificate", "kind": kind, "f": map_to_json(cert.f), "g": map_to_json(cert.g),
            "H": enc(cert.H), "K": enc(cert.K), "basepoints": _bp_to_json(cert.basepoints)}


def certificate_from_json(d, path: str = "$"):
    kind = _get(d, "kind", path)
    bp = _bp_from_json(d.get("basepoints"), f"{path}.basepoints")
    if kind == "similarity":
        def pairs(key):
            out = {}
            for i, item in enumerate(_list(_get(d, key, path), f"{path}.{key}")):
                ip = f"{path}.{key}[{i}]"
                v = _int(_get(item, "v", ip), f"{ip}.v")
                w = _int(_get(item, "w", ip), f"{ip}.w")
                out[(v, w)] = homotopy_from_json(_get(item, "homotopy", ip), f"{ip}.homotopy")
            return out

        def homs(key):
            return tuple(homotopy_from_json(h, f"{path}.{key}[{i}]")
                         for i, h in enumerate(_list(_get(d, key, path), f"{path}.{key}")))

        return SimilarityCertificate(
            filtration_from_json(_get(d, "FX", path), f"{path}.FX"),
            filtration_from_json(_get(d, "FY", path), f"{path}.FY"),
            _maps_from(_get(d, "f", path), f"{path}.f"), _maps_from(_get(d, "g", path), f"{path}.g"),
            homs("H"), homs("K"), pairs("Rf"), pairs("Rg"), bp)
    if kind not in _H_DEC:
        raise SchemaError(f"{path}.kind", f"unknown certificate kind {kind!r}")
    dec = _H_DEC[kind]
    return _CERT_CLS[kind](map_from_json(_get(d, "f", path), f"{path}.f"),
                           map_from_json(_get(d, "g", path), f"{path}.g"),
                           dec(_get(d, "H", path), f"{path}.H"), dec(_get(d, "K", path), f"{path}.K"), bp)


_ENCODERS = [
    (SimilarityCertificate, certificate_to_json), (EquivalenceCertificate, certificate_to_json),
    (LongEquivalenceCertificate, certificate_to_json), (RealEquivalenceCertificate, certificate_to_json),
    (Homotopy, homotopy_to_json), (LHomotopy, l_homotopy_to_json), (LongHomotopy, long_to_json),
    (RealHomotopy, real_to_json), (ECHomotopy, ec_homotopy_to_json), (ECPath, ecpath_to_json),
    (DigitalMap, map_to_json), (DigitalImage, image_to_json),
]


def to_json(obj) -> dict:
    for cls, enc in _ENCODERS:
        if isinstance(obj, cls):
            return enc(obj)
    raise DigitopError(f"no JSON encoding for {type(obj).__name__}")
