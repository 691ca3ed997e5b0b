"""``digitop`` command line: build, check, search, convert, pi1.

Every command prints one JSON report on stdout.  Exit codes: 0 pass or
found, 1 fail, 2 budget exhausted or not stable, 3 usage error.
"""
from __future__ import annotations

import argparse
import sys

from . import constructions as cons
from .ecpath import (
    Equal,
    check_ec_homotopy,
    loops_equal_within_budget,
    push_loop,
)
from .errors import BudgetExceeded, DigitopError
from .homotopy import Found, check_equivalence, check_homotopy, search_contraction, search_homotopy
from .lattice import DigitalImage
from .longhtpy import (
    check_l_homotopy,
    check_long_equivalence,
    check_long_homotopy,
    finite_to_long,
    l_to_long,
    long_to_finite,
)
from .maps import check_continuity_connected, check_continuity_edges, first_discontinuity
from .realhtpy import (
    check_real_equivalence,
    check_real_homotopy,
    finite_to_real,
    long_to_real,
    real_from_equivalence,
    real_to_finite,
)
from .serialize import (
    SchemaError,
    certificate_from_json,
    certificate_kind,
    dumps,
    ec_homotopy_from_json,
    ecpath_from_json,
    homotopy_from_json,
    image_from_json,
    l_homotopy_from_json,
    long_from_json,
    map_from_json,
    read_json,
    real_from_json,
    to_json,
    write_json,
)
from .similarity import (
    NotStable,
    check_induced_homomorphism,
    check_similarity,
    extract_equivalence_when_stable,
    induced_pi1_map,
    truncate_similarity,
)

EXIT_PASS, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- reporting ---------------------------------------------------------------

def _verdict(check, **extra) -> tuple[int, dict]:
    if check:
        return EXIT_PASS, {"status": "pass", **extra}
    return EXIT_FAIL, {"status": "fail", "clause": check.clause, "detail": check.detail, **extra}


def _emit_artifact(obj, out: str | None, report: dict) -> dict:
    data = to_json(obj)
    if out:
        write_json(out, data)
        report["witness_path"] = out
    else:
        report["witness"] = data
    return report


def _point_arg(s: str) -> tuple:
    try:
        return tuple(int(c) for c in s.split(","))
    except ValueError:
        raise UsageError(f"bad point {s!r}; expected comma-separated integers") from None


# -- build -------------------------------------------------------------------

def _build(a) -> tuple[int, dict]:
    what = a.what
    if a.family == "cube":
        center = _point_arg(a.center) if a.center else (0,) * a.dim
        if len(center) != a.dim:
            raise UsageError("center does not match --dim")
        makers = {
            "image": lambda: cons.cube(center, a.radius, a.u),
            "l-homotopy": lambda: cons.cube_contraction(center, a.radius, a.u),
            "long": lambda: cons.cube_long_certificate(center, a.radius, a.u),
            "equivalence": lambda: cons.cube_equivalence(center, a.radius, a.u),
            "similarity": lambda: cons.cube_similarity(center, a.depth or a.radius, a.u),
            "real": lambda: real_from_equivalence(cons.cube_long_certificate(center, a.radius, a.u)),
        }
    elif a.family == "tree":
        T = _load_tree(a)
        makers = {
            "image": lambda: T.image,
            "homotopy": lambda: cons.tree_contraction(T),
            "l-homotopy": lambda: cons.tree_l_homotopy(T),
            "long": lambda: cons.tree_long_certificate(T),
            "equivalence": lambda: cons.tree_equivalence(T),
            "similarity": lambda: cons.tree_similarity(T, a.depth or max(T.eccentricity, 1)),
            "real": lambda: real_from_equivalence(cons.tree_long_certificate(T)),
        }
    elif a.family == "t-image":
        makers = {
            "image": lambda: cons.t_image(a.radius)[1],
            "similarity": lambda: cons.t_image_similarity(a.depth or a.radius),
            "long": lambda: cons.t_image_long(a.radius),
        }
    elif a.family in ("wedge", "product"):
        return _build_combined(a)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {a.family}")
    if what not in makers:
        raise UsageError(f"{a.family} cannot build {what!r}; choose from {sorted(makers)}")
    obj = makers[what]()
    return EXIT_PASS, _emit_artifact(obj, a.out, {"status": "pass", "built": f"{a.family} {what}"})


def _load_tree(a) -> cons.TreeImage:
    if a.image:
        X = image_from_json(read_json(a.image))
    elif a.edges:
        data = read_json(a.edges)
        if not isinstance(data, list):
            raise SchemaError("$", "expected a list of [p, q] edges")
        pts, given = set(), set()
        for i, e in enumerate(data):
            if not (isinstance(e, list) and len(e) == 2):
                raise SchemaError(f"$[{i}]", "expected [p, q]")
            p, q = tuple(e[0]), tuple(e[1])
            pts |= {p, q}
            given.add(frozenset((p, q)))
        X = DigitalImage.of(pts, u=a.u)
        actual = {frozenset(e) for e in X.edges()}
        if actual != given:
            raise DigitopError("the listed edges are not the adjacency graph of their points")
    else:
        raise UsageError("build tree needs --image or --edges")
    root = _point_arg(a.root) if a.root else X.ordered[0]
    return cons.tree_from_image(X, root)


def _build_combined(a) -> tuple[int, dict]:
    if a.certs:
        certs = [certificate_from_json(read_json(p)) for p in a.certs]
        if a.family == "wedge":
            if len(certs) != 2:
                raise UsageError("wedge takes exactly two certificates")
            obj = cons.wedge_certificates(*certs)
        else:
            obj = cons.product_certificates(certs)
    elif a.parts:
        images = [image_from_json(read_json(p)) for p in a.parts]
        if a.family == "wedge":
            if len(images) != 2:
                raise UsageError("wedge takes exactly two images")
            w = cons.wedge(*images)
            obj = w.image
            report = {"status": "pass", "built": "wedge image", "wedge_point": list(w.wedge_point)}
            return EXIT_PASS, _emit_artifact(obj, a.out, report)
        obj = cons.product(images).image
    else:
        raise UsageError(f"build {a.family} needs --parts or --certs")
    return EXIT_PASS, _emit_artifact(obj, a.out, {"status": "pass", "built": a.family})


# -- check -------------------------------------------------------------------

def _opt_map(path):
    return None if path is None else map_from_json(read_json(path))


def _check(a) -> tuple[int, dict]:
    what = a.what
    if what == "continuity":
        f = map_from_json(read_json(_need(a.map, "--map")))
        if a.oracle == "connected":
            ok = check_continuity_connected(f)
        else:
            ok = check_continuity_edges(f)
        if ok:
            return EXIT_PASS, {"status": "pass", "oracle": a.oracle}
        bad = first_discontinuity(f)
        detail = f"edge {list(bad[0])}-{list(bad[1])}" if bad else ""
        return EXIT_FAIL, {"status": "fail", "clause": "continuity", "detail": detail, "oracle": a.oracle}
    if what == "homotopy":
        F = homotopy_from_json(read_json(_need(a.homotopy, "--homotopy")))
        return _verdict(check_homotopy(F, _opt_map(a.start), _opt_map(a.end)), m=F.m)
    if what == "l-homotopy":
        F = l_homotopy_from_json(read_json(_need(a.homotopy, "--homotopy")))
        return _verdict(check_l_homotopy(F, _opt_map(a.start), _opt_map(a.end)), T=F.T)
    if what == "long":
        if a.cert:
            return _check_cert(a, "long")
        F = long_from_json(read_json(_need(a.homotopy, "--homotopy or --cert")))
        return _verdict(check_long_homotopy(F, _opt_map(a.start), _opt_map(a.end)), T=F.T)
    if what == "real":
        if a.cert:
            return _check_cert(a, "real")
        F = real_from_json(read_json(_need(a.homotopy, "--homotopy or --cert")))
        return _verdict(check_real_homotopy(F, _opt_map(a.start), _opt_map(a.end)), jumps=len(F.jumps))
    if what == "equivalence":
        return _check_cert(a, None)
    if what == "similarity":
        return _check_cert(a, "similarity")
    if what == "ec-homotopy":
        H = ec_homotopy_from_json(read_json(_need(a.homotopy, "--homotopy")))
        return _verdict(check_ec_homotopy(H), rows=H.k)
    raise UsageError(f"unknown check {what}")  # pragma: no cover


def _check_cert(a, expected) -> tuple[int, dict]:
    cert = certificate_from_json(read_json(_need(a.cert, "--cert")))
    kind = certificate_kind(cert)
    if expected is not None and kind != expected:
        raise UsageError(f"expected a {expected} certificate, got {kind}")
    if kind == "similarity":
        depth = a.depth if a.depth is not None else cert.depth
        res = check_similarity(cert, depth)
        if res and a.extract:
            got = extract_equivalence_when_stable(truncate_similarity(cert, depth))
            if isinstance(got, NotStable):
                return EXIT_BUDGET, {"status": "not-stable", "depth": got.depth, "detail": got.reason}
            return EXIT_PASS, _emit_artifact(got, a.out, {"status": "pass", "kind": "plain", "extracted": True})
        return _verdict(res, kind=kind, depth=depth, note="evidence up to the stated depth")
    checker = {"plain": check_equivalence, "long": check_long_equivalence, "real": check_real_equivalence}[kind]
    return _verdict(checker(cert), kind=kind, pointed=cert.pointed)


def _need(v, flag):
    if v is None:
        raise UsageError(f"missing {flag}")
    return v


# -- search ------------------------------------------------------------------

def _search(a) -> tuple[int, dict]:
    if a.what == "homotopy":
        f = map_from_json(read_json(_need(a.start, "--from")))
        g = map_from_json(read_json(_need(a.end, "--to")))
        pointed = _point_arg(a.pointed_at) if a.pointed_at else None
        res = search_homotopy(f, g, a.max_steps, pointed, a.cap)
    else:
        data = read_json(_need(a.image, "--image"))
        X = image_from_json(data)
        res = search_contraction(X, a.max_steps, a.pointed, a.cap)
    if isinstance(res, Found):
        report = {"status": "pass", "result": "found", "m": res.witness.m, "budget_used": {"visited": res.visited}}
        return EXIT_PASS, _emit_artifact(res.witness, a.out, report)
    return EXIT_BUDGET, {"status": "not-within-budget", "max_steps": res.max_steps,
                         "budget_used": {"visited": res.visited, "depth_reached": res.depth_reached}}


# -- convert -----------------------------------------------------------------

_LOADERS = {"finite": homotopy_from_json, "l": l_homotopy_from_json, "long": long_from_json, "real": real_from_json}
_CONVERSIONS = {
    ("finite", "long"): finite_to_long,
    ("l", "long"): l_to_long,
    ("long", "finite"): long_to_finite,
    ("long", "real"): long_to_real,
    ("real", "finite"): real_to_finite,
    ("finite", "real"): finite_to_real,
}
_CHECKERS = {"finite": check_homotopy, "l": check_l_homotopy, "long": check_long_homotopy, "real": check_real_homotopy}


def _convert(a) -> tuple[int, dict]:
    key = (a.src, a.dst)
    if key not in _CONVERSIONS:
        raise UsageError(
            f"conversion {a.src} -> {a.dst} is not supported: only directions with a known construction "
            f"are offered ({', '.join(f'{s}->{d}' for s, d in sorted(_CONVERSIONS))}); "
            "whether the others hold in general is an open question")
    F = _LOADERS[a.src](read_json(a.input))
    src_check = _CHECKERS[a.src](F)
    if not src_check:
        return EXIT_FAIL, {"status": "fail", "clause": f"input {src_check.clause}", "detail": src_check.detail}
    G = _CONVERSIONS[key](F)
    res = _CHECKERS[a.dst](G)
    report = {"status": "pass" if res else "fail", "conversion": f"{a.src}->{a.dst}"}
    if not res:
        report.update(clause=res.clause, detail=res.detail)
        return EXIT_FAIL, report
    return EXIT_PASS, _emit_artifact(G, a.out, report)


# -- pi1 ---------------------------------------------------------------------

def _budget(a):
    if a.rows is None and a.horizon is None:
        return None
    if a.rows is None or a.horizon is None:
        raise UsageError("give both --rows and --horizon, or neither")
    return (a.rows, a.horizon)


def _loop_result(res, report) -> tuple[int, dict]:
    if isinstance(res, Equal):
        report.update(status="pass", result="equal", budget_used={"visited": res.visited})
        return EXIT_PASS, report
    report.update(status="not-within-budget", result="unknown", rows=res.rows, horizon=res.horizon,
                  budget_used={"visited": res.visited})
    return EXIT_BUDGET, report


def _pi1(a) -> tuple[int, dict]:
    if a.what == "check-equal":
        f = ecpath_from_json(read_json(_need(a.loop, "--loop/--left")))
        g = ecpath_from_json(read_json(_need(a.other, "--other/--right")))
        res = loops_equal_within_budget(f, g, _budget(a), a.cap)
        code, report = _loop_result(res, {})
        if isinstance(res, Equal) and a.out:
            write_json(a.out, to_json(res.witness))
            report["witness_path"] = a.out
        return code, report
    if a.what == "push":
        h = map_from_json(read_json(_need(a.map, "--map")))
        L = ecpath_from_json(read_json(_need(a.loop, "--loop/--left")))
        return EXIT_PASS, _emit_artifact(push_loop(h, L), a.out, {"status": "pass"})
    cert = certificate_from_json(read_json(_need(a.cert, "--cert")))
    if certificate_kind(cert) != "similarity":
        raise UsageError("pi1 induced needs a similarity certificate")
    L = ecpath_from_json(read_json(_need(a.loop, "--loop/--left")))
    if a.other:
        L2 = ecpath_from_json(read_json(a.other))
        res = check_induced_homomorphism(cert, L, L2, _budget(a), a.cap)
        return _loop_result(res, {"check": "homomorphism"})
    return EXIT_PASS, _emit_artifact(induced_pi1_map(cert, L), a.out, {"status": "pass"})


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="digitop", description="Digital topology certificates, checks and searches.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    b = sub.add_parser("build", help="generate images, homotopies and certificates")
    b.add_argument("family", choices=["cube", "tree", "t-image", "wedge", "product"])
    b.add_argument("--what", default="image",
                   choices=["image", "homotopy", "l-homotopy", "long", "real", "equivalence", "similarity"])
    b.add_argument("--dim", type=int, default=2)
    b.add_argument("--radius", type=int, default=1)
    b.add_argument("--u", type=int, default=1)
    b.add_argument("--center")
    b.add_argument("--depth", type=int)
    b.add_argument("--image")
    b.add_argument("--edges")
    b.add_argument("--root")
    b.add_argument("--parts", nargs="+")
    b.add_argument("--certs", nargs="+")
    b.add_argument("--out")
    b.set_defaults(run=_build)

    c = sub.add_parser("check", help="verify a map, homotopy or certificate")
    c.add_argument("what", choices=["continuity", "homotopy", "equivalence", "l-homotopy", "long", "real",
                                    "similarity", "ec-homotopy"])
    c.add_argument("--map")
    c.add_argument("--oracle", choices=["edges", "connected"], default="edges")
    c.add_argument("--homotopy", "--witness", dest="homotopy")
    c.add_argument("--cert")
    c.add_argument("--from", dest="start")
    c.add_argument("--to", dest="end")
    c.add_argument("--depth", type=int)
    c.add_argument("--extract", action="store_true", help="collapse a stable similarity certificate")
    c.add_argument("--out")
    c.set_defaults(run=_check)

    s = sub.add_parser("search", help="bounded breadth-first witness search")
    s.add_argument("what", choices=["homotopy", "contraction"])
    s.add_argument("--from", dest="start")
    s.add_argument("--to", dest="end")
    s.add_argument("--image")
    s.add_argument("--max-steps", type=int, required=True)
    s.add_argument("--pointed-at")
    s.add_argument("--pointed", action="store_true")
    s.add_argument("--cap", type=int)
    s.add_argument("--out")
    s.set_defaults(run=_search)

    v = sub.add_parser("convert", help="convert between homotopy timelines")
    v.add_argument("--from", dest="src", required=True, choices=sorted(_LOADERS))
    v.add_argument("--to", dest="dst", required=True, choices=sorted(_LOADERS))
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--out")
    v.set_defaults(run=_convert)

    q = sub.add_parser("pi1", help="loop classes within a budget")
    q.add_argument("what", choices=["check-equal", "push", "induced"])
    q.add_argument("--loop", "--left", dest="loop")
    q.add_argument("--other", "--right", dest="other")
    q.add_argument("--map")
    q.add_argument("--cert")
    q.add_argument("--rows", type=int)
    q.add_argument("--horizon", type=int)
    q.add_argument("--cap", type=int)
    q.add_argument("--out")
    q.set_defaults(run=_pi1)
    return p


def run(argv=None) -> tuple[int, dict]:
    """Parse and execute; returns ``(exit_code, report)``."""
    try:
        args = build_parser().parse_args(argv)
        return args.run(args)
    except UsageError as e:
        return EXIT_USAGE, {"status": "usage-error", "detail": str(e)}
    except SchemaError as e:
        return EXIT_USAGE, {"status": "usage-error", "clause": "malformed input", "detail": str(e)}
    except FileNotFoundError as e:
        return EXIT_USAGE, {"status": "usage-error", "detail": f"no such file: {e.filename}"}
    except BudgetExceeded as e:
        return EXIT_BUDGET, {"status": "not-within-budget", "detail": str(e)}
    except DigitopError as e:
        return EXIT_FAIL, {"status": "fail", "clause": type(e).__name__, "detail": str(e)}


def main(argv=None) -> int:
    code, report = run(argv)
    sys.stdout.write(dumps(report) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
