"""Command-line front end: ``symcr info|compute|suite|model|lie``.

Exit codes: 0 success, 1 suite failure, 2 domain error, 3 input error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import cr_models as crm
from . import domain_geometry as dg
from . import lie_construct as lc
from .config import DEFAULT_TOL, Tolerances
from .errors import (CertificationError, DimensionError, DomainPreconditionError, FrameError,
                     InvertibilityError, PeirceSpaceError, SpecParseError,
                     UnsupportedScopeError)
from .jordan import generic_norm, jordan_context
from .jts import (CartanI, CartanII, certify, element_from_json, element_to_json,
                  parse_system)
from .peirce import classify_tube, maximal_standard_tripotent, peirce_decompose
from .spectral import decomposition_report, spectral_decompose, tripotent_rank_class
from .suite import SuiteConfig, modules, run_suite

EXIT_OK, EXIT_SUITE, EXIT_DOMAIN, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3, 4

DOMAIN_ERRORS = (DomainPreconditionError, CertificationError, InvertibilityError,
                 PeirceSpaceError, UnsupportedScopeError, FrameError)


class InputError(Exception):
    pass


def _emit(obj, args) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _tol(args) -> Tolerances:
    t = getattr(args, "tol", None)
    return DEFAULT_TOL if t is None else Tolerances(eq=t, cluster=t, psd=t)


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _load_element(system, path):
    try:
        return element_from_json(system, _load_json(path))
    except (ValueError, DimensionError) as exc:
        if isinstance(exc, DOMAIN_ERRORS):
            raise
        raise InputError(str(exc)) from exc


def _cplx(x):
    return [float(np.real(x)), float(np.imag(x))]


def _from_cplx(obj):
    arr = np.asarray(obj, dtype=float)
    if arr.shape[-1] != 2:
        raise InputError("complex numbers are encoded as [re, im]")
    return arr[..., 0] + 1j * arr[..., 1]


# ---------------------------------------------------------------------------
# info


def shilov_cr_data(f) -> tuple[int, int]:
    """(CR-dimension, CR-codimension) of the Shilov boundary of a simple factor."""
    if isinstance(f, CartanI):
        return (f.p - f.q) * f.q, f.q * f.q
    q = f.q
    return 2 * q, q * (2 * q - 1)


def info(spec: str) -> dict:
    system = parse_system(spec)
    flags = classify_tube(system)
    per = []
    for f, t in zip(system.factors, flags):
        crd, cod = shilov_cr_data(f)
        per.append({"spec": f.spec(), "rank": f.rank, "dim": f.dim, "tube": t,
                    "shilov_crdim": crd, "shilov_codim": cod})
    out = {"spec": system.spec(), "rank": system.rank, "dim": system.dim,
           "shilov_crdim": sum(p["shilov_crdim"] for p in per),
           "shilov_codim": sum(p["shilov_codim"] for p in per)}
    if len(per) == 1:
        out["tube"] = flags[0]
    else:
        out["tube"] = flags
        out["factors"] = per
    return out


def cmd_info(args) -> int:
    _emit(info(args.system), args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# compute


def _context_tripotent(system, args, tol):
    if args.tripotent:
        return certify(_load_element(system, args.tripotent), tol)
    return maximal_standard_tripotent(system)


def compute(verb: str, system, z, args) -> dict:
    tol = _tol(args)
    if verb == "tripotent":
        e = certify(z, tol)
        pd = peirce_decompose(e, tol)
        return {"tripotent": True, "residual": e.residual,
                "rank_class": tripotent_rank_class(e, tol).value, "peirce_dims": list(pd.dims)}
    if verb == "peirce":
        pd = peirce_decompose(z, tol)
        eye = np.eye(system.dim)
        return {"peirce_dims": list(pd.dims),
                "completeness_residual": float(np.abs(pd.P1 + pd.P12 + pd.P0 - eye).max()),
                "idempotence_residual": float(max(np.abs(P @ P - P).max()
                                                  for P in (pd.P1, pd.P12, pd.P0)))}
    if verb == "spectral":
        return decomposition_report(spectral_decompose(z))
    if verb == "cayley":
        e = _context_tripotent(system, args, tol)
        sp = dg.cayley(e, z, tol)
        return {"t": element_to_json(sp.t), "v": element_to_json(sp.v),
                "membership": dg.siegel_membership(e, sp, tol).value,
                "defect": dg.siegel_defect(sp, tol).norm()}
    if verb == "hull":
        return {"kind": args.kind, "member": dg.hull_membership(system, z, args.kind, tol)}
    if verb == "levi":
        r = dg.levi_cone_probe(certify(z, tol), args.samples or 500, args.seed, tol)
        return {"contains_frame": r.ok, "reason": r.reason, "residuals": list(r.residuals),
                "samples": r.samples}
    if verb == "norm":
        e = _context_tripotent(system, args, tol)
        n = generic_norm(jordan_context(e, tol), z)
        return {"norm": _cplx(n), "abs": abs(n)}
    raise InputError(f"unknown verb {verb!r}")


def cmd_compute(args) -> int:
    system = parse_system(args.system)
    z = _load_element(system, args.input)
    out = compute(args.verb, system, z, args)
    _emit({"verb": args.verb, "system": system.spec(), "result": out}, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# suite


def cmd_suite(args) -> int:
    filters = tuple(args.filter or ())
    bad = set(filters) - set(modules())
    if bad:
        raise InputError(f"unknown module filter(s) {sorted(bad)}; known: {modules()}")
    config = SuiteConfig(seed=args.seed, samples=args.samples, tol=args.tol, filters=filters)
    report = run_suite(config)
    _emit(report.to_json(with_time=True), args)
    return EXIT_OK if report.passed else EXIT_SUITE


# ---------------------------------------------------------------------------
# model


def _model_samples(kind: str, n: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    worst = 0.0
    if kind == "sphere":
        for _ in range(n):
            a, z = crm.random_sphere_point(3, rng), crm.random_sphere_point(3, rng)
            s = crm.sphere_symmetry(a, z)
            worst = max(worst, abs(np.linalg.norm(s) - 1),
                        float(np.linalg.norm(crm.sphere_symmetry(a, s) - z)))
            if abs(1 - z[0]) > 0.05:
                worst = max(worst, crm.heisenberg_n_residual(*crm.sphere_cayley(z[1:], z[0])))
    elif kind == "dual":
        for _ in range(n):
            z = crm.random_sphere_point(3, rng)
            if abs(z[0]) > 0.1:
                worst = max(worst, crm.dual_sphere_residual(*crm.sphere_to_dual(z)))
    elif kind == "quadric":
        m = crm.heisenberg_model()
        for _ in range(n):
            a, p = m.random_point(rng), m.random_point(rng)
            worst = max(worst, crm.quadric_symmetry(m, a, p).residual,
                        crm.quadric_action(m, a[0], m.random_v(rng), p).residual)
        worst = max(worst, crm.quadric_levi_check(m))
    elif kind == "heis3":
        for _ in range(n):
            a, x = crm.heis3_random(rng), crm.heis3_random(rng)
            worst = max(worst, crm.heis3_product(a, x).residual,
                        crm.heis3_symmetry(x).residual)
    elif kind == "syin5":
        for _ in range(n):
            p = crm.syin5_sample(seed=rng)
            worst = max(worst, crm.syin5_residual(*crm.syin5_symmetry(p)))
    return {"model": kind, "samples": n, "seed": seed, "max_residual": worst}


def _model_apply(kind: str, obj: dict) -> dict:
    try:
        if kind == "sphere":
            a, z = _from_cplx(obj["a"]), _from_cplx(obj["z"])
            return {"image": [_cplx(x) for x in crm.sphere_symmetry(a, z)]}
        if kind == "dual":
            t, v = crm.sphere_to_dual(_from_cplx(obj["z"]))
            return {"t": _cplx(t), "v": [_cplx(x) for x in v],
                    "residual": crm.dual_sphere_residual(t, v)}
        if kind == "quadric":
            m = crm.heisenberg_model()
            a = (_from_cplx(obj["a"]["z"]), _from_cplx(obj["a"]["w"]))
            p = (_from_cplx(obj["point"]["z"]), _from_cplx(obj["point"]["w"]))
            q = crm.quadric_symmetry(m, a, p)
            return {"z": [_cplx(x) for x in q.z], "w": [_cplx(x) for x in q.w],
                    "residual": q.residual}
        if kind == "heis3":
            a = crm.Heis3Point(*(complex(c) for c in _from_cplx(obj["a"])))
            x = crm.Heis3Point(*(complex(c) for c in _from_cplx(obj["x"])))
            r = crm.heis3_product(a, x)
            return {"product": [_cplx(c) for c in r.as_tuple()], "residual": r.residual}
        if kind == "syin5":
            p = tuple(complex(c) for c in _from_cplx(obj["point"]))
            s = crm.syin5_symmetry(p)
            return {"member": crm.syin5_membership(*p),
                    "image": [_cplx(c) for c in s], "residual": crm.syin5_residual(*s)}
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed model input: {exc}") from exc
    raise InputError(f"unknown model {kind!r}")


def cmd_model(args) -> int:
    if args.input:
        out = _model_apply(args.kind, _load_json(args.input))
    else:
        out = _model_samples(args.kind, args.samples or 100, args.seed)
    _emit(out, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# lie


def lie_report(target: str) -> dict:
    kind, _, params = target.partition(":")
    try:
        nums = [int(x) for x in params.split(",")] if params else []
    except ValueError as exc:
        raise InputError(f"bad parameters in {target!r}") from exc
    try:
        if kind == "vorh" and len(nums) == 1:
            data = lc.build_vorh(*nums)
        elif kind == "tett" and len(nums) == 2:
            data = lc.build_tett(*nums)
        elif kind == "su" and len(nums) == 2:
            data = lc.build_su_sigma(*nums).data
        else:
            raise InputError(f"expected vorh:<n> | tett:<n>,<d> | su:<p>,<q>, got {target!r}")
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    f = lc.filtration(data.g, data.h, data.k)
    out = {"target": target,
           "dims": {"g": data.g.dim, "h": int(data.h.shape[0]), "k": int(data.k.shape[0]),
                    "chain": list(f.dims)},
           "kappa": f.kappa, "integrable": lc.integrability_check(data), "minimal": f.minimal,
           "residuals": {"closure": lc.closure_check(data.g)[1],
                         "jacobi": lc.jacobi_residual(data.g),
                         "integrability": lc.integrability_residual(data),
                         **data.residuals()}}
    if kind == "tett":
        out["kappa_formula"] = lc.tett_kappa_formula(*nums)
    return out


def cmd_lie(args) -> int:
    _emit(lie_report(args.target), args)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--json", action="store_true", help="JSON output (the default)")
    common.add_argument("--out", default=None, help="write the report to this path")

    p = argparse.ArgumentParser(prog="symcr", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="describe a triple system")
    s.add_argument("system")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("compute", parents=[common], help="run one computation")
    s.add_argument("verb", choices=["tripotent", "peirce", "spectral", "cayley", "hull",
                                    "levi", "norm"])
    s.add_argument("system")
    s.add_argument("input", help="element JSON file ('-' for stdin)")
    s.add_argument("--kind", choices=["convex", "polynomial", "rational"], default="rational")
    s.add_argument("--tripotent", default=None, help="context tripotent JSON (default: standard)")
    s.set_defaults(func=cmd_compute)

    s = sub.add_parser("suite", parents=[common], help="run the invariant suite")
    s.add_argument("--filter", action="append", help="restrict to a module (repeatable)")
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("model", parents=[common], help="CR model manifolds")
    s.add_argument("kind", choices=["sphere", "dual", "quadric", "heis3", "syin5"])
    s.add_argument("--input", default=None, help="point JSON; without it, sample checks run")
    s.set_defaults(func=cmd_model)

    s = sub.add_parser("lie", parents=[common], help="Lie algebra constructions")
    s.add_argument("action", choices=["build"])
    s.add_argument("target", help="vorh:<n> | tett:<n>,<d> | su:<p>,<q>")
    s.set_defaults(func=cmd_lie)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.samples is not None and args.samples < 1:
            raise InputError("--samples must be >= 1")
        if args.tol is not None and not args.tol > 0:
            raise InputError("--tol must be positive")
        return args.func(args)
    except (SpecParseError, InputError, DimensionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DOMAIN_ERRORS as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
