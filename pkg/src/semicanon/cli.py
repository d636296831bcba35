"""Command-line front end: ``semicanon <command> [options]``; every command prints one JSON document."""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .acceptance import run_acceptance, summary_line
from .canonical import CanonicalSpec, TubeModuleSpec, build_canonical
from .errors import RelationFailure, SemicanonError
from .exactfield import make_field
from .presentation import hilbert_check, presentation, verify_relations
from .regular import (RegularProfile, classify, compose, decompose, ext_minimal, expected_end_dim,
                      index_data, pairings, realize)
from .repkit import Representation, end_dim, hom_dim
from .semiinv import SemiInvariant, pencil_form, weight_space_dim

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2


def _int_list(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def parse_profile(text: str, ts) -> RegularProfile:
    """Either JSON or the compact form 'p:2;0:0,1;1:1,0'."""
    text = text.strip()
    if text.startswith("{"):
        return RegularProfile.from_json(json.loads(text), ts)
    p = 0
    res = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        key, _, vals = part.partition(":")
        if key.strip() == "p":
            p = int(vals)
        else:
            res[int(key)] = tuple(_int_list(vals))
    residual = tuple(res.get(k, (0,) * t.rank) for k, t in enumerate(ts.tubes))
    return RegularProfile(p, residual)


def _load_json_arg(text: str):
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    with open(text) as fh:
        return json.load(fh)


def _setup(args):
    params = [x for x in args.params.split(",") if x.strip()] if args.params else []
    spec = CanonicalSpec(tuple(_int_list(args.weights)), tuple(params))
    ts = build_canonical(spec)
    field = make_field(args.field, args.modulus)
    return ts, field


def _dimvec(args, ts):
    if getattr(args, "dim", None):
        return ts.quiver.dimvec(_int_list(args.dim))
    if getattr(args, "profile", None):
        return compose(ts, parse_profile(args.profile, ts))
    raise SemicanonError("give a dimension vector with --dim or --profile")


def _vec(ts, d):
    return [d[v] for v in ts.vertices]


def cmd_algebra(args):
    ts, _ = _setup(args)
    return ts.to_json()


def cmd_decompose(args):
    ts, _ = _setup(args)
    d = _dimvec(args, ts)
    dh, hd = pairings(ts, d)
    out = {"d": _vec(ts, d), "class": classify(ts, d), "dh": dh, "hd": hd}
    if out["class"] == "R":
        prof = decompose(ts, d)
        out["profile"] = prof.to_json()
        out["indexData"] = index_data(prof).to_json()
    return out


def cmd_presentation(args):
    ts, field = _setup(args)
    d = _dimvec(args, ts)
    return presentation(ts, d, field).to_json()


def cmd_verify(args):
    ts, field = _setup(args)
    d = _dimvec(args, ts)
    rep = presentation(ts, d, field)
    corrupt = args.corrupt
    cert = verify_relations(ts, d, rep, field, args.samples, args.seed, corrupt=corrupt)
    if args.hilbert:
        cert["hilbert"] = hilbert_check(ts, d, rep, args.hilbert.split(";"), field, args.seed)
    cert["d"] = _vec(ts, d)
    return cert


def cmd_weightdim(args):
    ts, field = _setup(args)
    d = _dimvec(args, ts)
    return weight_space_dim(ts, d, args.r, field, args.seed)


def cmd_extminimal(args):
    ts, field = _setup(args)
    d = _dimvec(args, ts)
    segs, homog = ext_minimal(ts, d)
    W = realize(ts, segs, homog, field)
    out = {
        "d": _vec(ts, d),
        "segments": [s.to_json() for s in segs],
        "homogeneous": None if homog is None else {"point": homog[0].to_json(), "length": homog[1]},
        "endDimension": end_dim(W),
        "expectedEndDimension": expected_end_dim(ts, d),
    }
    if args.module_out:
        with open(args.module_out, "w") as fh:
            json.dump(W.to_json(), fh, indent=2, sort_keys=True)
        out["moduleFile"] = args.module_out
    return out


def cmd_eval(args):
    ts, field = _setup(args)
    specs = _load_json_arg(args.module)
    specs = [specs] if isinstance(specs, dict) else specs
    specs = [TubeModuleSpec.from_json(s) for s in specs]
    M = Representation.from_json(_load_json_arg(args.rep), quiver=ts.quiver, field=field)
    si = SemiInvariant.from_specs(ts, specs, M.dim, field)
    value = si(M)
    return {
        "value": field.to_str(value),
        "homDimension": hom_dim(si.V, M),
        "weight": [si.theta[v] for v in ts.vertices],
        "field": field.to_json(),
    }


def cmd_pencil(args):
    ts, field = _setup(args)
    M = Representation.from_json(_load_json_arg(args.rep), quiver=ts.quiver, field=field)
    return pencil_form(ts, M).to_json()


def cmd_acceptance(args):
    field = make_field(args.field, args.modulus)
    only = set(_int_list(args.only)) if args.only else None
    results = run_acceptance(field, args.seed, only)
    for res in results:
        print(summary_line(res), file=sys.stderr)
    return {"passed": all(r["passed"] for r in results), "results": results}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semicanon", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, algebra=True, dim=True):
        if algebra:
            p.add_argument("--weights", required=True, help="arm weights, e.g. 2,2,2")
            p.add_argument("--params", default="", help="lambda_3..lambda_t, e.g. 2 or 2,3/2")
        if dim:
            p.add_argument("--dim", help="dimension vector in the vertex order printed by 'algebra'")
            p.add_argument("--profile", help="regular profile, e.g. 'p:2;0:0,1' or JSON")
        p.add_argument("--field", choices=["prime", "rational"], default="prime")
        p.add_argument("--modulus", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json-out", dest="json_out", help="also write the JSON document to this path")

    p = sub.add_parser("algebra", help="quiver and tube data of a canonical algebra")
    common(p, dim=False)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("decompose", help="classify a dimension vector and decompose it")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("presentation", help="generators and relations of the semi-invariant ring")
    common(p)
    p.set_defaults(func=cmd_presentation)

    p = sub.add_parser("verify", help="certify the relations on seeded samples")
    common(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--corrupt", type=int, default=None, help="perturb this relation (negative control)")
    p.add_argument("--hilbert", default="", help="also compare dimensions for weights, e.g. '0h;h;2h'")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("weightdim", help="dimension of one weight space")
    common(p)
    p.add_argument("--r", required=True, help="weight vector: 'h', '2h' or a comma list")
    p.set_defaults(func=cmd_weightdim)

    p = sub.add_parser("extminimal", help="ext-minimal witness of a regular dimension vector")
    common(p)
    p.add_argument("--module-out", dest="module_out", help="write the realized module here")
    p.set_defaults(func=cmd_extminimal)

    p = sub.add_parser("eval", help="evaluate c_d^V on a representation file")
    common(p, dim=False)
    p.add_argument("--module", required=True, help="tube module spec(s) as JSON or a JSON file")
    p.add_argument("--rep", required=True, help="representation JSON file")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("pencil", help="pencil form of a representation file")
    common(p, dim=False)
    p.add_argument("--rep", required=True, help="representation JSON file")
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("acceptance", help="run the acceptance suite")
    common(p, algebra=False, dim=False)
    p.add_argument("--only", help="comma list of criterion numbers")
    p.set_defaults(func=cmd_acceptance)
    return parser


def _emit(obj, path: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    print(text)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except RelationFailure as exc:
        err = exc.to_json()
        if exc.witness is not None:
            err["witness"] = exc.witness.to_json()
        _emit(err, getattr(args, "json_out", None))
        return EXIT_VERIFY
    except SemicanonError as exc:
        _emit(exc.to_json(), getattr(args, "json_out", None))
        return EXIT_INPUT
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, getattr(args, "json_out", None))
        return EXIT_INPUT
    _emit(out, args.json_out)
    if args.command == "acceptance" and not out["passed"]:
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
