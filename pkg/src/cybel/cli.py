"""``cybel`` command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import __version__
from .bdtriple import (
    DEFAULT_RANK_BOUND,
    RankBoundExceeded,
    TripleRejected,
    empty_triple,
    enumerate_triples,
    triple_from_text,
)
from .centralizer import (
    applicable_models,
    centralizer_report,
    lattice_model,
    model_from_json,
)
from .chevalley import build_algebra
from .galois import NoSolution, parse_point, solve_J, verify_twisted, verify_untwisted
from .rmatrix import VerificationError, build_bd, build_dj, solve_r0, verify_equivalence
from .rootsys import cartan_matrix
from .scalars import QuadraticNumberField, Tower
from .tensor import swap

ATLAS_TYPES = ("A", "B", "C", "D", "E", "F", "G")
# models in which the centralizer is expected to be connected
CONNECTED_MODELS = ("gl", "so-odd", "sp")


class UsageError(ValueError):
    pass


class Failure(RuntimeError):
    """A check ran and came out false; carries the partial report."""

    def __init__(self, result: dict, message: str):
        super().__init__(message)
        self.result = result


# ---------------------------------------------------------------------------
# helpers


def _algebra(args):
    kind = args.type.upper()
    try:
        cartan_matrix(kind, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.rank > args.rank_bound:
        raise UsageError(f"rank {args.rank} exceeds --rank-bound {args.rank_bound}")
    return build_algebra(kind, args.rank)


def _triple(alg, text: str | None):
    if not text:
        return empty_triple()
    try:
        return triple_from_text(alg.rs, text)
    except TripleRejected as exc:
        raise UsageError(f"triple rejected ({exc.reason}): {text}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _model(alg, name: str):
    if name.endswith(".json") or Path(name).is_file():
        try:
            return model_from_json(Path(name), alg.rs)
        except (OSError, KeyError, ValueError) as exc:
            raise UsageError(f"bad lattice model file {name}: {exc}") from None
    try:
        return lattice_model(name, alg.rs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _number_field(base: str):
    if base in ("Q", "QQ"):
        return None
    if base in ("Q(i)", "Qi", "gaussian"):
        return QuadraticNumberField.gaussian()
    raise UsageError(f"unsupported base field {base!r}; use Q or Q(i)")


def _require(result: dict, keys, message: str) -> dict:
    if not all(result[k] for k in keys):
        raise Failure(result, message)
    return result


# ---------------------------------------------------------------------------
# commands


def cmd_roots(args) -> dict:
    alg = _algebra(args)
    rs = alg.rs
    w, sigma = alg.longest
    return {
        "type": rs.label,
        "cartan": [list(r) for r in rs.cartan],
        "symmetrizer": list(rs.symmetrizer),
        "positive_roots": [list(r) for r in rs.positive_roots],
        "count": len(rs.positive_roots),
        "highest_root": list(rs.highest_root),
        "w0_word": [i + 1 for i in w.word],
        "minus_w0_permutation": [sigma[i] + 1 for i in range(rs.rank)],
    }


def cmd_triples(args) -> dict:
    alg = _algebra(args)
    try:
        trs = enumerate_triples(alg.rs, args.rank_bound)
    except RankBoundExceeded as exc:
        raise UsageError(str(exc)) from None
    return {"type": alg.rs.label, "count": len(trs), "triples": [t.to_text() for t in trs]}


def _parse_r0(text: str | None):
    if text is None or text == "canonical":
        return None
    tower = Tower()
    try:
        return [tower.parse(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --r0 coefficients: {exc}") from None


def cmd_rmatrix(args) -> dict:
    alg = _algebra(args)
    triple = _triple(alg, args.triple)
    param = solve_r0(alg, triple)
    try:
        r = build_bd(alg, triple, _parse_r0(args.r0), verify=args.verify)
    except VerificationError as exc:
        raise Failure({"triple": triple.to_text(), "error": str(exc)}, str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = r.report()
    out["r0_dimension"] = param.dimension
    if args.dump:
        out["tensor"] = r.tensor.to_json()
    return out


def cmd_dj(args) -> dict:
    alg = _algebra(args)
    try:
        r = build_dj(alg, verify=args.verify)
    except VerificationError as exc:
        raise Failure({"error": str(exc)}, str(exc)) from None
    out = r.report()
    if args.dump:
        out["tensor"] = r.tensor.to_json()
    return out


def cmd_centralizer(args) -> dict:
    alg = _algebra(args)
    triple = _triple(alg, args.triple)
    model = _model(alg, args.lattice)
    r = build_bd(alg, triple) if not triple.is_empty() else build_dj(alg)
    out = centralizer_report(r, model, cd1=args.cd1)
    out["triple"] = triple.to_text()
    return out


def cmd_involution(args) -> dict:
    alg = _algebra(args)
    s = alg.build_S()
    w, sigma = alg.longest
    out: dict[str, Any] = {
        "type": alg.rs.label,
        "minus_w0_permutation": [sigma[i] + 1 for i in range(alg.n)],
        "S": s.to_json(),
    }
    if args.verify:
        checks = involution_checks(alg, s)
        out["checks"] = checks
        _require(out["checks"], checks.keys(), "involution checks failed")
    return out


def involution_checks(alg, s) -> dict:
    w, _ = alg.longest
    n = alg.n
    w0h = alg.w0_on_cartan()
    on_h = all(
        dict(s.columns[alg.h(j)]) == {alg.h(k): w0h[k][j] for k in range(n) if w0h[k][j]}
        for j in range(n)
    )
    root_spaces = all(
        len(s.columns[alg.root_vector(a)]) == 1
        and s.columns[alg.root_vector(a)][0][0] == alg.root_vector(w.apply(a))
        for a in alg.rs.roots
    )
    r = build_dj(alg)
    c = alg.chevalley_involution()
    d = alg.diagram_lift()
    return {
        "square_identity": s.compose(s).is_identity(),
        "preserves_brackets": s.preserves_brackets(),
        "restriction_to_h_is_w0": on_h,
        "root_spaces": root_spaces,
        "dj_to_transpose": bool(verify_equivalence(r, swap(r.tensor), s, 1)),
        "c_commutes_with_d": c.compose(d) == d.compose(c),
    }


def cmd_cocycle_untwisted(args) -> dict:
    alg = _algebra(args)
    triple = _triple(alg, args.triple)
    model = _model(alg, args.lattice)
    try:
        tower = Tower.untwisted(args.d, _number_field(args.base))
        point = parse_point(args.point, model, tower)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    r = build_bd(alg, triple) if not triple.is_empty() else build_dj(alg)
    try:
        res = verify_untwisted(point, r, tower.constants)
    except NotImplementedError as exc:
        raise UsageError(str(exc)) from None
    out = res.to_json()
    out.update({"triple": triple.to_text(), "point": point.to_json(), "field": tower.describe()})
    return _require(out, ["member"], "cocycle does not take values in the centralizer")


def cmd_cocycle_twisted(args) -> dict:
    alg = _algebra(args)
    if not args.solve_j:
        raise UsageError("twisted cocycles need a witness; pass --solve-j (type A1)")
    tower = Tower.twisted(_number_field(args.base))
    s = alg.build_S()
    try:
        j = solve_J(alg, s, tower)
    except NotImplementedError as exc:
        raise UsageError(str(exc)) from None
    except NoSolution as exc:
        raise Failure({"solved": False, "field": tower.describe(), "error": str(exc)}, str(exc)) from None
    r = build_dj(alg)
    res = verify_twisted(j, r, s)
    out: dict[str, Any] = {"solved": True, "field": tower.describe(), "J": j.to_json()}
    out["gamma_J_equals_JS"] = j.conjugate() == j.compose(s)
    out.update(res.to_json())
    return _require(out, ["cond_a", "cond_b", "gamma_J_equals_JS"], "twisted conditions fail")


def atlas_types(max_rank: int, kinds=ATLAS_TYPES) -> list[tuple[str, int]]:
    out = []
    for kind in kinds:
        for n in range(1, max_rank + 1):
            try:
                cartan_matrix(kind, n)
            except ValueError:
                continue
            out.append((kind, n))
    return out


def run_atlas(max_rank: int, kinds=ATLAS_TYPES, models=None, rank_bound: int = DEFAULT_RANK_BOUND) -> dict:
    if max_rank > rank_bound:
        raise UsageError(f"--max-rank {max_rank} exceeds --rank-bound {rank_bound}")
    rows = []
    failures = []
    counterexamples = []
    for kind, n in atlas_types(max_rank, kinds):
        alg = build_algebra(kind, n)
        names = [m for m in applicable_models(alg.rs) if models is None or m in models]
        for triple in enumerate_triples(alg.rs, rank_bound):
            try:
                r = build_bd(alg, triple) if not triple.is_empty() else build_dj(alg)
            except VerificationError as exc:
                failures.append({"type": alg.rs.label, "triple": triple.to_text(), "error": str(exc)})
                continue
            for name in names:
                rep = centralizer_report(r, lattice_model(name, alg.rs), cd1=False)
                row = {
                    "type": alg.rs.label,
                    "triple": triple.to_text(),
                    "model": name,
                    "cybe_zero": r.cybe_zero,
                    "omega_symmetry": r.omega_symmetry,
                    "torus_rank": rep["torus_rank"],
                    "divisors": rep["divisors"],
                    "h1": rep["h1"],
                    "verdict": rep["verdict"],
                }
                rows.append(row)
                if name in CONNECTED_MODELS and rep["divisors"]:
                    counterexamples.append(row)
    summary = {
        "items": len(rows),
        "failures": len(failures),
        "with_divisors": sum(1 for r in rows if r["divisors"]),
        "connectedness_counterexamples": len(counterexamples),
    }
    return {
        "rows": rows,
        "failures": failures,
        "counterexamples": counterexamples,
        "summary": summary,
    }


def cmd_atlas(args) -> dict:
    kinds = tuple(k.upper() for k in args.types.split(",")) if args.types else ATLAS_TYPES
    models = args.lattice.split(",") if args.lattice else None
    out = run_atlas(args.max_rank, kinds, models, args.rank_bound)
    if out["counterexamples"]:
        print(
            f"WARNING: {len(out['counterexamples'])} centralizer(s) in models "
            f"{', '.join(CONNECTED_MODELS)} are disconnected",
            file=sys.stderr,
        )
    if out["failures"]:
        raise Failure(out, f"{len(out['failures'])} r-matrix construction(s) failed")
    return out


# ---------------------------------------------------------------------------
# parser and output


def _common(defaults: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--format", choices=("json", "text"), default=d("json"))
    p.add_argument("--rank-bound", type=int, default=d(DEFAULT_RANK_BOUND))
    p.add_argument("--seed", type=int, default=d(0), help="sampling seed (property tests only)")
    return p


def _typed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", required=True, help="root system type A..G")
    p.add_argument("--rank", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cybel",
        description="Exact Belavin-Drinfeld r-matrices, centralizers and Galois cocycles.",
        parents=[_common(True)],
    )
    parser.add_argument("--version", action="version", version=f"cybel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    p = sub.add_parser("roots", parents=[common], help="positive roots and w0")
    _typed(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("triples", parents=[common], help="enumerate admissible triples")
    _typed(p)
    p.set_defaults(func=cmd_triples)

    p = sub.add_parser("rmatrix", parents=[common], help="build a BD r-matrix")
    _typed(p)
    p.add_argument("--triple", default="", help="e.g. 'G1=[1];G2=[2];tau=1->2'")
    p.add_argument("--r0", default="canonical", help="'canonical' or coefficients on the homogeneous basis")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--dump", action="store_true", help="include the tensor terms")
    p.set_defaults(func=cmd_rmatrix)

    p = sub.add_parser("dj", parents=[common], help="the Drinfeld-Jimbo r-matrix")
    _typed(p)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--dump", action="store_true")
    p.set_defaults(func=cmd_dj)

    p = sub.add_parser("centralizer", parents=[common], help="centralizer and H^1 description")
    _typed(p)
    p.add_argument("--lattice", default="adjoint", help="model name or JSON file")
    p.add_argument("--triple", default="")
    p.add_argument("--cd1", action="store_true", help="base field has cohomological dimension 1")
    p.set_defaults(func=cmd_centralizer)

    p = sub.add_parser("involution", parents=[common], help="the element S = c d")
    _typed(p)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_involution)

    p = sub.add_parser("cocycle", parents=[common], help="verify Galois cocycles")
    csub = p.add_subparsers(dest="setting", required=True)
    q = csub.add_parser("untwisted", parents=[common])
    _typed(q)
    q.add_argument("--lattice", default="adjoint")
    q.add_argument("--triple", default="")
    q.add_argument("--point", required=True, help="comma-separated values, 'sqrt' is the square root of d")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--base", default="Q")
    q.set_defaults(func=cmd_cocycle_untwisted)
    q = csub.add_parser("twisted", parents=[common])
    _typed(q)
    q.add_argument("--solve-j", action="store_true")
    q.add_argument("--base", default="Q(i)")
    q.set_defaults(func=cmd_cocycle_twisted)

    p = sub.add_parser("atlas", parents=[common], help="batch report over all triples")
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--types", default="", help="comma-separated subset of A,B,...,G")
    p.add_argument("--lattice", default="", help="comma-separated model names")
    p.set_defaults(func=cmd_atlas)
    return parser


def _echo(args) -> dict:
    skip = {"func", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def make_report(args, result: dict, ok: bool) -> dict:
    command = args.command + (f" {args.setting}" if getattr(args, "setting", None) else "")
    return {
        "tool": "cybel",
        "version": __version__,
        "command": command,
        "input": _echo(args),
        "exact": True,
        "ok": ok,
        "result": result,
    }


def render(report: dict, fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines = [f"cybel {report['command']}: {'ok' if report['ok'] else 'FAILED'}"]
    for k, v in sorted(report["result"].items()):
        if isinstance(v, (list, dict)) and len(json.dumps(v)) > 100:
            if k == "rows":
                for row in v:
                    divs = ",".join(map(str, row["divisors"])) or "-"
                    lines.append(f"  {row['type']:<4} {row['model']:<17} {row['triple']:<40} divisors={divs} {row['verdict']}")
                continue
            lines.append(f"{k}: ({len(v)} entries)")
        else:
            lines.append(f"{k}: {json.dumps(v) if not isinstance(v, str) else v}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
        ok = True
    except UsageError as exc:
        print(f"cybel: error: {exc}", file=sys.stderr)
        return 2
    except Failure as exc:
        result, ok = exc.result, False
        print(f"cybel: verification failed: {exc}", file=sys.stderr)
    sys.stdout.write(render(make_report(args, result, ok), args.format))
    return 0 if ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
