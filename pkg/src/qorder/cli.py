"""Command-line interface: ``qorder <command> ...``.

Exit codes: 0 success or property holds, 1 property fails (a witness is
printed), 2 input error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .basechange import (
    SplittingChoice,
    check_normalization,
    normalize_category,
    reshuffle,
    unreshuffle,
)
from .cauchy import (
    cauchy_complete_cat,
    cauchy_complete_trs,
    converges,
    factor_through_completion,
    is_cauchy_complete_cat,
    is_cauchy_complete_trs,
    is_left_adjoint,
)
from .checks import DEFAULT_SEED, SUITES, run_suite
from .errors import BudgetExceeded, InputError
from .lattice import ValidationReport
from .matrix import compose, mat_extension, mat_lifting
from .morita import search_isomorphism
from .quantaloid import ArrowRef, Splitting, build_idm, validate_quantaloid
from .search import Budget
from .structures import SemiDistributor, check_semidistributor

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _emit(data, out: str | None) -> None:
    text = io.write_json(data, out)
    if out is None:
        sys.stdout.write(text)


def _report(rep: ValidationReport, what: str) -> int:
    if rep.ok:
        print(f"{what}: ok")
        return EXIT_OK
    print(f"{what}: INVALID")
    for line in rep.lines():
        print(f"  {line}")
    return EXIT_FAIL


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    path = Path(args.file)
    if path.suffix == ".quant":
        Q = io.load_quant(path, check=False)
        return _report(validate_quantaloid(Q), str(path))
    if path.suffix == ".mat":
        phi = io.load_mat(path)
        flags = check_semidistributor(phi)
        print(f"semidistributor={'yes' if flags.semidistributor else 'no'}, regular={'yes' if flags.regular else 'no'}")
        return EXIT_OK if flags.semidistributor else EXIT_FAIL
    S = io.load_struct(path)
    print(f"{path}: ok ({len(S)} objects over {S.base.name})")
    return EXIT_OK


def cmd_classify(args) -> int:
    S = io.load_struct(args.file)
    print(S.flags.describe())
    return EXIT_OK


def cmd_compose(args) -> int:
    psi, phi = io.load_mat(args.second), io.load_mat(args.first)
    if psi.dom != phi.cod:
        raise InputError("the codomain of FIRST must be the domain of SECOND")
    _emit(io.mat_to_data(SemiDistributor(phi.dom, psi.cod, compose(psi.mat, phi.mat))), args.output)
    return EXIT_OK


def cmd_residuate(args) -> int:
    phi, theta = io.load_mat(args.phi), io.load_mat(args.theta)
    if args.extend:
        if phi.dom != theta.dom:
            raise InputError("extension needs matrices with a common domain")
        out = SemiDistributor(phi.cod, theta.cod, mat_extension(phi.mat, theta.mat))
    else:
        if phi.cod != theta.cod:
            raise InputError("lifting needs matrices with a common codomain")
        out = SemiDistributor(theta.dom, phi.dom, mat_lifting(phi.mat, theta.mat))
    _emit(io.mat_to_data(out), args.output)
    return EXIT_OK


def _regular(phi: SemiDistributor) -> SemiDistributor:
    if not check_semidistributor(phi).regular:
        raise InputError("not a regular semidistributor")
    return phi


def cmd_adjoint(args) -> int:
    phi = _regular(io.load_mat(args.file))
    pair = is_left_adjoint(phi)
    if pair is None:
        print("left adjoint: no")
        return EXIT_FAIL
    print("left adjoint: yes", file=sys.stderr)
    _emit(io.mat_to_data(pair.right), args.output)
    return EXIT_OK


def cmd_converge(args) -> int:
    phi = _regular(io.load_mat(args.file))
    if is_left_adjoint(phi) is None:
        raise InputError("not a left adjoint")
    F = converges(phi)
    if F is None:
        print("converges: no")
        return EXIT_FAIL
    print(f"converges: {F.describe()}", file=sys.stderr)
    _emit(_map_witness(F), args.output)
    return EXIT_OK


def _map_witness(F) -> dict:
    return {
        "format": "qorder.witness/1",
        "kind": "object-map",
        "dom": io.struct_to_data(F.dom),
        "cod": io.struct_to_data(F.cod),
        "map": io.object_map_to_data(F),
    }


def _probe_row(B, p, name) -> dict:
    base = B.base
    e = p.idempotent
    return {
        "name": name,
        "type": base.objects[e.src],
        "idempotent": base.arrow_name(e),
        "phi": [p.phi.lattice(i, 0).name(v) for i, v in enumerate(p.phi.column(0))],
        "phi_star": [p.phi_star.lattice(0, j).name(v) for j, v in enumerate(p.phi_star.row(0))],
    }


def cmd_complete(args) -> int:
    B = io.load_struct(args.file)
    counter = Budget.from_env().counter()
    kind = "cat" if args.cat else "trs"
    if args.check:
        res = (is_cauchy_complete_cat if args.cat else is_cauchy_complete_trs)(B, counter)
        if res.complete:
            print("cauchy complete: yes")
            return EXIT_OK
        print(f"cauchy complete: no (witness {res.witness.describe()})")
        return EXIT_FAIL
    make = cauchy_complete_cat if args.cat else cauchy_complete_trs
    res = make(B, skeletal=args.skeletal, counter=counter)
    C = res.completed
    table = {
        "format": "qorder.witness/1",
        "kind": "completion",
        "flavor": kind,
        "skeletal": bool(args.skeletal),
        "source": io.struct_to_data(B),
        "objects": [_probe_row(B, p, n) for p, n in zip(res.object_table, C.obs.names)],
        "embedding": io.object_map_to_data(res.embed) if res.embed is not None else None,
    }
    _emit(io.struct_to_data(C), args.output)
    if args.table:
        io.write_json(table, args.table)
    return EXIT_OK


def cmd_idm(args) -> int:
    ref = args.base
    base = io.load_quant(ref) if Path(ref).exists() else io.resolve_base(ref)
    _emit(io.quant_to_data(build_idm(base)), args.output)
    return EXIT_OK


def cmd_reshuffle(args) -> int:
    _emit(io.struct_to_data(reshuffle(io.load_struct(args.file)).target), args.output)
    return EXIT_OK


def cmd_unreshuffle(args) -> int:
    _emit(io.struct_to_data(unreshuffle(io.load_struct(args.file))), args.output)
    return EXIT_OK


def _read_splittings(path: str, A) -> SplittingChoice:
    data = io.load_witness(path)
    if data["kind"] != "splitting":
        raise InputError(f"{path}: expected a splitting witness")
    base = A.base
    rows = {r["object"]: r for r in data.get("splittings", [])}
    out = []
    for a, name in enumerate(A.obs.names):
        if name not in rows:
            raise InputError(f"{path}: no splitting for object {name!r}")
        r = rows[name]
        x = A.type_of(a)
        y = base.object_index(r["split_at"])
        t = ArrowRef(x, x, base.elem(x, x, r["monad"]))
        out.append(Splitting(t, y, base.elem(x, y, r["f"]), base.elem(y, x, r["u"])))
    return SplittingChoice(tuple(out))


def cmd_normalize(args) -> int:
    A = io.load_struct(args.file)
    choice = _read_splittings(args.splitting, A) if args.splitting else None
    res = normalize_category(A, choice)
    rep = check_normalization(res)
    if args.witness:
        io.write_json(io.splitting_to_data(A.base, list(A.obs.names), list(res.choice.splittings)), args.witness)
    if not rep.ok:
        return _report(rep, "normalization")
    _emit(io.struct_to_data(res.normal), args.output)
    return EXIT_OK


def cmd_morita(args) -> int:
    A, B = io.load_struct(args.first), io.load_struct(args.second)
    try:
        w = search_isomorphism(A, B, Budget.from_env(), exhaustive=args.exhaustive)
    except BudgetExceeded as e:
        print(f"VERDICT: budget-exceeded ({e})")
        return EXIT_BUDGET
    if w is None:
        print("VERDICT: not isomorphic")
        return EXIT_FAIL
    print("VERDICT: isomorphic")
    if args.witness:
        io.write_json(
            {
                "format": "qorder.witness/1",
                "kind": "iso",
                "forward": io.mat_to_data(w.forward),
                "backward": io.mat_to_data(w.backward),
            },
            args.witness,
        )
    return EXIT_OK


def cmd_factor(args) -> int:
    data = io.load_witness(args.file)
    if data["kind"] != "object-map":
        raise InputError(f"{args.file}: expected an object-map witness")
    rel = Path(args.file).parent
    A = io.struct_from_data(data.get("dom"), rel, args.file)
    B = io.struct_from_data(data.get("cod"), rel, args.file)
    if A.base is not B.base:
        raise InputError(f"{args.file}: domain and codomain live over different bases")
    F = io.object_map_from_data(data, A, B, args.file)
    fac = factor_through_completion(F, counter=Budget.from_env().counter())
    print(f"factorization: {fac.G.describe()}", file=sys.stderr)
    _emit(_map_witness(fac.G), args.output)
    return EXIT_OK


def cmd_prop_check(args) -> int:
    res = run_suite(args.suite, args.seed)
    print(res.summary())
    for f in res.failures[:20]:
        print(f"  witness: {f}")
    return EXIT_OK if res.passed else EXIT_FAIL


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qorder", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp):
        sp.add_argument("-o", "--output", help="write the result here instead of stdout")

    sp = sub.add_parser("validate", help="check a .quant, .struct or .mat file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("classify", help="print the flags of a structure")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("compose", help="SECOND . FIRST for matrices FIRST: A -> B, SECOND: B -> C")
    sp.add_argument("first")
    sp.add_argument("second")
    out(sp)
    sp.set_defaults(func=cmd_compose)

    sp = sub.add_parser("residuate", help="largest X with PHI . X <= THETA (--lift) or X . PHI <= THETA (--extend)")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--lift", action="store_true")
    g.add_argument("--extend", action="store_true")
    sp.add_argument("phi")
    sp.add_argument("theta")
    out(sp)
    sp.set_defaults(func=cmd_residuate)

    sp = sub.add_parser("adjoint", help="right adjoint of a regular semidistributor, if any")
    sp.add_argument("file")
    out(sp)
    sp.set_defaults(func=cmd_adjoint)

    sp = sub.add_parser("converge", help="object map a left adjoint converges to, if any")
    sp.add_argument("file")
    out(sp)
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("complete", help="Cauchy completion or completeness check")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--trs", action="store_true", help="probe with every idempotent")
    g.add_argument("--cat", action="store_true", help="probe with identities only")
    sp.add_argument("--skeletal", action="store_true", help="one object per isomorphism class")
    sp.add_argument("--check", action="store_true", help="only decide completeness")
    sp.add_argument("--table", help="write the probe table witness here")
    sp.add_argument("file")
    out(sp)
    sp.set_defaults(func=cmd_complete)

    sp = sub.add_parser("idm", help="split-idempotent completion of a base (fixture name or .quant)")
    sp.add_argument("base")
    out(sp)
    sp.set_defaults(func=cmd_idm)

    sp = sub.add_parser("reshuffle", help="totally regular structure -> normal category over idm")
    sp.add_argument("file")
    out(sp)
    sp.set_defaults(func=cmd_reshuffle)

    sp = sub.add_parser("unreshuffle", help="normal category over idm -> totally regular structure")
    sp.add_argument("file")
    out(sp)
    sp.set_defaults(func=cmd_unreshuffle)

    sp = sub.add_parser("normalize", help="split endo-homs of a category to make it normal")
    sp.add_argument("file")
    sp.add_argument("--splitting", help="splitting witness to use instead of the default choice")
    sp.add_argument("--witness", help="write the splittings used here")
    out(sp)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("morita", help="decide isomorphism in the regular-semidistributor calculus")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--witness", help="write the inverse pair here")
    sp.add_argument("--exhaustive", action="store_true", help="try every backward matrix, not just the adjoint")
    sp.set_defaults(func=cmd_morita)

    sp = sub.add_parser("factor", help="factor a regular semifunctor through the completion of its domain")
    sp.add_argument("file", help="object-map witness F: A -> B with B Cauchy complete")
    out(sp)
    sp.set_defaults(func=cmd_factor)

    sp = sub.add_parser("prop-check", help="run a named property suite")
    sp.add_argument("suite", choices=sorted(SUITES))
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(func=cmd_prop_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
