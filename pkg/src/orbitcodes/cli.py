"""Command-line interface: ``orbitcodes <command> ...``.

Every command builds one result dict.  With ``--json`` that dict is printed
as a single JSON document (see ``schema/output.schema.json``); otherwise the
same keys and numbers are printed one per line.

Exit codes: 0 ok, 2 invalid input, 3 certified negative search result,
4 search budget exhausted without a certificate, 5 internal inconsistency
(including a reference fixture that does not reproduce).
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Sequence

from .distance import (
    distance,
    distance_bounds,
    distance_bruteforce,
    subfield_coset_upper_bound,
)
from .errors import InternalInconsistency, InvalidInput, InvalidModulus, OrbitCodesError, UnsupportedParameters
from .field import Field, FieldSpec, make_field, poly_to_str
from .fixtures import FixtureCatalog, sample_pair_distances
from .linkage import (
    ConstituentCode,
    OrbitMatrices,
    check_cardinality_bound,
    greedy_partial_spread,
    link_cyclic,
    link_many,
    min_pairwise_distance,
)
from .orbit import (
    OrbitCode,
    analyze,
    best_friend_degree,
    is_partial_spread,
    is_primitive_beta,
    is_spread,
    orbit_code,
    stabilizer_order,
)
from .search import SearchSpec, run as run_search
from .subspace import Subspace, from_generators, from_rows

log = logging.getLogger("orbitcodes")

EXIT_OK, EXIT_INPUT, EXIT_CERTIFIED, EXIT_BUDGET, EXIT_INTERNAL = 0, 2, 3, 4, 5
SCHEMA_PATH = Path(__file__).with_name("schema") / "output.schema.json"


# input parsing


def parse_field(text: str, non_primitive_allowed: bool = False) -> Field:
    """``q,n,c0,...,cn``, ``q,n`` (default modulus) or a JSON file path."""
    path = Path(text)
    if text.endswith(".json") or path.is_file():
        data = json.loads(path.read_text())
        spec = FieldSpec.from_json(data)
    else:
        parts = [p for p in text.replace(" ", "").split(",") if p]
        try:
            nums = [int(p) for p in parts]
        except ValueError as exc:
            raise InvalidModulus(f"cannot parse field spec {text!r}") from exc
        if len(nums) == 2:
            return make_field(nums[0], nums[1], non_primitive_allowed=non_primitive_allowed)
        spec = FieldSpec.parse(text)
    return make_field(spec.q, spec.n, spec.modulus, non_primitive_allowed=non_primitive_allowed)


_TERM = re.compile(r"^(?:a(?:\^(-?\d+))?\*?)?(?:F\((\d+)\))?$")


def parse_generator(field: Field, text: str) -> Subspace:
    """Generator forms: ``rows:...``, ``logs:...``, a JSON file, or a sum like ``F(2)+a^1*F(2)``."""
    text = text.strip()
    if text.startswith("logs:"):
        logs = [int(x) for x in text[5:].replace(" ", "").split(",") if x]
        return from_generators(field, [field.exp(e) for e in logs])
    if text.startswith("rows:"):
        body = text[5:].strip()
        chunks = body.split(";") if ";" in body else body.split(",")
        rows = []
        for chunk in chunks:
            chunk = chunk.strip()
            digits = chunk.split() if " " in chunk else list(chunk)
            rows.append([int(d) for d in digits])
        for r in rows:
            if len(r) != field.n:
                raise InvalidInput(f"row {r} has length {len(r)}, expected {field.n}")
        return from_rows(field, rows)
    if text.endswith(".json") or Path(text).is_file():
        data = json.loads(Path(text).read_text())
        return Subspace.from_json(field, data.get("generator", data))
    gens = []
    for term in text.replace(" ", "").split("+"):
        if term == "1":
            term = "F(1)"
        m = _TERM.match(term)
        if not term or m is None or (m.group(1) is None and m.group(2) is None and term != "a"):
            raise InvalidInput(f"cannot parse generator term {term!r}")
        shift = int(m.group(1)) if m.group(1) is not None else (1 if term.startswith("a") else 0)
        r = int(m.group(2)) if m.group(2) is not None else 1
        a = field.exp(shift)
        gens += [field.mul(a, b) for b in field.subfield_basis(r)]
    return from_generators(field, gens)


def load_code(path: str) -> tuple[OrbitCode, dict]:
    """Read an orbit-code descriptor written by ``orbitcodes orbit --json``."""
    data = json.loads(Path(path).read_text())
    f = make_field(int(data["q"]), int(data["n"]), tuple(data["modulus"]), non_primitive_allowed=True)
    gen = Subspace.from_json(f, data["generator"])
    beta_log = int(data.get("beta_log", 1))
    n_, _ = stabilizer_order(gen, beta_log)
    return OrbitCode(f, beta_log, gen, n_, best_friend_degree(gen)), data


def constituent_from_descriptor(path: str) -> ConstituentCode:
    code, data = load_code(path)
    f = code.field
    exps = data.get("exponents")
    if exps is None:
        exps = list(range(code.N))
    mats = OrbitMatrices(f, code.generator.rows, [j * code.beta_log for j in exps])
    d = data.get("distance")
    c = ConstituentCode(f.q, code.generator.k, f.n, mats, d, code.best_friend, name=Path(path).stem,
                        field=f, exponents=list(exps))
    if c.d is None:
        if len(exps) == code.N and is_primitive_beta(f, code.beta_log):
            c.d = distance(code.generator, code.beta_log).d
        elif c.N > 1:
            c.d = min_pairwise_distance(list(mats), f.q, f.n)
    return c


# output


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, int) and not isinstance(x, bool) and abs(x) > 2**53:
        return str(x)
    return x


def emit(result: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    result = _jsonable(result)
    if as_json:
        out.write(json.dumps(result, sort_keys=False) + "\n")
        return
    for key, value in result.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, separators=(",", ":"))
        out.write(f"{key}: {value}\n")


def field_json(f: Field) -> dict:
    return {"q": f.q, "n": f.n, "modulus": list(f.spec.modulus), "polynomial": f.spec.poly_str()}


# commands


def cmd_field(args) -> tuple[dict, int]:
    f = parse_field(args.field, args.non_primitive)
    res = {"command": "field", **field_json(f), "order": f.order, "primitive": f.is_primitive,
           "tables": f.has_tables, "companion_matrix": f.companion_matrix().tolist()}
    if args.element is not None:
        a = f.exp(args.element)
        mipo = f.minimal_polynomial(a, 1)
        res["element"] = {"log": args.element % f.order, "vector": list(f.vector(a)),
                          "order": f.element_order(a), "minimal_polynomial": list(mipo),
                          "minimal_polynomial_str": poly_to_str(mipo)}
    return res, EXIT_OK


def _analysis(f: Field, u: Subspace, beta_log: int, method: str) -> dict:
    a = analyze(u, beta_log)
    rep = distance(u, beta_log, method)
    b = distance_bounds(u)
    coset = subfield_coset_upper_bound(u) if 1 in u else None
    return {
        **field_json(f),
        "beta_log": beta_log,
        "generator": u.to_json(),
        "k": a.k,
        "r": a.r,
        "t": a.t,
        "friends": a.friends,
        "stab_order": a.stab_order,
        "N": a.N,
        "stab_beta_plus_degree": a.stab_beta_plus_degree,
        "d": rep.d,
        "s": rep.s,
        "method": rep.method,
        "bounds": {"lower": b.lower, "upper": b.upper, "non_spread_upper": b.non_spread_upper},
        "coset_bound": None if coset is None else coset.bound,
        "spread": rep.d == 2 * u.k and is_primitive_beta(f, beta_log),
        "partial_spread": rep.d == 2 * u.k,
    }


def cmd_analyze(args) -> tuple[dict, int]:
    f = parse_field(args.field, args.non_primitive)
    u = parse_generator(f, args.gen)
    return {"command": "analyze", **_analysis(f, u, args.beta_log, args.method)}, EXIT_OK


def cmd_distance(args) -> tuple[dict, int]:
    f = parse_field(args.field, args.non_primitive)
    u = parse_generator(f, args.gen)
    rep = distance(u, args.beta_log, args.method)
    res = {"command": "distance", **field_json(f), "beta_log": args.beta_log, **rep.to_json()}
    if args.distribution or args.csv:
        brute = distance_bruteforce(u, args.beta_log, distribution=True)
        if brute.d != rep.d:
            raise InternalInconsistency(f"{rep.method} distance {rep.d} != brute-force {brute.d}")
        res["distribution"] = {str(k): v for k, v in sorted(brute.distribution.items())}
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["distance", "pairs"])
                for k, v in sorted(brute.distribution.items()):
                    w.writerow([k, v])
    return res, EXIT_OK


def cmd_orbit(args) -> tuple[dict, int]:
    f = parse_field(args.field, args.non_primitive)
    u = parse_generator(f, args.gen)
    code = orbit_code(u, args.beta_log)
    d = None
    if is_primitive_beta(f, args.beta_log):
        d = distance(code.generator, args.beta_log).d
    res = {"command": "orbit", **code.to_json(d)}
    if args.select:
        accept = None if args.select == "greedy" else [int(x) for x in args.select.split(",") if x]
        sub = greedy_partial_spread(code, accept)
        res["exponents"] = list(sub.exponents)
        res["distance"] = sub.d
        res["partial_spread"] = True
    else:
        members = code.members() if code.N <= args.limit else None
        res["spread"] = None if members is None else is_spread(members)
        res["partial_spread"] = None if members is None else is_partial_spread(members)
        if args.members and members is not None:
            res["members"] = [m.to_json()["rows"] for m in members]
    return res, EXIT_OK


def cmd_link(args) -> tuple[dict, int]:
    if args.cyclic:
        c1 = constituent_from_descriptor(args.cyclic[0])
        code2, data2 = load_code(args.cyclic[1])
        if not is_primitive_beta(code2.field, code2.beta_log) or code2.beta_log != 1:
            raise UnsupportedParameters("the second constituent must be an orbit under alpha itself")
        exps = data2.get("exponents", list(range(code2.N)))
        d2 = data2.get("distance")
        linked = link_cyclic(c1, code2.field, code2.generator.rows, exps, d2)
    else:
        paths = args.two or args.many
        linked = link_many([constituent_from_descriptor(p) for p in paths])
    res = {"command": "link", **linked.to_json()}
    card = check_cardinality_bound(linked)
    res["cardinality_bound"] = {"bound": card.bound, "holds": card.holds, "equality": card.equality,
                                "equality_predicted": card.equality_predicted}
    if args.verify:
        res["verified_distance"] = linked.verify_distance(args.cap)
        res["ranks_ok"] = linked.check_ranks(args.cap)
    if args.sample:
        if args.seed is None:
            raise InvalidInput("--sample needs --seed")
        ds = sample_pair_distances(linked, args.sample, args.seed)
        res["sampled_pairs"] = len(ds)
        res["sampled_min_distance"] = min(ds)
    if args.export:
        Path(args.export).write_text(json.dumps(_jsonable(res), indent=2) + "\n")
    code = EXIT_OK
    if "verified_distance" in res and linked.d is not None and res["verified_distance"] != linked.d:
        code = EXIT_INTERNAL
    return res, code


def cmd_search(args) -> tuple[dict, int]:
    modulus = None
    if args.modulus:
        modulus = tuple(int(c) for c in args.modulus.split(","))
    if args.mode == "random" and args.seed is None:
        raise InvalidInput("random search requires --seed")
    try:
        spec = SearchSpec(args.q, args.n, args.k, args.r, args.target_d, args.mode, args.trials, args.seed,
                          args.jobs, modulus, args.cap)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    res = run_search(spec)
    out = {"command": "search", "mode": args.mode, "q": args.q, "n": args.n, "k": args.k, "r": args.r,
           **res.to_json()}
    if res.target_met:
        return out, EXIT_OK
    return out, EXIT_CERTIFIED if res.nonexistence_certified else EXIT_BUDGET


def cmd_verify_paper(args) -> tuple[dict, int]:
    cat = FixtureCatalog().select(args.filter, include_slow=not args.skip_slow)
    outcomes = cat.run()
    code = EXIT_OK
    for o in outcomes:
        if o.error is not None:
            code = max(code, o.exit_code or EXIT_INPUT)
        elif o.mismatches:
            code = EXIT_INTERNAL
    res = {
        "command": "verify-paper",
        "filter": args.filter,
        "total": len(outcomes),
        "passed": sum(o.passed for o in outcomes),
        "all_passed": all(o.passed for o in outcomes),
        "results": [o.to_json() for o in outcomes],
    }
    if not args.json:
        for o in outcomes:
            status = "PASS" if o.passed else "FAIL"
            detail = o.error or ", ".join(f"{k}={o.computed.get(k)!r} (expected {o.fixture.expected[k]!r})"
                                          for k in o.mismatches)
            print(f"{status} {o.fixture.name} [{o.fixture.source}] {detail}".rstrip())
        res = {k: v for k, v in res.items() if k != "results"}
    return res, code


# parser


def _add_common(p, gen: bool = True):
    p.add_argument("--field", required=True, help='"q,n,c0,...,cn", "q,n" (default modulus) or a JSON file')
    p.add_argument("--non-primitive", action="store_true", help="accept an irreducible non-primitive modulus")
    if gen:
        p.add_argument("--gen", required=True,
                       help='"rows:100000,010000", "logs:0,1,4", "F(2)+a^1*F(2)" or a JSON file')
        p.add_argument("--beta-log", type=int, default=1, help="beta = alpha^e (default 1)")
    p.add_argument("--json", action="store_true", help="emit one JSON document")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbitcodes", description="Cyclic orbit subspace codes.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="describe a field")
    _add_common(p, gen=False)
    p.add_argument("--element", type=int, help="also describe alpha^e")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("analyze", help="stabilizer, best friend, cardinality and distance")
    _add_common(p)
    p.add_argument("--method", choices=["auto", "brute", "multiset"], default="auto")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("distance", help="orbit code distance")
    _add_common(p)
    p.add_argument("--method", choices=["auto", "brute", "multiset"], default="auto")
    p.add_argument("--distribution", action="store_true", help="pair counts per distance (brute force)")
    p.add_argument("--csv", help="write the distance distribution to this CSV file")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("orbit", help="orbit code descriptor, members, partial spreads")
    _add_common(p)
    p.add_argument("--members", action="store_true", help="list member RREF matrices")
    p.add_argument("--limit", type=int, default=10_000, help="materialize at most this many members")
    p.add_argument("--select", help='"greedy" or an exponent list "0,2,5" forming a partial spread')
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("link", help="linkage of orbit-code descriptors")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--two", nargs=2, metavar="CODE")
    g.add_argument("--many", nargs="+", metavar="CODE")
    g.add_argument("--cyclic", nargs=2, metavar="CODE")
    p.add_argument("--verify", action="store_true", help="exhaustive pairwise distance check")
    p.add_argument("--cap", type=int, default=10**6, help="member materialization cap for --verify")
    p.add_argument("--sample", type=int, default=0, help="distance-check this many random member pairs")
    p.add_argument("--seed", type=int)
    p.add_argument("--export", metavar="PATH", help="write the linked-code JSON here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("search", help="search generators with given best friend and distance")
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--target-d", type=int)
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=int, default=2_000_000, help="largest exhaustive search space")
    p.add_argument("--modulus", help="c0,...,cn; default is the smallest primitive polynomial")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-paper", help="run the reference fixture catalog")
    p.add_argument("--filter", help="only fixtures whose name contains this")
    p.add_argument("--skip-slow", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        result, code = args.func(args)
    except OrbitCodesError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    emit(result, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
