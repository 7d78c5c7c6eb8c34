"""Command-line front end and JSON interchange formats.

Commands are thin shells over the library: each one assembles the same
payload a direct library call produces and prints it as text or JSON.
Exit codes: 0 all asserted checks passed, 1 a check failed, 2 usage or
malformed input, 3 a resource bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import constructors, cyclo, datum as datum_mod, extension, fusion, galois, linalg
from .cyclo import CycloNum
from .datum import ModularDatum
from .errors import (
    ModdataError,
    NotIntegral,
    SchemaError,
    TooLarge,
)
from .report import CheckReport, jsonable

BUNDLE_SCHEMA = "moddata-bundle/1"
DATUM_SCHEMA = "moddata-datum/1"

ENV_MAX_GROUP_ORDER = "MODDATA_MAX_GROUP_ORDER"
ENV_CONDUCTOR_LIMIT = "MODDATA_CONDUCTOR_LIMIT"


# -- datum wire format -------------------------------------------------------


def _cyclo_from_node(obj, path: str) -> CycloNum:
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object with conductor and coeffs")
    try:
        return cyclo.from_json(obj)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


def datum_from_obj(obj, path: str = "$") -> ModularDatum:
    if not isinstance(obj, dict):
        raise SchemaError(path, "datum must be a JSON object")
    for key in ("labels", "unit", "star", "S", "T"):
        if key not in obj:
            raise SchemaError(f"{path}.{key}", "missing required field")
    labels = obj["labels"]
    if (
        not isinstance(labels, list)
        or not labels
        or any(not isinstance(x, str) for x in labels)
    ):
        raise SchemaError(f"{path}.labels", "must be a nonempty list of strings")
    if len(set(labels)) != len(labels):
        raise SchemaError(f"{path}.labels", "labels must be distinct")
    m = len(labels)
    unit = obj["unit"]
    if unit not in labels:
        raise SchemaError(f"{path}.unit", f"unit {unit!r} is not a label")
    star_map = obj["star"]
    if not isinstance(star_map, dict):
        raise SchemaError(f"{path}.star", "must map labels to labels")
    index = {lab: i for i, lab in enumerate(labels)}
    star = []
    for lab in labels:
        target = star_map.get(lab)
        if target not in index:
            raise SchemaError(
                f"{path}.star.{lab}", f"maps to unknown label {target!r}"
            )
        star.append(index[target])
    for i in range(m):
        if star[star[i]] != i:
            raise SchemaError(f"{path}.star", "star is not an involution")
    s_rows = obj["S"]
    if not isinstance(s_rows, list) or len(s_rows) != m:
        raise SchemaError(f"{path}.S", f"must be a {m}x{m} matrix")
    s_matrix = []
    for i, row in enumerate(s_rows):
        if not isinstance(row, list) or len(row) != m:
            raise SchemaError(f"{path}.S[{i}]", f"must have {m} entries")
        s_matrix.append(
            tuple(
                _cyclo_from_node(x, f"{path}.S[{i}][{j}]")
                for j, x in enumerate(row)
            )
        )
    t_row = obj["T"]
    if not isinstance(t_row, list) or len(t_row) != m:
        raise SchemaError(f"{path}.T", f"must have {m} entries")
    t_diag = tuple(
        _cyclo_from_node(x, f"{path}.T[{i}]") for i, x in enumerate(t_row)
    )
    return ModularDatum(
        labels=tuple(labels),
        unit=unit,
        star=tuple(star),
        s_matrix=tuple(s_matrix),
        t_diag=t_diag,
    )


def parse_datum(text: str) -> ModularDatum:
    """Parse the JSON wire form; SchemaError carries the JSON path of the
    offending node."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc
    return datum_from_obj(obj)


def serialize_datum(d: ModularDatum) -> dict:
    return {
        "schema": DATUM_SCHEMA,
        "labels": list(d.labels),
        "unit": d.unit,
        "star": {lab: d.labels[d.star[i]] for i, lab in enumerate(d.labels)},
        "S": [[cyclo.to_json(x) for x in row] for row in d.s_matrix],
        "T": [cyclo.to_json(x) for x in d.t_diag],
    }


def serialize_datum_text(d: ModularDatum) -> str:
    return json.dumps(serialize_datum(d), indent=2) + "\n"


# -- datum references --------------------------------------------------------


def load_datum(ref: str) -> ModularDatum:
    """Resolve a file path or a gen: pseudo-path such as gen:semion,
    gen:trivial, or gen:radford:5."""
    if ref.startswith("gen:"):
        parts = ref.split(":")[1:]
        kind = parts[0]
        if kind == "semion":
            return constructors.semion_datum()
        if kind == "trivial":
            return constructors.trivial_datum()
        if kind == "radford":
            if len(parts) < 2:
                raise SchemaError("$", "gen:radford needs an order, e.g. gen:radford:5")
            return constructors.radford_datum(int(parts[1]))
        raise SchemaError("$", f"unknown generator {kind!r}")
    with open(ref, "r", encoding="utf-8") as handle:
        return parse_datum(handle.read())


# -- analysis bundle ---------------------------------------------------------


@dataclass
class AnalysisBundle:
    """Datum, derived report, and one verdict per library operation."""

    datum: ModularDatum
    report: object
    verdicts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        for verdict in self.verdicts.values():
            if isinstance(verdict, CheckReport) and not verdict.passed:
                return False
            if isinstance(verdict, dict) and verdict.get("passed") is False:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "schema": BUNDLE_SCHEMA,
            "datum": serialize_datum(self.datum),
            "report": jsonable(self.report),
            "verdicts": {k: jsonable(v) for k, v in self.verdicts.items()},
            "passed": self.passed,
        }


def build_analysis(
    d: ModularDatum,
    *,
    extensions: bool = False,
    max_group_order: int = extension.DEFAULT_MAX_GROUP_ORDER,
) -> AnalysisBundle:
    """The full analysis chain: axioms, derived report, structural and
    power identities, fusion-ring laws, Galois laws, fusion symbols, the
    odd-exponent sign theorems and divisibility; with extensions=True
    also the extension family, charge powers and the congruence suite."""
    bundle = AnalysisBundle(datum=d, report=None)
    verdicts = bundle.verdicts
    axioms = datum_mod.validate_axioms(d)
    verdicts["axioms"] = axioms
    if not axioms.passed:
        return bundle
    bundle.report = datum_mod.derive_report(d)
    verdicts["structural-identities"] = datum_mod.verify_structural_identities(d)
    verdicts["power-identities"] = datum_mod.power_identity_check(d)

    table = fusion.fusion_coefficients(d)
    verdicts["fusion-table"] = table.verify_invariants()
    verdicts["fusion-homomorphisms"] = fusion.verify_ring_homomorphisms(d, table)
    verdicts["idempotent-laws"] = fusion.verify_idempotent_laws(d, table)

    galois_projective = False
    try:
        verdicts["galois-action-laws"] = galois.verify_action_laws(d)
        galois_ok, witness = galois.is_galois_datum(d)
        gal_rep = CheckReport("galois-datum")
        gal_rep.add("twist-condition", galois_ok, witness)
        verdicts["galois-datum"] = gal_rep
        verdicts["fusion-symbol-analysis"] = galois.fusion_symbol_analysis(d)
        index_rep = CheckReport("verlinde-field-index")
        index_rep.add(
            "index-computed", True, value=galois.verlinde_field_index(d)
        )
        verdicts["verlinde-field-index"] = index_rep
        stats = datum_mod.basic_stats(d)
        if stats.N % 2 == 1:
            verdicts["odd-exponent-sign"] = galois.odd_sign_analysis(d)

        projective_verdict = None
        if extensions:
            projective_verdict = extension.factor_check(
                d.s_matrix,
                linalg.diag_matrix(d.t_diag),
                stats.N_o,
                "projective",
                max_group_order,
            ).projective_factors
            galois_projective = bool(projective_verdict) and galois_ok
        verdicts["divisibility"] = galois.arithmetic_divisibility_checks(
            d, galois_projective_congruence=galois_projective
        )

        if extensions:
            verdicts["extension-family"] = extension.extension_family_check(d)
            family = extension.extension_family(d)
            charge_rep = CheckReport("central-charge-powers")
            fourth = stats.g ** 4 == stats.t_o ** 8 * stats.g_rec ** 4
            squared = stats.g ** 2 == stats.t_o ** 4 * stats.g_rec ** 2
            ell24 = all(e.charge ** 24 == 1 for e in family)
            if galois_projective:
                charge_rep.add("charge-24th-power", ell24)
                charge_rep.add("gauss-fourth-power-relation", fourth)
            else:
                charge_rep.add("charge-24th-power-observed", True, value=ell24)
                charge_rep.add(
                    "gauss-fourth-power-observed", True, value=fourth
                )
            charge_rep.add(
                "gauss-squared-power-observed", True, value=squared
            )
            verdicts["central-charge-powers"] = charge_rep
            charges = {}
            for idx, e in enumerate(family):
                try:
                    charges[str(idx)] = extension.additive_charge(e)
                except ModdataError:
                    charges[str(idx)] = None
            congruence_rep = CheckReport("congruence")
            congruence_rep.add(
                "projective-at-normalized-exponent",
                bool(projective_verdict),
            )
            survivors = extension.lift_search(d, stats.N_o, max_group_order)
            congruence_rep.add(
                "lift-search-at-normalized-exponent",
                True,
                value={
                    "level": stats.N_o,
                    "surviving": len(survivors),
                    "additive_charges": charges,
                },
            )
            verdicts["congruence"] = congruence_rep
    except NotIntegral as exc:
        skip = CheckReport("galois-suite")
        skip.add("skipped-not-integral", True, value=str(exc))
        verdicts["galois-suite"] = skip
    return bundle


# -- rendering ---------------------------------------------------------------


def _render_report_text(payload: dict, out) -> None:
    def line(text=""):
        print(text, file=out)

    verdicts = payload.get("verdicts", {})
    report = payload.get("report")
    if report:
        line("derived quantities:")
        for key in ("n", "N", "N_o", "dims", "g", "g_rec", "normalized", "integral"):
            if key in report:
                line(f"  {key} = {_value_text(report[key])}")
    for name, value in payload.items():
        if name in ("verdicts", "report", "datum", "schema", "passed"):
            continue
        line(f"{name} = {_value_text(value)}")
    for name, verdict in verdicts.items():
        if isinstance(verdict, dict) and "checks" in verdict:
            status = "PASS" if verdict.get("passed") else "FAIL"
            line(f"[{status}] {name}")
            for check in verdict["checks"]:
                mark = "ok" if check.get("passed") else "FAIL"
                extra = ""
                if "value" in check:
                    extra = f" = {_value_text(check['value'])}"
                if not check.get("passed") and "witness" in check:
                    extra += f" ; witness: {_value_text(check['witness'])}"
                line(f"    {mark:4} {check['name']}{extra}")
        else:
            line(f"[info] {name}: {_value_text(verdict)}")
    if "passed" in payload:
        line(f"overall: {'PASS' if payload['passed'] else 'FAIL'}")


def _value_text(value) -> str:
    if isinstance(value, dict) and set(value) == {"conductor", "coeffs"}:
        try:
            return str(cyclo.from_json(value))
        except ValueError:
            pass
    if isinstance(value, (dict, list)):
        return json.dumps(value)
    return str(value)


def _emit(payload: dict, as_json: bool, out) -> None:
    if as_json:
        print(json.dumps(payload, indent=2), file=out)
    else:
        _render_report_text(payload, out)


# -- subcommand implementations ----------------------------------------------


def _cmd_validate(args, out) -> int:
    d = load_datum(args.datum)
    rep = datum_mod.validate_axioms(d)
    payload = {"verdicts": {"axioms": jsonable(rep)}, "passed": rep.passed}
    _emit(payload, args.json, out)
    return 0 if rep.passed else 1


def _cmd_analyze(args, out) -> int:
    d = load_datum(args.datum)
    bundle = build_analysis(
        d,
        extensions=args.extensions,
        max_group_order=args.max_group_order,
    )
    payload = bundle.to_json()
    _emit(payload, args.json, out)
    return 0 if bundle.passed else 1


def _cmd_fusion_table(args, out) -> int:
    d = load_datum(args.datum)
    table = fusion.fusion_coefficients(d)
    payload = {
        "labels": list(d.labels),
        "coefficients": [
            [list(row) for row in plane] for plane in table.coeffs
        ],
        "violations": jsonable(list(table.violations)),
        "passed": not table.violations,
    }
    if args.json:
        _emit(payload, True, out)
    else:
        labels = d.labels
        width = max(2, max(len(x) for x in labels) + 1)
        for i, lab_i in enumerate(labels):
            print(f"N[{lab_i}, -, -]:", file=out)
            header = " " * width + "".join(f"{lab:>{width}}" for lab in labels)
            print(header, file=out)
            for j, lab_j in enumerate(labels):
                row = "".join(
                    f"{table.coeff(i, j, k):>{width}}" for k in range(d.size)
                )
                print(f"{lab_j:>{width}}" + row, file=out)
            print(file=out)
    return 0 if not table.violations else 1


def _cmd_galois_check(args, out) -> int:
    d = load_datum(args.datum)
    laws = galois.verify_action_laws(d)
    galois_ok, witness = galois.is_galois_datum(d)
    gal_rep = CheckReport("galois-datum")
    gal_rep.add("twist-condition", galois_ok, witness)
    perms = {
        str(q): list(galois.index_action(d, q).perm)
        for q in galois.units_mod(datum_mod.basic_stats(d).N_o)
    }
    payload = {
        "verdicts": {
            "galois-action-laws": jsonable(laws),
            "galois-datum": jsonable(gal_rep),
        },
        "permutations": perms,
        "field_index": galois.verlinde_field_index(d),
        "passed": laws.passed and galois_ok,
    }
    _emit(payload, args.json, out)
    return 0 if payload["passed"] else 1


def _cmd_symbols(args, out) -> int:
    d = load_datum(args.datum)
    table = galois.fusion_symbol_table(d)
    analysis = galois.fusion_symbol_analysis(d)
    payload = {
        "modulus": table.modulus,
        "symbols": {
            str(q): jsonable(v) for q, v in sorted(table.values.items())
        },
        "verdicts": {"fusion-symbol-analysis": jsonable(analysis)},
        "passed": analysis.passed,
    }
    _emit(payload, args.json, out)
    return 0 if analysis.passed else 1


def _extension_entry(e, idx):
    try:
        charge = extension.additive_charge(e)
    except ModdataError:
        charge = None
    return {
        "index": idx,
        "rank": jsonable(e.rank),
        "charge": jsonable(e.charge),
        "is_rank": e.is_rank,
        "additive_charge_mod_24": charge,
    }


def _cmd_extensions(args, out) -> int:
    d = load_datum(args.datum)
    family = extension.extension_family(d)
    check = extension.extension_family_check(d)
    payload = {
        "extensions": [_extension_entry(e, i) for i, e in enumerate(family)],
        "verdicts": {"extension-family": jsonable(check)},
        "passed": check.passed,
    }
    _emit(payload, args.json, out)
    return 0 if check.passed else 1


def _cmd_congruence(args, out) -> int:
    d = load_datum(args.datum)
    stats = datum_mod.basic_stats(d)
    level = args.level if args.level is not None else stats.N_o
    projective = extension.factor_check(
        d.s_matrix,
        linalg.diag_matrix(d.t_diag),
        level,
        "projective",
        args.max_group_order,
    )
    payload = {
        "level": level,
        "projective": {
            "factors": projective.projective_factors,
            "witness": jsonable(
                projective.witness.to_json() if projective.witness else None
            ),
        },
        "passed": bool(projective.projective_factors),
    }
    if not args.projective:
        survivors = extension.lift_search(d, level, args.max_group_order)
        payload["lift_search"] = {
            "surviving": len(survivors),
            "extensions": [
                _extension_entry(e, i) for i, e in enumerate(survivors)
            ],
        }
    _emit(payload, args.json, out)
    return 0 if payload["passed"] else 1


def _cmd_lift_search(args, out) -> int:
    d = load_datum(args.datum)
    stats = datum_mod.basic_stats(d)
    level = args.level if args.level is not None else stats.N_o
    survivors = extension.lift_search(d, level, args.max_group_order)
    payload = {
        "level": level,
        "surviving": len(survivors),
        "extensions": [
            _extension_entry(e, i) for i, e in enumerate(survivors)
        ],
        "passed": True,
    }
    _emit(payload, args.json, out)
    return 0


def _cmd_gen(args, out) -> int:
    if args.kind == "semion":
        d = constructors.semion_datum()
    elif args.kind == "trivial":
        d = constructors.trivial_datum()
    elif args.kind == "radford":
        if args.n is None:
            raise SchemaError("$", "gen radford requires --n")
        d = constructors.radford_datum(args.n, args.zeta)
    elif args.kind == "product":
        if len(args.factors) != 2:
            raise SchemaError("$", "gen product requires two datum references")
        d = datum_mod.kronecker_product(
            load_datum(args.factors[0]), load_datum(args.factors[1])
        )
    else:
        raise SchemaError("$", f"unknown generator {args.kind!r}")
    text = serialize_datum_text(d)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        out.write(text)
    return 0


def _cmd_gauss_sum(args, out) -> int:
    g = constructors.classical_gauss_sum(args.n)
    rep = constructors.verify_gauss_lemma(args.n)
    payload = {
        "n": args.n,
        "sum": jsonable(g),
        "square": jsonable(g * g),
        "verdicts": {"gauss-sum-laws": jsonable(rep)},
        "passed": rep.passed,
    }
    if args.q is not None:
        twisted = constructors.classical_gauss_sum(args.n, args.q)
        payload["q"] = args.q
        payload["twisted_sum"] = jsonable(twisted)
        if args.n % 2 == 1:
            jac = cyclo.jacobi_symbol(args.q, args.n)
            agrees = twisted == g * jac
            payload["jacobi_symbol"] = jac
            payload["twist_matches_jacobi"] = agrees
            payload["passed"] = payload["passed"] and agrees
    _emit(payload, args.json, out)
    return 0 if payload["passed"] else 1


def _cmd_cocycle(args, out) -> int:
    c = constructors.cocycle_omega(args.n, args.zeta)
    payload = {
        "n": args.n,
        "zeta_exponent": args.zeta,
        "table": [
            [[jsonable(c.value(i, j, k)) for k in range(args.n)]
             for j in range(args.n)]
            for i in range(args.n)
        ],
    }
    if args.check:
        ok, witness = constructors.verify_3cocycle(c)
        payload["cocycle_identity"] = ok
        payload["witness"] = jsonable(witness)
        payload["passed"] = ok
    _emit(payload, args.json, out)
    return 0 if payload.get("passed", True) else 1


# -- argument parsing ---------------------------------------------------------


def _int_env(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        return fallback


def _add_common(parser, with_datum=True):
    if with_datum:
        parser.add_argument(
            "datum",
            help="datum JSON file or gen: pseudo-path "
            "(gen:semion, gen:trivial, gen:radford:N)",
        )
    parser.add_argument("--json", action="store_true", help="machine output")
    parser.add_argument(
        "--max-group-order",
        type=int,
        default=_int_env(ENV_MAX_GROUP_ORDER, extension.DEFAULT_MAX_GROUP_ORDER),
        help="bound on the reduced modular group order",
    )
    parser.add_argument(
        "--conductor-limit",
        type=int,
        default=_int_env(ENV_CONDUCTOR_LIMIT, cyclo.get_conductor_limit()),
        help="bound on cyclotomic conductors",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moddata",
        description="Exact analysis of modular data over cyclotomic fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the five defining axioms")
    _add_common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("analyze", help="run the full analysis chain")
    _add_common(p)
    p.add_argument(
        "--extensions",
        action="store_true",
        help="include the extension and congruence suite",
    )
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("fusion-table", help="emit the fusion coefficients")
    _add_common(p)
    p.set_defaults(func=_cmd_fusion_table)

    p = sub.add_parser("galois-check", help="verify the Galois action laws")
    _add_common(p)
    p.set_defaults(func=_cmd_galois_check)

    p = sub.add_parser("symbols", help="fusion-symbol table and laws")
    _add_common(p)
    p.set_defaults(func=_cmd_symbols)

    p = sub.add_parser("extensions", help="list the twelve extensions")
    _add_common(p)
    p.set_defaults(func=_cmd_extensions)

    p = sub.add_parser(
        "congruence", help="projective factoring and lift search at a level"
    )
    _add_common(p)
    p.add_argument("--level", type=int, default=None)
    p.add_argument(
        "--projective",
        action="store_true",
        help="only the projective check on the raw matrices",
    )
    p.set_defaults(func=_cmd_congruence)

    p = sub.add_parser(
        "lift-search", help="extensions whose representation factors at a level"
    )
    _add_common(p)
    p.add_argument("--level", type=int, default=None)
    p.set_defaults(func=_cmd_lift_search)

    p = sub.add_parser("gen", help="emit a built-in datum as JSON")
    p.add_argument(
        "kind", choices=("semion", "trivial", "radford", "product")
    )
    p.add_argument("factors", nargs="*", help="datum references for product")
    p.add_argument("--n", type=int, default=None, help="cyclic order")
    p.add_argument("--zeta", type=int, default=1, help="primitive root exponent")
    p.add_argument("--out", default=None, help="output file")
    p.add_argument("--json", action="store_true", help=argparse.SUPPRESS)
    p.add_argument(
        "--conductor-limit",
        type=int,
        default=_int_env(ENV_CONDUCTOR_LIMIT, cyclo.get_conductor_limit()),
    )
    p.set_defaults(func=_cmd_gen, max_group_order=None)

    p = sub.add_parser("gauss-sum", help="classical quadratic Gauss sum laws")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument(
        "--conductor-limit",
        type=int,
        default=_int_env(ENV_CONDUCTOR_LIMIT, cyclo.get_conductor_limit()),
    )
    p.set_defaults(func=_cmd_gauss_sum, max_group_order=None)

    p = sub.add_parser("cocycle", help="cyclic-group 3-cocycle table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--zeta", type=int, default=1)
    p.add_argument("--check", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument(
        "--conductor-limit",
        type=int,
        default=_int_env(ENV_CONDUCTOR_LIMIT, cyclo.get_conductor_limit()),
    )
    p.set_defaults(func=_cmd_cocycle, max_group_order=None)

    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "conductor_limit", None):
        cyclo.set_conductor_limit(args.conductor_limit)
    try:
        return args.func(args, out)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ModdataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
