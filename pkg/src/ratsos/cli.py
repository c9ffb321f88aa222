"""Command line interface: ``ratsos <subcommand> ...``.

Every subcommand writes one JSON document to stdout and diagnostics to
stderr.  Exit codes: 0 ok, 2 inconclusive, 1 error, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from .certificate import (
    DiffOfSquaresWitness,
    PSDReport,
    SOSCertificate,
    verify_diff_identity,
    verify_sos,
)
from .counterexample import (
    DEFAULT_PRIME_BUDGET,
    EvidenceBundle,
    unramified_patterns,
    build_norm_form,
    certify_not_sos,
    check_search_properties,
    factor_degree_pattern,
    search_field,
    search_level2_field,
)
from .denominator import (
    DenominatorCertificate,
    IsotropicVector,
    build_denominator,
    find_isotropic,
    square_count_note,
    two_is_inert,
)
from .descent import DescentResult, descend_sos
from .errors import RatSOSError
from .numberfield import FieldElement, NumberField, make_field
from .polyring import SparsePoly, parse_poly, vandermonde_form

EXIT = {"ok": 0, "error": 1, "inconclusive": 2, "usage": 3}


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    status: str  # ok, inconclusive, error, usage
    payload: dict
    diagnostics: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- argument helpers -------------------------------------------------------------

def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _field(args) -> NumberField:
    return make_field(_ints(args.minpoly))


def _linear(K: NumberField, text: str, nvars: int) -> SparsePoly:
    if text == "vandermonde":
        return vandermonde_form(K, nvars)
    return parse_poly(text, nvars, K)


def _load_json(source: str):
    if source == "-":
        return json.load(sys.stdin)
    text = source.strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    with open(source) as fh:
        return json.load(fh)


def field_payload(K: NumberField, prime_bound: int = 50) -> dict:
    irr = dict(K.irreducibility)
    if "patterns" in irr:
        irr["patterns"] = {str(p): list(v) for p, v in sorted(irr["patterns"].items())}
    return {
        "kind": "field",
        "minpoly": K.to_json(),
        "degree": K.degree,
        "signature": K.signature,
        "discriminant": str(K.discriminant),
        "irreducibility": irr,
        "patterns": [p.to_json() for p in unramified_patterns(K.minpoly, prime_bound)],
    }


# --- subcommands ----------------------------------------------------------------------

def cmd_field_info(args) -> CommandResult:
    K = _field(args)
    return CommandResult("ok", field_payload(K, args.primes))


def cmd_construct(args) -> CommandResult:
    K = _field(args)
    l = _linear(K, args.linear, args.nvars)
    f = build_norm_form(K, l)
    return CommandResult(
        "ok",
        {"kind": "form", "field": K.to_json(), "linear_form": l.to_json(), "f": f.to_json(), "text": str(f)},
    )


def cmd_certify(args) -> CommandResult:
    K = _field(args)
    l = _linear(K, args.linear, args.nvars)
    bundle = certify_not_sos(K, l, prime_budget=args.prime_budget)
    status = "ok" if bundle.conclusion == "NotSOSOverQ" else "inconclusive"
    return CommandResult(status, bundle.to_json(), list(bundle.notes))


def _isotropic_from(K: NumberField, data) -> IsotropicVector:
    entries = data["entries"] if isinstance(data, dict) else data
    return IsotropicVector(K, tuple(FieldElement(K, tuple(Fraction(c) for c in e)) for e in entries))


def cmd_denominator(args) -> CommandResult:
    K = _field(args)
    l = _linear(K, args.linear, args.nvars)
    diags = [f"2 inert in K: {two_is_inert(K)} (informational)"]
    if args.isotropic:
        v = _isotropic_from(K, _load_json(args.isotropic))
    else:
        v = find_isotropic(K, args.search_height, args.r_max)
    cert = build_denominator(K, l, v)
    payload = cert.to_json()
    payload["square_count"] = square_count_note(v)
    return CommandResult("ok", payload, diags)


def cmd_descend(args) -> CommandResult:
    cert = SOSCertificate.from_json(_load_json(args.input))
    if args.minpoly:
        K = make_field(_ints(args.minpoly))
    else:
        K = next((p.domain for p in (cert.target, *cert.forms) if p.domain is not None), None)
    if K is None:
        raise UsageError("certificate is over Q; pass --minpoly for the field")
    return CommandResult("ok", descend_sos(K, cert).to_json())


def cmd_search(args) -> CommandResult:
    avoid = _ints(args.avoid_primes) if args.avoid_primes else []
    if args.level2:
        found = search_level2_field(args.degree, avoid, args.budget, args.seed)
        payload = field_payload(found.field)
        payload["isotropic"] = [w.to_json() for w in found.witness]
    else:
        payload = field_payload(search_field(args.degree, avoid, args.budget, args.seed))
    payload["seed"] = args.seed
    payload["avoid_primes"] = avoid
    return CommandResult("ok", payload)


def cmd_pattern(args) -> CommandResult:
    m = _ints(args.minpoly)
    pat = factor_degree_pattern(m, args.prime)
    return CommandResult("ok", {"kind": "pattern", "minpoly": [str(c) for c in m], **pat.to_json()})


# --- verify -----------------------------------------------------------------------

def _verify_document(doc: dict) -> tuple[bool, list[str]]:
    kind = doc.get("kind")
    notes: list[str] = []
    if kind == "sos":
        return verify_sos(SOSCertificate.from_json(doc)), notes
    if kind == "diff":
        return verify_diff_identity(DiffOfSquaresWitness.from_json(doc)), notes
    if kind == "psd":
        return PSDReport.from_json(doc).recheck(), notes
    if kind == "descent":
        return DescentResult.from_json(doc).recheck(), notes
    if kind == "denominator":
        return DenominatorCertificate.from_json(doc).verify(), notes
    if kind == "form":
        K = make_field([int(c) for c in doc["field"]])
        l = SparsePoly.from_json(doc["linear_form"])
        return build_norm_form(K, l) == SparsePoly.from_json(doc["f"]), notes
    if kind == "evidence":
        claimed = EvidenceBundle.from_json(doc)
        fresh = certify_not_sos(claimed.field, claimed.linear_form)
        same = fresh.to_json() == claimed.to_json() or (
            fresh.conclusion == claimed.conclusion
            and fresh.f == claimed.f
            and dict(fresh.vanishing_dims) == dict(claimed.vanishing_dims)
        )
        return same, notes
    if kind == "field":
        K = make_field([int(c) for c in doc["minpoly"]])
        ok = K.signature == doc["signature"] and str(K.discriminant) == str(doc["discriminant"])
        if "avoid_primes" in doc:
            ok = ok and check_search_properties(K.minpoly, doc["avoid_primes"]) is not None
        if "isotropic" in doc:
            entries = [FieldElement(K, tuple(Fraction(c) for c in e)) for e in doc["isotropic"]]
            ok = ok and IsotropicVector(K, tuple(entries)).is_valid()
        return ok, notes
    if kind == "pattern":
        pat = factor_degree_pattern([int(c) for c in doc["minpoly"]], int(doc["prime"]))
        return list(pat.degrees) == list(doc["degrees"]), notes
    raise UsageError(f"unknown document kind {kind!r}")


def cmd_verify(args) -> CommandResult:
    doc = _load_json(args.file)
    try:
        ok, notes = _verify_document(doc)
    except (RatSOSError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        ok, notes = False, [f"{type(exc).__name__}: {exc}"]
    payload = {"kind": "verification", "verified_kind": doc.get("kind"), "valid": ok}
    return CommandResult("ok" if ok else "error", payload, notes)


# --- driver -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ratsos", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--pretty", action="store_true", help="indent the JSON output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    # also accept --pretty after the subcommand without overriding the top-level flag
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="indent the JSON output")

    def command(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    def field_args(p, linear=False):
        p.add_argument("--minpoly", required=True, help="coefficients, constant term first")
        if linear:
            p.add_argument("--linear", default="vandermonde", help="'vandermonde' or an expression in x0.. and a")
            p.add_argument("--nvars", type=int, default=3)

    p = command("field-info", help="signature, discriminant, factor patterns")
    field_args(p)
    p.add_argument("--primes", type=int, default=50, help="list patterns for primes up to this bound")
    p.set_defaults(run=cmd_field_info)

    p = command("construct", help="norm form of a linear form")
    field_args(p, linear=True)
    p.set_defaults(run=cmd_construct)

    p = command("certify-not-sos", help="evidence that the norm form is not SOS over Q")
    field_args(p, linear=True)
    p.add_argument("--prime-budget", type=int, default=DEFAULT_PRIME_BUDGET)
    p.set_defaults(run=cmd_certify)

    p = command("denominator", help="h with f*h a sum of squares over Q")
    field_args(p, linear=True)
    p.add_argument("--isotropic", help="JSON (inline or file) with entries as coordinate lists")
    p.add_argument("--search-height", type=int, default=2)
    p.add_argument("--r-max", type=int, default=5)
    p.set_defaults(run=cmd_denominator)

    p = command("descend", help="descend an SOS certificate from a totally real field")
    p.add_argument("--input", required=True, help="certificate JSON file or '-'")
    p.add_argument("--minpoly", help="field, when the certificate does not name one")
    p.set_defaults(run=cmd_descend)

    p = command("verify", help="re-check any document emitted by this tool")
    p.add_argument("file", help="JSON file or '-'")
    p.set_defaults(run=cmd_verify)

    p = command("search-field", help="random field with the transitivity properties")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--avoid-primes", default="")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10**4)
    p.add_argument("--level2", action="store_true", help="also require an explicit -1 = a^2 + b^2")
    p.set_defaults(run=cmd_search)

    p = command("pattern", help="factor degrees modulo a prime")
    p.add_argument("--minpoly", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(run=cmd_pattern)
    return parser


def _execute(argv: Sequence[str] | None) -> tuple[CommandResult, bool]:
    pretty = False
    try:
        args = build_parser().parse_args(argv)
        pretty = args.pretty
        return args.run(args), pretty
    except UsageError as exc:
        return CommandResult("usage", {"kind": "error", "error": "UsageError", "message": str(exc)}), pretty
    except (RatSOSError, ValueError, OSError, json.JSONDecodeError) as exc:
        payload = {"kind": "error", "error": type(exc).__name__, "message": str(exc)}
        return CommandResult("error", payload), pretty


def run(argv: Sequence[str] | None = None) -> CommandResult:
    """Parse and execute one subcommand without printing."""
    return _execute(argv)[0]


def main(argv: Sequence[str] | None = None) -> int:
    result, pretty = _execute(argv)
    print(json.dumps(result.payload, indent=2 if pretty else None))
    for line in result.diagnostics:
        print(line, file=sys.stderr)
    if result.status == "usage":
        print(f"usage error: {result.payload['message']}", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
