"""Command-line front end.

Subcommands: bound, verify, search, examples, pade, compare-yu.
Exit codes: 0 success, 1 no applicable theorem / verification failure,
2 parse or validation error, 3 internal inconsistency.

Instance files are plain key = value text (see the README for the grammar);
certificates are emitted as JSON with explicit lo/hi endpoints wherever an
interval is involved.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bounds import (
    THEOREM_IDS,
    BoundCertificate,
    CertifyResult,
    ProblemInstance,
    YuParams,
    certify,
    yu_bound,
)
from .errors import BudgetExceededError, InternalConsistencyError
from .harness import exhaustive_min, reproduce_examples, sample_verify
from .intervals import DEFAULT_PRECISION, IntervalScalar
from .pade import (
    AlphaVector,
    build_pade,
    closed_form_delta,
    determinant_delta,
    eval_B_at_one,
    order_check,
)

EXIT_OK = 0
EXIT_NO_THEOREM = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3


class InstanceFileError(ValueError):
    pass


def _parse_fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceFileError(f"cannot parse {what} from {text!r}: {exc}") from None


def parse_instance_text(text: str) -> dict:
    """Parse the key = value instance format into a raw field dict."""
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InstanceFileError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in ("alpha", "alphas"):
            items = [v for v in value.split(",") if v.strip()]
            fields.setdefault("alphas", []).extend(
                _parse_fraction(v, "alpha") for v in items)
        elif key == "prime":
            fields["prime"] = int(value)
        elif key == "Q":
            fields["Q"] = int(value)
        elif key == "H":
            fields.update(_parse_h(value))
        elif key == "epsilon":
            fields["epsilon"] = _parse_fraction(value, "epsilon")
        elif key == "lambdas":
            fields["lambdas"] = tuple(int(v) for v in value.split(",") if v.strip())
        elif key == "precision_bits":
            fields["precision_bits"] = int(value)
        else:
            raise InstanceFileError(f"line {lineno}: unknown key {key!r}")
    return fields


def _parse_h(value: str) -> dict:
    value = value.strip()
    if value.startswith("log10:"):
        return {"H_log10": _parse_fraction(value[len("log10:"):], "H log10")}
    if "e" in value.lower():
        mantissa, _, exponent = value.lower().partition("e")
        if mantissa.strip() not in ("1", ""):
            raise InstanceFileError(
                "scientific H only supports a mantissa of 1 (use log10:<value> "
                "for other magnitudes)")
        return {"H_log10": Fraction(int(exponent))}
    return {"H": int(value)}


def load_instance(path: str) -> ProblemInstance:
    with open(path, "r", encoding="utf-8") as fh:
        fields = parse_instance_text(fh.read())
    return instance_from_fields(fields)


def instance_from_fields(fields: dict) -> ProblemInstance:
    if "prime" not in fields:
        raise InstanceFileError("missing key: prime")
    if not fields.get("alphas"):
        raise InstanceFileError("missing key: alphas")
    try:
        return ProblemInstance.build(
            fields["prime"], fields["alphas"], Q=fields.get("Q"),
            H=fields.get("H"), H_log10=fields.get("H_log10"),
            epsilon=fields.get("epsilon"), lambdas=fields.get("lambdas"),
            precision_bits=fields.get("precision_bits", DEFAULT_PRECISION))
    except ValueError as exc:
        raise InstanceFileError(str(exc)) from None


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def _iv_json(iv: IntervalScalar | None) -> dict | None:
    if iv is None:
        return None
    return {"lo": str(iv.lo), "hi": str(iv.hi)}


def _instance_json(instance: ProblemInstance) -> dict:
    return {
        "prime": instance.prime,
        "alphas": [str(a) for a in instance.alphas.entries],
        "Q": instance.alphas.Q,
        "H": str(instance.H) if instance.H is not None else None,
        "H_log10": str(instance.H_log10) if instance.H_log10 is not None else None,
        "epsilon": str(instance.epsilon) if instance.epsilon is not None else None,
        "lambdas": list(instance.lambdas) if instance.lambdas is not None else None,
        "precision_bits": instance.precision_bits,
    }


def _certificate_json(cert: BoundCertificate) -> dict:
    return {
        "theorem_id": cert.theorem_id,
        "passed": cert.passed,
        "precision_bits": cert.precision_bits,
        "k_selected": cert.k_selected,
        "c_log10": _iv_json(cert.c_log10),
        "omega": _iv_json(cert.omega),
        "omega_exact": str(cert.omega_exact) if cert.omega_exact is not None else None,
        "bound_log10": {"lo": str(cert.bound_log10)} if cert.bound_log10 is not None else None,
        "conditions": [
            {
                "name": c.name,
                "description": c.description,
                "passed": c.passed,
                "certain": c.certain,
                "evidence": dict(c.evidence),
            }
            for c in cert.conditions
        ],
    }


def result_to_json(result: CertifyResult) -> dict:
    return {
        "schema": "plogbound-certificate/1",
        "instance": _instance_json(result.instance),
        "best": result.best_id,
        "certificates": [_certificate_json(c) for c in result.certificates],
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _print_certificate(cert: BoundCertificate, verbose: bool) -> None:
    status = "PASS" if cert.passed else "FAIL"
    print(f"theorem {cert.theorem_id}: {status} "
          f"(precision {cert.precision_bits} bits)")
    if verbose or not cert.passed:
        for cond in cert.conditions:
            mark = "ok " if cond.passed else ("?? " if not cond.certain else "no ")
            print(f"    [{mark}] {cond.name}: {cond.description}")
            for key, value in cond.evidence:
                print(f"          {key} = {value}")
    if cert.passed:
        print(f"    k_selected = {cert.k_selected}")
        print(f"    log10 c    >= {_decimal(cert.c_log10.lo_fraction())}")
        if cert.omega_exact is not None:
            print(f"    omega      =  {cert.omega_exact} (exact)")
        else:
            print(f"    omega      <= {_decimal(cert.omega.hi_fraction())}")
        print(f"    certified: log10 |Lambda_p|_p > {_decimal(cert.bound_log10)}")


def _decimal(q: Fraction, digits: int = 10) -> str:
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = int(q * 10 ** digits)
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def cmd_bound(args) -> int:
    if args.check:
        return _recheck_json(args.check)
    if args.instance:
        with open(args.instance, "r", encoding="utf-8") as fh:
            fields = parse_instance_text(fh.read())
    else:
        fields = {}
    # flag overrides: a full instance can be given without a file
    if args.prime:
        fields["prime"] = args.prime
    if args.alpha:
        fields["alphas"] = [_parse_fraction(a, "alpha") for a in args.alpha]
    if args.Q:
        fields["Q"] = args.Q
    if args.H:
        fields.update(_parse_h(args.H))
    if args.epsilon:
        fields["epsilon"] = _parse_fraction(args.epsilon, "epsilon")
    if args.precision:
        fields["precision_bits"] = args.precision
    instance = instance_from_fields(fields)
    result = certify(instance)
    wanted = THEOREM_IDS if args.theorem in (None, "all") else (args.theorem,)
    for cert in result.certificates:
        if cert.theorem_id in wanted:
            _print_certificate(cert, args.verbose)
    if result.best_id is not None and result.best_id in wanted:
        print(f"best: {result.best_id}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(result_to_json(result), fh, indent=2)
        print(f"wrote {args.json}")
    if not any(c.passed for c in result.certificates if c.theorem_id in wanted):
        print("no applicable theorem; failing conditions listed above")
        return EXIT_NO_THEOREM
    return EXIT_OK


def _recheck_json(path: str) -> int:
    with open(path, "r", encoding="utf-8") as fh:
        recorded = json.load(fh)
    raw = recorded["instance"]
    fields = {
        "prime": raw["prime"],
        "alphas": [Fraction(a) for a in raw["alphas"]],
        "Q": raw.get("Q"),
        "precision_bits": raw.get("precision_bits", DEFAULT_PRECISION),
    }
    if raw.get("H") is not None:
        fields["H"] = int(raw["H"])
    if raw.get("H_log10") is not None:
        fields["H_log10"] = Fraction(raw["H_log10"])
    if raw.get("epsilon") is not None:
        fields["epsilon"] = Fraction(raw["epsilon"])
    if raw.get("lambdas") is not None:
        fields["lambdas"] = tuple(raw["lambdas"])
    instance = instance_from_fields(fields)
    result = certify(instance)
    fresh = result_to_json(result)
    mismatches = []
    if fresh["best"] != recorded["best"]:
        mismatches.append(f"best: {recorded['best']} -> {fresh['best']}")
    for old, new in zip(recorded["certificates"], fresh["certificates"]):
        if old["passed"] != new["passed"]:
            mismatches.append(f"{old['theorem_id']}: passed {old['passed']} -> {new['passed']}")
        old_conds = {c["name"]: c["passed"] for c in old["conditions"]}
        new_conds = {c["name"]: c["passed"] for c in new["conditions"]}
        for name in old_conds.keys() | new_conds.keys():
            if old_conds.get(name) != new_conds.get(name):
                mismatches.append(
                    f"{old['theorem_id']}/{name}: {old_conds.get(name)} -> {new_conds.get(name)}")
    if mismatches:
        print("certificate check FAILED:")
        for line in mismatches:
            print(f"    {line}")
        return EXIT_NO_THEOREM
    print("certificate check passed: identical pass/fail decisions")
    return EXIT_OK


def cmd_verify(args) -> int:
    instance = load_instance(args.instance)
    result = certify(instance)
    cert = None
    if args.theorem and args.theorem != "best":
        cert = result.get(args.theorem)
        if not cert.passed:
            print(f"theorem {args.theorem} does not apply to this instance")
            return EXIT_NO_THEOREM
    else:
        cert = result.best()
        if cert is None:
            print("no applicable theorem for this instance")
            return EXIT_NO_THEOREM
    report = sample_verify(instance, cert, args.samples, args.seed)
    print(f"instance: {report.instance_summary}")
    print(f"theorem: {report.theorem_id}")
    print(f"samples tested: {report.samples_tested} (seed {report.rng_seed}, "
          f"pin cap {report.pin_cap})")
    print(f"min observed log10 |Lambda_p|_p >= {_decimal(report.min_observed_log10_abs)}")
    print(f"certified bound log10 > {_decimal(cert.bound_log10)}")
    print(f"violations: {len(report.violations)}")
    for v in report.violations:
        print(f"    lambda = {v.lambdas}: log10 |Lambda|_p <= {_decimal(v.observed_log10_hi)}"
              f" vs bound {_decimal(v.bound_log10)}")
    if args.json:
        payload = {
            "schema": "plogbound-verification/1",
            "instance": _instance_json(instance),
            "theorem_id": report.theorem_id,
            "samples_tested": report.samples_tested,
            "rng_seed": report.rng_seed,
            "pin_cap": report.pin_cap,
            "min_observed_log10_abs": str(report.min_observed_log10_abs),
            "violations": [
                {"lambdas": list(v.lambdas), "valuation": v.valuation}
                for v in report.violations
            ],
        }
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
        print(f"wrote {args.json}")
    return EXIT_OK if report.ok else EXIT_NO_THEOREM


def cmd_search(args) -> int:
    instance = load_instance(args.instance)
    table = exhaustive_min(instance.alphas, args.hmax, budget=args.budget)
    print(f"p = {instance.prime}, alphas = {[str(a) for a in instance.alphas.entries]}")
    print(f"{'H':>6}  {'max v_p':>8}  witness lambda")
    for entry in table:
        print(f"{entry.H:>6}  {entry.max_valuation:>8}  {entry.witness}")
    return EXIT_OK


def cmd_examples(args) -> int:
    report = reproduce_examples(args.precision or DEFAULT_PRECISION)
    for example in report.examples:
        status = "PASS" if example.passed else "FAIL"
        print(f"{status}  {example.name}: {example.description}")
        for check in example.checks:
            mark = "ok" if check.passed else "NO"
            print(f"    [{mark}] {check.label}")
            print(f"         {check.detail}")
        if example.claimed_exponent is not None:
            print(f"    claimed bound exponent: H^({example.claimed_exponent})")
        if args.verbose:
            for key, value in example.computed.items():
                print(f"    {key} = {value}")
            for note in example.notes:
                print(f"    note: {note}")
    return EXIT_OK if report.all_passed else EXIT_NO_THEOREM


def _format_poly(coeffs, var="t") -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(f"{c}")
        elif i == 1:
            parts.append(f"{c}*{var}")
        else:
            parts.append(f"{c}*{var}^{i}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def cmd_pade(args) -> int:
    alphas = AlphaVector.build(args.prime, [Fraction(a) for a in args.alpha],
                               Q=args.Q)
    if args.m is not None and args.m != alphas.m:
        raise InstanceFileError(f"--m {args.m} disagrees with {alphas.m} alphas")
    m, k, mu = alphas.m, args.k, args.mu
    poly = build_pade(k, mu, alphas)
    system = eval_B_at_one(poly)
    # B_0(t) = d * A0(-t); B_j(t) = d * alpha_j * t * A_j(-t)
    from .lcm import lcm_upto
    d = lcm_upto(m * k + mu) if m * k + mu >= 1 else 1
    b0 = tuple(d * c * (-1) ** i for i, c in enumerate(poly.A0))
    print(f"B_0(t) = {_format_poly(b0)}")
    for j, numer in enumerate(poly.Aj, start=1):
        shifted = [Fraction(0)] + [d * alphas.entries[j - 1] * c * (-1) ** i
                                   for i, c in enumerate(numer)]
        print(f"B_{j}(t) = {_format_poly(shifted)}")
    ok = True
    for j in range(1, m + 1):
        check = order_check(poly, j)
        mark = "PASS" if check.ok else f"FAIL (first nonzero at {check.first_nonzero})"
        print(f"order check j={j}: formal order >= {check.target}: {mark}")
        ok = ok and check.ok
    print(f"integrality: Q^(mk+m) * B_j(1) = {system.scaled_B}: PASS")
    det = determinant_delta(k, alphas, Fraction(1))
    closed = closed_form_delta(k, alphas, Fraction(1))
    det_ok = abs(det) == abs(closed)
    print(f"determinant at t=1: {det} vs closed form +/-{closed}: "
          f"{'PASS' if det_ok else 'FAIL'}")
    return EXIT_OK if ok and det_ok else EXIT_INTERNAL


def cmd_compare_yu(args) -> int:
    instance = load_instance(args.instance) if args.instance else None
    if args.A:
        a_values = tuple(Fraction(a) for a in args.A)
        m = len(a_values)
        prime = args.prime or (instance.prime if instance else None)
        if prime is None:
            raise InstanceFileError("--prime required without an instance file")
        b_values = tuple(args.b) if args.b else tuple([int(args.B)] * m)
    elif instance is not None:
        prime = instance.prime
        m = instance.m
        a_values = tuple(
            Fraction(max(abs((1 + a).numerator), abs((1 + a).denominator), 3))
            for a in instance.alphas.entries)
        if instance.lambdas is not None:
            b_values = tuple(l if l != 0 else 1 for l in instance.lambdas[1:])
        elif instance.H is not None:
            b_values = tuple([instance.H] * m)
        else:
            b_values = tuple([3] * m)
    else:
        raise InstanceFileError("need an instance file or explicit --A values")
    big_b = Fraction(args.B) if args.B else Fraction(max(3, max(abs(b) for b in b_values)))
    b_m = Fraction(args.Bm) if args.Bm else Fraction(abs(b_values[-1]))
    delta = Fraction(args.delta)
    params = YuParams(m, prime, a_values, b_values, big_b, max(b_m, Fraction(1)), delta)
    bound = yu_bound(params, args.precision or DEFAULT_PRECISION)
    print(f"comparison parameters: m={m}, p={prime}, A={[str(a) for a in a_values]}, "
          f"b={list(b_values)}, B={big_b}, B_m={params.B_m}, delta={delta}")
    print(f"general-method bound: v_p < {bound.vp_upper.hi} "
          f"(log10 |Lambda_p|_p > {bound.log10_lambda_lower.lo})")
    if instance is not None and instance.has_H:
        result = certify(instance)
        best = result.best()
        if best is not None:
            print(f"this package ({best.theorem_id}): "
                  f"log10 |Lambda_p|_p > {_decimal(best.bound_log10)}")
        else:
            print("this package: no applicable theorem at this instance")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plogbound",
        description="certified lower bounds for p-adic linear forms in logarithms")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="emit bound certificates for an instance")
    p_bound.add_argument("instance", nargs="?", help="instance file (key = value)")
    p_bound.add_argument("--theorem", choices=THEOREM_IDS + ("all",), default="all")
    p_bound.add_argument("--json", help="write the machine-readable certificate here")
    p_bound.add_argument("--precision", type=int, help="working precision in bits")
    p_bound.add_argument("--check", help="re-validate a previously written JSON certificate")
    p_bound.add_argument("--prime", type=int, help="override/provide the prime")
    p_bound.add_argument("--alpha", action="append",
                         help="override/provide an alpha (repeatable)")
    p_bound.add_argument("--Q", type=int)
    p_bound.add_argument("--H", help="height: integer, 1e<exp>, or log10:<value>")
    p_bound.add_argument("--epsilon", help="epsilon in (0, 3] for the best-exponent theorems")
    p_bound.add_argument("--verbose", action="store_true")
    p_bound.set_defaults(func=cmd_bound)

    p_verify = sub.add_parser("verify", help="sample lambda vectors against a certificate")
    p_verify.add_argument("instance")
    p_verify.add_argument("--samples", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--theorem", default="best")
    p_verify.add_argument("--json")
    p_verify.set_defaults(func=cmd_verify)

    p_search = sub.add_parser("search", help="exhaustive minimum over small lambda boxes")
    p_search.add_argument("instance")
    p_search.add_argument("--hmax", type=int, required=True)
    p_search.add_argument("--budget", type=int, default=250_000)
    p_search.set_defaults(func=cmd_search)

    p_examples = sub.add_parser("examples", help="recompute the built-in reference instances")
    p_examples.add_argument("--precision", type=int)
    p_examples.add_argument("--verbose", action="store_true")
    p_examples.set_defaults(func=cmd_examples)

    p_pade = sub.add_parser("pade", help="print and check one Pade system")
    p_pade.add_argument("--m", type=int)
    p_pade.add_argument("--k", type=int, required=True)
    p_pade.add_argument("--mu", type=int, required=True)
    p_pade.add_argument("--alpha", action="append", required=True,
                        help="rational alpha_j (repeatable)")
    p_pade.add_argument("--prime", type=int, default=None)
    p_pade.add_argument("--Q", type=int, default=None)
    p_pade.set_defaults(func=cmd_pade)

    p_yu = sub.add_parser("compare-yu", help="compare against the general-method bound")
    p_yu.add_argument("instance", nargs="?")
    p_yu.add_argument("--prime", type=int)
    p_yu.add_argument("--A", action="append", help="A_i value (repeatable)")
    p_yu.add_argument("--b", action="append", type=int, help="b_i value (repeatable)")
    p_yu.add_argument("--B", help="height bound B")
    p_yu.add_argument("--Bm", help="B_m value")
    p_yu.add_argument("--delta", default="1/2")
    p_yu.add_argument("--precision", type=int)
    p_yu.set_defaults(func=cmd_compare_yu)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFileError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
