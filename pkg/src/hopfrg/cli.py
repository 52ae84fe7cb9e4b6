"""Command line front end.

    hopfrg coproduct --instance trees "[0 [0]]"
    hopfrg antipode --instance integers e12
    hopfrg birkhoff --char phi.txt --method both "[0 [0] [0]]"
    hopfrg rgmap --char phi.txt "[0 [0]]"
    hopfrg scatter --inf-char gamma.txt "[0 [0]]"
    hopfrg beta --inf-char beta0.txt --degree 4
    hopfrg verify hopf-axioms --instance trees --degree 5

Exit status: 0 success, 1 verification failure, 2 usage or parse error,
3 precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import birkhoff as bk
from . import rgflow as rg
from .arith import PositiveIntegers, SymmetricAlgebra
from .convolution import (ConvContext, MissingGeneratorError, NormalizationError, conv_unit,
                          first_difference, read_character_file)
from .graphs import THEORIES, FeynmanGraphs, fixture_algebra, parse_theory_file
from .hopf import (CorruptedAlgebra, Element, HopfAlgebra, TensorElement,
                   antipode_formulas_agree, check_hopf_axioms)
from .sampling import (random_character, random_constant_infinitesimal,
                       random_holomorphic_character, random_infinitesimal, random_laurent)
from .scalars import (DEFAULT_PRECISION, PoleError, PrecisionError, format_series,
                      rota_baxter_check)
from .trees import PlanarRootedTrees, RootedTrees

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3

INSTANCES = ("trees", "planar-trees", "integers", "symmetric", "graphs:<theory>",
             "corrupted-fixture")
SUITES = ("hopf-axioms", "rota-baxter", "birkhoff-uniqueness", "bch-agreement",
          "rg-roundtrip", "beta-theorem")


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# instances and literals


def parse_int_map(text: str) -> dict[int, int]:
    out = {}
    for part in text.split(","):
        k, _, v = part.partition(":")
        out[int(k)] = int(v)
    return out


def make_instance(name: str, theory_file: str | None = None,
                  sym_degrees: str | None = None, decorations: str | None = None,
                  max_n: int = 64) -> HopfAlgebra:
    decs = tuple(int(d) for d in decorations.split(",")) if decorations else (0,)
    if name == "trees":
        return RootedTrees(decs)
    if name == "planar-trees":
        return PlanarRootedTrees(decs)
    if name == "integers":
        return PositiveIntegers(max_n)
    if name == "symmetric":
        return SymmetricAlgebra(parse_int_map(sym_degrees) if sym_degrees else None)
    if name == "corrupted-fixture":
        return CorruptedAlgebra(RootedTrees(decs))
    if name.startswith("graphs"):
        _, _, theory = name.partition(":")
        if theory_file:
            th = parse_theory_file(Path(theory_file).read_text())
            if theory and theory != th.name:
                raise UsageError(f"theory file defines {th.name!r}, not {theory!r}")
            return FeynmanGraphs(th)
        if theory not in THEORIES:
            raise UsageError(f"unknown theory {theory!r}; known: {', '.join(THEORIES)}")
        return fixture_algebra(theory)
    raise UsageError(f"unknown instance {name!r}; choose from {', '.join(INSTANCES)}")


def _split_terms(text: str) -> list[tuple[int, str]]:
    """Split a linear combination at top-level ``+``/``-`` signs."""
    terms, depth, sign, start = [], 0, 1, 0
    s = text.strip()
    for i, ch in enumerate(s):
        if ch in "[<(":
            depth += 1
        elif ch in "]>)":
            depth -= 1
        elif ch in "+-" and depth == 0:
            chunk = s[start:i].strip()
            if chunk:
                terms.append((sign, chunk))
            elif terms:
                raise ValueError(f"dangling sign at offset {i}")
            sign = 1 if ch == "+" else -1
            start = i + 1
    chunk = s[start:].strip()
    if not chunk:
        raise ValueError(f"missing term at offset {len(s)}")
    terms.append((sign, chunk))
    return terms


_COEFF = re.compile(r"(\d+(?:/\d+)?)\s*\*\s*(.+)", re.S)
_SCALAR = re.compile(r"\d+(?:/\d+)?")


def parse_element(H: HopfAlgebra, text: str) -> Element:
    """Parse ``2*[0 [0]] - 1/2*[0] + 1`` style linear combinations."""
    out: dict = {}
    for sign, chunk in _split_terms(text):
        if _SCALAR.fullmatch(chunk):
            out[H.unit] = out.get(H.unit, 0) + sign * Fraction(chunk)
            continue
        m = _COEFF.fullmatch(chunk)
        coeff, lit = (Fraction(m.group(1)), m.group(2)) if m else (Fraction(1), chunk)
        b = H.parse_basis(lit)
        out[b] = out.get(b, 0) + sign * coeff
    return Element(out)


def _term(c: Fraction, body: str | None, first: bool) -> str:
    """One signed term; ``body`` None stands for the unit."""
    a = abs(c)
    if body is None:
        text = str(a)
    else:
        text = body if a == 1 else f"{a}*{body}"
    if first:
        return f"-{text}" if c < 0 else text
    return f" - {text}" if c < 0 else f" + {text}"


def format_element(H: HopfAlgebra, x: Element) -> str:
    """Terms by degree then literal; re-parses to the same element."""
    if not x:
        return "0"
    keys = sorted(x.keys(), key=lambda b: (H.degree(b), H.format_basis(b)))
    return "".join(_term(x.coefficient(b), None if b == H.unit else H.format_basis(b), i == 0)
                   for i, b in enumerate(keys))


def _tensor_order(H: HopfAlgebra):
    return lambda pair: (-H.degree(pair[0]), H.format_basis(pair[0]), H.format_basis(pair[1]))


def format_tensor(H: HopfAlgebra, t: TensorElement) -> str:
    if not t:
        return "0"
    keys = sorted(t.keys(), key=_tensor_order(H))
    return "".join(_term(t.coefficient(k), f"{H.format_basis(k[0])} ⊗ {H.format_basis(k[1])}",
                         i == 0) for i, k in enumerate(keys))


# ---------------------------------------------------------------------------
# output


@dataclass
class Output:
    fmt: str = "text"
    stream: object = None

    def emit(self, record: dict, text: str):
        out = self.stream or sys.stdout
        if self.fmt == "json-lines":
            out.write(json.dumps(record, sort_keys=True) + "\n")
        else:
            out.write(text + "\n")


def _series(s) -> str:
    return format_series(s)


# ---------------------------------------------------------------------------
# commands


def _context(args, H) -> ConvContext:
    return ConvContext(H, args.precision)


def _load_map(path, ctx, what):
    if not path:
        raise UsageError(f"this command needs {what}")
    return read_character_file(path, ctx)


def cmd_coproduct(args, H, out: Output) -> int:
    for lit in args.elements:
        x = parse_element(H, lit)
        t = H.reduced_coproduct(x) if args.reduced else H.coproduct(x)
        text = format_tensor(H, t)
        out.emit({"op": "coproduct", "input": lit, "reduced": args.reduced,
                  "terms": [{"left": H.format_basis(k[0]), "right": H.format_basis(k[1]),
                             "coeff": str(t.coefficient(k))}
                            for k in sorted(t.keys(), key=_tensor_order(H))]},
                 text)
    return EXIT_OK


def cmd_antipode(args, H, out: Output) -> int:
    for lit in args.elements:
        x = parse_element(H, lit)
        s = H.antipode_right(x) if args.right else H.antipode(x)
        out.emit({"op": "antipode", "input": lit, "result": format_element(H, s)},
                 format_element(H, s))
    return EXIT_OK


def cmd_birkhoff(args, H, out: Output) -> int:
    ctx = _context(args, H)
    phi = _load_map(args.char, ctx, "--char FILE")
    methods = ["recursive", "bch"] if args.method == "both" else [args.method]
    results = {}
    for m in methods:
        results[m] = (bk.birkhoff_decompose(phi) if m == "recursive"
                      else bk.birkhoff_via_bch(phi, args.degree))
    status = EXIT_OK
    for lit in args.elements:
        x = parse_element(H, lit)
        if H.element_degree(x) > args.degree:
            raise UsageError(f"{lit!r} has degree above the probe degree {args.degree}")
        for m, res in results.items():
            minus, plus = res.phi_minus(x), res.phi_plus(x)
            ren = res.renormalized_value(x)
            out.emit({"op": "birkhoff", "method": m, "input": lit,
                      "phi_minus": _series(minus), "phi_plus": _series(plus),
                      "renormalized": str(ren)},
                     f"{lit} [{m}]\n  phi_-   = {_series(minus)}\n"
                     f"  phi_+   = {_series(plus)}\n  phi_+(0) = {ren}")
        if args.method == "both":
            r, b = results["recursive"], results["bch"]
            agree = (r.phi_minus(x).agrees_with(b.phi_minus(x))
                     and r.phi_plus(x).agrees_with(b.phi_plus(x)))
            out.emit({"op": "birkhoff-agree", "input": lit, "agree": agree},
                     f"  agree: {str(agree).lower()}")
            if not agree:
                status = EXIT_FAIL
    return status


def cmd_rgmap(args, H, out: Output) -> int:
    ctx = _context(args, H)
    phi = _load_map(args.char, ctx, "--char FILE")
    gamma = rg.renorm_map(phi)
    for lit in args.elements:
        v = gamma(parse_element(H, lit))
        out.emit({"op": "rgmap", "input": lit, "value": _series(v)},
                 f"Rt(phi)({lit}) = {_series(v)}")
    return EXIT_OK


def cmd_scatter(args, H, out: Output) -> int:
    ctx = _context(args, H)
    gamma = _load_map(args.inf_char, ctx, "--inf-char FILE")
    phi = rg.scattering_inverse(gamma)
    for lit in args.elements:
        v = phi(parse_element(H, lit))
        out.emit({"op": "scatter", "input": lit, "value": _series(v)},
                 f"Rt^-1(gamma)({lit}) = {_series(v)}")
    return EXIT_OK


def cmd_beta(args, H, out: Output) -> int:
    ctx = _context(args, H)
    if args.char:
        psi = read_character_file(args.char, ctx)
    elif args.inf_char:
        beta0 = read_character_file(args.inf_char, ctx)
        psi = rg.scattering_of_beta(beta0)
    else:
        raise UsageError("beta needs --char FILE (psi) or --inf-char FILE (beta0)")
    try:
        res = rg.beta_function(psi, args.degree)
    except rg.NotInGPhiMinus as exc:
        out.emit({"op": "beta", "member": False, "reason": str(exc)}, str(exc))
        return EXIT_FAIL
    elems = ([parse_element(H, lit) for lit in args.elements] if args.elements
             else [H.element(b) for b in H.basis_upto(args.degree) if b != H.unit])
    for x in elems:
        lit = format_element(H, x)
        v = res.beta(x)
        out.emit({"op": "beta", "input": lit, "value": _series(v)},
                 f"beta({lit}) = {_series(v)}")
    ok = res.agree and res.constant
    out.emit({"op": "beta-check", "member": True, "agree": res.agree,
              "constant": res.constant},
             f"member: true  z*Rt(psi) = (Res psi)oY: {str(res.agree).lower()}  "
             f"constant: {str(res.constant).lower()}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# verification suites


def _witness(H, b):
    if b is None:
        return None
    try:
        return H.format_basis(b)
    except Exception:  # noqa: BLE001 - witnesses are diagnostics only
        return repr(b)


def suite_hopf_axioms(H, args) -> tuple[bool, dict]:
    rep = check_hopf_axioms(H, args.degree)
    info = {"checked": rep.checked, "summary": rep.summary()}
    if not rep.passed:
        info["witness"] = {"check": rep.failure.check,
                           "element": _witness(H, rep.failure.element),
                           "detail": rep.failure.detail}
        return False, info
    bad = antipode_formulas_agree(H, H.basis_upto(args.degree))
    if bad is not None:
        info["witness"] = {"check": "antipode-recursions", "element": _witness(H, bad)}
        return False, info
    return True, info


def suite_rota_baxter(H, args) -> tuple[bool, dict]:
    rng = random.Random(args.seed)
    for i in range(args.samples):
        a, b = random_laurent(rng, -4, 3), random_laurent(rng, -4, 3)
        if not rota_baxter_check(a, b):
            return False, {"samples": i + 1, "witness": [_series(a), _series(b)]}
    return True, {"samples": args.samples}


def _sampled_characters(H, args, count):
    ctx = ConvContext(H, args.precision)
    rng = random.Random(args.seed)
    return ctx, [random_character(ctx, args.degree, rng, name=f"phi{i}") for i in range(count)]


def suite_birkhoff_uniqueness(H, args) -> tuple[bool, dict]:
    ctx, phis = _sampled_characters(H, args, args.samples_small)
    for phi in phis:
        res = bk.birkhoff_decompose(phi)
        for check, w in (("containment", bk.containment_witness(res, args.degree)),
                         ("reconstruction", bk.reconstruction_witness(phi, res, args.degree))):
            if w is not None:
                return False, {"map": phi.name, "check": check, "witness": _witness(H, w)}
    rng = random.Random(args.seed + 1)
    for i in range(args.samples_small):
        h = random_holomorphic_character(ctx, args.degree, rng, name=f"h{i}")
        res = bk.birkhoff_decompose(h)
        for check, a, b in (("uniqueness-minus", res.phi_minus, conv_unit(ctx)),
                            ("uniqueness-plus", res.phi_plus, h)):
            w = first_difference(a, b, args.degree, 0)
            if w is not None:
                return False, {"map": h.name, "check": check, "witness": _witness(H, w)}
    return True, {"characters": 2 * args.samples_small}


def suite_bch_agreement(H, args) -> tuple[bool, dict]:
    _, phis = _sampled_characters(H, args, args.samples_small)
    for phi in phis:
        w = bk.compare_routes(phi, args.degree)
        if w is not None:
            return False, {"map": phi.name, "witness": _witness(H, w)}
    return True, {"characters": len(phis)}


def suite_rg_roundtrip(H, args) -> tuple[bool, dict]:
    ctx, phis = _sampled_characters(H, args, args.samples_small)
    rng = random.Random(args.seed + 2)
    for phi in phis:
        w = first_difference(rg.scattering_inverse(rg.renorm_map(phi)), phi, args.degree, 0)
        if w is not None:
            return False, {"map": phi.name, "check": "inverse-after-map",
                           "witness": _witness(H, w)}
        gamma = random_infinitesimal(ctx, args.degree, rng)
        w = first_difference(rg.renorm_map(rg.scattering_inverse(gamma)), gamma,
                             args.degree, 0)
        if w is not None:
            return False, {"map": gamma.name, "check": "map-after-inverse",
                           "witness": _witness(H, w)}
    return True, {"characters": len(phis)}


def suite_beta_theorem(H, args) -> tuple[bool, dict]:
    ctx = ConvContext(H, args.precision)
    rng = random.Random(args.seed)
    for i in range(args.samples_small):
        beta0 = random_constant_infinitesimal(ctx, args.degree, rng, name=f"beta{i}")
        psi = rg.scattering_of_beta(beta0)
        try:
            res = rg.beta_function(psi, args.degree)
        except rg.NotInGPhiMinus as exc:
            return False, {"map": beta0.name, "check": "membership", "reason": str(exc)}
        if not res.agree:
            return False, {"map": beta0.name, "check": "residue-formula",
                           "witness": _witness(H, res.mismatch)}
        if not res.constant:
            return False, {"map": beta0.name, "check": "constant",
                           "witness": _witness(H, res.nonconstant)}
        w = first_difference(res.beta, beta0, args.degree, 0)
        if w is not None:
            return False, {"map": beta0.name, "check": "recovers-beta0",
                           "witness": _witness(H, w)}
    return True, {"maps": args.samples_small}


SUITE_FUNCS = {
    "hopf-axioms": suite_hopf_axioms,
    "rota-baxter": suite_rota_baxter,
    "birkhoff-uniqueness": suite_birkhoff_uniqueness,
    "bch-agreement": suite_bch_agreement,
    "rg-roundtrip": suite_rg_roundtrip,
    "beta-theorem": suite_beta_theorem,
}


def cmd_verify(args, H, out: Output) -> int:
    if args.suite not in SUITE_FUNCS:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    passed, info = SUITE_FUNCS[args.suite](H, args)
    record = {"suite": args.suite, "instance": H.name, "degree": args.degree,
              "passed": passed, **info}
    text = f"{args.suite} on {H.name} (degree {args.degree}): {'pass' if passed else 'FAIL'}"
    if not passed:
        details = {k: v for k, v in info.items() if k not in ("checked", "summary")}
        text += "\n  " + json.dumps(details, sort_keys=True, default=str)
    out.emit(json.loads(json.dumps(record, default=str)), text)
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


DEFAULT_DEGREES = {"hopf-axioms": 4, "rota-baxter": 1, "birkhoff-uniqueness": 4,
                   "bch-agreement": 4, "rg-roundtrip": 4, "beta-theorem": 4}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", default="trees",
                        help="trees | planar-trees | integers | symmetric | "
                             "graphs:<theory> | corrupted-fixture")
    common.add_argument("--degree", type=int, default=None, help="probe degree")
    common.add_argument("--precision", type=int, default=None,
                        help=f"Laurent precision K (default max({DEFAULT_PRECISION}, 2*degree))")
    common.add_argument("--char", metavar="FILE", help="character definition file")
    common.add_argument("--inf-char", metavar="FILE",
                        help="infinitesimal character definition file")
    common.add_argument("--method", choices=("recursive", "bch", "both"), default="recursive")
    common.add_argument("--format", choices=("text", "json-lines"), default="text")
    common.add_argument("--theory", metavar="FILE", help="graph theory definition file")
    common.add_argument("--sym-degrees", metavar="I:D,...",
                        help="generator degrees for the symmetric instance")
    common.add_argument("--decorations", metavar="D,...", help="tree decorations")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="hopfrg", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("coproduct", parents=[common], help="coproduct of an element")
    c.add_argument("elements", nargs="+")
    c.add_argument("--reduced", action="store_true")
    a = sub.add_parser("antipode", parents=[common], help="antipode of an element")
    a.add_argument("elements", nargs="+")
    a.add_argument("--right", action="store_true", help="use the right-hand recursion")
    for name, helptext in (("birkhoff", "Birkhoff decomposition of a character"),
                           ("rgmap", "renormalization map of a character"),
                           ("scatter", "inverse renormalization map"),
                           ("beta", "beta-function of a polar map")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("elements", nargs="*" if name == "beta" else "+")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", help=" | ".join(SUITES))
    v.add_argument("--samples", type=int, default=1000,
                   help="sample pairs for rota-baxter")
    v.add_argument("--samples-small", type=int, default=5,
                   help="sampled maps for the map-level suites")
    return p


COMMANDS = {"coproduct": cmd_coproduct, "antipode": cmd_antipode, "birkhoff": cmd_birkhoff,
            "rgmap": cmd_rgmap, "scatter": cmd_scatter, "beta": cmd_beta,
            "verify": cmd_verify}


def main(argv=None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = Output(args.format, stream)
    err = sys.stderr
    if args.degree is None:
        args.degree = DEFAULT_DEGREES.get(getattr(args, "suite", None), 4)
    if args.precision is None:
        args.precision = max(DEFAULT_PRECISION, 2 * args.degree)
    try:
        if args.degree < 1:
            raise UsageError("--degree must be at least 1")
        if args.precision < args.degree:
            raise UsageError("--precision must be at least --degree")
        H = make_instance(args.instance, args.theory, args.sym_degrees, args.decorations)
        return COMMANDS[args.command](args, H, out)
    except PrecisionError as exc:
        print(f"hopfrg: precision exhausted: {exc}", file=err)
        return EXIT_PRECISION
    except (UsageError, ValueError, MissingGeneratorError, NormalizationError,
            PoleError, OSError) as exc:
        print(f"hopfrg: error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
