"""Command-line front end.

Every command prints a one-line verdict followed by the checks that were
re-run on its certificates.  ``--json`` prints the full RunReport instead.
Exit status: 0 when a verdict was computed, 1 for bad input, 2 when a
certificate failed its re-check.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import io
from .complex import Cochain, ComplexError, SimplicialComplex, generate
from .exact_linalg import VerificationError

USAGE_ERROR, VERIFY_ERROR = 1, 2


class UsageError(ComplexError):
    pass


@dataclass
class RunReport:
    command: list
    verdict: str = ""
    verdicts: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    transcript: list = field(default_factory=list)
    details: list = field(default_factory=list)
    seconds: float = 0.0

    def check(self, name: str, ok: bool):
        self.transcript.append({"check": name, "ok": bool(ok)})
        if not ok:
            raise VerificationError(f"re-check failed: {name}")

    @property
    def verified(self) -> bool:
        return all(t["ok"] for t in self.transcript)

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "command": self.command,
            "verdict": self.verdict,
            "verdicts": self.verdicts,
            "certificates": self.certificates,
            "transcript": self.transcript,
        }
        if timing:
            out["timing"] = {"seconds": round(self.seconds, 6)}
        return out

    def render(self) -> str:
        lines = [self.verdict, *self.details]
        lines += [f"  [{'ok' if t['ok'] else 'FAILED'}] {t['check']}" for t in self.transcript]
        return "\n".join(lines)


# ---------------------------------------------------------------- argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="print the RunReport as JSON")
    p.add_argument("--seed", type=int, default=None,
                   help="reserved; every algorithm is deterministic")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="ihforms", description="Exact discrete Hodge theory and circle-bundle checks.")
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="write a built-in complex or flux as JSON")
    g.add_argument("name", nargs="?", help="sphere2, torus2, rp2, klein, torus3, lens(p,q), ...")
    g.add_argument("--p", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--flux", metavar="INSTANCE", help="built-in flux instance, e.g. torus3/fiber")

    cx = sub.add_parser("complex", help="complex utilities")
    cxs = cx.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    info = cxs.add_parser("info", parents=[common], help="counts, closedness, orientability")
    info.add_argument("input", nargs="?", default="-")

    h = sub.add_parser("homology", parents=[common], help="integral homology groups")
    h.add_argument("input", nargs="?", default="-")
    h.add_argument("--k", type=int, help="degree (all degrees if omitted)")
    h.add_argument("--coefficients", choices=("Z", "R"), default="Z")
    h.add_argument("--cohomology", action="store_true")

    hd = sub.add_parser("hodge", parents=[common], help="harmonic dimensions or a Hodge split")
    hd.add_argument("input", nargs="?", default="-")
    hd.add_argument("--cochain", help="cochain JSON file to decompose (unit weights)")

    ih = sub.add_parser("ih-check", parents=[common], help="intrinsic harmonicity of a closed cochain")
    ih.add_argument("input", nargs="?", default=None, help="complex JSON (with --cochain)")
    ih.add_argument("--flux", help="flux JSON file")
    ih.add_argument("--cochain", help="cochain JSON file")

    cs = sub.add_parser("cross-section", parents=[common], help="cross-section of a flux")
    cs.add_argument("--flux", default="-", help="flux JSON file (stdin if omitted)")

    b = sub.add_parser("bundle", help="circle bundles from an Euler cocycle")
    bs = b.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name, text in (("flatness", "the four flatness conditions"),
                       ("gysin", "Betti numbers of the total space"),
                       ("nonorientable", "criterion over a non-orientable base")):
        p = bs.add_parser(name, parents=[common], help=text)
        p.add_argument("--bundle", help="bundle JSON file")
        p.add_argument("--base", help="built-in complex name or complex JSON file")
        p.add_argument("--euler", default="zero",
                       help="zero, generator, torsion-gen, k*generator, or a JSON file")
    return parser


# ---------------------------------------------------------------- input helpers


def _read_text(path: str, stdin) -> str:
    if path in (None, "-"):
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path!r}: {exc.strerror}") from exc


def _load(path: str, stdin, what: str):
    return io.loads(_read_text(path, stdin), what)


def _complex_arg(path, stdin) -> SimplicialComplex:
    return io.complex_from_json(_load(path, stdin, "complex"))


def _base_arg(spec: str) -> SimplicialComplex:
    if spec is None:
        raise UsageError("--base: required unless --bundle is given")
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return io.complex_from_json(io.loads(fh.read(), "--base"))
    try:
        return generate(spec)
    except ComplexError as exc:
        raise UsageError(f"--base: {exc}") from exc


def _euler_arg(base: SimplicialComplex, spec: str) -> Cochain:
    from .bundles import euler_cochain

    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            obj = io.loads(fh.read(), "--euler")
        if isinstance(obj, dict) and "values" in obj:
            return io.cochain_from_json(base, obj)
        if isinstance(obj, dict) and "euler" in obj:
            obj = obj["euler"]
        return io.values_from_json(base, 2, obj, "--euler")
    try:
        return euler_cochain(base, spec)
    except (ComplexError, ValueError) as exc:
        raise UsageError(f"--euler: {exc}") from exc


def _bundle_from_args(args):
    from .bundles import CircleBundle, torus_instance

    if args.bundle:
        obj = _load(args.bundle, None, "--bundle")
        base_spec = obj.get("base") if isinstance(obj, dict) else None
        if isinstance(base_spec, str):
            base = _base_arg(base_spec)
            euler = io.values_from_json(base, 2, obj.get("euler") or {}, "euler")
        else:
            base, euler = io.bundle_from_json(obj)
    else:
        base = _base_arg(args.base)
        euler = _euler_arg(base, args.euler)
    t = torus_instance()
    if base == t.base and euler.is_zero():
        return t
    return CircleBundle(base, euler, name=args.base or args.bundle or "")


def _fmt(v) -> str:
    return io.fmt_rational(v)


def _fmt_seq(vals):
    return [_fmt(v) for v in vals]


def _paren(vals) -> str:
    return "(" + ", ".join(str(v) for v in vals) + ")"


def _sparse(z: Cochain) -> dict:
    return io.cochain_to_json(z)


# ---------------------------------------------------------------- commands


def _cmd_gen(args, rep: RunReport, out):
    if args.flux:
        from .instances import flux_corpus

        inst = {i.name: i for i in flux_corpus()}
        if args.flux not in inst:
            raise UsageError(f"--flux: unknown instance {args.flux!r}; choose from {sorted(inst)}")
        return io.flux_to_json(inst[args.flux].cochain)
    if not args.name:
        raise UsageError("gen: a complex name or --flux is required")
    try:
        c = generate(args.name, args.p, args.q)
    except ComplexError as exc:
        raise UsageError(f"name: {exc}") from exc
    return io.complex_to_json(c)


def _cmd_info(args, rep: RunReport, stdin):
    c = _complex_arg(args.input, stdin)
    counts = [c.count(k) for k in range(c.dimension + 1)]
    rep.verdicts.update(dimension=c.dimension, f_vector=counts, closed=c.is_closed,
                        orientable=c.is_orientable, euler_characteristic=c.euler_characteristic)
    rep.verdict = (f"dimension {c.dimension}, f = {tuple(counts)}, chi = {c.euler_characteristic}, "
                   f"{'closed' if c.is_closed else 'with boundary'}, "
                   f"{'orientable' if c.is_orientable else 'non-orientable'}")
    for k in range(2, c.dimension + 1):
        rep.check(f"boundary_{k - 1} . boundary_{k} = 0", not c.boundary(k - 1).dot(c.boundary(k)).any())


def _cmd_homology(args, rep: RunReport, stdin):
    from .homology import cohomology_group, homology_group, is_cycle

    c = _complex_arg(args.input, stdin)
    degrees = [args.k] if args.k is not None else list(range(c.dimension + 1))
    fn = cohomology_group if args.cohomology else homology_group
    groups = [fn(c, k, args.coefficients) for k in degrees]
    label = "H^" if args.cohomology else "H_"
    rep.verdicts["groups"] = {str(g.degree): str(g) for g in groups}
    rep.verdicts["torsion"] = {str(g.degree): list(g.torsion) for g in groups}
    if len(groups) == 1:
        rep.verdict = str(groups[0])
    else:
        rep.verdict = ", ".join(f"{label}{g.degree} = {g}" for g in groups)
    rep.certificates["free_basis"] = {str(g.degree): [list(v) for v in g.basis] for g in groups}
    for g in groups:
        if args.cohomology:
            rep.check(f"basis of {label}{g.degree} consists of cocycles",
                      all(Cochain(c, g.degree, v).is_closed() for v in g.basis))
        else:
            rep.check(f"basis of {label}{g.degree} consists of cycles",
                      all(is_cycle(c, g.degree, v) for v in g.basis))


def _cmd_hodge(args, rep: RunReport, stdin):
    from .dec import DiagonalStar, hodge_split, laplacian_kernel_dim
    from .homology import betti_numbers

    c = _complex_arg(args.input, stdin)
    w = DiagonalStar.unit(c)
    if args.cochain:
        z = io.cochain_from_json(c, _load(args.cochain, None, "--cochain"))
        split = hodge_split(w, z)
        rep.verdict = "HODGE SPLIT, exact + coexact + harmonic"
        rep.certificates.update(exact=_sparse(split.exact_part), coexact=_sparse(split.coexact_part),
                                harmonic=_sparse(split.harmonic_part))
        rep.verdicts["harmonic_is_zero"] = split.harmonic_part.is_zero()
        rep.check("parts sum to the input and are pairwise orthogonal; harmonic part is harmonic",
                  split.verify(w, z))
        return
    betti = betti_numbers(c)
    dims = [laplacian_kernel_dim(w, k) for k in range(c.dimension + 1)]
    rep.verdicts.update(harmonic_dimensions=dims, betti=list(betti))
    rep.verdict = "harmonic dimensions " + str(tuple(dims))
    for k, (d, b) in enumerate(zip(dims, betti)):
        rep.check(f"dim ker Laplacian_{k} = b_{k} = {b}", d == b)


def _cochain_input(args, stdin):
    if args.flux:
        z = io.flux_from_json(_load(args.flux, stdin, "--flux"))
        return z.complex, z
    if not args.cochain:
        raise UsageError("ih-check: give --flux FILE or a complex with --cochain FILE")
    c = _complex_arg(args.input, stdin)
    return c, io.cochain_from_json(c, _load(args.cochain, None, "--cochain"))


def _cmd_ih(args, rep: RunReport, stdin):
    from .harmonic import IntrinsicallyHarmonic, NotFound, TransversalCertificate, duality_bridge

    c, omega = _cochain_input(args, stdin)
    br = duality_bridge(c, omega)
    ih, tr = br.ih, br.transversal
    rep.verdicts.update(intrinsically_harmonic=ih.feasible, transversal_form=tr.feasible,
                        agree=br.agree)
    rep.details.extend(br.notes)
    if isinstance(ih, IntrinsicallyHarmonic):
        rep.verdict = "INTRINSICALLY HARMONIC, weights verified"
        k = ih.degree
        rep.certificates["weights"] = {",".join(c.label(k, s)): _fmt(ih.degree_weights()[s])
                                       for s in omega.support()}
        from .dec import is_harmonic

        rep.check("cochain is closed and coclosed for the certified weights",
                  is_harmonic(ih.weights, omega))
    else:
        rep.verdict = "NOT INTRINSICALLY HARMONIC, Farkas certificate verified"
        rep.certificates["farkas"] = {"y_eq": _fmt_seq(ih.farkas.y_eq), "y_ge": _fmt_seq(ih.farkas.y_ge)}
        rep.check("Farkas certificate for the weight system", ih.verify())
    if isinstance(tr, TransversalCertificate):
        rep.certificates["transversal"] = _fmt_seq(tr.eta)
        rep.check("transversal form is dual-closed with margins >= 1", tr.verify(omega))
    elif isinstance(tr, NotFound):
        rep.certificates["circulation"] = {"values": _fmt_seq(tr.circulation.values),
                                           "potential": _fmt_seq(tr.circulation.potential)}
        rep.check("circulation is sign-compatible and exact", tr.circulation.verify(omega))
    if br.eta_from_weights is not None:
        rep.check("transversal form rebuilt from the weights", br.eta_from_weights.verify(omega))
    if br.circulation_is_weight_farkas is not None:
        rep.check("circulation blocks the weight system", br.circulation_is_weight_farkas)
    rep.check("weight LP and transversal LP agree", br.agree)


def _cmd_cross_section(args, rep: RunReport, stdin):
    from .dynamics import CrossSection, cross_section, flux_from_form, total_asymptotic_cycle

    omega = io.flux_from_json(_load(args.flux, stdin, "--flux"))
    x = flux_from_form(omega.complex, omega)
    out = cross_section(x)
    if isinstance(out, CrossSection):
        rep.verdict = "SECTION FOUND, integral, margins ≥ 1"
        rep.verdicts.update(section=True, scale=out.scale, least_margin=_fmt(min(out.margins.values())))
        rep.certificates["theta"] = [int(v) for v in out.theta]
        rep.check("theta is integral, dual-closed and theta*flux >= 1 on the support", out.verify(x))
    else:
        rep.verdict = "NO SECTION, zero-class circulation verified"
        rep.verdicts.update(section=False, witness_class=_fmt_seq(out.witness_class))
        rep.certificates["circulation"] = {"values": _fmt_seq(out.witness.values),
                                           "potential": _fmt_seq(out.witness.potential)}
        rep.check("circulation is divergence-free, sign-compatible and null-homologous", out.verify(x))
    a = total_asymptotic_cycle(x)
    rep.verdicts["asymptotic_cycle"] = _fmt_seq(a.coords)
    rep.details.append(f"asymptotic cycle {_paren(a.coords)}")
    rep.check("asymptotic cycle equals the Poincare dual class", a.consistent)


def _cmd_flatness(args, rep: RunReport):
    from .bundles import FlatnessWitness, flatness_report

    b = _bundle_from_args(args)
    r = flatness_report(b)
    if isinstance(r.witness, FlatnessWitness):
        rep.verdict = f"FLAT, order {r.witness.order}, witness verified"
        rep.certificates["witness"] = {"order": r.witness.order,
                                       "c": _sparse(r.witness.c) if r.witness.c is not None else None}
        rep.check("m*e = dc with integral c", r.witness.verify(b.euler))
    else:
        rep.verdict = f"NOT FLAT, Euler class free coordinates {_paren(r.witness.free_coords)}"
        rep.certificates["free_coords"] = _fmt_seq(r.witness.free_coords)
        rep.check("Euler class has a nonzero free part", any(r.witness.free_coords))
    rep.verdicts["conditions"] = {
        str(i): {"value": cond.value, "provenance": cond.provenance, "direct": cond.direct}
        for i, cond in r.conditions.items()}
    for i, cond in r.conditions.items():
        shown = "n/a" if cond.value is None else str(cond.value)
        rep.details.append(f"  ({i}) {shown}: {cond.provenance}")
    rep.check("directly computed conditions agree", r.agree)


def _cmd_gysin(args, rep: RunReport):
    from .bundles import gysin_betti

    b = _bundle_from_args(args)
    g = gysin_betti(b)
    rep.verdict = "total space Betti numbers " + str(g.total_betti)
    rep.verdicts.update(base_betti=list(g.base_betti), cup_ranks=list(g.cup_ranks),
                        total_betti=list(g.total_betti))
    rep.check("Betti numbers are nonnegative with Euler characteristic 0", g.verify())


def _cmd_nonorientable(args, rep: RunReport):
    from .bundles import nonorientable_check

    b = _bundle_from_args(args)
    v = nonorientable_check(b)
    rep.verdict = "FOLIATED" if v.foliated else "CRITERION FAILS"
    rep.details.append(v.message)
    rep.details.append(f"pulled-back Euler class {_paren(v.pullback_coords)}")
    rep.verdicts.update(foliated=v.foliated, pullback_coords=_fmt_seq(v.pullback_coords))
    rep.check("pulled-back class recomputed on the double cover",
              v.foliated == (not any(v.pullback_coords)))


# ---------------------------------------------------------------- driver


def execute(argv, stdin=None, stdout=None, stderr=None) -> tuple[int, RunReport | None]:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    argv = list(argv)
    rep = RunReport(command=argv)
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.cmd == "gen":
            print(io.dumps(_cmd_gen(args, rep, stdout)), file=stdout)
            return 0, None
        if args.cmd == "complex":
            _cmd_info(args, rep, stdin)
        elif args.cmd == "homology":
            _cmd_homology(args, rep, stdin)
        elif args.cmd == "hodge":
            _cmd_hodge(args, rep, stdin)
        elif args.cmd == "ih-check":
            _cmd_ih(args, rep, stdin)
        elif args.cmd == "cross-section":
            _cmd_cross_section(args, rep, stdin)
        elif args.cmd == "bundle":
            {"flatness": _cmd_flatness, "gysin": _cmd_gysin,
             "nonorientable": _cmd_nonorientable}[args.sub](args, rep)
    except VerificationError as exc:
        print(f"internal verification failure: {exc}", file=stderr)
        return VERIFY_ERROR, rep
    except (ComplexError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=stderr)
        return USAGE_ERROR, None
    rep.seconds = time.perf_counter() - t0
    if args.json:
        print(json.dumps(rep.to_json(), indent=2), file=stdout)
    else:
        print(rep.render(), file=stdout)
    return 0, rep


def main(argv=None) -> int:
    code, _ = execute(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
