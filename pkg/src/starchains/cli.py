"""Batch front end: run one command against a session file and print a report.

Exit codes: 0 success, 1 usage or parse error, 2 hypothesis violation,
3 exponent cap exceeded, 4 theorem violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from itertools import permutations

from . import fp_linear
from .family import (
    adjacent_family,
    brute_force_family,
    build_chain,
    check_chain,
    family_count_check,
    same_ideal_sets,
)
from .frobenius import (
    CapExceededError,
    ClosureConfig,
    NotMPrimaryError,
    decomposition_check,
    frobenius_closure,
    is_frobenius_closed,
    special_part_certified,
)
from .groebner import (
    IdealHandle,
    NonHomogeneousError,
    QuotientRing,
    canonical_generators,
    colength,
    contains,
    is_m_primary,
)
from .poly import ExponentOverflowError, ParseError
from .reduction import (
    CannotExtendError,
    HypothesisError,
    NoSwapError,
    ReductionCandidate,
    ReductionScene,
    TheoremViolationError,
    candidate_vectors,
    extend_to_reduction,
    f_spread,
    generates_with_special,
    is_minimal_reduction,
    is_minimal_reduction_by_definition,
    meets_special_trivially,
    minimal_reduction,
    swap_generator,
)
from .session import SessionError, SessionFile, load_session

COMMANDS = (
    "gb", "closure", "special", "is-closed", "spread", "reduction", "extend",
    "swap", "family", "chain", "verify-all", "validate-ring",
)

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_CAP, EXIT_THEOREM = 0, 1, 2, 3, 4

EXHAUSTIVE_CANDIDATE_LIMIT = 2**8


class UsageError(ValueError):
    pass


@dataclass
class Report:
    command: str
    result: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    exit_status: int = EXIT_OK
    message: str = ""

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "result": self.result,
            "diagnostics": self.diagnostics,
            "exit_status": self.exit_status,
            "message": self.message,
        }


def ideal_strings(I: IdealHandle) -> list[str]:
    return [str(g) for g in canonical_generators(I)]


def _certificate(cert) -> list[dict]:
    out = []
    for f, e in cert.new_generators:
        if isinstance(e, tuple):
            out.append({"generator": str(f), "e0": e[0], "e": e[1]})
        else:
            out.append({"generator": str(f), "e": e})
    return out


class _Context:
    def __init__(self, session: SessionFile, cfg: ClosureConfig):
        self.session = session
        self.cfg = cfg
        self.ring = session.build_ring()
        self.ideals = session.build_ideals(self.ring)

    def ideal(self, name: str | None, flag: str) -> IdealHandle:
        if name is None:
            raise UsageError(f"this command needs {flag} <name>")
        if name not in self.ideals:
            raise UsageError(f"unknown ideal {name!r}; known: {', '.join(self.ideals) or 'none'}")
        return self.ideals[name]

    def scene(self, J: str | None, I: str | None) -> ReductionScene:
        return ReductionScene(self.ideal(J, "--J"), self.ideal(I, "--I"), self.cfg)

    def generators(self, names: str | None) -> list:
        if not names:
            return []
        out = []
        for name in names.split(","):
            out.extend(self.ideal(name.strip(), "--K").gens)
        return out


def validate_ring(R: QuotientRing) -> dict:
    """Jacobian check of normality for hypersurfaces.

    An isolated singularity (Jacobian ideal m-primary or the unit ideal) in
    dimension >= 2 gives Serre's R1; hypersurfaces are S2.
    """
    gens = R.modulus_gens
    if not gens:
        return {"status": "certified", "reason": "polynomial ring"}
    if len(gens) > 1:
        return {"status": "not checked", "reason": "modulus is not a hypersurface"}
    f = gens[0]
    S = R.ambient
    partials = [f.derivative(i) for i in range(S.nvars)]
    jac = IdealHandle(R, partials)
    dim = S.nvars - 1
    info = {
        "jacobian": [str(g) for g in partials],
        "dimension": dim,
    }
    if jac.is_unit():
        info.update(status="certified", reason="nonsingular")
    elif is_m_primary(jac) and dim >= 2:
        info.update(status="certified", reason="isolated singularity in dimension >= 2",
                    jacobian_colength=int(colength(jac)))
    else:
        info.update(status="inconclusive", reason="singular locus not confined to the origin in codimension >= 2")
    return info


def _verify_all(ctx: _Context, J: str | None, I: str | None, report: Report):
    checks = []
    capped = False

    def record(name, subject, ok, detail=""):
        checks.append({"check": name, "subject": subject, "status": ok, "detail": detail})

    names = [I] if I else list(ctx.ideals)
    for name in names:
        X = ctx.ideal(name, "--I")
        try:
            ok = decomposition_check(X, ctx.cfg)
            record("decomposition", name, "pass" if ok else "fail")
        except NotMPrimaryError as exc:
            record("decomposition", name, "skipped", str(exc))
        except CapExceededError as exc:
            capped = True
            record("decomposition", name, "capped", str(exc))

    if J and I:
        pairs = [(J, I)]
    else:
        pairs = [(a, b) for a, b in permutations(ctx.ideals, 2)]
    for jn, iname in pairs:
        subject = f"{jn} <= {iname}"
        Jh, Ih = ctx.ideal(jn, "--J"), ctx.ideal(iname, "--I")
        if not contains(Ih, Jh) or Jh == Ih:
            if J and I:
                record("scene", subject, "skipped", "J is not a proper subideal of I")
            continue
        try:
            scene = ReductionScene(Jh, Ih, ctx.cfg)
        except (HypothesisError, NotMPrimaryError) as exc:
            record("scene", subject, "skipped", str(exc))
            continue
        except CapExceededError as exc:
            capped = True
            record("scene", subject, "capped", str(exc))
            continue
        try:
            _verify_scene(scene, subject, record)
        except CapExceededError as exc:
            capped = True
            record("scene", subject, "capped", str(exc))
        except TheoremViolationError as exc:
            record("scene", subject, "fail", str(exc))

    report.result["checks"] = checks
    failed = [c for c in checks if c["status"] == "fail"]
    report.diagnostics["capped"] = capped
    report.result["passed"] = sum(c["status"] == "pass" for c in checks)
    report.result["failed"] = len(failed)
    if failed:
        report.exit_status = EXIT_THEOREM
    elif capped:
        report.exit_status = EXIT_CAP


def _verify_scene(scene: ReductionScene, subject: str, record):
    l = f_spread(scene, cross_check=True)
    K = minimal_reduction(scene)
    direct = (
        scene.dim_V0 == l + scene.dim_special
        and fp_linear.intersects_trivially(
            scene.images(K.fs), list(scene.special_basis.vectors), scene.p, scene.dim_V0
        )
    )
    record("direct-sum", subject, "pass" if direct else "fail",
           f"dim I/(mI+J) = {scene.dim_V0}, l = {l}, special = {scene.dim_special}")

    agree = is_minimal_reduction(scene, K) and is_minimal_reduction_by_definition(scene, K.fs)
    count = 1
    p, n = scene.p, scene.dim_V0
    total = (p**n) ** l
    if is_m_primary(scene.J) and total <= EXHAUSTIVE_CANDIDATE_LIMIT * 16:
        count = 0
        for combo in candidate_vectors(scene, l):
            fs = tuple(scene.lift(v) for v in combo)
            b = meets_special_trivially(scene, fs)
            c = generates_with_special(scene, fs)
            a = is_minimal_reduction_by_definition(scene, fs)
            count += 1
            if not (a == b == c):
                agree = False
                break
    record("reduction-equivalence", subject, "pass" if agree else "fail", f"{count} candidates")

    fam = adjacent_family(scene)
    ok = family_count_check(fam)
    detail = f"{len(fam.members)} members"
    if ok and n and (p**n - 1) // (p - 1) <= 2**10:
        ok = same_ideal_sets(brute_force_family(scene), fam.members)
        detail += ", brute force agrees" if ok else ", brute force disagrees"
    record("family", subject, "pass" if ok else "fail", detail)

    if is_m_primary(scene.J) and is_m_primary(scene.I):
        chain = build_chain(scene)
        ok = check_chain(chain, scene.cfg)
        record("chain", subject, "pass" if ok else "fail", f"length {len(chain)}")


def run(command: str, session: SessionFile, *, J: str | None = None, I: str | None = None,
        K: str | None = None, f: str | None = None, e_max: int | None = None,
        degree_cap: int | None = None) -> Report:
    report = Report(command)
    try:
        if command not in COMMANDS:
            raise UsageError(f"unknown command {command!r}")
        cfg = session.closure_config(e_max=e_max, degree_cap=degree_cap)
        ctx = _Context(session, cfg)
        R = ctx.ring
        if command == "gb":
            X = ctx.ideal(I, "--I")
            report.result["generators"] = [str(g) for g in X.gb]
        elif command == "closure":
            X = ctx.ideal(I, "--I")
            closure, cert = frobenius_closure(X, cfg)
            report.result["generators"] = ideal_strings(closure)
            report.result["certificate"] = _certificate(cert)
            report.diagnostics.update(stabilized_at=cert.stabilized_at, capped=cert.capped)
            if cert.capped:
                report.exit_status = EXIT_CAP
        elif command == "special":
            X = ctx.ideal(I, "--I")
            sp, cert = special_part_certified(X, cfg)
            report.result["generators"] = ideal_strings(sp)
            report.result["certificate"] = _certificate(cert)
            report.diagnostics.update(stabilized_at=cert.stabilized_at, capped=cert.capped)
            if cert.capped:
                report.exit_status = EXIT_CAP
        elif command == "is-closed":
            X = ctx.ideal(I, "--I")
            report.result["closed"] = is_frobenius_closed(X, cfg)
        elif command == "spread":
            scene = ctx.scene(J, I)
            report.result["spread"] = f_spread(scene)
            report.result["dim_I_mod_mI_J"] = scene.dim_V0
            report.result["dim_special"] = scene.dim_special
        elif command == "reduction":
            scene = ctx.scene(J, I)
            red = minimal_reduction(scene)
            report.result["generators"] = [str(g) for g in red.fs]
            report.result["spread"] = scene.spread
        elif command == "extend":
            scene = ctx.scene(J, I)
            partial = ctx.generators(K)
            try:
                red = extend_to_reduction(scene, partial)
                report.result["extendable"] = True
                report.result["generators"] = [str(g) for g in red.fs]
            except CannotExtendError as exc:
                report.result["extendable"] = False
                report.result["reason"] = str(exc)
        elif command == "swap":
            scene = ctx.scene(J, I)
            base = ctx.generators(K) if K else list(minimal_reduction(scene).fs)
            if f is None:
                raise UsageError("swap needs --f <poly>")
            poly = R.ambient.parse(f)
            candidate = ReductionCandidate(scene, tuple(base))
            if not is_minimal_reduction(scene, candidate):
                raise HypothesisError("--K does not give a minimal reduction")
            try:
                index, swapped = swap_generator(scene, candidate, poly)
                report.result["swapped"] = True
                report.result["index"] = index
                report.result["generators"] = [str(g) for g in swapped.fs]
            except NoSwapError as exc:
                report.result["swapped"] = False
                report.result["reason"] = exc.reason
        elif command == "family":
            scene = ctx.scene(J, I)
            fam = adjacent_family(scene)
            report.result["spread"] = scene.spread
            report.result["members"] = [
                {"parameter": list(param), "generators": ideal_strings(member)} for param, member in fam
            ]
            report.result["count_check"] = family_count_check(fam)
        elif command == "chain":
            scene = ctx.scene(J, I)
            chain = build_chain(scene)
            report.result["length"] = len(chain)
            report.result["links"] = [ideal_strings(x) for x in chain.links]
        elif command == "verify-all":
            _verify_all(ctx, J, I, report)
        elif command == "validate-ring":
            report.result.update(validate_ring(R))
    except (UsageError, ParseError, SessionError) as exc:
        report.exit_status, report.message = EXIT_USAGE, str(exc)
    except (HypothesisError, NonHomogeneousError, NotMPrimaryError) as exc:
        report.exit_status, report.message = EXIT_HYPOTHESIS, str(exc)
    except (CapExceededError, ExponentOverflowError) as exc:
        report.exit_status, report.message = EXIT_CAP, str(exc)
    except TheoremViolationError as exc:
        report.exit_status, report.message = EXIT_THEOREM, str(exc)
    return report


def _render_value(value, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            nested = isinstance(v, dict) or (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v))
            if nested and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_value(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, dict):
                sub = _render_value(item, indent + 1)
                sub[0] = pad + "- " + sub[0].lstrip()
                lines.extend(sub)
            else:
                lines.append(f"{pad}- {_scalar(item)}")
        return lines
    return [pad + _scalar(value)]


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def render_text(report: Report) -> str:
    return "\n".join(_render_value(report.as_dict(), 0)) + "\n"


def render_machine(report: Report) -> str:
    return json.dumps(report.as_dict(), indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starchains",
        description="Frobenius closures, special parts, spreads, reductions, adjacent families and chains.",
    )
    parser.add_argument("--session", required=True, help="session file")
    parser.add_argument("--command", choices=COMMANDS, help="command to run")
    parser.add_argument("--J", dest="J", help="name of the smaller ideal")
    parser.add_argument("--I", dest="I", help="name of the ideal")
    parser.add_argument("--K", dest="K", help="comma-separated ideal names whose generators form the system")
    parser.add_argument("--f", dest="f", help="polynomial for swap")
    parser.add_argument("--e-max", type=int, help="cap on Frobenius exponents")
    parser.add_argument("--degree-cap", type=int, help="degree bound for ideals that are not m-primary")
    parser.add_argument("--format", choices=("text", "machine"), default="text")
    parser.add_argument("positional", nargs="*", help="optional: <command> [<ideal>]")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command
    positional = list(args.positional)
    if command is None and positional:
        command = positional.pop(0)
    if positional and args.I is None:
        args.I = positional.pop(0)
    if command is None:
        parser.print_usage(sys.stderr)
        print("starchains: error: no command given", file=sys.stderr)
        return EXIT_USAGE
    try:
        session = load_session(args.session)
    except (OSError, SessionError) as exc:
        report = Report(command, exit_status=EXIT_USAGE, message=str(exc))
    else:
        report = run(command, session, J=args.J, I=args.I, K=args.K, f=args.f,
                     e_max=args.e_max, degree_cap=args.degree_cap)
    out = render_machine(report) if args.format == "machine" else render_text(report)
    sys.stdout.write(out)
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
