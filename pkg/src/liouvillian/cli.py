"""Command-line front end.

Every command prints exactly one JSON report (key-sorted, with
``schema_version``) on stdout. Exit codes: 0 for any mathematical answer,
including "SL2" and "out"; 1 when a batch golden hash does not match;
2 for usage and input errors; 3 when a resource budget is exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import hashlib
import io
import json
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .aim import DEFAULT_MAX_P, BudgetExceeded, aim_obstruction, aim_stabilize
from .diffalg import delta_evaluate, delta_universal
from .exactcore import PolyParseError, UniPoly, as_scalar, parse_unipoly
from .kovacic import canonical_coefficient, canonical_integrability, canonical_solution, kovacic_solve
from .reduce import DEFAULT_MAX_D, GeneralEquation, arithmetic_condition, complete_square, dalembert, monic_rescale
from .roots import DEFAULT_MAX_ITER, DEFAULT_TOL
from .schrod import eigenvalues, solve_at_energy
from .spectral import DEFAULT_TERM_BUDGET, membership, spectral_ideal

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    options: dict = field(default_factory=dict)
    max_d: int = DEFAULT_MAX_D
    max_p: int = DEFAULT_MAX_P
    term_budget: int = DEFAULT_TERM_BUDGET
    tol: float = DEFAULT_TOL
    output: str = "json"

    def validate(self) -> None:
        if self.max_d < 0:
            raise UsageError("--max-d must be non-negative")
        if self.max_p < 1:
            raise UsageError("--max-p must be at least 1")
        if self.term_budget < 1:
            raise UsageError("--term-budget must be positive")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.output not in ("json", "text"):
            raise UsageError("--format must be json or text")


# -- argument helpers --------------------------------------------------------------


def _poly(text: str, flag: str, var: str = "x") -> UniPoly:
    try:
        return parse_unipoly(text, var)
    except PolyParseError as exc:
        exc.flag = flag
        raise


def _int_range(text: str) -> list[int]:
    """``"3"`` or ``"0..3"`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a..b, got {text!r}") from None


def _sign(text: str) -> int:
    if text in ("+", "+1", "1", "plus"):
        return 1
    if text in ("-", "-1", "minus"):
        return -1
    raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")


def _sign_text(s: int) -> str:
    return "+" if s > 0 else "-"


# -- commands -------------------------------------------------------------------------


def cmd_reduce(cfg: RunConfig) -> dict:
    o = cfg.options
    P, Q = _poly(o["P"], "--P"), _poly(o["Q"], "--Q")
    eq = GeneralEquation.infer(P, Q)
    tf = dalembert(eq)
    scale = as_scalar(o["scale"]) if o.get("scale") else None
    mon = monic_rescale(tf, scale=scale, numeric=o.get("numeric", False))
    out = {"n": eq.n, "R": str(tf.R), "gauge": tf.gauge_text(), "M": str(mon.M), "scale": str(mon.scale)}
    if all(isinstance(c, int) or hasattr(c, "denominator") for c in mon.M.coeffs):
        dec = complete_square(mon.M)
        out.update(_square_fields(dec))
    return out


def _square_fields(dec) -> dict:
    return {
        "A": str(dec.A),
        "B": str(dec.B),
        "b_top": str(dec.b_top),
        "arithmetic": [{"sign": _sign_text(c.sign), "d": c.d} for c in arithmetic_condition(dec)],
    }


def cmd_square(cfg: RunConfig) -> dict:
    M = _poly(cfg.options["M"], "--M")
    dec = complete_square(M)
    return {"n": dec.n, **_square_fields(dec)}


def _delta_entry(p: int, cfg: RunConfig) -> dict:
    o = cfg.options
    if p > cfg.max_p:
        raise UsageError(f"p={p} exceeds --max-p={cfg.max_p}")
    if o.get("A") or o.get("B"):
        if not (o.get("A") and o.get("B")):
            raise UsageError("--A and --B go together")
        A, B = _poly(o["A"], "--A"), _poly(o["B"], "--B")
        value = delta_evaluate(p, A, B, method=o.get("method") or "iterate", term_budget=cfg.term_budget)
        return {"p": p, "value": str(value), "vanishes": not value}
    D = delta_universal(p)
    entry = {"p": p, "terms": len(D), "order": D.order, "degree_in_b": D.degree_in_b()}
    if o.get("symbolic"):
        entry["delta"] = D.render()
    return entry


def cmd_delta(cfg: RunConfig) -> dict:
    return {"results": [_delta_entry(p, cfg) for p in cfg.options["p"]]}


def cmd_aim(cfg: RunConfig) -> dict:
    o = cfg.options
    l0, r0 = _poly(o["l0"], "--l0"), _poly(o["r0"], "--r0")
    if o.get("p") is not None:
        delta = aim_obstruction(l0, r0, o["p"], cfg.term_budget)
        return {"p": o["p"], "obstruction": str(delta), "vanishes": not delta}
    v = aim_stabilize(l0, r0, cfg.max_p)
    return {
        "status": v.status,
        "stabilized_at": v.stabilized_at,
        "alpha": None if v.alpha is None else {"num": str(v.alpha[0]), "den": str(v.alpha[1])},
        "formal_solution": v.formal_solution(),
    }


def cmd_solve(cfg: RunConfig) -> dict:
    M = _poly(cfg.options["M"], "--M")
    return kovacic_solve(M, cfg.max_d).to_dict()


def cmd_membership(cfg: RunConfig) -> dict:
    M = _poly(cfg.options["M"], "--M")
    return {"d": cfg.options["d"], **membership(M, cfg.options["d"], cfg.term_budget).to_dict()}


def cmd_canonical(cfg: RunConfig) -> dict:
    n, d, sign = cfg.options["n"], cfg.options["d"], cfg.options["sign"]
    if n < 1 or d < 0:
        raise UsageError("need --n >= 1 and --d >= 0")
    out = {
        "n": n,
        "d": d,
        "sign": _sign_text(sign),
        "M": str(canonical_coefficient(n, d, sign)),
        "integrable": canonical_integrability(n, d),
    }
    if out["integrable"]:
        out["solution"] = canonical_solution(n, d, sign).to_dict()
    return out


def cmd_variety(cfg: RunConfig) -> dict:
    o = cfg.options
    results = []
    for d in o["d"]:
        if d > cfg.max_d:
            raise UsageError(f"d={d} exceeds --max-d={cfg.max_d}")
        I = spectral_ideal(o["n"], d, o["sign"], depress=not o.get("full"), term_budget=cfg.term_budget)
        results.append(I.to_dict())
    return {"results": results}


def cmd_spectrum(cfg: RunConfig) -> dict:
    o = cfg.options
    U = _poly(o["U"], "--U")
    return eigenvalues(U, tol=cfg.tol, max_iter=o.get("max_iter") or DEFAULT_MAX_ITER, levels=o.get("levels") or 5,
                       term_budget=cfg.term_budget).to_dict()


def cmd_eigen_solve(cfg: RunConfig) -> dict:
    U = _poly(cfg.options["U"], "--U")
    return solve_at_energy(U, cfg.options["lambda"]).to_dict()


COMMANDS = {
    "reduce": cmd_reduce,
    "square": cmd_square,
    "delta": cmd_delta,
    "aim": cmd_aim,
    "solve": cmd_solve,
    "membership": cmd_membership,
    "canonical": cmd_canonical,
    "variety": cmd_variety,
    "spectrum": cmd_spectrum,
    "eigen-solve": cmd_eigen_solve,
}


def dispatch(cfg: RunConfig) -> dict:
    cfg.validate()
    report = COMMANDS[cfg.command](cfg)
    return {"schema_version": SCHEMA_VERSION, "command": cfg.command, **report}


# -- rendering ------------------------------------------------------------------------


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def render_text(report, indent: str = "") -> str:
    lines = []
    if isinstance(report, dict):
        for k in sorted(report):
            v = report[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines.append(render_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
    else:
        for item in report:
            if isinstance(item, (dict, list)):
                lines.append(f"{indent}-")
                lines.append(render_text(item, indent + "  "))
            else:
                lines.append(f"{indent}- {item}")
    return "\n".join(lines)


# -- parser -----------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--max-d", type=int, default=DEFAULT_MAX_D, help="largest polynomial degree searched")
    common.add_argument("--max-p", type=int, default=DEFAULT_MAX_P, help="largest iteration index")
    common.add_argument("--term-budget", type=int, default=DEFAULT_TERM_BUDGET, help="cap on symbolic term count")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="root-finding tolerance")
    common.add_argument("--format", dest="output", default="json", choices=("json", "text"))

    parser = _Parser(prog="liouvillian", description="Liouvillian solutions of y'' = M(x) y for polynomial M.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", parents=[common], help="u'' + P u' + Q u = 0 to monic y'' = M y")
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--scale", help="explicit rational rescale factor")
    p.add_argument("--numeric", action="store_true", help="accept a floating-point rescale")

    p = sub.add_parser("square", parents=[common], help="complete the square M = A^2 + B")
    p.add_argument("--M", required=True)

    p = sub.add_parser("delta", parents=[common], help="universal obstructions Delta_p")
    p.add_argument("--p", required=True, type=_int_range, help="index or range a..b")
    p.add_argument("--symbolic", action="store_true", help="print the differential polynomial")
    p.add_argument("--A")
    p.add_argument("--B")
    p.add_argument("--method", choices=("substitute", "iterate"))

    p = sub.add_parser("aim", parents=[common], help="asymptotic iteration for y'' = l0 y' + r0 y")
    p.add_argument("--l0", required=True)
    p.add_argument("--r0", required=True)
    p.add_argument("--p", type=int)

    p = sub.add_parser("solve", parents=[common], help="integrability of y'' = M y")
    p.add_argument("--M", required=True)

    p = sub.add_parser("membership", parents=[common], help="spectral variety membership at degree d")
    p.add_argument("--M", required=True)
    p.add_argument("--d", required=True, type=int)

    p = sub.add_parser("canonical", parents=[common], help="y'' = (x^2n + s(2d+n) x^(n-1)) y")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--d", required=True, type=int)
    p.add_argument("--sign", type=_sign, default=1)

    p = sub.add_parser("variety", parents=[common], help="equations of a spectral variety")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--d", required=True, type=_int_range, help="degree or range a..b")
    p.add_argument("--sign", type=_sign, default=1)
    p.add_argument("--full", action="store_true", help="keep a_(n-1) instead of depressing")

    p = sub.add_parser("spectrum", parents=[common], help="energies of psi'' = (U - lam) psi")
    p.add_argument("--U", required=True)
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p.add_argument("--levels", type=int, default=5, help="levels listed for quadratic U")

    p = sub.add_parser("eigen-solve", parents=[common], help="solve at an exact energy")
    p.add_argument("--U", required=True)
    p.add_argument("--lambda", required=True, dest="lambda_", metavar="VALUE")

    p = sub.add_parser("batch", help="run a manifest of commands")
    p.add_argument("manifest")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", dest="output", default="json", choices=("json", "text"))
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    options = {k: v for k, v in vars(ns).items() if k not in ("command", "max_d", "max_p", "term_budget", "tol", "output")}
    if "lambda_" in options:
        options["lambda"] = options.pop("lambda_")
    return RunConfig(ns.command, options, ns.max_d, ns.max_p, ns.term_budget, ns.tol, ns.output)


# -- execution ----------------------------------------------------------------------------


def run(argv: list[str]) -> tuple[int, str, str]:
    """Execute one command; returns (exit code, stdout text, stderr text)."""
    err = io.StringIO()
    try:
        with contextlib.redirect_stderr(err):
            ns = build_parser().parse_args(argv)
        if ns.command == "batch":
            return run_batch(ns.manifest, ns.jobs, ns.output)
        cfg = config_from_args(ns)
        report = dispatch(cfg)
    except PolyParseError as exc:
        flag = getattr(exc, "flag", "input")
        return EXIT_USAGE, "", f"error: cannot parse {flag}: {exc.message}\n{exc.caret()}\n"
    except (UsageError, argparse.ArgumentTypeError) as exc:
        return EXIT_USAGE, "", err.getvalue() + f"error: {exc}\n"
    except SystemExit as exc:  # --help, --version
        return int(exc.code or 0), "", err.getvalue()
    except BudgetExceeded as exc:
        return EXIT_RESOURCE, "", f"error: resource limit: {exc}\n"
    except (ValueError, TypeError, ArithmeticError) as exc:
        return EXIT_USAGE, "", f"error: {exc}\n"
    text = render_json(report) if cfg.output == "json" else render_text(report)
    return EXIT_OK, text + "\n", err.getvalue()


def _run_line(argv: list[str]) -> tuple[int, str, str]:
    return run(argv)


def parse_manifest(text: str) -> list[tuple[int, list[str], str | None]]:
    """(line number, argv, expected sha256 or None) for each command line."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        expected = None
        if "=>" in line:
            line, _, tail = line.partition("=>")
            tail = tail.strip()
            if not tail.startswith("sha256:"):
                raise UsageError(f"manifest line {lineno}: expected '=> sha256:<hex>'")
            expected = tail[len("sha256:"):].strip().lower()
        argv = shlex.split(line)
        if argv and argv[0] == "liouvillian":
            argv = argv[1:]
        if not argv or argv[0] == "batch":
            raise UsageError(f"manifest line {lineno}: missing or nested command")
        entries.append((lineno, argv, expected))
    return entries


def run_batch(path: str, jobs: int = 1, output: str = "json") -> tuple[int, str, str]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        return EXIT_USAGE, "", f"error: cannot read manifest: {exc}\n"
    try:
        entries = parse_manifest(text)
    except UsageError as exc:
        return EXIT_USAGE, "", f"error: {exc}\n"
    argvs = [argv for _, argv, _ in entries]
    if jobs > 1 and len(argvs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_line, argvs))
    else:
        outcomes = [_run_line(a) for a in argvs]
    results = []
    counts = {"pass": 0, "fail": 0, "unchecked": 0, "error": 0}
    for (lineno, argv, expected), (code, out, err) in zip(entries, outcomes):
        digest = hashlib.sha256(out.encode("utf-8")).hexdigest()
        if code not in (EXIT_OK,):
            status = "error"
        elif expected is None:
            status = "unchecked"
        else:
            status = "pass" if digest == expected else "fail"
        counts[status] += 1
        entry = {"line": lineno, "argv": argv, "exit": code, "sha256": digest, "status": status}
        if expected is not None:
            entry["expected"] = expected
        if out:
            try:
                entry["report"] = json.loads(out)
            except json.JSONDecodeError:
                entry["report"] = out
        if err:
            entry["stderr"] = err
        results.append(entry)
    report = {"schema_version": SCHEMA_VERSION, "command": "batch", "results": results, "summary": counts}
    code = EXIT_OK
    if counts["fail"]:
        code = EXIT_MISMATCH
    elif any(r["exit"] == EXIT_RESOURCE for r in results):
        code = EXIT_RESOURCE
    elif counts["error"]:
        code = EXIT_USAGE
    text = render_json(report) if output == "json" else render_text(report)
    return code, text + "\n", ""


def main(argv: list[str] | None = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else list(argv))
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
