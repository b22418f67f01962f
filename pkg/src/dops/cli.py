"""Batch command line front-end.

Subcommands: ``gen`` writes polynomial tables, ``verify`` runs identity
suites, ``moments`` emits dual-functional moments with the orthogonality
pattern, and ``report`` bundles all of it into one artifact.  Output formats
are json (canonical, byte-stable), csv, and latex; rationals are always
serialized as decimal-free p/q strings and coefficient rows are dense,
ascending by power.

Exit codes: 0 when no identity check failed (warnings such as detected
non-regularity or reconciliation notes do not fail a run), 1 when some
identity check failed, 2 for invalid parameters or usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import identities
from .families import (
    FamilyParamError,
    HypParams,
    LagParams,
    MLParams,
    hyp_laguerre,
    hyp_quasi,
    laguerre_q_sequence,
    laguerre_type_by_gf,
    laguerre_type_by_recurrence,
    ml_by_gf,
    ml_by_recurrence,
    ml_q_sequence,
)
from .identities import VerificationReport, Witness, first_mismatch
from .orthogonality import (
    FitError,
    check_regularity,
    fit_recurrence,
    moments_by_inversion,
    quasi_orthogonality_order,
    verify_d_orthogonality,
)
from .polynomials import Poly, as_rational, binomial, format_rational, parse_rational

DEFAULT_ORDER_ENV = "DOPS_DEFAULT_ORDER"
FAMILIES = ("ml", "laguerre", "hyp-laguerre", "charlier")
FORMATS = ("json", "csv", "latex")

ML_SUITES = ("routes", "hahn", "nccd", "sr-block", "sr2", "de1", "de2", "sz4", "sz5",
             "regularity", "d-orthogonality", "moment-recursion")
LAG_SUITES = ("routes", "laguerre-structure", "regularity", "d-orthogonality")
HYP_SUITES = ("hyp-lincomb", "quasi-order")

WARNING_PREFIX = "warning: "


class CliError(Exception):
    """Invalid parameters or usage; maps to exit code 2."""


@dataclass
class FamilySetup:
    kind: str
    order: int
    params: object
    beta: Optional[Fraction] = None  # hyp quasi parameter
    l: Optional[int] = None

    @property
    def d(self) -> int:
        return self.params.d

    def public_params(self) -> dict:
        p = self.params
        if self.kind in ("ml", "charlier"):
            return {
                "d": p.d,
                "alpha": format_rational(p.alpha),
                "beta": format_rational(p.beta),
                "c": [format_rational(ci) for ci in p.c],
            }
        if self.kind == "laguerre":
            return {
                "d": p.d,
                "a": format_rational(p.a),
                "beta_exp": format_rational(p.beta_exp),
                "theta": format_rational(p.theta),
                "b": [format_rational(bi) for bi in p.b],
            }
        return {
            "d": p.d,
            "alphavec": [format_rational(ai) for ai in p.alphavec],
            "beta": format_rational(self.beta),
            "l": self.l,
        }

    def default_suites(self) -> tuple[str, ...]:
        if self.kind in ("ml", "charlier"):
            return ML_SUITES
        if self.kind == "laguerre":
            return LAG_SUITES
        return HYP_SUITES

    def polys(self) -> list[Poly]:
        if self.kind in ("ml", "charlier"):
            return ml_by_recurrence(self.params, self.order)
        if self.kind == "laguerre":
            return laguerre_type_by_recurrence(self.params, self.order)
        return [hyp_laguerre(self.params, n) for n in range(self.order + 1)]

    def q_polys(self, polys: Sequence[Poly]) -> list[Poly]:
        if self.kind in ("ml", "charlier"):
            return ml_q_sequence(polys, self.params.w)
        if self.kind == "laguerre":
            return laguerre_q_sequence(polys)
        raise CliError("companion sequence is only defined for the ml, charlier, and laguerre families")


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


def _rational_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise CliError("config file must hold a JSON object")
    return cfg


def _merge_config(args: argparse.Namespace) -> dict:
    """Resolve the run configuration: flags override the config file, which
    overrides defaults (order also honors the environment override)."""
    cfg = _load_config(getattr(args, "config", None))
    parameters = dict(cfg.get("parameters", {}))
    merged = {
        "family": getattr(args, "family", None) or cfg.get("family"),
        "d": getattr(args, "d", None) if getattr(args, "d", None) is not None else cfg.get("d"),
        "order": getattr(args, "order", None) if getattr(args, "order", None) is not None else cfg.get("order"),
        "format": getattr(args, "format", None) or cfg.get("format") or "json",
        "out": getattr(args, "out", None) or cfg.get("out"),
        "suites": getattr(args, "suites", None) or cfg.get("suites"),
        "parameters": parameters,
    }
    for key, flag in (("alpha", "alpha"), ("beta", "beta"), ("a", "a"),
                      ("theta", "theta"), ("beta_exp", "beta_exp")):
        value = getattr(args, flag, None)
        if value is not None:
            parameters[key] = value
    for key in ("c", "b", "alphavec"):
        value = getattr(args, key, None)
        if value is not None:
            parameters[key] = value
    if getattr(args, "l", None) is not None:
        parameters["l"] = args.l
    if merged["order"] is None:
        merged["order"] = int(os.environ.get(DEFAULT_ORDER_ENV, "16"))
    if merged["d"] is None:
        merged["d"] = 1
    return merged


def _param_rational(parameters: dict, key: str, default=None, required=False) -> Optional[Fraction]:
    if key in parameters and parameters[key] is not None:
        return as_rational(parameters[key])
    if required:
        raise CliError(f"missing required parameter --{key.replace('_', '-')}")
    return default


def _param_list(parameters: dict, key: str) -> Optional[list[Fraction]]:
    if key not in parameters or parameters[key] is None:
        return None
    value = parameters[key]
    if isinstance(value, str):
        value = _rational_list(value)
    return [as_rational(v) for v in value]


def build_setup(cfg: dict) -> FamilySetup:
    family = cfg.get("family")
    if family not in FAMILIES:
        raise CliError(f"--family must be one of {', '.join(FAMILIES)}")
    d = int(cfg["d"])
    order = int(cfg["order"])
    if order < 0:
        raise CliError("--order must be non-negative")
    parameters = cfg.get("parameters", {})
    try:
        if family in ("ml", "charlier"):
            alpha = _param_rational(parameters, "alpha",
                                    default=Fraction(0) if family == "charlier" else None,
                                    required=family == "ml")
            if family == "charlier" and alpha != 0:
                raise CliError("the charlier family fixes alpha = 0; use --family ml for alpha != 0")
            beta = _param_rational(parameters, "beta", required=True)
            c = _param_list(parameters, "c") or []
            params = MLParams(d, alpha, beta, c)
            return FamilySetup(kind=family, order=order, params=params)
        if family == "laguerre":
            a = _param_rational(parameters, "a", required=True)
            beta_exp = _param_rational(parameters, "beta_exp", default=Fraction(0))
            theta = _param_rational(parameters, "theta", default=Fraction(0))
            b = _param_list(parameters, "b")
            params = LagParams(d, a, beta_exp, theta, b if b is not None else ())
            return FamilySetup(kind=family, order=order, params=params)
        alphavec = _param_list(parameters, "alphavec")
        if not alphavec:
            raise CliError("missing required parameter --alphavec")
        params = HypParams(d, alphavec)
        beta = _param_rational(parameters, "beta", default=Fraction(0))
        l = int(parameters.get("l", 1))
        if l < 1:
            raise CliError("--l must be a positive integer")
        return FamilySetup(kind=family, order=order, params=params, beta=beta, l=l)
    except FamilyParamError as exc:
        raise CliError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _poly_row(p: Poly, n: int) -> dict:
    coeffs = [format_rational(p.coefficient(k)) for k in range(max(n, p.degree) + 1)]
    return {"n": n, "coeffs": coeffs}


def latex_rational(value) -> str:
    f = as_rational(value)
    if f.denominator == 1:
        return str(f.numerator)
    sign = "-" if f.numerator < 0 else ""
    return f"{sign}\\frac{{{abs(f.numerator)}}}{{{f.denominator}}}"


def _render_json(artifact: dict) -> str:
    return json.dumps(artifact, indent=2, sort_keys=True) + "\n"


def _poly_table_csv(writer, label: str, rows: list[dict], width: int):
    for row in rows:
        padded = row["coeffs"] + ["0"] * (width - len(row["coeffs"]))
        writer.writerow([label, row["n"], *padded])


def _render_gen_csv(artifact: dict, order: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "n", *[f"c{k}" for k in range(order + 1)]])
    _poly_table_csv(writer, "P", artifact["polys"], order + 1)
    if "q_polys" in artifact:
        _poly_table_csv(writer, "Q", artifact["q_polys"], order + 1)
    return buf.getvalue()


def _render_gen_latex(artifact: dict, order: int) -> str:
    lines = [
        "% polynomial table: coefficients ascending by power",
        "\\begin{tabular}{r|" + "r" * (order + 1) + "}",
        "n & " + " & ".join(f"x^{{{k}}}" for k in range(order + 1)) + " \\\\ \\hline",
    ]

    def rows(label, entries):
        for row in entries:
            cells = [latex_rational(parse_rational(c)) for c in row["coeffs"]]
            cells += ["0"] * (order + 1 - len(cells))
            lines.append(f"{label}_{{{row['n']}}} & " + " & ".join(cells) + " \\\\")

    rows("P", artifact["polys"])
    if "q_polys" in artifact:
        rows("Q", artifact["q_polys"])
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def _render_reports_csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["identity", "status", "n_min", "n_max", "witness_n", "notes"])
    for rep in reports:
        witness_n = rep["witness"]["n"] if rep["witness"] else ""
        writer.writerow([rep["identity"], rep["status"], rep["range"][0], rep["range"][1],
                         witness_n, " | ".join(rep["notes"])])
    return buf.getvalue()


def _render_reports_latex(reports: list[dict]) -> str:
    lines = [
        "\\begin{tabular}{llrrl}",
        "identity & status & $n_{\\min}$ & $n_{\\max}$ & notes \\\\ \\hline",
    ]
    for rep in reports:
        notes = "; ".join(rep["notes"]).replace("_", "\\_")
        lines.append(f"{rep['identity']} & {rep['status']} & {rep['range'][0]} & "
                     f"{rep['range'][1]} & {notes} \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def _render_moments_csv(artifact: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    order = artifact["order"]
    writer.writerow(["r", *[f"x{k}" for k in range(order + 1)]])
    for row in artifact["moments"]:
        writer.writerow([row["r"], *row["values"]])
    writer.writerow([])
    writer.writerow(["r", "m", "n", "kind", "value", "ok"])
    for check in artifact["pattern"]["checks"]:
        writer.writerow([check["r"], check["m"], check["n"], check["kind"],
                         check["value"], check["ok"]])
    return buf.getvalue()


def _render_moments_latex(artifact: dict) -> str:
    order = artifact["order"]
    lines = [
        "\\begin{tabular}{r|" + "r" * (order + 1) + "}",
        "r & " + " & ".join(f"\\langle u_r, x^{{{k}}}\\rangle" for k in range(order + 1)) + " \\\\ \\hline",
    ]
    for row in artifact["moments"]:
        cells = [latex_rational(parse_rational(v)) for v in row["values"]]
        lines.append(f"{row['r']} & " + " & ".join(cells) + " \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def _write_output(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".dops-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp_path, out)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def _scalar_witness(n: int, actual, expected, context: str) -> Witness:
    return Witness(n=n, expected=Poly.const(expected), actual=Poly.const(actual), context=context)


def _suite_routes(setup: FamilySetup, polys: Optional[list[Poly]]) -> VerificationReport:
    params = setup.public_params()
    p = setup.params
    if setup.kind in ("ml", "charlier"):
        rec = ml_by_recurrence(p, setup.order)
        gf = ml_by_gf(p, setup.order)
    else:
        rec = laguerre_type_by_recurrence(p, setup.order)
        gf = laguerre_type_by_gf(p, setup.order)
    checks = [(n, rec[n], gf[n], "recurrence route vs generating-function route")
              for n in range(setup.order + 1)]
    if polys is not None:
        checks += [(n, polys[n], rec[n], "supplied table vs recurrence route")
                   for n in range(min(len(polys), setup.order + 1))]
    witness = first_mismatch(checks)
    return VerificationReport(identity="routes", params=params, n_min=0, n_max=setup.order,
                              status="fail" if witness else "pass", witness=witness)


def _suite_hahn(setup: FamilySetup, polys: Optional[list[Poly]]) -> VerificationReport:
    """Companion-sequence conformance: the difference companions satisfy the
    shifted band recurrence, and their fitted table shows the predicted
    coefficient shift against the family's own table."""
    p = setup.params
    params = setup.public_params()
    seq = polys if polys is not None else ml_by_recurrence(p, setup.order)
    q = ml_q_sequence(seq, p.w)
    alpha, beta = p.alpha, p.beta

    def replay_checks():
        x = Poly.x()
        for n in range(len(q) - 1):
            nxt = (x + Poly.const((alpha + beta) * n + p.b(0) + alpha)) * q[n]
            if n >= 1:
                nxt = nxt - q[n - 1] * (n * (n * alpha * beta + (alpha + beta) * p.b(0) - p.b(1)))
            for k in range(2, min(n, p.d) + 1):
                coef = (p.b(k) - (alpha + beta) * k * p.b(k - 1)
                        + alpha * beta * k * (k - 1) * p.b(k - 2))
                if coef != 0:
                    nxt = nxt + q[n - k] * (binomial(n, k) * coef)
            yield n + 1, q[n + 1], nxt, "companion band recurrence replay"

    witness = first_mismatch(replay_checks())
    notes = []
    if witness is None:
        p_table = fit_recurrence(seq, p.d)
        q_table = fit_recurrence(q, p.d)
        shift_checks = []
        for n in range(len(q_table.beta)):
            shift_checks.append((n, q_table.beta[n], p_table.beta[n] - alpha,
                                 "companion beta shift by alpha"))
        for (m, k), value in sorted(q_table.gamma.items()):
            if k == p.d - 1:
                expected = p_table.gamma_at(m, k) + m * alpha * beta
                context = "top gamma class shifted by n*alpha*beta"
            else:
                expected = p_table.gamma_at(m, k)
                context = "lower gamma classes unchanged"
            shift_checks.append((m, value, expected, context))
        bad = next(((n, a, e, ctx) for n, a, e, ctx in shift_checks if a != e), None)
        if bad is not None:
            witness = _scalar_witness(bad[0], bad[1], bad[2], bad[3])
        else:
            notes.append("fitted companion table shows the predicted shift: beta gains alpha, "
                         "the top gamma class gains n*alpha*beta, lower classes are unchanged")
    return VerificationReport(identity="hahn", params=params, n_min=0, n_max=len(q) - 1,
                              status="fail" if witness else "pass", witness=witness,
                              notes=tuple(notes))


def _suite_regularity(setup: FamilySetup, polys: Optional[list[Poly]]) -> VerificationReport:
    params = setup.public_params()
    seq = polys if polys is not None else setup.polys()
    try:
        table = fit_recurrence(seq, setup.d)
    except FitError as exc:
        witness = _scalar_witness(exc.index, 1, 0, str(exc))
        return VerificationReport(identity="regularity", params=params, n_min=0,
                                  n_max=len(seq) - 1, status="fail", witness=witness)
    upto = table.regular_upto()
    flags = check_regularity(table, upto)
    notes = []
    if flags:
        notes.append(WARNING_PREFIX + "regularity fails at m = "
                     + ", ".join(str(m) for m in flags)
                     + f" (gamma^0 vanishing); sequence is not d-orthogonal there")
    else:
        notes.append(f"all regularity conditions hold through m = {upto}")
    return VerificationReport(identity="regularity", params=params, n_min=0, n_max=upto,
                              status="pass", notes=tuple(notes))


def _suite_d_orthogonality(setup: FamilySetup, polys: Optional[list[Poly]]) -> VerificationReport:
    params = setup.public_params()
    seq = polys if polys is not None else setup.polys()
    table = moments_by_inversion(seq, setup.d)
    report = verify_d_orthogonality(seq, table, setup.d, len(seq) - 1)
    witness = None
    if report.zero_failures:
        first = report.zero_failures[0]
        witness = _scalar_witness(first.n, first.value, 0,
                                  f"vanishing condition at (r={first.r}, m={first.m}, n={first.n})")
    notes = []
    if report.regularity_failures:
        cells = ", ".join(f"(r={c.r}, m={c.m})" for c in report.regularity_failures)
        notes.append(WARNING_PREFIX + f"regularity conditions fail at {cells}")
    else:
        notes.append("all regularity conditions in the pattern are nonzero")
    return VerificationReport(identity="d-orthogonality", params=params, n_min=0,
                              n_max=len(seq) - 1, status="fail" if witness else "pass",
                              witness=witness, notes=tuple(notes))


def _suite_quasi_order(setup: FamilySetup) -> VerificationReport:
    params = setup.public_params()
    p = setup.params
    basis = [hyp_laguerre(p, n) for n in range(setup.order + 1)]
    q_seq = [hyp_quasi(p, setup.beta, setup.l, n) for n in range(setup.order + 1)]
    found, exact = quasi_orthogonality_order(q_seq, basis, p.d)
    witness = None
    notes = []
    if found != setup.l:
        witness = _scalar_witness(found, found, setup.l, "detected quasi-orthogonality order")
    elif not exact:
        witness = _scalar_witness(found, 0, 1, "bottom expansion coefficient vanished somewhere")
    else:
        notes.append(f"quasi-orthogonality order is exactly {found}")
    return VerificationReport(identity="quasi-order", params=params, n_min=0, n_max=setup.order,
                              status="fail" if witness else "pass", witness=witness,
                              notes=tuple(notes))


def run_suites(setup: FamilySetup, suites: Sequence[str],
               polys: Optional[list[Poly]] = None) -> list[VerificationReport]:
    reports: list[VerificationReport] = []
    p = setup.params
    n = setup.order
    for suite in suites:
        if suite not in setup.default_suites():
            raise CliError(f"unknown suite {suite!r} for family {setup.kind!r}; "
                           f"choose from {', '.join(setup.default_suites())}")
        if suite == "routes":
            reports.append(_suite_routes(setup, polys))
        elif suite == "hahn":
            reports.append(_suite_hahn(setup, polys))
        elif suite == "nccd":
            reports.append(identities.verify_nccd(p, n))
        elif suite == "sr-block":
            reports.extend(identities.verify_sr_block(p, n))
        elif suite == "sr2":
            reports.append(identities.verify_sr2_general(p, n))
        elif suite == "de1":
            for k in range(1, p.d + 1):
                reports.append(identities.verify_de(p, n, ("de1", k)))
        elif suite == "de2":
            reports.append(identities.verify_de(p, n, "de2"))
        elif suite == "sz4":
            reports.append(identities.verify_sz4(p, n))
        elif suite == "sz5":
            reports.append(identities.verify_sz5(p.alpha, p.beta, n))
        elif suite == "regularity":
            reports.append(_suite_regularity(setup, polys))
        elif suite == "d-orthogonality":
            reports.append(_suite_d_orthogonality(setup, polys))
        elif suite == "moment-recursion":
            reports.append(identities.verify_moment_recursion(p, n))
        elif suite == "laguerre-structure":
            reports.append(identities.verify_laguerre_structure(p, n))
        elif suite == "hyp-lincomb":
            reports.append(identities.verify_hyp_lincomb(p, setup.beta, setup.l, n))
        elif suite == "quasi-order":
            reports.append(_suite_quasi_order(setup))
    return reports


def _summarize(reports: list[VerificationReport]) -> dict:
    return {
        "pass": sum(1 for r in reports if r.status == "pass"),
        "fail": sum(1 for r in reports if r.status == "fail"),
        "not_applicable": sum(1 for r in reports if r.status == "not-applicable"),
        "warnings": sum(1 for r in reports
                        if any(note.startswith(WARNING_PREFIX) for note in r.notes)),
    }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _gen_artifact(setup: FamilySetup, with_q: bool) -> dict:
    polys = setup.polys()
    artifact = {
        "family": setup.kind,
        "params": setup.public_params(),
        "polys": [_poly_row(p, n) for n, p in enumerate(polys)],
    }
    if with_q:
        artifact["q_polys"] = [_poly_row(p, n) for n, p in enumerate(setup.q_polys(polys))]
    return artifact


def cmd_gen(args) -> int:
    cfg = _merge_config(args)
    setup = build_setup(cfg)
    artifact = _gen_artifact(setup, getattr(args, "with_q", False))
    fmt = cfg["format"]
    if fmt == "json":
        text = _render_json(artifact)
    elif fmt == "csv":
        text = _render_gen_csv(artifact, setup.order)
    else:
        text = _render_gen_latex(artifact, setup.order)
    _write_output(text, cfg["out"])
    return 0


def _parse_table(path: str) -> tuple[FamilySetup, list[Poly]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            artifact = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read table artifact {path}: {exc}") from exc
    try:
        family = artifact["family"]
        params = artifact["params"]
        rows = artifact["polys"]
    except (KeyError, TypeError) as exc:
        raise CliError(f"table artifact {path} is missing required keys") from exc
    parameters = {k: v for k, v in params.items() if k not in ("d",)}
    cfg = {
        "family": family,
        "d": params.get("d", 1),
        "order": len(rows) - 1,
        "format": "json",
        "out": None,
        "suites": None,
        "parameters": parameters,
    }
    setup = build_setup(cfg)
    polys = []
    for row in rows:
        polys.append(Poly([parse_rational(c) for c in row["coeffs"]]))
    return setup, polys


def cmd_verify(args) -> int:
    cfg = _merge_config(args)
    polys = None
    if getattr(args, "from_table", None):
        setup, polys = _parse_table(args.from_table)
        if cfg.get("suites"):
            suites = cfg["suites"]
        else:
            suites = setup.default_suites()
    else:
        setup = build_setup(cfg)
        suites = cfg.get("suites") or setup.default_suites()
    if isinstance(suites, str):
        suites = _rational_list(suites)
    reports = run_suites(setup, suites, polys)
    artifact = {
        "family": setup.kind,
        "params": setup.public_params(),
        "order": setup.order,
        "reports": [r.to_dict() for r in reports],
        "summary": _summarize(reports),
    }
    fmt = cfg["format"]
    if fmt == "json":
        text = _render_json(artifact)
    elif fmt == "csv":
        text = _render_reports_csv(artifact["reports"])
    else:
        text = _render_reports_latex(artifact["reports"])
    _write_output(text, cfg["out"])
    for rep in reports:
        line = f"{rep.status.upper():15s} {rep.identity}"
        if rep.notes:
            line += "  [" + "; ".join(rep.notes) + "]"
        print(line, file=sys.stderr)
    return 1 if artifact["summary"]["fail"] else 0


def _moments_artifact(setup: FamilySetup, polys: Optional[list[Poly]] = None) -> dict:
    seq = polys if polys is not None else setup.polys()
    if setup.d > len(seq) - 1:
        raise CliError(f"need order N >= d (d = {setup.d}, N = {len(seq) - 1})")
    table = moments_by_inversion(seq, setup.d)
    pattern = verify_d_orthogonality(seq, table, setup.d, len(seq) - 1)
    return {
        "family": setup.kind,
        "params": setup.public_params(),
        "order": setup.order,
        "d": setup.d,
        "moments": [
            {"r": r, "values": [format_rational(v) for v in table.moments[r]]}
            for r in range(setup.d)
        ],
        "pattern": {
            "checks": [
                {"r": c.r, "m": c.m, "n": c.n, "kind": c.kind,
                 "value": format_rational(c.value), "ok": c.ok}
                for c in pattern.checks
            ],
            "zero_failures": len(pattern.zero_failures),
            "regularity_failures": len(pattern.regularity_failures),
        },
    }


def cmd_moments(args) -> int:
    cfg = _merge_config(args)
    setup = build_setup(cfg)
    artifact = _moments_artifact(setup)
    fmt = cfg["format"]
    if fmt == "json":
        text = _render_json(artifact)
    elif fmt == "csv":
        text = _render_moments_csv(artifact)
    else:
        text = _render_moments_latex(artifact)
    _write_output(text, cfg["out"])
    if artifact["pattern"]["regularity_failures"]:
        print(WARNING_PREFIX + "some regularity conditions in the pattern are zero",
              file=sys.stderr)
    return 1 if artifact["pattern"]["zero_failures"] else 0


def cmd_report(args) -> int:
    cfg = _merge_config(args)
    setup = build_setup(cfg)
    suites = cfg.get("suites") or setup.default_suites()
    if isinstance(suites, str):
        suites = _rational_list(suites)
    reports = run_suites(setup, suites)
    artifact = {
        "family": setup.kind,
        "params": setup.public_params(),
        "order": setup.order,
        "generated": _gen_artifact(setup, setup.kind != "hyp-laguerre"),
        "reports": [r.to_dict() for r in reports],
        "summary": _summarize(reports),
    }
    if setup.kind != "hyp-laguerre":
        artifact["moments"] = _moments_artifact(setup)
    fmt = cfg["format"]
    if fmt == "json":
        text = _render_json(artifact)
    elif fmt == "csv":
        text = _render_reports_csv(artifact["reports"])
    else:
        parts = [_render_gen_latex(artifact["generated"], setup.order),
                 _render_reports_latex(artifact["reports"])]
        if "moments" in artifact:
            parts.append(_render_moments_latex(artifact["moments"]))
        text = "\n".join(parts)
    _write_output(text, cfg["out"])
    return 1 if artifact["summary"]["fail"] else 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _add_common_options(sub: argparse.ArgumentParser):
    sub.add_argument("--config", help="JSON run configuration; flags override its entries")
    sub.add_argument("--family", choices=FAMILIES)
    sub.add_argument("--d", type=int, help="number of orthogonality functionals")
    sub.add_argument("--alpha", help="ml ratio parameter (rational p/q)")
    sub.add_argument("--beta", help="ml ratio parameter / hyp quasi parameter")
    sub.add_argument("--c", type=_rational_list,
                     help="comma-separated exponent coefficients c_1..c_{d-1} (ml)")
    sub.add_argument("--a", help="laguerre scale parameter")
    sub.add_argument("--theta", help="laguerre shift parameter")
    sub.add_argument("--beta-exp", dest="beta_exp", help="laguerre binomial exponent")
    sub.add_argument("--b", type=_rational_list,
                     help="comma-separated exponent coefficients b_0..b_{d-1} (laguerre)")
    sub.add_argument("--alphavec", type=_rational_list,
                     help="comma-separated parameters alpha_1..alpha_d (hyp-laguerre)")
    sub.add_argument("--l", type=int, help="quasi-orthogonality order (hyp-laguerre)")
    sub.add_argument("--order", type=int,
                     help=f"truncation order N (default 16; env {DEFAULT_ORDER_ENV} overrides)")
    sub.add_argument("--format", choices=FORMATS)
    sub.add_argument("--out", help="output path (written atomically); stdout when omitted")


# Lets argparse accept negative rationals like -3/2 or -1/3,-2 as option
# values rather than mistaking them for option names.
_NEGATIVE_RATIONAL = re.compile(r"^-\d+(/\d+)?(,-?\d+(/\d+)?)*$")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dops",
        description="Construct d-orthogonal polynomial families in exact rational "
                    "arithmetic and machine-verify their identity catalog.")
    parser._negative_number_matcher = _NEGATIVE_RATIONAL
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="generate a polynomial table")
    _add_common_options(gen)
    gen.add_argument("--with-q", action="store_true", dest="with_q",
                     help="also emit the companion sequence Q_0..Q_{N-1}")
    gen.set_defaults(func=cmd_gen)

    verify = subs.add_parser("verify", help="run identity suites")
    _add_common_options(verify)
    verify.add_argument("--suites", type=_rational_list,
                        help="comma-separated suite ids (default: all for the family)")
    verify.add_argument("--from-table", dest="from_table",
                        help="verify against a gen artifact instead of regenerating")
    verify.set_defaults(func=cmd_verify)

    moments = subs.add_parser("moments", help="dual-functional moments and pattern")
    _add_common_options(moments)
    moments.set_defaults(func=cmd_moments)

    report = subs.add_parser("report", help="combined tables, moments, and suites")
    _add_common_options(report)
    report.add_argument("--suites", type=_rational_list)
    report.set_defaults(func=cmd_report)

    for sub in (gen, verify, moments, report):
        sub._negative_number_matcher = _NEGATIVE_RATIONAL

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FamilyParamError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
