"""Command-line front end: ``hsdirac <command> [flags]``.

Every command prints one JSON document ``{"suite", "entries", "summary"}``
(or a csv/text projection of it).  Exit status is 0 when every entry passed,
1 when some check failed and 2 for usage errors or an unwritable ``--out``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Callable, Sequence

from . import clifford, sphere
from .report import VerificationReport, timed
from .su2 import TEST_GROUP_ELEMENTS

DEFAULTS = {
    "verify-algebra": 20,
    "verify-cg": 8,
    "verify-equivariance": 6,
    "verify-s3": 4,
    "spectrum": 4,
    "kernel": 4,
    "bounds": 4,
    "torus": 5,
}
SYMBOL_ODD_MAX, SYMBOL_EVEN_MAX = 9, 8
ADJOINT_M_MAX, ADJOINT_N_MAX = 3, 4
GRAM_N_MAX = 2
SPECTRUM_OPERATORS = ("d0", "dpdm", "dmdp", "lap", "laptilde")


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def _spins(args, default_max: int) -> list[int]:
    if args.m is not None:
        return [args.m]
    top = default_max if args.m_max is None else args.m_max
    return list(range(top + 1))


def _cache(args):
    return sphere.BlockCache(args.cache_dir) if args.cache_dir else None


# --- suites -----------------------------------------------------------------


def suite_algebra(args) -> VerificationReport:
    spins = _spins(args, DEFAULTS["verify-algebra"])
    rep = VerificationReport("verify-algebra")
    for m in spins:
        rep.extend(clifford._verify_spin(m))
    top = max(spins)
    for m in spins:
        if (m % 2 and m <= min(SYMBOL_ODD_MAX, top)) or (m % 2 == 0 and m <= min(SYMBOL_EVEN_MAX, top)):
            sym = clifford.verify_symbol(m, m)
            rep.extend(e for e in sym.entries if e.params["m"] == m)
    return rep


def suite_cg(args) -> VerificationReport:
    rep = VerificationReport("verify-cg")
    for m in _spins(args, DEFAULTS["verify-cg"]):
        rep.extend(clifford.cg_oracle_compare(m))
    return rep


def suite_equivariance(args) -> VerificationReport:
    rep = VerificationReport("verify-equivariance")
    for m in _spins(args, DEFAULTS["verify-equivariance"]):
        for g in TEST_GROUP_ELEMENTS:
            rep.extend(clifford.verify_group_equivariance(m, g))
    return rep


def suite_s3(args) -> VerificationReport:
    rep = VerificationReport("verify-s3")
    cache = _cache(args)
    spins = _spins(args, DEFAULTS["verify-s3"])
    for n in range(min(args.n_max, GRAM_N_MAX) + 1):
        rep.extend(sphere.verify_gram(n, 0))
    for m in spins:
        for n in range(args.n_max + 1):
            rep.extend(sphere.verify_s3_identities(m, n, cache))
            if m <= ADJOINT_M_MAX and n <= ADJOINT_N_MAX:
                rep.extend(sphere.verify_adjoint_blocks(m, n, cache))
    return rep


def _operators(args) -> list[str]:
    op = (args.operator or "d0").lower()
    if op == "all":
        return list(SPECTRUM_OPERATORS)
    kind = sphere.OperatorKind(op).value
    if kind not in SPECTRUM_OPERATORS:
        raise UsageError(f"no closed-form spectrum for operator {op!r}; choose from {', '.join(SPECTRUM_OPERATORS)}")
    return [kind]


def suite_spectrum(args) -> VerificationReport:
    rep = VerificationReport("spectrum")
    cache = _cache(args)
    ops = _operators(args)
    for m in _spins(args, DEFAULTS["spectrum"]):
        for n in range(args.n_max + 1):
            for op in ops:
                with timed() as t:
                    s = sphere.spectrum_block(m, n, op, cache)
                body = s.to_json()
                rep.add(f"spectrum.{op}", s.passed, {"m": m, "n": n},
                        values={"dimension": s.dimension, "labeling": s.labeling,
                                "eigenvalues": body["eigenvalues"]},
                        provenance="closed-form eigenvalues account for the whole block",
                        witness=body["details"], wall_time=t[0])
    return rep


def _kernel_entry(rep, kind, m, n_max, cache, expected=None, provenance=""):
    with timed() as t:
        k = sphere.kernel_dimension(kind, m, n_max, cache)
    ok = k.status == "pass" and (expected is None or k.dimension == expected)
    body = k.to_json()
    values = {key: body[key] for key in ("dimension", "predicted", "per_degree", "required_degree", "certificate")}
    if expected is not None:
        values["expected"] = expected
    rep.add(f"kernel.{k.kind}", ok, {"m": m, "n_max": k.n_max}, values=values,
            provenance=provenance or "nullities summed over degrees, completeness from closed forms",
            witness=body, wall_time=t[0])


def suite_kernel(args) -> VerificationReport:
    rep = VerificationReport("kernel")
    cache = _cache(args)
    spins = _spins(args, DEFAULTS["kernel"])
    if args.operator:
        kind = sphere.OperatorKind(args.operator.lower())
        for m in spins:
            try:
                _kernel_entry(rep, kind, m, args.n_max, cache)
            except sphere.KernelUnboundedError as exc:
                raise UsageError(str(exc))
        return rep
    n_max = 6 if args.n_max is None else args.n_max
    for m in spins:
        _kernel_entry(rep, "dplus", m, None, cache, (m + 1) * (m + 2) * (m + 3) // 6,
                      "dim ker D+_m = (m+1)(m+2)(m+3)/6")
    for m in spins:
        if m % 2 == 0:
            p = m // 2
            _kernel_entry(rep, "laptilde", m, None, cache, (p + 1) ** 2,
                          "dim ker tilde Delta_{2p} = (p+1)^2")
    for m in spins:
        if m >= 1:
            _kernel_entry(rep, "lap", m, n_max, cache, 0, "ker Delta_m = 0 for m >= 1")
    for m in spins:
        if m % 2:
            _kernel_entry(rep, "d0", m, n_max, cache, 0, "ker D0_m = 0 for odd m")
    return rep


def suite_bounds(args) -> VerificationReport:
    rep = VerificationReport("bounds")
    cache = _cache(args)
    n_max = 6 if args.n_max is None else args.n_max
    for m in _spins(args, DEFAULTS["bounds"]):
        b = sphere.check_eigenvalue_bounds(m, n_max, cache)
        for e in b.checks.entries:
            e.params.setdefault("n_max", n_max)
        rep.extend(b.checks)
    return rep


def suite_torus(args) -> VerificationReport:
    rep = VerificationReport("torus")
    for m in _spins(args, DEFAULTS["torus"]):
        with timed() as t:
            tk = clifford.torus_kernel_dims(m)
        ok = tk.certificate.passed and tk.dplus == m + 1
        rep.add("torus.kernel_dims", ok, {"m": m},
                values={"d0": tk.d0, "dplus": tk.dplus, "lap": tk.lap, "laptilde": tk.laptilde},
                provenance="only the zero mode survives; symbols at e1 are injective",
                witness=[e.to_dict() for e in tk.certificate.failures], wall_time=t[0])
    return rep


SUITES: dict[str, Callable[[argparse.Namespace], VerificationReport]] = {
    "verify-algebra": suite_algebra,
    "verify-cg": suite_cg,
    "verify-equivariance": suite_equivariance,
    "verify-s3": suite_s3,
    "spectrum": suite_spectrum,
    "kernel": suite_kernel,
    "bounds": suite_bounds,
    "torus": suite_torus,
}


def report_all(args) -> tuple[dict, VerificationReport]:
    """Run every suite at its default (or --m-max clipped) range."""
    total = VerificationReport("report-all")
    sections = []
    for name, fn in SUITES.items():
        sub = argparse.Namespace(**vars(args))
        sub.m = None
        top = DEFAULTS[name] if args.m_max is None else min(DEFAULTS[name], args.m_max)
        sub.m_max = top
        sub.operator = "all" if name == "spectrum" else None
        if name in ("verify-s3", "spectrum") and sub.n_max is None:
            sub.n_max = 6
        rep = fn(sub)
        total.extend(rep)
        sections.append({"suite": name, "summary": rep.summary()})
    return {"sections": sections}, total


# --- output -----------------------------------------------------------------


def _document(rep: VerificationReport, timing: bool, extra: dict | None = None) -> dict:
    doc = rep.to_dict(timing=timing)
    if extra:
        doc.update(extra)
    return doc


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "check", "params", "status", "values", "provenance"])
        for e in doc["entries"]:
            w.writerow([doc["suite"], e["check"], json.dumps(e["params"]), e["status"],
                        json.dumps(e["values"]), e["provenance"]])
        return buf.getvalue()
    lines = []
    for e in doc["entries"]:
        params = " ".join(f"{k}={v}" for k, v in e["params"].items())
        lines.append(f"{e['status'].upper():4}  {e['check']}  {params}")
    s = doc["summary"]
    lines.append(f"{doc['suite']}: {s['pass']} pass, {s['fail']} fail")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=_nonneg, help="single spin index m")
    common.add_argument("--m-max", type=_nonneg, help="largest spin index m")
    common.add_argument("--n-max", type=_nonneg, help="largest Peter-Weyl degree n")
    common.add_argument("--operator", help="d0, dplus, dminus, lap, laptilde, dpdm, dmdp (or 'all' for spectrum)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--cache-dir", default=os.environ.get("HSD_CACHE_DIR"),
                        help="on-disk block cache (default: $HSD_CACHE_DIR)")
    common.add_argument("--timing", action="store_true", help="add a wall-time envelope")
    parser = argparse.ArgumentParser(prog="hsdirac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(SUITES) + ["report-all"]:
        sub.add_parser(name, parents=[common])
    return parser


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command in ("verify-s3", "spectrum") and args.n_max is None:
        args.n_max = 6
    try:
        if args.out is not None:
            try:
                with open(args.out, "a"):
                    pass
            except OSError as exc:
                raise UsageError(f"cannot write --out {args.out}: {exc.strerror}")
        extra = None
        if args.command == "report-all":
            extra, rep = report_all(args)
        else:
            rep = SUITES[args.command](args)
        text = render(_document(rep, args.timing, extra), args.format)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"hsdirac: error: {exc}", file=sys.stderr)
        return 2
    if args.out is not None:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0 if rep.passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
