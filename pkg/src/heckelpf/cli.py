"""Command-line front end: coefficient cache management, invariant
suites, and deterministic CSV/JSON report emission.

Exit codes: 0 all requested checks pass, 1 hard invariant failure,
2 usage or configuration error, 3 I/O error (including a missing cache
when auto-generation is disabled).

Reports are byte-deterministic for a fixed configuration: no
timestamps, floats printed to 12 significant digits, JSON keys sorted,
integers wider than 53 bits serialized as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .analysis import (
    ThresholdSpec,
    congruence_density,
    congruence_reference_count,
    lpf_density,
    natural_density_over_n,
    odd_prime_power_suite,
    pafp_suite,
    sato_tate_test,
    theorem6_report,
)
from .arith import is_prime, shared_sieve
from .cyclotomic import (
    DegenerateLucasError,
    LucasParameters,
    classify_prime_divisors,
    lucas_parameters,
    phi_value,
    psi_polynomial,
)
from .eigenform import (
    FORMS,
    CoefficientTable,
    TableChecksumError,
    TableFormatError,
    TableMismatchError,
    coeff_prime_power,
    delta_series_eisenstein_oracle,
    eigenform_table,
    form_by_name,
    load_table,
    save_table,
)
from .quadfield import (
    QuadraticField,
    class_number,
    class_number_via_ideals,
    field_from_prime,
    height_gamma,
    split_prime,
    wieferich_valuation,
)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2
EXIT_IO = 3

# serialized failing lists are capped; the full list goes to a side file
FAILING_CAP = 10_000

REPORT_KINDS = (
    "sato-tate",
    "lpf-density",
    "congruence",
    "natural-density",
    "prime-power",
    "theorem6",
    "pafp",
    "wieferich",
)
VERIFY_SUITES = ("coeffs", "cyclotomic", "quadfield", "densities", "all")


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    """One CSV cell; every numeric column stays parseable as a decimal."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".12g")
    if isinstance(value, Fraction):
        return format(float(value), ".12g")
    if value is None:
        return "nan"
    return str(value)


def _jsonable(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value) if value.bit_length() > 53 else value
    if isinstance(value, float):
        return float(format(value, ".12g"))
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    return value


def _write_json(path: Path, kind: str, config: dict, rows, summary: dict) -> None:
    payload = {
        "tool_version": __version__,
        "config": _jsonable(config),
        "kind": kind,
        "rows": _jsonable(rows),
        "summary": _jsonable(summary),
    }
    text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(cell) for cell in row) + "\n")


def _write_lines(path: Path, values) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for value in values:
            fh.write(f"{value}\n")


# ---------------------------------------------------------------------------
# cache plumbing
# ---------------------------------------------------------------------------


def _cache_path(cache_dir: Path, form_name: str, limit: int) -> Path:
    return cache_dir / f"{form_name}_{limit}.coeffs"


def _load_or_generate(args) -> CoefficientTable:
    """Exact-filename cache lookup; regenerate unless --no-autogen."""
    form = form_by_name(args.form)
    path = _cache_path(args.cache_dir, form.name, args.x_max)
    if path.exists():
        return load_table(path, form, args.x_max)
    if args.no_autogen:
        raise FileNotFoundError(f"coefficient cache missing: {path} (--no-autogen)")
    args.cache_dir.mkdir(parents=True, exist_ok=True)
    table = eigenform_table(form, args.x_max)
    save_table(table, path)
    print(f"generated cache {path}", file=sys.stderr)
    return table


def cmd_gen(args) -> int:
    form = form_by_name(args.form)
    args.cache_dir.mkdir(parents=True, exist_ok=True)
    path = _cache_path(args.cache_dir, form.name, args.limit)
    if path.exists():
        load_table(path, form, args.limit)  # validates header + checksum
        print(f"up to date: {path}")
        return EXIT_OK
    table = eigenform_table(form, args.limit)
    save_table(table, path)
    print(f"wrote {path} ({args.limit} coefficients, weight {form.weight})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


class _Checker:
    def __init__(self) -> None:
        self.lines: list[str] = []
        self.checks = 0
        self.failures = 0

    def ok(self, message: str) -> None:
        self.checks += 1
        self.lines.append(f"ok: {message}")

    def fail(self, message: str) -> None:
        self.checks += 1
        self.failures += 1
        self.lines.append(f"FAIL: {message}")

    def note(self, message: str) -> None:
        self.lines.append(message)

    def require(self, condition: bool, message: str) -> None:
        if condition:
            self.ok(message)
        else:
            self.fail(message)


def _suite_coeffs(table: CoefficientTable, args, chk: _Checker) -> None:
    form = table.form
    limit = min(200, table.limit)
    fresh = eigenform_table(form, limit)
    first_bad = next(
        (n for n in range(1, limit + 1) if table.a(n) != fresh.coeffs[n]), None
    )
    if first_bad is None:
        chk.ok(f"cache matches a fresh rebuild for n <= {limit}")
    else:
        chk.fail(f"cache disagrees with rebuild first at n = {first_bad}")
    if form.weight == 12:
        oracle = delta_series_eisenstein_oracle(limit)
        chk.require(
            all(table.a(n) == oracle[n] for n in range(1, limit + 1)),
            f"tau values match the Eisenstein-series route for n <= {limit}",
        )
    grid = min(args.x_max, 10_000, table.limit)
    qk = None
    bad_rec = 0
    for p in shared_sieve(grid).primes:
        if p * p > grid:
            break
        qk = p ** (form.weight - 1)
        prev, cur, power = 1, table.a(p), p
        while power * p <= grid:
            power *= p
            prev, cur = cur, table.a(p) * cur - qk * prev
            if table.a(power) != cur:
                bad_rec += 1
    chk.require(bad_rec == 0, f"three-term recurrence holds at every prime power <= {grid}")
    bad_mult = pairs = 0
    for m in range(2, 100):
        for n in range(m + 1, grid // m + 1):
            if math.gcd(m, n) != 1:
                continue
            pairs += 1
            if table.a(m * n) != table.a(m) * table.a(n):
                bad_mult += 1
    chk.require(bad_mult == 0, f"multiplicativity holds on {pairs} coprime pairs <= {grid}")
    bad_deligne = 0
    for p in shared_sieve(table.limit).primes:
        a = table.a(p)
        if a * a > 4 * p ** (form.weight - 1):
            bad_deligne += 1
    chk.require(bad_deligne == 0, f"square-root bound a(p)^2 <= 4p^(k-1) for all p <= {table.limit}")
    primes = shared_sieve(table.limit).primes
    step = max(1, len(primes) // 200)
    sample = primes[::step]
    chk.require(
        all(is_prime(p, seed=args.seed) for p in sample),
        f"primality re-test on {len(sample)} sieve primes (seed {args.seed})",
    )


def _suite_cyclotomic(chk: _Checker) -> None:
    from .arith import divisors

    checked = skipped = bad = 0
    for name in ("delta", "weight16"):
        tab = eigenform_table(name, 16)
        for p in (2, 3, 5, 7, 11, 13):
            params = lucas_parameters(tab, p)
            for n in range(2, 13):
                try:
                    product = 1
                    for d in divisors(n):
                        if d > 1:
                            product *= phi_value(params, d)
                except DegenerateLucasError:
                    skipped += 1
                    continue
                checked += 1
                if product != coeff_prime_power(tab, p, n - 1):
                    bad += 1
    chk.require(
        bad == 0,
        f"cyclotomic product identity on {checked} (form,p,n) triples ({skipped} degenerate skipped)",
    )
    bad_psi = 0
    tab = eigenform_table("delta", 8)
    for p in (2, 3, 5, 7):
        params = lucas_parameters(tab, p)
        for n in range(3, 13):
            try:
                direct = phi_value(params, n)
            except DegenerateLucasError:
                continue
            if psi_polynomial(n).evaluate(params.a**2, params.q) != direct:
                bad_psi += 1
    chk.require(bad_psi == 0, "trace-square rewrite agrees with the Moebius product for n <= 12")
    params = lucas_parameters(eigenform_table("delta", 8), 5)
    cv = classify_prime_divisors(params, 7)
    residues_ok = all(
        entry.residue in (1, 6) for entry in cv.entries if entry.primitive and entry.prime % 7
    )
    chk.require(
        residues_ok and cv.complete,
        "primitive factors of the n = 7 cyclotomic value lie in +-1 mod 7",
    )
    try:
        phi_value(LucasParameters(0, 8), 4)
    except DegenerateLucasError:
        chk.ok("vanishing Lucas term raises the degenerate-input error")
    else:
        chk.fail("vanishing Lucas term was silently accepted")


def _suite_quadfield(chk: _Checker) -> None:
    bad_h = 0
    for d0 in (-1, -2, -3, -5, -6, -7, -10, -11, -13, -15, -19, -23, -31, -43, -47):
        disc = QuadraticField(d0).disc
        if class_number(disc) != class_number_via_ideals(disc):
            bad_h += 1
    chk.require(bad_h == 0, "form-counting and ideal-enumeration class numbers agree to -47")
    bad_split = 0
    for d0 in (-1, -3, -7, -15):
        fld = QuadraticField(d0)
        for q in shared_sieve(100).primes:
            descs = split_prime(fld, q)
            product = 1
            for desc in descs:
                product *= desc.norm**desc.e
                if desc.sqrt_disc is not None and (desc.sqrt_disc**2 - fld.disc) % (4 * q) != 0:
                    bad_split += 1
            if product != q * q:
                bad_split += 1
    chk.require(bad_split == 0, "prime splitting is norm-consistent over four fields, q <= 100")
    table = eigenform_table("delta", 128)
    worst = 0.0
    for p in shared_sieve(100).primes:
        if p < 5:
            continue
        method_a, method_b = height_gamma(table, p)
        worst = max(worst, abs(method_a - method_b) / method_b)
    chk.require(worst < 1e-9, "height via ideal valuations matches the closed form (5 <= p <= 100)")
    field, alpha = field_from_prime(table, 5)
    bad_w = rows = 0
    for q in shared_sieve(200).primes:
        if q == 5:
            continue
        for ideal in split_prime(field, q):
            if ideal.norm > 200:
                continue
            rows += 1
            w = wieferich_valuation(table, 5, ideal, field=field, alpha=alpha)
            w_beta = wieferich_valuation(table, 5, ideal, field=field, alpha=alpha, via_beta=True)
            if w < 1 or w != w_beta:
                bad_w += 1
    chk.require(bad_w == 0, f"Fermat-quotient valuations >= 1 and path-independent on {rows} ideals")


def _suite_densities(table: CoefficientTable, args, chk: _Checker) -> None:
    x = min(args.x_max, table.limit)
    report = lpf_density(table, x, ThresholdSpec("thm1", epsilon=args.epsilon), threads=args.threads)
    chk.note(
        f"density thm1 @ {x}: {_fmt(report.density)} "
        f"({report.passing} passing, {report.zeros} zeros, {len(report.failing)} failing)"
    )
    chk.require(
        report.zeros + report.passing + len(report.failing) == report.scanned,
        "density scan outcome counts close up",
    )
    st = sato_tate_test(table, x, 20)
    chk.note(f"equidistribution @ {x}: KS distance {_fmt(st.ks_statistic)} over {st.sample_count} primes")
    chk.require(
        sum(row[2] for row in st.bins) == 1,
        "histogram frequencies sum to exactly 1",
    )
    cr = congruence_density(table, x, 691)
    chk.note(f"congruence mod 691 @ {x}: {cr.count}/{cr.primes_scanned} (nonzero {cr.count_nonzero})")
    if table.form.weight == 12:
        chk.require(
            cr.count == congruence_reference_count(x),
            "mod-691 count equals the independent power-residue oracle",
        )
    if x >= 16:
        nd = natural_density_over_n(
            table, min(x, 10_000), ThresholdSpec("cafn", epsilon=args.epsilon), threads=args.threads
        )
        chk.note(
            f"integer-scan density cafn @ {nd.x_max}: {_fmt(nd.density)} "
            f"({nd.zeros} zeros counted as passing)"
        )


def cmd_verify(args) -> int:
    chk = _Checker()
    table = None
    if args.suite in ("coeffs", "densities", "all"):
        table = _load_or_generate(args)
    if args.suite in ("coeffs", "all"):
        _suite_coeffs(table, args, chk)
    if args.suite in ("cyclotomic", "all"):
        _suite_cyclotomic(chk)
    if args.suite in ("quadfield", "all"):
        _suite_quadfield(chk)
    if args.suite in ("densities", "all"):
        _suite_densities(table, args, chk)
    for line in chk.lines:
        print(line)
    print(f"verify {args.suite}: {chk.checks} checks, {chk.failures} failures")
    return EXIT_INVARIANT if chk.failures else EXIT_OK


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def _base_config(args, form_name: str) -> dict:
    return {
        "form": form_name,
        "x_max": args.x_max,
        "seed": args.seed,
        "threads": args.threads,
        "format": args.fmt,
        "cache_dir": str(args.cache_dir),
        "report_dir": str(args.report_dir),
    }


def _density_files(report, kind: str, config: dict):
    header = ["x_max", "scanned", "zeros", "passing", "failing_count", "density"]
    csv_rows = [[report.x_max, report.scanned, report.zeros, report.passing, len(report.failing), report.density]]
    summary = {
        "scanned": report.scanned,
        "zeros": report.zeros,
        "passing": report.passing,
        "failing_count": len(report.failing),
        "density": report.density,
        "density_float": float(report.density),
        "scan": report.scan,
        "threshold_kind": report.spec.kind,
    }
    for key, value in report.extras:
        summary[key] = value
    json_rows = list(report.failing[:FAILING_CAP])
    side = list(report.failing)
    return [(kind, header, csv_rows, json_rows, summary, side)]


def _report_files(args, table: CoefficientTable, config: dict):
    """Returns a list of (basename, header, csv_rows, json_rows, summary, side_lines)."""
    kind = args.kind
    if kind == "sato-tate":
        st = sato_tate_test(table, args.x_max, args.bins)
        config["bins"] = args.bins
        header = ["bin_lo", "bin_hi", "empirical", "expected"]
        csv_rows = [[lo, hi, emp, exp] for lo, hi, emp, exp in st.bins]
        json_rows = [
            {"bin_lo": lo, "bin_hi": hi, "empirical": emp, "empirical_float": float(emp), "expected": exp}
            for lo, hi, emp, exp in st.bins
        ]
        summary = {"ks_statistic": st.ks_statistic, "samples": st.sample_count}
        return [(kind, header, csv_rows, json_rows, summary, None)]

    if kind == "lpf-density":
        threshold = args.threshold or "thm1"
        spec = ThresholdSpec(threshold, epsilon=args.epsilon, c=args.c, g_choice=args.g_choice, g_scale=args.g_scale)
        config.update(threshold=threshold, epsilon=args.epsilon, c=args.c, g_choice=args.g_choice, g_scale=args.g_scale)
        report = lpf_density(table, args.x_max, spec, threads=args.threads)
        return _density_files(report, kind, config)

    if kind == "natural-density":
        threshold = args.threshold or "cafn"
        spec = ThresholdSpec(threshold, epsilon=args.epsilon, c=args.c, g_choice=args.g_choice, g_scale=args.g_scale)
        config.update(threshold=threshold, epsilon=args.epsilon, c=args.c, g_choice=args.g_choice, g_scale=args.g_scale)
        report = natural_density_over_n(table, args.x_max, spec, threads=args.threads)
        return _density_files(report, kind, config)

    if kind == "congruence":
        config["d"] = args.d
        cr = congruence_density(table, args.x_max, args.d)
        header = ["x_max", "modulus", "scanned", "count", "count_nonzero", "ratio", "reference"]
        csv_rows = [[cr.x_max, cr.modulus, cr.primes_scanned, cr.count, cr.count_nonzero, cr.ratio, cr.reference]]
        summary = {
            "scanned": cr.primes_scanned,
            "count": cr.count,
            "count_nonzero": cr.count_nonzero,
            "ratio": cr.ratio,
            "ratio_float": float(cr.ratio),
            "reference": cr.reference,
        }
        if table.form.weight == 12 and args.d == 691:
            summary["oracle_count"] = congruence_reference_count(args.x_max)
        return [(kind, header, csv_rows, [dict(zip(header, csv_rows[0]))], summary, None)]

    if kind == "prime-power":
        config["m_max"] = args.m_max
        config["rho_budget"] = args.rho_budget
        op = odd_prime_power_suite(table, args.x_max, args.m_max, rho_budget=args.rho_budget)
        header = ["p", "lpf_lower", "complete", "log_threshold"]
        csv_rows = [list(row) for row in op.rows]
        json_rows = [dict(zip(header, row)) for row in op.rows]
        summary = {
            "checked": op.checked,
            "zero_skipped": op.zero_skipped,
            "violation_count": len(op.violations),
            "violations": list(op.violations[:100]),
            "m_max": op.m_max,
        }
        return [(kind, header, csv_rows, json_rows, summary, None)]

    if kind == "theorem6":
        p_list = _parse_int_list(args.p_list)
        n_list = _parse_int_list(args.n_list)
        config["p_list"] = p_list
        config["n_list"] = n_list
        config["rho_budget"] = args.rho_budget
        rows = theorem6_report(table, p_list, n_list, rho_budget=args.rho_budget)
        header = ["p", "n", "n3", "lpf_lower", "complete", "loglog_floor", "value_bits"]
        csv_rows = [[r.p, r.n, r.n3, r.lpf_lower, r.complete, r.loglog_floor, r.value_bits] for r in rows]
        json_rows = [dict(zip(header, row)) for row in csv_rows]
        incomplete = sum(1 for r in rows if not r.complete)
        summary = {"rows": len(rows), "incomplete": incomplete}
        return [(kind, header, csv_rows, json_rows, summary, None)]

    # pafp and wieferich share the ideal scan
    p = args.p if args.p is not None else (5 if kind == "wieferich" else 11)
    n_max = args.n_max if kind == "pafp" else 2
    config.update(p=p, norm_limit=args.norm_limit, rho_budget=args.rho_budget)
    if kind == "pafp":
        config["n_max"] = n_max
        if args.r is not None:
            config["r"] = args.r
    report = pafp_suite(table, p, n_max, args.norm_limit, r=args.r, rho_budget=args.rho_budget)
    w_header = ["residue_prime", "kind", "norm", "valuation"]
    w_csv = [[w.residue_prime, w.kind, w.norm, w.valuation] for w in report.wieferich_rows]
    w_json = [dict(zip(w_header, row)) for row in w_csv]
    w_summary = {
        "p": p,
        "ideal_norm_limit": report.ideal_norm_limit,
        "r_empirical": report.r_empirical,
        "ideals": len(report.wieferich_rows),
    }
    if kind == "wieferich":
        return [(kind, w_header, w_csv, w_json, w_summary, None)]
    b_header = ["n", "phi", "omega", "bound", "lpf_lower", "complete", "below_floor", "holds"]
    b_csv = [
        [c.n, c.phi, c.omega, c.bound, c.lpf_lower, c.complete, c.below_floor, c.holds]
        for c in report.comparisons
    ]
    b_json = [dict(zip(b_header, row)) for row in b_csv]
    b_summary = {
        "p": p,
        "r_used": report.r_used,
        "r_empirical": report.r_empirical,
        "rows": len(report.comparisons),
        "incomplete": sum(1 for c in report.comparisons if not c.complete),
    }
    return [
        ("pafp-wieferich", w_header, w_csv, w_json, w_summary, None),
        ("pafp-bounds", b_header, b_csv, b_json, b_summary, None),
    ]


def cmd_report(args) -> int:
    table = _load_or_generate(args)
    config = _base_config(args, table.form.name)
    written = []
    args.report_dir.mkdir(parents=True, exist_ok=True)
    for base, header, csv_rows, json_rows, summary, side in _report_files(args, table, config):
        if args.fmt in ("json", "both"):
            path = args.report_dir / f"{base}.json"
            _write_json(path, base, config, json_rows, summary)
            written.append(path)
        if args.fmt in ("csv", "both"):
            path = args.report_dir / f"{base}.csv"
            _write_csv(path, header, csv_rows)
            written.append(path)
        if side is not None:
            path = args.report_dir / f"{base}-failing.txt"
            _write_lines(path, side)
            written.append(path)
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _parse_int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"expected a comma-separated integer list, got {text!r}") from None
    if not values:
        raise ValueError("empty integer list")
    return values


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--form", default="delta", choices=sorted(FORMS),
                     help="eigenform name (default delta)")
    sub.add_argument("--x-max", type=int, default=100_000, dest="x_max",
                     help="scan limit / table size (default 100000)")
    sub.add_argument("--cache-dir", type=Path, default=Path("cache"))
    sub.add_argument("--report-dir", type=Path, default=Path("reports"))
    sub.add_argument("--seed", type=int, default=1,
                     help="seed for probabilistic primality witnesses (default 1)")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker processes for the density scans (default 1)")
    sub.add_argument("--format", dest="fmt", choices=("csv", "json", "both"), default="both")
    sub.add_argument("--no-autogen", action="store_true",
                     help="fail instead of generating a missing coefficient cache")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckelpf",
        description="Coefficient tables and largest-prime-factor scans for level-one eigenforms.",
    )
    parser.add_argument("--version", action="version", version=f"heckelpf {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="write a coefficient cache file")
    gen.add_argument("--form", default="delta", choices=sorted(FORMS))
    gen.add_argument("--limit", type=int, default=100_000)
    gen.add_argument("--cache-dir", type=Path, default=Path("cache"))

    verify = subs.add_parser("verify", help="run invariant suites")
    verify.add_argument("--suite", default="all", choices=VERIFY_SUITES)
    verify.add_argument("--epsilon", type=float, default=0.1)
    _add_common(verify)

    report = subs.add_parser("report", help="emit a CSV/JSON report")
    report.add_argument("kind", choices=REPORT_KINDS)
    report.add_argument("--bins", type=int, default=40)
    report.add_argument("--threshold", default=None,
                        help="threshold kind (lpf-density: thm1/thm2/thm3/atkin-serre-norm; "
                             "natural-density: cafn/cafnG/cafnG2)")
    report.add_argument("--epsilon", type=float, default=0.1)
    report.add_argument("--c", type=float, default=0.5)
    report.add_argument("--g-choice", default="inv_loglog", choices=("inv_loglog", "inv_log", "const"))
    report.add_argument("--g-scale", type=float, default=1.0)
    report.add_argument("--d", type=int, default=691, help="congruence modulus")
    report.add_argument("--p", type=int, default=None, help="prime for pafp/wieferich scans")
    report.add_argument("--n-max", type=int, default=30, dest="n_max")
    report.add_argument("--norm-limit", type=int, default=1000, dest="norm_limit")
    report.add_argument("--r", type=int, default=None,
                        help="override the empirical Fermat-quotient exponent")
    report.add_argument("--m-max", type=int, default=10, dest="m_max")
    report.add_argument("--rho-budget", type=int, default=200_000, dest="rho_budget")
    report.add_argument("--p-list", default="5,11,691")
    report.add_argument("--n-list", default="3,4,8,15")
    _add_common(report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_report(args)
    except TableChecksumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (TableFormatError, TableMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, LookupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
