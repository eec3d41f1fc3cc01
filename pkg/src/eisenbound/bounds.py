"""Realized-constant scan for lower bounds on |L(1, chi)| and report writers.

For each primitive chi mod q the scan records L(1, chi) and a right-hand side
rhs(T) of the shape |L(1, chi)| >> rhs, then realized_constant = |L(1)| / rhs.

    quadratic chi: T = q,               rhs = (sqrt 2 - 1) sqrt T / (T (log T)^2)
    complex chi:   T = min(q^K, cap),   rhs = 2 (1 - cos(pi X)) delta / (log T)^3

The second is the prime-restricted floor 2(1 - cos pi X) delta T / log T
divided by T (log T)^2, with X, delta from ``bal_ram_parameters``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from . import __version__
from .characters import DirichletCharacter, character_id, enumerate_primitive_characters
from .lfunctions import dirichlet_l
from .sieve import complex_floor, quadratic_floor, restricted_sigma_sum

SPEC_VERSION = "1.0"
Q_CAP = 5000
CSV_HEADER = ["q", "chi_id", "kind", "L1_re", "L1_im", "T", "rhs", "realized_constant"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScanOptions:
    big_k: float = 4.0
    cap: float = 1e6               # largest T used on the complex path
    sum_cap: float = 1e5           # restricted sums are evaluated only for T <= sum_cap
    threads: int = 1


@dataclass(frozen=True)
class BoundReport:
    q: int
    chi_id: int
    kind: str                      # "quadratic" or "complex"
    order: int
    L1: complex
    T_used: float
    partial: bool                  # complex path with q^K above the cap
    rhs_quadratic: float | None
    rhs_complex: float | None
    realized_constant: float
    normalized_l1: float           # L(1)sqrt(q)(log q)^2 or |L(1)|(log q)^3
    restricted_sum: float | None   # sum_{T <= m <= 2T} |sigma_0(m)|^2 when evaluated
    sum_floor: float | None        # its lower bound from the sieve estimates
    suite_status: str

    @property
    def rhs(self) -> float:
        return self.rhs_quadratic if self.kind == "quadratic" else self.rhs_complex

    def to_dict(self) -> dict:
        d = asdict(self)
        d["L1"] = [self.L1.real, self.L1.imag]
        return d


def _report(chi: DirichletCharacter, opts: ScanOptions) -> BoundReport:
    q = chi.modulus
    L1 = complex(dirichlet_l(1, chi))
    kind = "quadratic" if chi.order == 2 else "complex"
    failures = []
    partial = False
    S = floor = None
    if kind == "quadratic":
        T = float(q)
        rhs_q = (math.sqrt(2) - 1) * math.sqrt(T) / (T * math.log(T) ** 2)
        rhs_c = None
        rhs = rhs_q
        normalized = L1.real * math.sqrt(q) * math.log(q) ** 2
        if not (abs(L1.imag) < 1e-12 and L1.real > 0):
            failures.append("L1 not real positive")
        S = restricted_sigma_sum(chi, T).value
        floor = quadratic_floor(T)
        if S < floor:
            failures.append("restricted sum below floor")
    else:
        T = float(q) ** opts.big_k
        if T > opts.cap:
            T, partial = float(opts.cap), True
        rhs_c = complex_floor(chi.order, T) / (T * math.log(T) ** 2)
        rhs_q = None
        rhs = rhs_c
        normalized = abs(L1) * math.log(q) ** 3
        if T <= opts.sum_cap:
            S = restricted_sigma_sum(chi, T).value
            floor = complex_floor(chi.order, T)
            if S < floor:
                failures.append("restricted sum below floor")
    realized = abs(L1) / rhs
    if not realized > 0:
        failures.append("realized constant not positive")
    if (kind == "quadratic") != (chi.order == 2):
        failures.append("kind does not match order")
    status = "pass" if not failures else "fail: " + "; ".join(failures)
    return BoundReport(q, character_id(chi), kind, chi.order, L1, T, partial, rhs_q, rhs_c,
                       realized, normalized, None if S is None else float(S), floor, status)


def _scan_one(args) -> list[BoundReport]:
    q, opts = args
    rows = [_report(chi, opts) for chi in enumerate_primitive_characters(q)]
    rows.sort(key=lambda r: r.chi_id)
    return rows


def scan_theorem(q_min: int, q_max: int, options: ScanOptions | None = None) -> list[BoundReport]:
    """One BoundReport per primitive character, sorted by (q, chi_id)."""
    opts = options or ScanOptions()
    if not 3 <= q_min <= q_max <= Q_CAP:
        raise ConfigError(f"need 3 <= q_min <= q_max <= {Q_CAP}, got {q_min}, {q_max}")
    if opts.big_k <= 0 or opts.cap < 3:
        raise ConfigError("need big_k > 0 and cap >= 3")
    jobs = [(q, opts) for q in range(q_min, q_max + 1)]
    if opts.threads > 1:
        with ProcessPoolExecutor(max_workers=opts.threads) as ex:
            chunks = list(ex.map(_scan_one, jobs, chunksize=8))
    else:
        chunks = [_scan_one(j) for j in jobs]
    return [r for chunk in chunks for r in chunk]


@dataclass(frozen=True)
class ScanSummary:
    n_rows: int
    n_quadratic: int
    n_complex: int
    n_partial: int
    n_failed: int
    min_realized_constant: float
    min_quadratic_normalized: tuple[float, int, int]   # (value, q, chi_id)
    min_complex_normalized: tuple[float, int, int]


def summarize(rows: list[BoundReport]) -> ScanSummary:
    quad = [r for r in rows if r.kind == "quadratic"]
    comp = [r for r in rows if r.kind == "complex"]

    def minimum(rs):
        if not rs:
            return (math.nan, 0, 0)
        r = min(rs, key=lambda r: (r.normalized_l1, r.q, r.chi_id))
        return (r.normalized_l1, r.q, r.chi_id)

    return ScanSummary(len(rows), len(quad), len(comp), sum(r.partial for r in rows),
                       sum(r.suite_status != "pass" for r in rows),
                       min(r.realized_constant for r in rows), minimum(quad), minimum(comp))


# ------------------------------------------------------------------ reports


def _fmt(x) -> str:
    return "" if x is None else repr(float(x))


def report_csv(rows: list[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.q, r.chi_id, r.kind, _fmt(r.L1.real), _fmt(r.L1.imag), _fmt(r.T_used),
                    _fmt(r.rhs), _fmt(r.realized_constant)])
    return buf.getvalue()


def report_json(rows: list[BoundReport]) -> str:
    s = summarize(rows)
    doc = {
        "spec_version": SPEC_VERSION,
        "version": __version__,
        "summary": asdict(s),
        "rows": [r.to_dict() for r in rows],
    }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def report_markdown(rows: list[BoundReport]) -> str:
    s = summarize(rows)
    out = [f"# Lower-bound scan (version {__version__})", "",
           "| case | T | rhs | rows | minimum normalized L(1) | at (q, chi_id) |",
           "|---|---|---|---|---|---|",
           f"| quadratic | q | (sqrt2-1) sqrt T / (T log^2 T) | {s.n_quadratic} | "
           f"{s.min_quadratic_normalized[0]:.6g} (L(1) sqrt q log^2 q) | "
           f"({s.min_quadratic_normalized[1]}, {s.min_quadratic_normalized[2]}) |",
           f"| complex | min(q^K, cap) | 2(1-cos pi X) delta / log^3 T | {s.n_complex} | "
           f"{s.min_complex_normalized[0]:.6g} (abs L(1) log^3 q) | "
           f"({s.min_complex_normalized[1]}, {s.min_complex_normalized[2]}) |",
           "", f"Minimum realized constant: {s.min_realized_constant:.6g}; "
           f"partial rows: {s.n_partial}; failed rows: {s.n_failed}.", "",
           "| q | chi_id | kind | Re L(1) | Im L(1) | T | rhs | realized constant | status |",
           "|---|---|---|---|---|---|---|---|---|"]
    for r in rows:
        out.append(f"| {r.q} | {r.chi_id} | {r.kind} | {r.L1.real:.12g} | {r.L1.imag:.12g} | "
                   f"{r.T_used:.6g}{'*' if r.partial else ''} | {r.rhs:.6g} | "
                   f"{r.realized_constant:.6g} | {r.suite_status} |")
    out.append("")
    return "\n".join(out)


_WRITERS = {"csv": report_csv, "json": report_json, "markdown": report_markdown}


def emit_report(rows: list[BoundReport], fmt: str, path: str | os.PathLike | None = None) -> str:
    """Render rows; write to ``path`` when given. Output bytes depend only on the rows."""
    if not rows:
        raise ValueError("no rows to report")
    if fmt not in _WRITERS:
        raise ValueError(f"unknown format {fmt!r}")
    text = _WRITERS[fmt](rows)
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def read_csv_report(text: str) -> list[dict]:
    """Parse report_csv output into dicts keyed like the JSON rows."""
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append({"q": int(rec["q"]), "chi_id": int(rec["chi_id"]), "kind": rec["kind"],
                     "L1": [float(rec["L1_re"]), float(rec["L1_im"])],
                     "T_used": float(rec["T"]), "rhs": float(rec["rhs"]),
                     "realized_constant": float(rec["realized_constant"])})
    return rows
