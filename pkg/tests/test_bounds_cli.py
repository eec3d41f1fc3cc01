import hashlib
import json
import math
import subprocess
import sys

import pytest

from eisenbound.bounds import (CSV_HEADER, SPEC_VERSION, ConfigError, ScanOptions, emit_report,
                               read_csv_report, scan_theorem, summarize)
from eisenbound.cli import main
from eisenbound.sieve import complex_floor
from eisenbound.verify import verify_suite


@pytest.fixture(scope="module")
def small_scan():
    return scan_theorem(3, 13)


def test_q3_quadratic_row(small_scan):
    r = [x for x in small_scan if x.q == 3][0]
    assert r.kind == "quadratic" and r.T_used == 3
    assert abs(r.L1 - math.pi / (3 * math.sqrt(3))) < 1e-12
    rhs = (math.sqrt(2) - 1) * math.sqrt(3) / (3 * math.log(3) ** 2)
    assert abs(r.rhs - rhs) < 1e-15
    assert abs(r.realized_constant - abs(r.L1) / rhs) < 1e-12
    assert r.suite_status == "pass"


def test_q5_complex_rows(small_scan):
    rows = [x for x in small_scan if x.q == 5 and x.order == 4]
    assert len(rows) == 2
    for r in rows:
        assert r.kind == "complex" and r.T_used == 625 and not r.partial
        assert abs(r.rhs - complex_floor(4, 625) / (625 * math.log(625) ** 2)) < 1e-18
        assert r.restricted_sum >= r.sum_floor


def test_rows_sorted_and_kinds(small_scan):
    keys = [(r.q, r.chi_id) for r in small_scan]
    assert keys == sorted(keys)
    for r in small_scan:
        assert (r.kind == "quadratic") == (r.order == 2)
        assert r.realized_constant > 0
        if r.kind == "quadratic":
            assert r.L1.imag == 0 or abs(r.L1.imag) < 1e-12
            assert r.L1.real > 0


def test_cap_marks_partial_rows():
    rows = scan_theorem(40, 41, ScanOptions(cap=1e5))
    comp = [r for r in rows if r.kind == "complex"]
    assert comp and all(r.partial and r.T_used == 1e5 for r in comp)


def test_threads_give_identical_rows():
    a = scan_theorem(20, 40)
    b = scan_theorem(20, 40, ScanOptions(threads=2))
    assert emit_report(a, "csv") == emit_report(b, "csv")


def test_config_errors():
    with pytest.raises(ConfigError):
        scan_theorem(2, 10)
    with pytest.raises(ConfigError):
        scan_theorem(10, 5)
    with pytest.raises(ConfigError):
        scan_theorem(3, 5, ScanOptions(big_k=0))


def test_csv_round_trip_matches_json(small_scan):
    text = emit_report(small_scan, "csv")
    assert text.splitlines()[0].split(",") == CSV_HEADER
    parsed = read_csv_report(text)
    doc = json.loads(emit_report(small_scan, "json"))
    assert doc["spec_version"] == SPEC_VERSION
    assert len(parsed) == len(doc["rows"])
    for a, b in zip(parsed, doc["rows"]):
        for k in ("q", "chi_id", "kind", "L1", "T_used", "realized_constant"):
            assert a[k] == b[k]
        rhs = b["rhs_quadratic"] if b["kind"] == "quadratic" else b["rhs_complex"]
        assert a["rhs"] == rhs


def test_deterministic_bytes(tmp_path):
    digests = set()
    for i in range(2):
        p = tmp_path / f"r{i}.json"
        emit_report(scan_theorem(3, 12), "json", p)
        digests.add(hashlib.sha256(p.read_bytes()).hexdigest())
    assert len(digests) == 1


def test_markdown_rows(small_scan):
    md = emit_report(small_scan, "markdown")
    body = [ln for ln in md.splitlines() if ln.startswith("| ") and ln[2].isdigit()]
    assert len(body) == len(small_scan)
    assert "| quadratic |" in md and "| complex |" in md


def test_emit_errors(tmp_path):
    with pytest.raises(ValueError):
        emit_report([], "csv")
    with pytest.raises(ValueError):
        emit_report(scan_theorem(3, 4), "xml")
    with pytest.raises(OSError):
        emit_report(scan_theorem(3, 4), "csv", tmp_path / "missing" / "x.csv")


def test_summary(small_scan):
    s = summarize(small_scan)
    assert s.n_rows == len(small_scan) and s.n_failed == 0
    assert s.min_quadratic_normalized[1:] == (3, 0)


def test_verify_quick_passes():
    rep = verify_suite("quick")
    assert rep.passed, [r for r in rep.results if not r.passed]
    assert len(rep.results) == 14


def test_rho_tamper_detected():
    rep = verify_suite("quick", inject="rho", only=["fourier_vs_direct"])
    assert not rep.passed
    assert rep.results[0].worst > 1e-3


def test_verify_rejects_levels():
    with pytest.raises(ValueError):
        verify_suite("")
    with pytest.raises(ValueError):
        verify_suite("quick", only=["nope"])
    with pytest.raises(ValueError):
        verify_suite("quick", inject="zeta")


def test_cli_exit_codes(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    assert main(["--q-min", "3", "--q-max", "8", "--out", str(out)]) == 0
    assert out.read_text().startswith("q,chi_id")
    assert main(["--q-min", "1", "--q-max", "8"]) == 2
    assert main(["--mode", "verify", "--level", ""]) == 2
    assert main(["--q-min", "3", "--q-max", "4", "--out", str(tmp_path / "no" / "x")]) == 2
    capsys.readouterr()
    assert main(["--mode", "verify", "--inject", "rho"]) == 1


def test_cli_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "eisenbound", "--q-min", "3", "--q-max", "5",
                          "--format", "json"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["summary"]["n_rows"] == 5
