import json

import pytest

from hfq.cli import EXIT_GUARD, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_census_passes(capsys):
    code, out, _ = run(capsys, "census", "--q", "3", "--n", "2..3", "--h", "0..4")
    assert code == EXIT_OK
    assert "PASS" in out and "FAIL" not in out


def test_census_rejects_even_q(capsys):
    code, _, err = run(capsys, "census", "--q", "2", "--n", "2", "--h", "0")
    assert code == EXIT_USAGE
    assert "error" in err


def test_census_workers_byte_identical(capsys):
    args = ("census", "--q", "3", "--n", "3", "--h", "0..2", "--json")
    code1, out1, _ = run(capsys, *args, "--workers", "1")
    code2, out2, _ = run(capsys, *args, "--workers", "2")
    assert code1 == code2 == EXIT_OK
    assert out1 == out2


def test_variance_oracle_charsum_json(capsys):
    code, out, _ = run(
        capsys,
        "variance", "--q", "3", "--U", "1", "--V", "0,1",
        "--n", "2", "--h", "0", "--oracle", "--charsum",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["case"] == "uncovered"
    assert payload["oracle"] == {"num": "40", "den": "9"}
    assert payload["charsum"] == {"num": "40", "den": "9"}
    assert payload["theorem"] is None


def test_variance_case2_fixture(capsys):
    code, out, _ = run(
        capsys,
        "variance", "--q", "3", "--U", "1,0,1", "--V", "0,1",
        "--n", "6", "--h", "3", "--oracle", "--theorem",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["case"] == "case2"
    assert payload["theorem"] == payload["oracle"] == {"num": "24", "den": "1"}
    assert payload["residual"] == {"num": "0", "den": "1"}


def test_variance_case1(capsys):
    code, out, _ = run(
        capsys,
        "variance", "--q", "3", "--U", "1", "--V", "0,1",
        "--n", "4", "--h", "3", "--oracle", "--theorem",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["case"] == "case1"
    assert payload["theorem"] == {"num": "0", "den": "1"}
    assert payload["oracle"] == {"num": "0", "den": "1"}


def test_variance_guard_exit(capsys):
    code, _, err = run(
        capsys,
        "variance", "--q", "3", "--U", "1", "--V", "0,1",
        "--n", "6", "--h", "0", "--oracle", "--guard", "10",
    )
    assert code == EXIT_GUARD
    assert "guard" in err


def test_variance_fast_needs_trust_outside_envelope(capsys):
    base = (
        "variance", "--q", "3", "--U", "1", "--V", "0,1",
        "--n", "10", "--h", "8", "--charsum", "--fast",
    )
    code, _, err = run(capsys, *base)
    assert code == EXIT_USAGE and "trust-lemmas" in err
    code, out, _ = run(capsys, *base, "--trust-lemmas")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["charsum"] == {"num": "0", "den": "1"}  # case-1 range


def test_identity_quadform(capsys):
    code, out, _ = run(capsys, "identity", "quadform", "--q", "3", "--l", "0..1")
    assert code == EXIT_OK and "PASS" in out


def test_identity_bijection(capsys):
    code, out, _ = run(
        capsys,
        "identity", "bijection", "--q", "3", "--n", "6", "--r", "3", "--h", "1..2",
    )
    assert code == EXIT_OK and "PASS" in out


def test_identity_empty_ranges_are_not_failures(capsys):
    code, out, _ = run(
        capsys,
        "identity", "kernel-sum", "--q", "3", "--U", "1", "--V", "0,1",
        "--n", "4", "--h", "0..1",
    )
    assert code == EXIT_OK and "nothing to check" in out


def test_identity_kernel_sum(capsys):
    code, out, _ = run(
        capsys,
        "identity", "kernel-sum", "--q", "3", "--U", "1,0,1", "--V", "0,1",
        "--n", "6", "--h", "3",
    )
    assert code == EXIT_OK and "PASS" in out


def test_phisum_csv_rows(capsys):
    code, out, _ = run(
        capsys, "phisum", "--q", "3", "--W2", "1", "--W3", "1", "--kmax", "4"
    )
    assert code == EXIT_OK
    lines = [l for l in out.strip().splitlines() if l]
    assert len(lines) == 6  # header + kmax + 1 rows
    assert lines[0].startswith("k,")


def test_phisum_rejects_common_factor(capsys):
    code, _, err = run(
        capsys, "phisum", "--q", "3", "--W2", "0,1", "--W3", "0,1", "--kmax", "3"
    )
    assert code == EXIT_USAGE and "coprime" in err


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "--q", "3", "--alpha", "0,0,1,0,0")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["profile"] == {
        "r": 3, "rho": 3, "pi": 0, "strict_rho": 0, "strict_pi": 3,
    }
    assert payload["a1"] == "0,0,0,1"


def test_usage_errors_exit_64(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["variance", "--q", "3", "--U", "1"])  # missing required flags
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == EXIT_USAGE


def test_extension_field_census(capsys):
    code, out, _ = run(
        capsys,
        "census", "--q", "9", "--modulus", "1,0,1", "--n", "1..2", "--h", "0..1",
    )
    assert code == EXIT_OK and "FAIL" not in out
