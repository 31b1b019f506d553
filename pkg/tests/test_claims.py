from shortintervals.claims import CLAIMS, run_claims


def test_claim_ids_sorted_and_unique():
    ids = [c.id for c in CLAIMS]
    assert ids == sorted(ids)
    assert len(set(ids)) == len(ids)


def test_exponent_claims_pass():
    report = run_claims("mu-")
    assert len(report.results) == 2
    assert report.all_passed, report.format_table()


def test_rh_claim_passes():
    report = run_claims("rh-")
    assert report.all_passed, report.format_table()


def test_table_claims_pass():
    for prefix in ("a-sup", "table-", "pintz-"):
        report = run_claims(prefix)
        assert report.results and report.all_passed, report.format_table()


def test_empirical_value_claims_pass():
    report = run_claims("emp-psi-100")
    assert report.all_passed
    report = run_claims("emp-explicit-error")
    assert report.all_passed


def test_records_are_machine_readable():
    report = run_claims("mu-17-30")
    (rec,) = report.records()
    assert rec["id"] == "mu-17-30"
    assert rec["pass"] is True
    assert isinstance(rec["computed"], float)
    assert abs(rec["computed"] - rec["expected"]) <= rec["tolerance"]
    assert "witness" in rec["detail"]


def test_filter_without_matches():
    report = run_claims("no-such-prefix")
    assert report.results == [] and report.all_passed


def test_format_table_layout():
    report = run_claims("dh-pintz")
    text = report.format_table()
    lines = text.splitlines()
    assert lines[0].split()[:2] == ["id", "expected"]
    assert any("dh-pintz-sigma" in ln and "PASS" in ln for ln in lines)
