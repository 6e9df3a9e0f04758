from mems.fixtures import compare_table, fixture_report, load


def test_all_fixture_checks_pass():
    checks = fixture_report()
    assert [c.name for c in checks if not c.ok] == []
    assert len(checks) == 6


def test_permutation_matches_labels():
    for name in ("table1", "table2"):
        fx = load(name)
        assert sorted(fx["row_permutation"]) == list(range(14))
        assert sorted(fx["col_permutation"]) == list(range(len(fx["col_labels"])))


def test_corrupted_permutation_detected():
    fx = load("table2")
    fx["row_permutation"] = fx["row_permutation"][1:] + fx["row_permutation"][:1]
    c = compare_table(fx)
    assert not c.ok and "row_permutation" in c.detail


def test_flipped_entry_named():
    fx = load("table2")
    fx["entries"][0][0] ^= 1
    c = compare_table(fx)
    assert not c.ok
    assert c.detail.startswith(f"first mismatch at row {fx['row_labels'][0]}, column e{fx['col_labels'][0][0]}:")
