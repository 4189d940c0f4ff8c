import math

import pytest

from enc_lab.classification import (
    FAMILIES,
    enc_census,
    family_instances,
    make_germ,
    match_family,
    r_cutoff,
    setting_germs,
    verify_family,
)
from enc_lab.hyperquotient import validate_setting


def test_ca_c_count_matches_direct_loop():
    expected = 0
    for r in range(2, 11):
        for a in range(r):
            if math.gcd(a, r) != 1 or math.gcd(a + 1, r) != 1:
                continue
            shape = (a % r, 1 % r, -a % r, (a + 1) % r)
            germ = make_germ(r, shape, (a + 1) % r, "cA", "witness", 10)
            expected += validate_setting(germ).ok
    got = list(family_instances("cA-C", 10))
    assert len(got) == expected > 0


def test_parameter_lists():
    assert FAMILIES["cA-C"].parameters(7) == [1, 2, 3, 4, 5]
    assert FAMILIES["cA-B"].parameters(6) == [1, 5]
    assert FAMILIES["odd"].parameters(8) == [0] and FAMILIES["odd"].parameters(6) == []
    assert FAMILIES["cDE-d"].parameters(8) == []


def test_odd_family_needs_four_dividing_r():
    rs = {g.r for g in family_instances("odd", 16)}
    assert rs <= {4, 8, 12, 16}
    assert FAMILIES["odd"].residues(8, 0) == ((1, 5, 3, 2), 2)


def test_cde_d_family_has_odd_r_only():
    germs = list(family_instances("cDE-d", 9))
    assert germs and all(g.r % 2 == 1 for g in germs)
    for g in germs:
        assert math.gcd(g.a[2], g.r) == 1


def test_every_instance_passes_setting_checks():
    for fid in FAMILIES:
        for g in family_instances(fid, 14):
            assert validate_setting(g).ok, (fid, g)


def test_cutoffs():
    assert r_cutoff("cA-D", 2) == 13
    assert r_cutoff("odd", 5) == 27
    assert r_cutoff("cDE-d", 3) == 13
    assert r_cutoff("cA-C", 2) == 13 and r_cutoff("cA-C", 4) == 30
    assert r_cutoff("cDE-a", 2) == 13


def test_verify_family_small():
    rep = verify_family("cA-D", 2, 20)
    assert rep.ok and rep.max_r <= 13
    assert rep.examined == sum(rep.statuses.values())
    assert rep.realized == sorted({(h.r, h.beta) for h in rep.hits})
    with pytest.raises(ValueError):
        verify_family("cA-D", 1, 10)


def test_verify_family_deterministic_and_monotone():
    a = verify_family("cA-B", 2, 12)
    b = verify_family("cA-B", 2, 12)
    c = verify_family("cA-B", 2, 24)
    assert a.realized == b.realized and a.statuses == b.statuses
    assert set(a.realized) <= set(c.realized)


def test_match_family_up_to_symmetry():
    fam = FAMILIES["cA-D"]
    a, e = fam.residues(7, 2)
    assert match_family(7, a, e, "cA") == ("cA-D", 2)
    swapped = (a[1], a[0], a[3], a[2])
    assert match_family(7, swapped, e, "cA")[0] == "cA-D"
    assert match_family(7, a, e, "cDE") is None


def test_setting_germs_all_valid():
    germs = setting_germs(5)
    assert germs and all(validate_setting(g).ok for g in germs)
    assert all(g.r == 5 for g in germs)


def test_census_cross_checks_family_sweeps():
    census = enc_census(10, 3)
    assert census.examined == sum(census.statuses.values())
    assert all(row.k == 1 and row.beta is None for row in census.by_k(1))
    for fid in FAMILIES:
        for k in (2, 3):
            # census rows may be a coordinate swap of the family member, so beta moves; t does not
            rows = {(row.r, row.t) for row in census.by_k(k) if row.family == fid}
            fam = {(h.r, h.t) for h in verify_family(fid, k, 10).hits}
            assert rows <= fam, (fid, k)


def test_census_monotone_in_R():
    small = enc_census(6, 3)
    large = enc_census(9, 3)
    assert set(small.rows) <= set(large.rows)
    for k in (2, 3):
        assert set(small.gamma(k)) <= set(large.gamma(k))
