"""Acceptance criteria.

One test per criterion; every check is exact (zero tolerance).  Each test
prints a single PASS/FAIL line so the suite doubles as a report when run with
pytest -s.
"""

import pytest

from heckeclifford.cartan import Weight, cartan_matrix, f_lambda, weight_of_c
from heckeclifford.grothendieck import (
    character_library,
    divided,
    serre_verify,
    ses_check,
)
from heckeclifford.realizations import (
    PathFamily,
    blambda_by_cut,
    generate_binfty,
    generate_blambda,
    graphs_equal,
    weighted_string_sum,
    splitting_strictness_report,
    star_commutation_report,
)
from heckeclifford.scalars import (
    CycField,
    ScalarModel,
    Tower,
    b_in_tower,
    discriminant,
    q_of,
    adjacent_pair_vanishing,
)
from heckeclifford.supermodules import (
    build_L001,
    build_L01,
    build_L_ij,
    build_L_iij,
    low_rank_suite,
    shuffle_compat_suite,
    type_of_letter,
    verify_relations,
)


def report(n, name, ok):
    print(f"ACCEPTANCE {n} {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {n} ({name}) failed"


def test_criterion_1_scalar_identities():
    ok = True
    for l in range(2, 7):
        f = CycField.for_l(l)
        for i in range(l):
            for j in range(l):
                if abs(i - j) > 1:
                    continue
                t = Tower.with_discs(f, [discriminant(l, i), discriminant(l, j)])
                a = b_in_tower(t, l, i, 1)
                b = b_in_tower(t, l, j, 1)
                val = adjacent_pair_vanishing(
                    a, b, t.scalar(f.xi), t.scalar(q_of(l, i)), t.scalar(q_of(l, j))
                )
                ok &= val.is_zero()
        for i in range(l - 1):
            j = i + 1
            qi, qj = q_of(l, i), q_of(l, j)
            val = f.xi * f.xi * (qi * qj - 4) * ((qj - qi) ** 2).inverse()
            ok &= val == f.one
    report(1, "scalar-identities", ok)


def test_criterion_2_relation_verification():
    ok = not verify_relations(build_L01())
    ok &= not verify_relations(build_L001())
    for l in range(2, 6):
        for i in range(l):
            for j in (i - 1, i + 1):
                if not 0 <= j <= l - 1:
                    continue
                ti, tj = type_of_letter(l, i), type_of_letter(l, j)
                if (ti, tj) != ("Q", "Q"):
                    ok &= not verify_relations(build_L_ij(l, i, j))
                if (ti, tj) == ("Q", "M"):
                    # the builder itself verifies relations and the action equations
                    build_L_iij(l, i, j)
    report(2, "relation-verification", ok)


@pytest.fixture(scope="module")
def s5_reports():
    return {l: low_rank_suite(l) for l in (2, 3, 4, 5)}


def test_criterion_3_low_rank_replication(s5_reports):
    ok = True
    needed = {
        "rank2-invariance",
        "rank3-QM-invariance",
        "rank3-MM-noninvariance",
        "rank4-QM-noninvariance",
        "rank3-MM-scalar",
        "rank4-QM-scalar",
    }
    for l in (3, 4, 5):
        rep = s5_reports[l]
        ok &= rep["ok"]
        seen = {c["check"] for c in rep["checks"]}
        # scalar conditions and invariance statements must actually be covered
        ok &= {"rank2-invariance", "rank3-QM-invariance", "rank4-QM-scalar"} <= seen
        if l >= 4:
            ok &= "rank3-MM-noninvariance" in seen
        for c in rep["checks"]:
            if c["check"] in needed:
                ok &= c["status"] == "pass"
    rep2 = s5_reports[2]
    ok &= rep2["ok"]
    for c in rep2["checks"]:
        if c["check"] in ("rank4-l2-noninvariance", "rank4-l2-scalar"):
            ok &= c["status"] == "pass"
    report(3, "low-rank-replication", ok)


def test_criterion_4_characters(s5_reports):
    ok = True
    char_checks = {
        "rank2-N-character",
        "block-ij-character",
        "rank3-MM-character",
        "rank3-MM-sigma-character",
        "rank3-QM-N-character",
        "rank3-QM-quotient-character",
        "block-iij-character",
        "rank4-QM-character",
        "rank4-QM-sigma-character",
        "block-ijii-character",
        "L01-character",
        "L001-character",
        "block-0010-character",
        "block-1000-character",
        "block-010-character",
        "block-0100-character",
    }
    covered = set()
    for l in (2, 3, 4, 5):
        for c in s5_reports[l]["checks"]:
            if c["check"] in char_checks:
                covered.add(c["check"])
                ok &= c["status"] == "pass"
    ok &= covered == char_checks
    report(4, "characters-from-matrices", ok)


def test_criterion_5_shuffle_and_ses():
    ok = True
    for l in range(2, 6):
        for i in range(l):
            for j in (i - 1, i + 1):
                if not 0 <= j <= l - 1:
                    continue
                k = -cartan_matrix(l).entry(i, j)
                for a in range(k):
                    for b in range(k - a):
                        ok &= ses_check(l, i, j, a, b)
        rep = shuffle_compat_suite(l)
        ok &= rep["ok"]
    report(5, "shuffle-and-ses", ok)


def test_criterion_6_serre_suite():
    ok = all(serre_verify(l)["ok"] for l in (2, 3, 4, 5))
    report(6, "serre-suite", ok)


def test_criterion_7_binfty():
    ok = True
    for l in (2, 3, 4):
        g = generate_binfty(l, 6)  # raises ConsistencyFailure on mismatch
        zero_nodes = [f for f in g.nodes if f.wt().is_zero()]
        ok &= zero_nodes == [PathFamily.vacuum(l)]
        edge_map = {}
        for s, d, c in g.edges:
            edge_map[(s, c)] = d
        ids = {f.key(): n for n, f in enumerate(g.nodes)}
        max_depth_keys = set()
        for fam in g.nodes:
            nid = ids[fam.key()]
            fam.check_rotations()
            ok &= not splitting_strictness_report(fam, l)
            for i in range(l):
                from heckeclifford.cartan import pairing

                ok &= fam.phi(i) == fam.eps(i) + pairing(i, fam.wt())
                tgt = edge_map.get((nid, i))
                if tgt is not None:
                    child = g.nodes[tgt]
                    ok &= child.eps(i) == fam.eps(i) + 1
                    ok &= child.phi(i) == fam.phi(i) - 1
                    ok &= child.e(i) == fam
            if fam != PathFamily.vacuum(l):
                ok &= any(fam.eps_star(i) > 0 for i in range(l))
        ok &= not star_commutation_report(g)
    report(7, "crystal-binfty", ok)


def test_criterion_8_blambda():
    ok = True
    for l in (2, 3):
        lams = [
            Weight.fundamental(l, 0),
            Weight.fundamental(l, l - 1),
            Weight.fundamental(l, 0) + Weight.fundamental(l, l - 1),
        ]
        for lam in lams:
            deg = len(f_lambda(lam)) - 1
            ok &= deg == weight_of_c(lam)
            g = generate_blambda(l, lam, 8)
            for fam in g.nodes:
                # weighted_string_sum internally enforces formula == measured strings
                ok &= weighted_string_sum(fam, lam) == deg
            ok &= graphs_equal(g, blambda_by_cut(l, lam, 8))
    report(8, "crystal-blambda", ok)


def test_criterion_9_integrality():
    ok = True
    for l in range(2, 6):
        for label, ch in character_library(l):
            for letter in range(l):
                for r in (2, 3):
                    divided(ch, letter, r)  # raises on violation
    report(9, "divided-power-integrality", ok)
