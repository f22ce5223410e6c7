import csv
import io
import json
import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from holocalc import catalog, checks
from holocalc.catalog import CatalogError, ParityObstruction, Quaternion, ZetaVector

rats = st.fractions(min_value=-10, max_value=10, max_denominator=7)
quats = st.builds(Quaternion, rats, rats, rats, rats)


# -- quaternions -------------------------------------------------------------------

def test_quaternion_units():
    I, J, K = catalog.I, catalog.J, catalog.K
    assert I * J == K and J * K == I and K * I == J
    assert I * I == J * J == K * K == -catalog.ONE
    assert I * J * K == -catalog.ONE


@given(quats, quats)
def test_product_matches_matrix_oracle(p, q):
    assert p * q == catalog.matrix_product(p, q)


@given(quats, quats, quats)
def test_product_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(quats, quats)
def test_conjugation_and_norm_are_multiplicative(p, q):
    assert (p * q).conj() == q.conj() * p.conj()
    assert (p * q).norm2() == p.norm2() * q.norm2()
    assert (p.conj() * catalog.I * p).is_imaginary


# -- A_n ---------------------------------------------------------------------------

def genericity_oracle(zeta):
    # brute force over all index pairs
    return all(sum(zeta[i:j]) != 0 for i in range(len(zeta)) for j in range(i + 1, len(zeta) + 1))


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=7))
def test_genericity_matches_brute_force(zeta):
    assert catalog.an_genericity(ZetaVector(len(zeta) + 1, zeta)) == genericity_oracle(zeta)


def test_canonical_zeta_examples():
    assert catalog.canonical_zeta(2).zeta == (1,)
    assert catalog.canonical_zeta(5).zeta == (2, 1, 1, 1)
    assert catalog.canonical_zeta(6).zeta == (2, 1, 2, 1, 1)
    assert [catalog.canonical_zeta(n).weight for n in (2, 5, 6)] == [1, 11, 19]
    with pytest.raises(CatalogError):
        catalog.canonical_zeta(1)


def test_canonical_zeta_range():
    ok, detail = checks.canonical_zeta_range(random.Random(0), 0, 1)
    assert ok, detail


def test_zeta_lift():
    z = ZetaVector(4, (2, -1, 3))
    lift = z.lift()
    assert lift[-1] == 0
    assert [lift[i] - lift[i + 1] for i in range(3)] == [2, -1, 3]


def test_an_record_labels_and_failures():
    r = catalog.an_record(2, (1,))
    assert r.labels["S"] == "S^5" and r.labels["b2"] == 0
    assert catalog.an_record(3, (2, 1)).labels["S"] == "S^2xS^3"
    assert catalog.an_record(5, (2, 1, 1, 1)).labels["S"] == "#_3(S^2xS^3)"
    with pytest.raises(CatalogError, match="generic"):
        catalog.an_record(3, (1, -1))
    with pytest.raises(CatalogError, match="admissible"):
        catalog.an_record(3, (1, 1))
    with pytest.raises(CatalogError):
        ZetaVector(3, (1,))


def test_moment_map():
    ok, detail = checks.moment_map_checks(random.Random(0), 10, 1)
    assert ok, detail
    u = [catalog.ONE * 0 + catalog.J, catalog.ONE]
    # conj(j) i j = -i and conj(1) i 1 = i
    assert catalog.an_moment_map(u) == [Quaternion(0, -2)]
    with pytest.raises(CatalogError):
        catalog.torus_act([catalog.J], [catalog.ONE])


# -- weighted projective planes --------------------------------------------------

def test_wcp2_examples():
    assert catalog.wcp2_from_weights(1, 1, 1) == (2, 2, 2)
    assert catalog.wcp2_from_weights(1, 1, 3) == (4, 4, 2)
    with pytest.raises(ParityObstruction):
        catalog.wcp2_from_weights(1, 2, 3)
    with pytest.raises(CatalogError):
        catalog.wcp2_from_weights(2, 4, 6)
    with pytest.raises(CatalogError):
        catalog.wcp2_from_weights(0, 1, 1)


@given(st.tuples(st.integers(1, 40), st.integers(1, 40), st.integers(1, 40)))
def test_even_sum_branch_always_obstructed_for_coprime_weights(ps):
    if gcd(gcd(*ps[:2]), ps[2]) != 1:
        return
    if sum(ps) % 2:
        q = catalog.wcp2_from_weights(*ps)
        assert q == (ps[1] + ps[2], ps[0] + ps[2], ps[0] + ps[1])
    else:
        with pytest.raises(ParityObstruction):
            catalog.wcp2_from_weights(*ps)


def test_hp2_record():
    r = catalog.hp2_quotient_record(1, 1, 1)
    assert r.valid and r.labels["Q"] == "WCP^2[2,2,2]" and r.labels["S"] == "S^5"
    assert catalog.top_obstruction_vanishes(0) and not catalog.top_obstruction_vanishes(1)


def test_wcp2_catalog_marks_obstructed_triples():
    recs = catalog.catalog_wcp2(4)
    by_p = {tuple(r.params["p"]): r for r in recs}
    assert by_p[(1, 1, 1)].valid
    assert not by_p[(1, 2, 3)].valid and "parity" in by_p[(1, 2, 3)].reasons[0]
    assert (2, 2, 4) not in by_p


# -- S^3 x R^4 ----------------------------------------------------------------------

def test_s3r4_examples():
    r = catalog.s3r4_action(2, 2, 1, 3)
    assert r.valid and r.labels == {"M": "S^3xR^4", "cone": "Y^{2,1}"}
    r = catalog.s3r4_action(1, 1, 1, 1)
    assert r.valid and "cone" not in r.labels and r.notes
    r = catalog.s3r4_action(2, 2, 2, 2)
    assert not r.valid and any("gcd" in x for x in r.reasons)
    assert not catalog.s3r4_action(1, 2, 1, 1).flags["balanced"]
    assert not catalog.s3r4_action(0, 2, 1, 1).flags["positive"]


def test_ypq_tag():
    assert catalog.ypq_tag(3, 3, 1, 5) == (3, 2)
    assert catalog.ypq_tag(3, 3, 3, 3) is None
    assert catalog.ypq_tag(2, 3, 1, 4) is None


def test_s3r4_catalog_is_balanced():
    recs = catalog.catalog_s3r4(5)
    assert recs
    for r in recs:
        p, q = r.params["p"], r.params["q"]
        assert sum(p) == sum(q) and p[0] <= p[1] and q[0] <= q[1]


# -- serialization --------------------------------------------------------------------

def test_an_catalog_order_and_json():
    recs = catalog.catalog_an(12)
    data = json.loads(catalog.records_to_json(recs))
    assert [r["params"]["n"] for r in data] == list(range(2, 13))
    assert all(r["schema"] == catalog.CATALOG_SCHEMA and r["valid"] for r in data)


def test_csv_round_trip():
    text = catalog.records_to_csv(catalog.catalog_an(4))
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0][:3] == ["family", "params", "valid"]
    assert len(rows) == 4
    assert json.loads(rows[1][1])["n"] == 2


def test_catalog_domain_errors():
    with pytest.raises(CatalogError):
        catalog.catalog_an(1)
    with pytest.raises(CatalogError):
        catalog.catalog_wcp2(0)
    with pytest.raises(CatalogError):
        catalog.catalog_s3r4(0)
