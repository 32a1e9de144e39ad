import os

import pytest

import codequiv

DATA = os.environ.get("CODEQUIV_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def data(name):
    return os.path.join(DATA, name)


def test_field_arithmetic():
    f = codequiv.Field(3, 2)
    e = f.exp(1)
    assert f.q == 9
    assert f.mul(e, e) == f.add(e, 1)
    assert f.format(f.exp(5)) == "e^5"
    assert f.mul(e, f.inv(e)) == 1


def test_bundled_codes_are_mds():
    for name in ("G1.code", "G2.code", "C3.code"):
        assert codequiv.read_code(data(name)).mds() == (True, 6, 729)


def test_c3_is_not_linear():
    c3 = codequiv.read_code(data("C3.code"))
    assert isinstance(c3, codequiv.AdditiveCode)
    assert not c3.is_fq_linear()


def test_semilinear_search_certifies_inequivalence():
    c1 = codequiv.read_code(data("G1.code"))
    c2 = codequiv.read_code(data("G2.code"))
    status, nodes, witness = codequiv.search_semilinear(c1, c2)
    assert status == "not-found"
    assert witness is None
    status, _, witness = codequiv.search_semilinear(c1, c1)
    assert status == "found"
    assert witness.startswith("witness kind=semilinear")


def test_parse_errors_raise():
    with pytest.raises(codequiv.Error, match="line 3"):
        codequiv.parse_code("field p=3 h=2\nkind linear k=1 n=2\n1 z\n")


def test_cli_entry_point():
    status, out, _ = codequiv.run_cli(["count-additive-perms", "2", "2"])
    assert status == 0
    assert out == "additive_maps=16 additive_permutations=6\n"
