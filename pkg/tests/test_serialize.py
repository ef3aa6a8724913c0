import json
import random
from fractions import Fraction

import pytest
from hypothesis import given

from cohiggs.classification import RhoSym2, SymTangent, ZeroImage, canonicalize_pm, canonicalize_qc
from cohiggs.errors import ParseError
from cohiggs.generators import rand_form, rand_k0, rand_k1_integrable, rand_k2, rand_kbig, rand_tangent, rand_tm1
from cohiggs.scalars import GaussianRational, exact_sqrt
from cohiggs.serialize import (
    field_to_wire,
    format_gaussian,
    image_from_wire,
    image_to_wire,
    parse_document,
    parse_gaussian,
    scalar_from_wire,
    scalar_to_wire,
    section_to_wire,
)
from cohiggs.suites import run_suite, VerificationReport

from conftest import gaussians


@pytest.mark.parametrize(
    "text,value",
    [
        ("1/2", GaussianRational(Fraction(1, 2))),
        ("1/2+3/4 i", GaussianRational(Fraction(1, 2), Fraction(3, 4))),
        ("i", GaussianRational(0, 1)),
        ("-i", GaussianRational(0, -1)),
        ("2i", GaussianRational(0, 2)),
        ("3-2i", GaussianRational(3, -2)),
        ("2*i", GaussianRational(0, 2)),
        ("-7", GaussianRational(-7)),
    ],
)
def test_parse_gaussian(text, value):
    assert parse_gaussian(text) == value


@pytest.mark.parametrize("text", ["", "1.5", "x", "1/0", "2+", "i i"])
def test_parse_gaussian_rejects(text):
    with pytest.raises(ValueError):
        parse_gaussian(text)


@given(gaussians)
def test_gaussian_round_trip(g):
    assert parse_gaussian(format_gaussian(g)) == g


def test_extension_scalar_round_trip():
    r, _ = exact_sqrt(3)
    x = r * 2 + GaussianRational(1, 1)
    wire = scalar_to_wire(x)
    assert wire == {"x": "1+1 i", "y": "2", "sqrt": "3"}
    assert scalar_from_wire(json.loads(json.dumps(wire))) == x


@pytest.mark.parametrize("make", [rand_k0, rand_k2, rand_kbig, lambda rng: rand_k1_integrable(rng)[0]])
def test_field_round_trip(make):
    rng = random.Random(1)
    for _ in range(10):
        phi = make(rng)
        kind, back = parse_document(json.dumps(field_to_wire(phi)))
        assert back == phi and kind == field_to_wire(phi)["kind"]


def test_section_and_pair_documents():
    rng = random.Random(2)
    for s in (rand_form(rng, 2), rand_tm1(rng), rand_tangent(rng)):
        _, back = parse_document(json.dumps({"kind": "section", **section_to_wire(s)}))
        assert back == s
    q, c = rand_form(rng, 2), rand_tm1(rng)
    doc = {"kind": "pair", "q": section_to_wire(q)["form"], "C": section_to_wire(c)["v"]}
    assert parse_document(json.dumps(doc)) == ("pair", (q, c))


def test_image_round_trip():
    rng = random.Random(3)
    q, c, a = rand_form(rng, 2, nonzero=True), rand_tm1(rng), rand_tangent(rng)
    for p in (ZeroImage(), canonicalize_qc(q, c), SymTangent(canonicalize_pm(a)), RhoSym2(c, q)):
        assert image_from_wire(json.loads(json.dumps(image_to_wire(p)))) == p


def test_parse_error_location():
    text = '{"kind": "pair",\n "q": [[[2,0,0], "1/0x"]], "C": ["1", "0", "0"]}'
    with pytest.raises(ParseError) as info:
        parse_document(text, "doc.json")
    err = info.value
    assert (err.line, err.column) == (2, 18)
    assert err.path == "$.q" and "doc.json" in str(err)


def test_parse_error_invalid_json():
    with pytest.raises(ParseError) as info:
        parse_document('{"kind": "pair",\n  oops}')
    assert info.value.line == 2


@pytest.mark.parametrize(
    "doc",
    [
        {"kind": "nope"},
        {"kind": "pair", "q": [[[1, 0, 0], "1"]], "C": ["1", "0", "0"]},
        {"kind": "k2field", "F": [[[2, 0], "1"]], "G": [], "H": "0", "C": ["1", "0", "0"]},
        {"kind": "section", "bundle": "T", "m": [["1"]]},
        {"kind": "kbigfield", "k": 3, "rho": [[[1, 1, 0], "1"]], "lambda": "1", "C": ["1", "0", "0"]},
    ],
)
def test_bad_documents(doc):
    with pytest.raises(ParseError):
        parse_document(json.dumps(doc))


def test_report_round_trip():
    report = run_suite("cocycle", 3, 5)
    again = VerificationReport.from_dict(json.loads(report.to_json()))
    assert again.to_json() == report.to_json()
    tampered = json.loads(report.to_json())
    tampered["failures"] = 1
    with pytest.raises(ValueError):
        VerificationReport.from_dict(tampered)
