"""JSON wire format for scalars, polynomials, sections, fields and image points.

Scalars are exact strings ``"a/b"`` or ``"a/b+c/d i"``; an element of a
quadratic extension is ``{"x": ..., "y": ..., "sqrt": radicand}`` meaning
``x + y*sqrt(radicand)``.  Polynomials are term lists ``[[exponents], coef]``.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .classification import QSym2, RhoSym2, SymTangent, ZeroImage
from .errors import CoHiggsError, ParseError
from .fields import (
    CoHiggsK0,
    CoHiggsK1,
    CoHiggsK2,
    CoHiggsKBig,
    DetSection,
    QCForm,
    RhoForm,
    TangentForm,
)
from .geometry import SectionOk, SectionT, SectionTm1, Sym2Triple
from .poly import HomogeneousForm3, Poly, PROJ_VARS
from .scalars import GaussianRational, make, scalar, tower_of

KINDS = ("k0field", "k1field", "k2field", "kbigfield", "section", "pair")

_NUM = r"[+-]?\s*\d+(?:\s*/\s*\d+)?"
_GAUSS = re.compile(
    rf"^\s*(?:(?P<re>{_NUM})\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:\s*/\s*\d+)?)?\s*\*?\s*i)?"
    rf"|(?P<imonly>{_NUM})?\s*\*?\s*i|(?P<ionly>[+-])\s*i)\s*$"
)


# --- scalars ------------------------------------------------------------------------


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def format_gaussian(g: GaussianRational) -> str:
    if g.im == 0:
        return str(g.re)
    sign = "+" if g.im > 0 else "-"
    return f"{g.re}{sign}{abs(g.im)} i"


def parse_gaussian(text: str) -> GaussianRational:
    m = _GAUSS.match(text)
    if not m or not text.strip():
        raise ValueError(f"not an exact scalar: {text!r}")
    if m.group("ionly"):
        return GaussianRational(0, -1 if m.group("ionly") == "-" else 1)
    if m.group("re") is None:
        im = m.group("imonly")
        return GaussianRational(0, _frac(im) if im else 1)
    re_ = _frac(m.group("re"))
    if m.group("sign") is None:
        return GaussianRational(re_)
    im = _frac(m.group("im")) if m.group("im") else Fraction(1)
    return GaussianRational(re_, -im if m.group("sign") == "-" else im)


def scalar_to_wire(x):
    x = scalar(x)
    if isinstance(x, GaussianRational):
        return format_gaussian(x)
    return {"x": scalar_to_wire(x.x), "y": scalar_to_wire(x.y), "sqrt": scalar_to_wire(x.radicand)}


def scalar_from_wire(obj):
    if isinstance(obj, str):
        return parse_gaussian(obj)
    if isinstance(obj, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(obj, int):
        return GaussianRational(obj)
    if isinstance(obj, dict) and set(obj) <= {"x", "y", "sqrt"} and "sqrt" in obj:
        d = scalar_from_wire(obj["sqrt"])
        x = scalar_from_wire(obj.get("x", "0"))
        y = scalar_from_wire(obj.get("y", "1"))
        if d == 0:
            raise ValueError("radicand must be nonzero")
        root = make(tower_of(d).extend(d), scalar(0), scalar(1))
        return x + root * y
    raise ValueError(f"not an exact scalar: {obj!r}")


# --- polynomials and sections -----------------------------------------------------------


def poly_to_wire(p: Poly) -> list:
    return [[list(e), scalar_to_wire(c)] for e, c in p.sorted_terms()]


def poly_from_wire(obj, nvars: int = 2, vars=None) -> Poly:
    if not isinstance(obj, list):
        raise ValueError("a polynomial is a list of [exponents, coefficient] terms")
    terms = {}
    for t in obj:
        if not (isinstance(t, list) and len(t) == 2 and isinstance(t[0], list)):
            raise ValueError(f"bad term {t!r}")
        e = tuple(t[0])
        if len(e) != nvars or any(not isinstance(k, int) or isinstance(k, bool) or k < 0 for k in e):
            raise ValueError(f"bad exponents {t[0]!r}")
        terms[e] = terms.get(e, scalar(0)) + scalar_from_wire(t[1])
    return Poly(terms, vars or (PROJ_VARS if nvars == 3 else ("z", "w")))


def form_from_wire(obj, degree: int) -> SectionOk:
    p = poly_from_wire(obj, 3)
    if any(sum(e) != degree for e in p.terms):
        raise ValueError(f"every term must have degree {degree}")
    return SectionOk(HomogeneousForm3(degree, p))


def vector_to_wire(v) -> list:
    return [scalar_to_wire(x) for x in v]


def tm1_from_wire(obj) -> SectionTm1:
    if not isinstance(obj, list) or len(obj) != 3:
        raise ValueError("a T(-1) section is a list of three scalars")
    return SectionTm1(tuple(scalar_from_wire(x) for x in obj))


def tangent_from_wire(obj) -> SectionT:
    if not isinstance(obj, list) or len(obj) != 3 or any(not isinstance(r, list) or len(r) != 3 for r in obj):
        raise ValueError("a T section is a 3x3 matrix of scalars")
    return SectionT(tuple(tuple(scalar_from_wire(x) for x in r) for r in obj))


def tangent_to_wire(a: SectionT) -> list:
    return [vector_to_wire(r) for r in a.m]


def triple_to_wire(t: Sym2Triple) -> dict:
    return {"t11": poly_to_wire(t.t11), "t12": poly_to_wire(t.t12), "t22": poly_to_wire(t.t22)}


def section_to_wire(s) -> dict:
    if isinstance(s, SectionOk):
        return {"bundle": "O", "k": s.k, "form": poly_to_wire(s.form.poly)}
    if isinstance(s, SectionTm1):
        return {"bundle": "T(-1)", "v": vector_to_wire(s.v)}
    if isinstance(s, SectionT):
        return {"bundle": "T", "m": tangent_to_wire(s)}
    raise TypeError(type(s).__name__)


# --- documents ------------------------------------------------------------------------


def field_to_wire(phi) -> dict:
    if isinstance(phi, CoHiggsK0):
        return {
            "kind": "k0field",
            "lambda": poly_to_wire(phi.lam.form.poly),
            "mu": poly_to_wire(phi.mu.form.poly),
            "C": vector_to_wire(phi.C.v),
        }
    if isinstance(phi, CoHiggsK1):
        return {"kind": "k1field", **{n: tangent_to_wire(getattr(phi, n)) for n in "ABC"}}
    if isinstance(phi, CoHiggsK2):
        return {
            "kind": "k2field",
            "F": poly_to_wire(phi.F),
            "G": poly_to_wire(phi.G),
            "H": scalar_to_wire(phi.H),
            "C": vector_to_wire(phi.C.v),
        }
    if isinstance(phi, CoHiggsKBig):
        return {
            "kind": "kbigfield",
            "k": phi.k,
            "rho": poly_to_wire(phi.rho.form.poly),
            "lambda": scalar_to_wire(phi.lam),
            "C": vector_to_wire(phi.C.v),
        }
    raise TypeError(type(phi).__name__)


def _need(doc: dict, key: str, path: str):
    if key not in doc:
        raise _Located(f"missing key {key!r}", f"{path}.{key}", None)
    return doc[key]


class _Located(Exception):
    def __init__(self, message, path, token):
        super().__init__(message)
        self.path = path
        self.token = token


def _field(doc: dict, key: str, conv, *args):
    value = _need(doc, key, "$")
    try:
        return conv(value, *args)
    except (ValueError, TypeError, ZeroDivisionError, CoHiggsError) as exc:
        raise _Located(str(exc), f"$.{key}", value) from None


def _build(doc):
    if not isinstance(doc, dict):
        raise _Located("the document must be a JSON object", "$", None)
    kind = _need(doc, "kind", "$")
    if kind not in KINDS:
        raise _Located(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "$.kind", kind)
    if kind == "k0field":
        return CoHiggsK0(
            _field(doc, "lambda", form_from_wire, 1),
            _field(doc, "mu", form_from_wire, 2),
            _field(doc, "C", tm1_from_wire),
        )
    if kind == "k1field":
        return CoHiggsK1(*(_field(doc, n, tangent_from_wire) for n in "ABC"))
    if kind == "k2field":
        f = _field(doc, "F", poly_from_wire)
        g = _field(doc, "G", poly_from_wire)
        h = _field(doc, "H", scalar_from_wire)
        c = _field(doc, "C", tm1_from_wire)
        try:
            return CoHiggsK2(f, g, h, c)
        except CoHiggsError as exc:
            raise _Located(str(exc), "$", None) from None
    if kind == "kbigfield":
        k = _need(doc, "k", "$")
        if not isinstance(k, int) or isinstance(k, bool):
            raise _Located("k must be an integer", "$.k", k)
        rho = _field(doc, "rho", form_from_wire, 2)
        lam = _field(doc, "lambda", scalar_from_wire)
        c = _field(doc, "C", tm1_from_wire)
        try:
            return CoHiggsKBig(k, rho, lam, c)
        except (ValueError, CoHiggsError) as exc:
            raise _Located(str(exc), "$", None) from None
    if kind == "pair":
        return (_field(doc, "q", form_from_wire, 2), _field(doc, "C", tm1_from_wire))
    bundle = _need(doc, "bundle", "$")
    if bundle == "O":
        k = _need(doc, "k", "$")
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise _Located("k must be a nonnegative integer", "$.k", k)
        return _field(doc, "form", form_from_wire, k)
    if bundle == "T(-1)":
        return _field(doc, "v", tm1_from_wire)
    if bundle == "T":
        return _field(doc, "m", tangent_from_wire)
    raise _Located(f"unknown bundle {bundle!r}; expected O, T(-1) or T", "$.bundle", bundle)


def _locate(text: str, token):
    """Line and column of the first occurrence of ``token`` in the raw text."""
    if token is None:
        return None, None
    needle = json.dumps(token) if isinstance(token, str) else None
    pos = text.find(needle) if needle else -1
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def _first_bad_leaf(value):
    """The innermost string that fails to parse as a scalar, for error locations."""
    if isinstance(value, str):
        try:
            parse_gaussian(value)
        except ValueError:
            return value
        return None
    if isinstance(value, list):
        for v in value:
            bad = _first_bad_leaf(v)
            if bad is not None:
                return bad
    return None


def parse_document(text: str, path: str | None = None):
    """Parse an input document into a field, a section or a ``(q, C)`` pair."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        where = f"{path}: " if path else ""
        raise ParseError(f"{where}invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    try:
        return doc.get("kind") if isinstance(doc, dict) else None, _build(doc)
    except _Located as exc:
        token = _first_bad_leaf(exc.token) or exc.token
        line, col = _locate(text, token if isinstance(token, str) else None)
        if line is None and isinstance(exc.path, str) and exc.path.startswith("$."):
            line, col = _locate(text, exc.path[2:].split(".")[0])
        where = f"{path}: " if path else ""
        raise ParseError(f"{where}{exc}", line, col, exc.path) from None


# --- results --------------------------------------------------------------------------


def structured_to_wire(s) -> dict | None:
    if s is None:
        return None
    if isinstance(s, QCForm):
        return {"type": "qc", "q": poly_to_wire(s.q.form.poly), "C": vector_to_wire(s.C.v)}
    if isinstance(s, TangentForm):
        return {"type": "tangent", "A": tangent_to_wire(s.A)}
    if isinstance(s, RhoForm):
        return {
            "type": "rho",
            "lambda": scalar_to_wire(s.lam),
            "rho": poly_to_wire(s.rho.form.poly),
            "C": vector_to_wire(s.C.v),
        }
    raise TypeError(type(s).__name__)


def det_to_wire(d: DetSection) -> dict:
    return {"triple": triple_to_wire(d.triple), "structured": structured_to_wire(d.structured), "k": d.k}


def image_to_wire(p) -> dict:
    if isinstance(p, ZeroImage):
        return {"type": "Zero"}
    if isinstance(p, QSym2):
        return {"type": "QSym2", "q": poly_to_wire(p.q.form.poly), "C": vector_to_wire(p.C.v)}
    if isinstance(p, SymTangent):
        return {"type": "SymTangent", "A": tangent_to_wire(p.A)}
    if isinstance(p, RhoSym2):
        return {"type": "RhoSym2", "C": vector_to_wire(p.C.v), "rho": poly_to_wire(p.rho.form.poly)}
    raise TypeError(type(p).__name__)


def image_from_wire(obj: dict):
    t = obj.get("type")
    if t == "Zero":
        return ZeroImage()
    if t == "QSym2":
        return QSym2(form_from_wire(obj["q"], 2), tm1_from_wire(obj["C"]))
    if t == "SymTangent":
        return SymTangent(tangent_from_wire(obj["A"]))
    if t == "RhoSym2":
        return RhoSym2(tm1_from_wire(obj["C"]), form_from_wire(obj["rho"], 2))
    raise ValueError(f"unknown image point type {t!r}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)
