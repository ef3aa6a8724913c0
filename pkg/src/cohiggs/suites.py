"""Seeded property suites behind ``cohiggs verify``.

Each trial draws its inputs from ``random.Random(f"{seed}:{index}")`` so a
trial's outcome depends only on (theorem, seed, index, bound); the report is
assembled in trial order whatever the scheduling.
"""
from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from .classification import (
    canonicalize_pm,
    canonicalize_qc,
    canonicalize_rho,
    complete_square,
    decompose_linear_product,
    image_point,
    image_triple,
)
from .errors import NotASquare, SingularEvaluationPoint
from .fields import (
    CoHiggsK0,
    CoHiggsK1,
    CoHiggsK2,
    det_glue_check,
    determinant,
    integrable,
    phi0_for_target,
    phi0_glue_check,
    schwarz_info,
)
from . import generators as gen
from .geometry import (
    Bundle,
    SectionOk,
    Sym2Triple,
    cocycle_at,
    cocycle_check,
    compare_displayed_transitions,
    recover_sqrt,
    sym2_glue_check,
    sym2_matrix,
    sym2_section,
)
from .poly import homogenize
from .ratfunc import mat_det, mat_mul
from .serialize import field_to_wire, poly_to_wire, section_to_wire, vector_to_wire

THEOREMS = ("det1", "det2", "det3", "det4", "lemma1", "lemma2", "cocycle", "integrability")


@dataclass
class Finding:
    status: str  # FAIL or NOTE
    trial: Optional[int]
    input: str
    expected: str
    actual: str
    note: str

    def line(self) -> str:
        where = "-" if self.trial is None else str(self.trial)
        text = f"{self.status} [trial {where}] {self.note}"
        if self.status == "FAIL":
            text += f" | expected: {self.expected} | actual: {self.actual} | input: {self.input}"
        return text


@dataclass
class VerificationReport:
    theorem: str
    trials: int
    failures: int
    findings: list = field(default_factory=list)
    seed: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "trials": self.trials,
            "failures": self.failures,
            "seed": self.seed,
            "passed": self.passed,
            "findings": [asdict(f) for f in self.findings],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        findings = [Finding(**f) for f in d["findings"]]
        report = cls(d["theorem"], d["trials"], d["failures"], findings, d["seed"])
        if report.failures != sum(f.status == "FAIL" for f in findings):
            raise ValueError("failure count does not match FAIL findings")
        return report

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        lines = [
            f"theorem: {self.theorem}",
            f"seed: {self.seed}",
            f"trials: {self.trials}",
            f"failures: {self.failures}",
        ]
        lines += [f.line() for f in self.findings]
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


class _Trial:
    """Collects FAIL/NOTE findings for a single trial."""

    def __init__(self):
        self.findings = []

    def check(self, ok: bool, note: str, inp="", expected="", actual=""):
        if not ok:
            self.findings.append(Finding("FAIL", None, _s(inp), _s(expected), _s(actual), note))
        return ok

    def note(self, note: str, inp=""):
        self.findings.append(Finding("NOTE", None, _s(inp), "", "", note))


def _s(x) -> str:
    if isinstance(x, str):
        return x
    return json.dumps(x, sort_keys=True)


def _field_json(phi):
    return field_to_wire(phi)


def _triple_ok(d) -> bool:
    return d.structured is not None and d.structured.triple() == d.triple


def _field_checks(t: _Trial, phi, k: int):
    """Integrability on every chart, factorization, gluing and image reconstruction."""
    inp = _field_json(phi)
    t.check(all(integrable(phi, c) for c in range(3)), "field is integrable on every chart", inp, True, False)
    d = determinant(phi)
    t.check(_triple_ok(d), "determinant equals its structured product", inp)
    t.check(det_glue_check(phi), "determinant glues as a section of Sym^2 T", inp)
    p = image_point(d, k)
    t.check(image_triple(p) == d.triple, "image point reconstructs the determinant", inp)
    return d, p


# --- theorem suites ---------------------------------------------------------------------


def trial_det1(rng, bound, t: _Trial):
    _field_checks(t, gen.rand_k0(rng, bound), 0)
    s = gen.rand_degree2(rng, bound)
    sq = complete_square(s)
    t.check(sq.lam * sq.lam + sq.mu == s, "s == lam^2 + mu", poly_to_wire(s))
    # surjectivity: every (q, C) is reached by a K0 field
    q, c = gen.rand_form(rng, 2, bound, nonzero=True), gen.rand_tm1(rng, bound)
    sq = complete_square(-q.local_rep(0))
    phi = CoHiggsK0(SectionOk(homogenize(sq.lam, 1)), SectionOk(homogenize(sq.mu, 2)), c)
    t.check(image_point(determinant(phi), 0) == canonicalize_qc(q, c), "K0 field realizes (q, C)", _field_json(phi))
    alpha = gen.rand_scalar(rng, bound, nonzero=True)
    a, b = canonicalize_qc(q, c), canonicalize_qc(q * (alpha * alpha), c / alpha)
    t.check(a == b, "(q, C) and (a^2 q, C/a) share a canonical form", section_to_wire(q))
    t.check(image_triple(a) == image_triple(b), "orbit pair has equal invariant triples", section_to_wire(q))


def trial_det2(rng, bound, t: _Trial):
    if rng.random() < 0.25:
        phi = gen.rand_k1_noncommuting(rng, bound)
        t.check(
            not any(integrable(phi, c) for c in range(3)),
            "field with A ^ B != 0 is not integrable",
            _field_json(phi),
        )
    else:
        phi, shape = gen.rand_k1_integrable(rng, bound)
        d = determinant(phi)
        if d.structured is None:
            t.note("integrable field with B, C != 0 matches neither shape", _field_json(phi))
        _field_checks(t, phi, 1)
    s = gen.rand_degree2(rng, bound)
    lam, mu, mu2 = decompose_linear_product(s)
    t.check(lam * lam + mu * mu2 == s, "s == lam^2 + mu*mu'", poly_to_wire(s))
    t.check(max(p.degree for p in (lam, mu, mu2)) <= 1, "lam, mu, mu' have degree <= 1", poly_to_wire(s))
    a = gen.rand_tangent(rng, bound)
    t.check(canonicalize_pm(a) == canonicalize_pm(-a), "A and -A share a canonical form", section_to_wire(a))


def trial_det3(rng, bound, t: _Trial):
    phi = gen.rand_k2(rng, bound)
    t.check(phi0_glue_check(phi), "phi0 glues with the stated degree bounds", _field_json(phi))
    _field_checks(t, phi, 2)
    q, c = gen.rand_form(rng, 2, bound), gen.rand_tm1(rng, bound)
    f, g, h = phi0_for_target(q)
    ok = -(f * f) - g * h == q.local_rep(0) and f.degree <= 1 and g.degree <= 2
    t.check(ok, "-F^2 - G*H == q within the degree bounds", section_to_wire(q))
    if not q.is_zero():
        p = image_point(determinant(CoHiggsK2(f, g, h, c)), 2)
        t.check(p == canonicalize_qc(q, c), "phi0_for_target(q) (x) C has image (q, C)", section_to_wire(q))


def trial_det4(rng, bound, t: _Trial):
    phi = gen.rand_kbig(rng, bound)
    _, p = _field_checks(t, phi, phi.k)
    t.check(schwarz_info(phi.k).h1_end0 == phi.k**2 - 4, "h1(End0) == k^2 - 4", str(phi.k))
    beta = gen.rand_scalar(rng, bound, nonzero=True)
    other = canonicalize_rho(phi.lam / (beta * beta), phi.C * beta, phi.rho)
    t.check(other == p, "(lam, C) and (lam/b^2, bC) share a canonical form", _field_json(phi))
    t.check(image_triple(other) == image_triple(p), "lam-absorbed pair has equal invariant triples", _field_json(phi))


def _random_non_square(rng, bound) -> Sym2Triple:
    while True:
        t = Sym2Triple(*(gen.rand_affine(rng, 2, bound) for _ in range(3)))
        if t.t12 * t.t12 != t.t11 * t.t22:
            return t


def trial_lemma1(rng, bound, t: _Trial):
    c = gen.rand_tm1(rng, bound)
    roots = recover_sqrt(sym2_section(c))
    t.check(c in roots and -c in roots, "recover_sqrt(Sym^2 C) == {C, -C}", vector_to_wire(c.v))
    t.check(sym2_section(c) == sym2_section(-c), "Sym^2(C) == Sym^2(-C)", vector_to_wire(c.v))
    bad = _random_non_square(rng, bound)
    try:
        recover_sqrt(bad)
        t.check(False, "non-square triple is rejected", str(bad), "NotASquare", "accepted")
    except NotASquare:
        pass


def trial_lemma2(rng, bound, t: _Trial):
    g, h = gen.rand_matrix2(rng, bound), gen.rand_matrix2(rng, bound)
    inp = [[[str(x) for x in r] for r in m] for m in (g, h)]
    t.check(
        sym2_matrix(mat_mul(g, h)) == mat_mul(sym2_matrix(g), sym2_matrix(h)),
        "Sym^2(gh) == Sym^2(g) Sym^2(h)",
        inp,
    )
    t.check(mat_det(sym2_matrix(g)) == mat_det(g) ** 3, "det Sym^2(g) == det(g)^3", inp)
    c = gen.rand_tm1(rng, bound)
    t.check(
        sym2_glue_check({i: sym2_section(c, i) for i in range(3)}, Bundle.SYM2_T_MINUS_2),
        "Sym^2(C) glues under the Sym^2 T(-1) transitions",
        vector_to_wire(c.v),
    )


COCYCLE_BUNDLES = (("O", 1), ("O", 2), ("T", 1), ("T(-1)", 1), ("Sym2T", 1), ("Sym2T(-2)", 1))


def trial_cocycle(rng, bound, t: _Trial):
    while True:
        p = gen.rand_point(rng, bound)
        try:
            rows = {(b, k): cocycle_at(p, b, k) for b, k in COCYCLE_BUNDLES}
        except SingularEvaluationPoint:
            continue
        break
    for (b, k), res in rows.items():
        name = f"O({k})" if b == "O" else b
        bad = [cyc for cyc, ok in res if not ok]
        t.check(not bad, f"cocycle identity for {name}", str(p), "identity", str(bad))


def trial_integrability(rng, bound, t: _Trial):
    kind = rng.choice(("k0", "k1", "k1-noncommuting", "k2", "kbig"))
    if kind == "k0":
        phi = gen.rand_k0(rng, bound)
    elif kind == "k1":
        phi, _ = gen.rand_k1_integrable(rng, bound)
    elif kind == "k1-noncommuting":
        phi = gen.rand_k1_noncommuting(rng, bound)
    elif kind == "k2":
        phi = gen.rand_k2(rng, bound)
    else:
        phi = gen.rand_kbig(rng, bound)
    values = [integrable(phi, c) for c in range(3)]
    expected = kind != "k1-noncommuting"
    t.check(len(set(values)) == 1, "integrability is chart independent", _field_json(phi), expected, values)
    t.check(values[0] == expected, f"{kind} field integrability", _field_json(phi), expected, values[0])
    if isinstance(phi, CoHiggsK1) and kind == "k1":
        t.check(determinant(phi).structured is not None, "integrable K1 field has a recognized shape")


TRIALS: dict[str, Callable] = {
    "det1": trial_det1,
    "det2": trial_det2,
    "det3": trial_det3,
    "det4": trial_det4,
    "lemma1": trial_lemma1,
    "lemma2": trial_lemma2,
    "cocycle": trial_cocycle,
    "integrability": trial_integrability,
}


def report_notes(theorem: str) -> list:
    """Findings that belong to the suite rather than to a trial."""
    notes = []
    if theorem == "cocycle":
        for cmp in compare_displayed_transitions():
            notes.append(Finding("NOTE", None, cmp.name, "Jacobian of the chart change", "displayed matrix", cmp.note))
        shown = cocycle_check("T", points=20, source="displayed")
        verdict = "holds" if shown.passed else f"fails at {len(shown.failures)} of {len(shown.results)} points"
        notes.append(
            Finding("NOTE", None, "g12*g23*g31", "identity", verdict, f"displayed tangent cocycle {verdict}")
        )
    if theorem == "det2":
        notes.append(
            Finding(
                "NOTE", None, "", "", "",
                "first-branch section C is read as a section of T(-1) on the projective plane, "
                "the displayed subscript names the projective line",
            )
        )
        notes.append(
            Finding(
                "NOTE", None, "", "", "",
                "second branch read with constant lam, mu: phi = [[lam, mu], [1, -lam]] (x) R for a tangent section R",
            )
        )
    return notes


def run_trial(theorem: str, seed: int, index: int, bound: int = gen.DEFAULT_BOUND) -> list:
    rng = random.Random(f"{seed}:{index}")
    t = _Trial()
    try:
        TRIALS[theorem](rng, bound, t)
    except Exception as exc:  # a crash is a failed trial, not a crashed suite
        t.findings.append(Finding("FAIL", None, "", "no exception", type(exc).__name__, str(exc)))
    for f in t.findings:
        f.trial = index
    return t.findings


def _run_trial_args(args):
    return run_trial(*args)


def run_suite(theorem: str, trials: int, seed: int, bound: int = gen.DEFAULT_BOUND, jobs: int = 1):
    if theorem not in TRIALS:
        raise ValueError(f"unknown theorem {theorem!r}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    args = [(theorem, seed, i, bound) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_trial = list(pool.map(_run_trial_args, args, chunksize=max(1, trials // (4 * jobs))))
    else:
        per_trial = [_run_trial_args(a) for a in args]
    findings = report_notes(theorem)
    for fs in per_trial:
        findings.extend(fs)
    findings.sort(key=lambda f: -1 if f.trial is None else f.trial)
    failures = sum(f.status == "FAIL" for f in findings)
    return VerificationReport(theorem, trials, failures, findings, seed)
