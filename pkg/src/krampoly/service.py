"""HTTP service exposing the package: one POST endpoint per capability.

Domain errors (KrampolyError subclasses) map to 400 with the error class name
and message; malformed request bodies get FastAPI's usual 422.  All handlers
are pure functions of their request body, so responses are deterministic.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import __version__, schemas
from .braid import BraidWord
from .curves import CompletelyReducibleCurve, analyze
from .errors import KrampolyError
from .laurent import LaurentPoly
from .libgober import MonodromyList, alexander_polynomial, krammer_polynomial
from .representations import (
    burau_word,
    essential_eigenvector,
    krammer_basis,
    krammer_word,
)

app = FastAPI(title="krampoly", version=__version__)


@app.exception_handler(KrampolyError)
async def _domain_error(request, exc: KrampolyError):
    return JSONResponse(
        status_code=400,
        content={"error": type(exc).__name__, "detail": str(exc)},
    )


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/krammer/matrix", response_model=schemas.MatrixResponse)
def krammer_matrix(req: schemas.WordRequest) -> schemas.MatrixResponse:
    w = BraidWord.parse(req.word, req.n)
    m = krammer_word(w)
    return schemas.MatrixResponse(
        rows=m.rows,
        cols=m.cols,
        entries=[e.to_json_terms() for r in range(m.rows) for e in m.row_entries(r)],
        basis=list(krammer_basis(req.n)),
        text=m.pretty(),
    )


@app.post("/krammer/polynomial", response_model=schemas.PolynomialResponse)
def krammer_poly(req: schemas.KrammerPolyRequest) -> schemas.PolynomialResponse:
    m = MonodromyList.parse(req.n, req.words)
    res = krammer_polynomial(m, minor_cap=req.minor_cap)
    return schemas.PolynomialResponse(
        polynomial=res.polynomial.to_json_terms(),
        text=str(res.polynomial),
        per_fiber=[p.to_json_terms() for p in res.per_fiber_polynomials],
        per_fiber_text=[str(p) for p in res.per_fiber_polynomials],
        exact=res.exact,
        minors_enumerated=res.minors_enumerated,
    )


@app.post("/alexander", response_model=schemas.AlexanderResponse)
def alexander(req: schemas.AlexanderRequest) -> schemas.AlexanderResponse:
    m = MonodromyList.parse(req.n, req.words)
    poly = alexander_polynomial(m)
    return schemas.AlexanderResponse(polynomial=poly.to_json_terms(), text=str(poly))


@app.post("/braid/essential", response_model=schemas.EssentialResponse)
def essential(req: schemas.WordRequest) -> schemas.EssentialResponse:
    w = BraidWord.parse(req.word, req.n)
    missing = w.missing_generators()
    is_ess = w.is_essential()
    text = (
        f"essential: true (missing: {', '.join(str(k) for k in missing)})"
        if is_ess
        else "essential: false"
    )
    return schemas.EssentialResponse(
        essential=is_ess,
        support=sorted(w.generator_support()),
        missing=missing,
        text=text,
    )


@app.post("/eigenvector", response_model=schemas.EigenvectorResponse)
def eigenvector(req: schemas.EigenvectorRequest) -> schemas.EigenvectorResponse:
    ev = essential_eigenvector(req.n, req.missing)
    return schemas.EigenvectorResponse(
        n=ev.n,
        missing=ev.missing,
        scale=ev.scale.to_json_terms(),
        scale_text=str(ev.scale),
        entries=[e.to_json_terms() for e in ev.entries],
        entries_text=[str(e) for e in ev.entries],
        pattern=list(ev.symbolic_pattern()),
        basis=list(krammer_basis(ev.n)),
    )


@app.post("/relations/check", response_model=schemas.RelationsResponse)
def relations_check(req: schemas.RelationsRequest) -> schemas.RelationsResponse:
    image = krammer_word if req.representation == "krammer" else burau_word
    n = req.n
    failures: list[str] = []
    checked = 0
    for i in range(1, n):
        for j in range(i + 2, n):
            checked += 1
            if image(BraidWord(n, (i, j))) != image(BraidWord(n, (j, i))):
                failures.append(f"s{i} s{j} != s{j} s{i}")
        if i + 1 < n:
            checked += 1
            lhs = image(BraidWord(n, (i, i + 1, i)))
            rhs = image(BraidWord(n, (i + 1, i, i + 1)))
            if lhs != rhs:
                failures.append(f"s{i} s{i+1} s{i} != s{i+1} s{i} s{i+1}")
    ok = not failures
    status = "ok" if ok else "FAILED: " + "; ".join(failures)
    text = (
        f"relations: {status} ({req.representation}, n={n}, "
        f"{checked} identities checked)"
    )
    return schemas.RelationsResponse(
        n=n,
        representation=req.representation,
        ok=ok,
        identities_checked=checked,
        failures=failures,
        text=text,
    )


@app.post("/curves/analyze", response_model=schemas.CurveResponse)
def curve_analyze(req: schemas.CurveRequest) -> schemas.CurveResponse:
    curve = CompletelyReducibleCurve.from_json(
        [list(comp) for comp in req.components]
    )
    monodromy = None
    if req.monodromy is not None:
        monodromy = MonodromyList.parse(req.monodromy.n, req.monodromy.words)
    report = analyze(curve, monodromy=monodromy)
    return schemas.CurveResponse(report=report.to_dict(), text=_render_report(report))


def _render_report(report) -> str:
    lines = [f"n: {report.n}"]
    if report.fibers is None:
        lines.append("fibers: unresolved")
    elif not report.fibers:
        lines.append("fibers: none")
    else:
        for f in report.fibers:
            parts = " ".join(
                "{" + ",".join(str(i) for i in p) + "}" for p in f.colliding
            )
            deg = f.local_degree if f.local_degree is not None else "mixed"
            zero = (
                "  local polynomial: 0"
                if f.components_involved() < report.n
                else ""
            )
            lines.append(f"fiber x={f.x_value}: colliding {parts} degree {deg}{zero}")
    if report.family is not None:
        fam = report.family
        lines.append(
            f"family: one-fiber, d={fam.d}, center={fam.center}, value={fam.value}"
        )
    if report.predicted_polynomial is not None:
        lines.append(f"predicted: {report.predicted_polynomial}")
    if report.comparison_polynomial is not None:
        lines.append(f"comparison (not asserted): {report.comparison_polynomial}")
    if report.monodromy is not None:
        words = "; ".join(w.to_text() or "(empty)" for w in report.monodromy.words)
        lines.append(f"monodromy: {words}")
    if report.invariant is not None:
        inv = report.invariant
        suffix = "" if inv.exact else " (upper bound only: minor cap hit)"
        lines.append(f"invariant: {inv.polynomial}{suffix}")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)
