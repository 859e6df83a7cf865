"""FastAPI service exposing ring analysis, decomposition and verification.

Rings and matrix spaces are cached per process, so a long-running service
amortizes the expensive idempotent enumerations across requests.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__, rings, skewtri, theorems
from .models import (
    AnalyzeRequest,
    AnalyzeResponse,
    ClaimRecord,
    DecomposeRequest,
    DecomposeResponse,
    DecompositionChecks,
    HealthResponse,
    SweepRequest,
    SweepResponse,
    ToolInfo,
    VerifyRequest,
    VerifyResponse,
)

TOOL = ToolInfo(name="skewclean", version=__version__)

_CLIENT_ERRORS = (
    rings.RingError,
    skewtri.MatrixError,
    skewtri.BudgetExceededError,
)


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(
        status_code=400,
        detail={"error": type(exc).__name__, "message": str(exc)},
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="skewclean",
        version=__version__,
        description="Strong cleanness in skew triangular matrix rings over finite local rings",
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", name=TOOL.name, version=TOOL.version)

    @app.post("/analyze", response_model=AnalyzeResponse)
    def analyze_ring(req: AnalyzeRequest) -> AnalyzeResponse:
        try:
            ring = rings.get_ring(req.ring)
            ana = rings.analyze(ring)
            bleached = rings.is_bleached(ring) if ana.is_local else None
        except _CLIENT_ERRORS as exc:
            raise _bad_request(exc)
        return AnalyzeResponse(
            ring=ring.label,
            order=ring.order,
            zero=ring.zero,
            one=ring.one,
            is_local=ana.is_local,
            units=sorted(ana.units),
            radical=sorted(ana.radical),
            idempotents=sorted(ana.idempotents),
            radical_nilpotency_index=ana.radical_nilpotency_index,
            one_is_sum_of_two_units=ana.one_is_sum_of_two_units,
            is_bleached=bleached,
            elements=ring.element_names(),
        )

    @app.post("/decompose", response_model=DecomposeResponse)
    def decompose(req: DecomposeRequest) -> DecomposeResponse:
        try:
            ring = rings.get_ring(req.ring)
            sigma = rings.get_endomorphism(ring, req.sigma)
            n, entries = skewtri.parse_matrix_literal(req.matrix, ring.order, req.n)
            space = skewtri.matrix_space(ring, sigma, n)
            mat = space.matrix(entries)
            if req.method == "constructive":
                if n == 2:
                    dec = skewtri.decompose_t2(mat)
                elif n == 3:
                    dec = skewtri.decompose_t3(mat)
                else:
                    raise skewtri.MatrixError(
                        f"no constructive decomposer for n = {n}; use method 'brute'"
                    )
            elif req.method == "brute":
                dec = skewtri.brute_force_strongly_clean(mat, budget=req.budget)
            else:
                dec = skewtri.is_very_clean(mat, budget=req.budget)
        except _CLIENT_ERRORS as exc:
            raise _bad_request(exc)
        if dec is None:
            return DecomposeResponse(
                ring=ring.label, sigma=sigma.label, n=n,
                matrix=mat.rows(), found=False,
                pretty={"matrix": mat.pretty()},
            )
        checks = skewtri.verify_decomposition(mat, dec)
        return DecomposeResponse(
            ring=ring.label,
            sigma=sigma.label,
            n=n,
            matrix=mat.rows(),
            found=True,
            kind=dec.kind,
            case=dec.case,
            e=dec.e.rows(),
            u=dec.u.rows(),
            checks=DecompositionChecks(**checks),
            pretty={"matrix": mat.pretty(), "e": dec.e.pretty(), "u": dec.u.pretty()},
        )

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        try:
            ring = rings.get_ring(req.ring)
            sigma = rings.get_endomorphism(ring, req.sigma)
            reports = theorems.run_suite(
                ring, sigma, req.suite,
                budget=req.budget, sample_size=req.sample_size, seed=req.seed,
                sweep_limit=req.sweep_limit,
            )
        except _CLIENT_ERRORS as exc:
            raise _bad_request(exc)
        records = theorems.reports_to_records(reports, include_timing=req.timings)
        return VerifyResponse(
            tool=TOOL,
            config=req.model_dump(),
            failed=any(r.status == "fails" for r in reports),
            reports=[ClaimRecord(**record) for record in records],
        )

    @app.post("/sweep", response_model=SweepResponse)
    def sweep(req: SweepRequest) -> SweepResponse:
        try:
            ring = rings.get_ring(req.ring)
            sigma = rings.get_endomorphism(ring, req.sigma)
            result = theorems.sweep_strongly_clean(
                ring, sigma, req.n, req.method,
                budget=req.budget, sample_size=req.sample_size, seed=req.seed,
                sweep_limit=req.sweep_limit,
            )
        except _CLIENT_ERRORS as exc:
            raise _bad_request(exc)
        return SweepResponse(
            ring=result.ring,
            sigma=result.sigma,
            n=result.n,
            method=result.method,
            mode=result.mode,
            checked=result.checked,
            seed=result.seed,
            all_clean=result.all_clean,
            failures=result.failures,
            elapsed_ms=int(result.elapsed * 1000) if req.timings else None,
        )

    return app


app = create_app()
