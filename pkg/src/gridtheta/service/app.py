"""The HTTP service: a thin FastAPI layer over the core package.

Every endpoint parses its request into core objects, calls one core
operation and serializes the result. Error mapping: malformed input -> 400,
computations refused by the resource caps -> 413 (with a sizing estimate in
the body), violated internal invariants -> 500.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import braid as braid_ops
from ..braid import BraidWord, parse_word
from ..config import RunConfig, config_from_env
from ..errors import (GridThetaError, InputError, InternalInvariantError,
                      ResourceCapError)
from ..grid import (GridDiagram, braid_to_grid, format_grid, grid_to_braid,
                    lookup_example, named_examples, parse_grid, validate)
from ..homology import homology_ranks
from ..pentagon import build_resolution, compose_resolutions, verify_theta_pentagon
from ..report import run_report
from ..search import flype_search
from ..transverse import (check_negative_stabilization,
                          check_nonzero_propagation, theta)
from . import schemas


def _word_from(word: str | None, example: str | None) -> BraidWord:
    if (word is None) == (example is None):
        raise InputError("provide exactly one of 'word' or 'example'")
    if word is not None:
        return parse_word(word)
    obj = lookup_example(example)
    if not isinstance(obj, BraidWord):
        raise InputError(f"example {example!r} is a grid, not a braid word")
    return obj


def create_app(config: RunConfig | None = None) -> FastAPI:
    base_config = config or config_from_env()
    app = FastAPI(
        title="gridtheta",
        description=("Grid-diagram link Floer homology (tilde flavor), the "
                     "transverse theta invariant and pentagon comultiplication maps."),
        version="0.1.0",
    )

    def cfg(max_k: int | None = None, max_k_bucket: int | None = None,
            workers: int | None = None) -> RunConfig:
        return base_config.with_overrides(
            max_k_full=max_k, max_k_bucket=max_k_bucket, workers=workers)

    @app.exception_handler(GridThetaError)
    async def _handle(request: Request, exc: GridThetaError):
        if isinstance(exc, ResourceCapError):
            body = schemas.ErrorBody(kind="resource", message=str(exc),
                                     details=exc.details())
            return JSONResponse(status_code=413, content=body.model_dump())
        if isinstance(exc, InternalInvariantError):
            body = schemas.ErrorBody(kind="internal", message=str(exc))
            return JSONResponse(status_code=500, content=body.model_dump())
        body = schemas.ErrorBody(kind="input", message=str(exc))
        return JSONResponse(status_code=400, content=body.model_dump())

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/config", response_model=schemas.ConfigResponse)
    def get_config():
        return schemas.ConfigResponse(**vars(base_config))

    # -- grid and braid plumbing --

    @app.post("/grid/validate", response_model=schemas.GridValidationResponse)
    def grid_validate(req: schemas.GridRequest):
        g = parse_grid(req.grid)
        validate(g)
        return schemas.GridValidationResponse(ok=True, k=g.size)

    @app.post("/convert/braid-to-grid", response_model=schemas.BraidToGridResponse)
    def braid2grid(req: schemas.WordRequest):
        w = _word_from(req.word, req.example)
        g = braid_to_grid(w)
        return schemas.BraidToGridResponse(
            word=str(w), k=g.size, grid=format_grid(g),
            x_rows=list(g.x_rows), o_rows=list(g.o_rows))

    @app.post("/convert/grid-to-braid", response_model=schemas.GridToBraidResponse)
    def grid2braid(req: schemas.GridRequest):
        w, n = grid_to_braid(parse_grid(req.grid))
        return schemas.GridToBraidResponse(word=str(w), strands=n)

    @app.post("/braid/sl", response_model=schemas.SelfLinkingResponse)
    def sl(req: schemas.WordRequest):
        w = _word_from(req.word, req.example)
        return schemas.SelfLinkingResponse(
            word=str(w), strands=w.strands,
            algebraic_length=braid_ops.algebraic_length(w),
            sl=braid_ops.self_linking(w))

    @app.post("/braid/sldata", response_model=schemas.SelfLinkingDataResponse)
    def sldata(req: schemas.WordRequest):
        w = _word_from(req.word, req.example)
        data = braid_ops.self_linking_data(w)
        entries = {",".join(map(str, key)): val
                   for key, val in sorted(data.entries.items())}
        return schemas.SelfLinkingDataResponse(
            word=str(w), components=data.component_count, entries=entries)

    # -- homology --

    @app.post("/homology/rank", response_model=schemas.RankResponse)
    def rank(req: schemas.RankRequest):
        if req.grid is not None:
            if req.word is not None or req.example is not None:
                raise InputError("provide a grid or a word, not both")
            g = parse_grid(req.grid)
        else:
            g = braid_to_grid(_word_from(req.word, req.example))
        return schemas.RankResponse(**homology_ranks(g, cfg(req.max_k)))

    # -- transverse invariant --

    @app.post("/theta", response_model=schemas.ThetaCertificateModel)
    def theta_endpoint(req: schemas.WordRequest):
        w = _word_from(req.word, req.example)
        cert = theta(w, cfg(req.max_k, req.max_k_bucket))
        return schemas.ThetaCertificateModel(**cert.to_json())

    @app.post("/theta/negative-stabilization", response_model=schemas.NegStabResponse)
    def theta_negstab(req: schemas.WordRequest):
        w = _word_from(req.word, req.example)
        rep = check_negative_stabilization(w, cfg(req.max_k, req.max_k_bucket))
        return schemas.NegStabResponse(**rep.to_json())

    @app.post("/theta/propagation", response_model=schemas.PropagationResponse)
    def theta_propagation(req: schemas.PropagationRequest):
        rep = check_nonzero_propagation(
            parse_word(req.g), parse_word(req.h),
            cfg(req.max_k, req.max_k_bucket))
        body = rep.to_json()
        return schemas.PropagationResponse(
            g=body["g"], h=body["h"], hg=body["hg"],
            hypothesis_nonzero_pair=body["hypothesis_nonzero_pair"],
            conclusion_nonzero_product=body["conclusion_nonzero_product"])

    # -- pentagon maps --

    @app.post("/pentagon", response_model=schemas.PentagonResponse)
    def pentagon(req: schemas.PentagonRequest):
        w = parse_word(req.word)
        config = cfg(req.max_k)
        if req.positions:
            res = compose_resolutions(w, req.positions, config)
            return schemas.PentagonResponse(
                stages=[p.to_json() for p in res.stages],
                final_word=str(res.final_word),
                composite_entries=res.composite.entry_count,
                theta_image_ok=res.theta_image_ok)
        if not req.resolve_last:
            raise InputError("set resolve_last or give explicit positions")
        pair = build_resolution(w, None, config)
        rep = verify_theta_pentagon(pair, config)
        body = rep.to_json()
        return schemas.PentagonResponse(
            pair=body["pair"],
            pentagons_z_to_z=body["pentagons_z_to_z"],
            pentagons_z_to_other=body["pentagons_z_to_other"],
            phi_sends_theta_to_theta=body["phi_sends_theta_to_theta"],
            chain_map_identity=body["chain_map_identity"],
            passed=body["passed"])

    # -- search driver --

    @app.post("/flype/search", response_model=schemas.FlypeSearchResponse)
    def flype(req: schemas.FlypeSearchRequest):
        config = cfg(req.max_k, workers=req.workers)
        rows = flype_search(req.strands, req.max_fragment_length, req.m,
                            config, limit=req.limit)
        models = [schemas.FlypeCandidate(**r.to_json()) for r in rows]
        return schemas.FlypeSearchResponse(
            strands=req.strands, m=req.m,
            candidates_examined=len(rows),
            candidates_skipped=sum(1 for r in rows if r.skipped),
            split_pairs=[m_ for m_ in models if m_.split],
            rows=models)

    # -- registry --

    @app.get("/examples", response_model=schemas.ExampleListResponse)
    def examples():
        return schemas.ExampleListResponse(names=sorted(named_examples()))

    @app.get("/examples/{name}", response_model=schemas.ExampleResponse)
    def example(name: str):
        obj = lookup_example(name)
        if isinstance(obj, BraidWord):
            return schemas.ExampleResponse(name=name, kind="braid", word=str(obj))
        assert isinstance(obj, GridDiagram)
        return schemas.ExampleResponse(name=name, kind="grid", grid=format_grid(obj))

    # -- acceptance --

    @app.post("/report", response_model=schemas.ReportResponse)
    def report(req: schemas.ReportRequest):
        results = run_report(cfg(req.max_k), req.ids)
        items = [schemas.ReportItem(**r.to_json()) for r in results]
        return schemas.ReportResponse(
            items=items,
            all_passed=all(r.passed or r.skipped for r in results))

    return app


app = create_app()
