"""Pydantic request/response models for the HTTP surface."""

from __future__ import annotations

from pydantic import BaseModel, Field


class WordRequest(BaseModel):
    word: str | None = Field(None, description="braid word, e.g. '2: 1 1 1'")
    example: str | None = Field(None, description="name from the registry")
    max_k: int | None = Field(None, ge=2, description="override the full-complex cap")
    max_k_bucket: int | None = Field(None, ge=2)


class GridRequest(BaseModel):
    grid: str = Field(description="grid text: 'k=<int>' / 'X: ...' / 'O: ...'")


class GridValidationResponse(BaseModel):
    ok: bool
    k: int


class BraidToGridResponse(BaseModel):
    word: str
    k: int
    grid: str
    x_rows: list[int]
    o_rows: list[int]


class GridToBraidResponse(BaseModel):
    word: str
    strands: int


class SelfLinkingResponse(BaseModel):
    word: str
    strands: int
    algebraic_length: int
    sl: int


class SelfLinkingDataResponse(BaseModel):
    word: str
    components: int
    entries: dict[str, int]  # "1,3" -> sl of that sublink


class RankRequest(BaseModel):
    word: str | None = None
    example: str | None = None
    grid: str | None = None
    max_k: int | None = Field(None, ge=2)


class BucketEntry(BaseModel):
    maslov: int
    alexander: list[str]
    rank: int


class RankResponse(BaseModel):
    k: int
    components: int
    buckets: list[BucketEntry]
    total: int
    hat_total: int


class GradingsModel(BaseModel):
    maslov: int
    alexander: list[str]


class GridModel(BaseModel):
    k: int
    x_rows: list[int]
    o_rows: list[int]


class ThetaCertificateModel(BaseModel):
    word: str
    strands: int
    grid: GridModel
    state: list[int]
    state_rank: int
    is_cycle: bool
    vanishes: bool
    witness: list[list[int]] | None
    witness_ranks: list[int] | None
    gradings: GradingsModel


class NegStabResponse(BaseModel):
    original: ThetaCertificateModel
    stabilized: ThetaCertificateModel
    stabilized_vanishes: bool


class PropagationRequest(BaseModel):
    g: str
    h: str
    max_k: int | None = Field(None, ge=2)
    max_k_bucket: int | None = Field(None, ge=2)


class PropagationResponse(BaseModel):
    g: ThetaCertificateModel
    h: ThetaCertificateModel
    hg: ThetaCertificateModel
    hypothesis_nonzero_pair: bool
    conclusion_nonzero_product: bool


class PentagonRequest(BaseModel):
    word: str
    resolve_last: bool = True
    positions: list[int] | None = Field(
        None, description="1-based letter positions to resolve, in order")
    max_k: int | None = Field(None, ge=2)


class PentagonResponse(BaseModel):
    pair: dict | None = None
    stages: list[dict] | None = None
    pentagons_z_to_z: int | None = None
    pentagons_z_to_other: int | None = None
    phi_sends_theta_to_theta: bool | None = None
    chain_map_identity: bool | None = None
    passed: bool | None = None
    final_word: str | None = None
    composite_entries: int | None = None
    theta_image_ok: bool | None = None


class FlypeSearchRequest(BaseModel):
    strands: int = Field(ge=2)
    max_fragment_length: int = Field(ge=0)
    m: int = Field(ge=1)
    max_k: int | None = Field(None, ge=2)
    workers: int | None = Field(None, ge=1)
    limit: int | None = Field(None, ge=1, description="stop after this many candidates")


class FlypeCandidate(BaseModel):
    w1: str
    w2: str
    sl_data_guaranteed: bool
    sl_data_equal: bool
    theta_w1_vanishes: bool | None
    theta_w2_vanishes: bool | None
    split: bool | None
    skipped: str | None = None


class FlypeSearchResponse(BaseModel):
    strands: int
    m: int
    candidates_examined: int
    candidates_skipped: int
    split_pairs: list[FlypeCandidate]
    rows: list[FlypeCandidate]


class ReportRequest(BaseModel):
    ids: list[int] | None = None
    max_k: int | None = Field(None, ge=2)


class ReportItem(BaseModel):
    id: int
    name: str
    passed: bool
    skipped: bool
    detail: str
    seconds: float


class ReportResponse(BaseModel):
    items: list[ReportItem]
    all_passed: bool


class ExampleListResponse(BaseModel):
    names: list[str]


class ExampleResponse(BaseModel):
    name: str
    kind: str  # "braid" | "grid"
    word: str | None = None
    grid: str | None = None


class ErrorBody(BaseModel):
    kind: str  # "input" | "resource" | "internal"
    message: str
    details: dict | None = None


class ConfigResponse(BaseModel):
    max_k_full: int
    max_k_bucket: int
    max_bucket_states: int
    workers: int
    output_format: str
    seed: int
