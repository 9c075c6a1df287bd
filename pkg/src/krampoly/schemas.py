"""Request/response models for the HTTP service.

Polynomials travel as exact term triples [e_t, e_q, "coeff"] in descending
lexicographic order (the laurent JSON form); every response that a human might
read also carries a canonical text rendering so clients never need to
re-implement formatting.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

Terms = list[tuple[int, int, str]]


class HealthResponse(BaseModel):
    status: str
    version: str


class WordRequest(BaseModel):
    n: int = Field(ge=2)
    word: str = ""


class MonodromyInput(BaseModel):
    n: int = Field(ge=2)
    words: list[str] = Field(min_length=1)


class KrammerPolyRequest(BaseModel):
    n: int = Field(ge=2)
    words: list[str] = Field(min_length=1)
    minor_cap: int | None = Field(default=None, ge=1)


class AlexanderRequest(BaseModel):
    n: int = Field(ge=2)
    words: list[str] = Field(min_length=1)


class MatrixResponse(BaseModel):
    rows: int
    cols: int
    entries: list[Terms]
    basis: list[tuple[int, int]]
    text: str


class PolynomialResponse(BaseModel):
    polynomial: Terms
    text: str
    per_fiber: list[Terms]
    per_fiber_text: list[str]
    exact: bool
    minors_enumerated: int


class AlexanderResponse(BaseModel):
    polynomial: Terms
    text: str


class EssentialResponse(BaseModel):
    essential: bool
    support: list[int]
    missing: list[int]
    text: str


class EigenvectorRequest(BaseModel):
    n: int = Field(ge=4)
    missing: int


class EigenvectorResponse(BaseModel):
    n: int
    missing: int
    scale: Terms
    scale_text: str
    entries: list[Terms]
    entries_text: list[str]
    pattern: list[tuple[str, int]]
    basis: list[tuple[int, int]]


class RelationsRequest(BaseModel):
    n: int = Field(ge=2)
    representation: str = Field(default="krammer", pattern="^(krammer|burau)$")


class RelationsResponse(BaseModel):
    n: int
    representation: str
    ok: bool
    identities_checked: int
    failures: list[str]
    text: str


class CurveRequest(BaseModel):
    components: list[list[str | int]] = Field(min_length=2)
    monodromy: MonodromyInput | None = None


class CurveResponse(BaseModel):
    report: dict
    text: str
