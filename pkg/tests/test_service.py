"""HTTP service: response shapes, canonical text renderings, and the mapping
of domain errors to 400 versus validation errors to 422."""

from __future__ import annotations

import asyncio

import httpx

from krampoly import __version__
from krampoly.laurent import LaurentPoly, parse_poly
from krampoly.service import app


class _InProcessClient:
    """Sync facade over httpx's ASGI transport (no socket, no warnings)."""

    def _request(self, method, path, **kw):
        async def run():
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://service"
            ) as c:
                return await c.request(method, path, **kw)

        return asyncio.run(run())

    def get(self, path, **kw):
        return self._request("GET", path, **kw)

    def post(self, path, **kw):
        return self._request("POST", path, **kw)


client = _InProcessClient()

P = parse_poly
TRIGONAL = "s1 s2 s1 s2^4 s1 s2 s1"


def poly_of(terms):
    return LaurentPoly.from_json_terms(terms)


def test_health():
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "version": __version__}


def test_krammer_matrix_generator():
    r = client.post("/krammer/matrix", json={"n": 3, "word": "s1"})
    assert r.status_code == 200
    body = r.json()
    assert body["rows"] == body["cols"] == 3
    assert body["basis"] == [[1, 2], [1, 3], [2, 3]]
    entries = [poly_of(e) for e in body["entries"]]
    assert entries[0] == P("t*q^2")
    assert entries[3] == P("t*q") * P("q - 1")
    assert entries[5] == P("q")
    assert "t*q^2" in body["text"]
    assert len(body["text"].splitlines()) == 3


def test_krammer_matrix_empty_word_is_identity():
    r = client.post("/krammer/matrix", json={"n": 4, "word": ""})
    body = r.json()
    entries = [poly_of(e) for e in body["entries"]]
    for i in range(6):
        for j in range(6):
            expected = LaurentPoly.one() if i == j else LaurentPoly.zero()
            assert entries[6 * i + j] == expected


def test_krammer_polynomial_trigonal():
    r = client.post("/krammer/polynomial", json={"n": 3, "words": [TRIGONAL]})
    assert r.status_code == 200
    body = r.json()
    golden = (P("t^6*q^14 - 1") * P("t^2*q^10 - 1") * P("t^2*q^6 - 1")).normalize()
    assert poly_of(body["polynomial"]) == golden
    assert body["text"] == str(golden)
    assert body["exact"] is True
    assert body["minors_enumerated"] == 1
    assert len(body["per_fiber"]) == 1
    assert body["per_fiber_text"] == [str(golden)]


def test_krammer_polynomial_with_cap():
    r = client.post(
        "/krammer/polynomial",
        json={"n": 3, "words": [TRIGONAL, "s1 s2 s1 s2 s1 s2"], "minor_cap": 1},
    )
    body = r.json()
    assert body["exact"] is False
    assert body["minors_enumerated"] == 1


def test_alexander():
    r = client.post("/alexander", json={"n": 3, "words": ["s1 s2"]})
    assert r.status_code == 200
    body = r.json()
    assert poly_of(body["polynomial"]) == P("t^2 + t + 1")
    assert body["text"] == "t^2 + t + 1"


def test_essential_true():
    r = client.post("/braid/essential", json={"n": 5, "word": "s1 s3 s1^-1"})
    body = r.json()
    assert body["essential"] is True
    assert body["support"] == [1, 3]
    assert body["missing"] == [2, 4]
    assert body["text"] == "essential: true (missing: 2, 4)"


def test_essential_false():
    r = client.post("/braid/essential", json={"n": 3, "word": "s1 s2"})
    body = r.json()
    assert body["essential"] is False
    assert body["missing"] == []
    assert body["text"] == "essential: false"


def test_eigenvector_endpoint():
    r = client.post("/eigenvector", json={"n": 4, "missing": 2})
    assert r.status_code == 200
    body = r.json()
    assert body["n"] == 4 and body["missing"] == 2
    assert len(body["entries"]) == 6
    assert len(body["entries_text"]) == 6
    assert body["basis"][0] == [1, 2]
    assert poly_of(body["scale"]) == P("t*q^2 - 1")
    assert body["scale_text"] == "t*q^2 - 1"
    assert [tuple(p) for p in body["pattern"]] == [
        ("x", 0), ("1", 0), ("1", 1), ("1", 0), ("1", 1), ("y", 0),
    ]


def test_eigenvector_bad_missing_maps_to_400():
    r = client.post("/eigenvector", json={"n": 4, "missing": 1})
    assert r.status_code == 400
    body = r.json()
    assert body["error"] == "IndexOutOfRange"
    assert "missing index" in body["detail"]


def test_relations_check_krammer():
    r = client.post("/relations/check", json={"n": 4, "representation": "krammer"})
    body = r.json()
    assert body["ok"] is True
    assert body["identities_checked"] == 3  # one far pair, two adjacent triples
    assert body["failures"] == []
    assert body["text"] == "relations: ok (krammer, n=4, 3 identities checked)"


def test_relations_check_burau_default_weight():
    r = client.post("/relations/check", json={"n": 3, "representation": "burau"})
    body = r.json()
    assert body["ok"] is True
    assert body["identities_checked"] == 1


def test_relations_check_rejects_unknown_representation():
    r = client.post("/relations/check", json={"n": 3, "representation": "magnus"})
    assert r.status_code == 422


def test_curve_analyze_pencil():
    r = client.post(
        "/curves/analyze",
        json={"components": [["0", "1"], ["0", "2"], ["0", "-1"]]},
    )
    assert r.status_code == 200
    body = r.json()
    report = body["report"]
    assert report["n"] == 3
    assert report["family"]["d"] == 1
    golden = (P("t^2*q^6 - 1") ** 3).normalize()
    assert poly_of(report["invariant"]["polynomial"]) == golden
    assert poly_of(report["predicted"]) == golden
    assert f"invariant: {golden}" in body["text"]
    assert "family: one-fiber, d=1, center=0, value=0" in body["text"]


def test_curve_analyze_irrational_without_monodromy_maps_to_400():
    r = client.post(
        "/curves/analyze",
        json={"components": [["0", "0", "0", "1"], ["0", "0", "0", "-1"], ["0", "4"]]},
    )
    assert r.status_code == 400
    body = r.json()
    assert body["error"] == "IrrationalCollisionUnresolved"
    assert "components 2 and 3" in body["detail"]


def test_curve_analyze_irrational_with_monodromy():
    r = client.post(
        "/curves/analyze",
        json={
            "components": [["0", "0", "0", "1"], ["0", "0", "0", "-1"], ["0", "4"]],
            "monodromy": {"n": 3, "words": [TRIGONAL]},
        },
    )
    assert r.status_code == 200
    body = r.json()
    golden = (P("t^6*q^14 - 1") * P("t^2*q^10 - 1") * P("t^2*q^6 - 1")).normalize()
    assert poly_of(body["report"]["invariant"]["polynomial"]) == golden
    assert body["report"]["fibers"] is None
    assert "fibers: unresolved" in body["text"]


def test_curve_analyze_reports_local_zero_fibers():
    r = client.post(
        "/curves/analyze",
        json={"components": [["0"], ["0", "1"], ["-2", "2"]]},
    )
    body = r.json()
    assert all(f["local_zero"] for f in body["report"]["fibers"])
    assert body["text"].count("local polynomial: 0") == 3
    assert "note: no monodromy available; invariant not computed" in body["text"]


def test_parse_error_maps_to_400():
    r = client.post("/krammer/matrix", json={"n": 3, "word": "sigma1"})
    assert r.status_code == 400
    assert r.json()["error"] == "ParseError"


def test_generator_out_of_range_maps_to_400():
    r = client.post("/krammer/matrix", json={"n": 3, "word": "s3"})
    assert r.status_code == 400
    assert r.json()["error"] == "IndexOutOfRange"


def test_validation_errors_map_to_422():
    assert client.post("/krammer/matrix", json={"word": "s1"}).status_code == 422
    assert client.post("/krammer/matrix", json={"n": 1, "word": ""}).status_code == 422
    assert client.post("/krammer/polynomial", json={"n": 3, "words": []}).status_code == 422
    assert client.post("/eigenvector", json={"n": 3, "missing": 1}).status_code == 422
    assert client.post("/curves/analyze", json={"components": [["0"]]}).status_code == 422
    assert (
        client.post(
            "/krammer/polynomial", json={"n": 3, "words": [TRIGONAL], "minor_cap": 0}
        ).status_code
        == 422
    )
