"""Command-line client for the krampoly service.

Every subcommand builds a request, sends it to the service, and renders the
response; no computation happens here.  By default the service runs in
process (no network); `--server URL` targets a running instance instead, and
`serve` starts one.

Exit codes: 0 success; 1 relations-check found a failing identity; 2 parse or
validation errors (including HTTP 4xx from the service); 3 krammer-poly
returned a capped, inexact result.  Output is byte-deterministic for fixed
input: JSON is dumped with sorted keys and compact separators, text comes
verbatim from the response.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx
from httpx import ASGITransport

EXIT_OK = 0
EXIT_RELATIONS_FAILED = 1
EXIT_USAGE = 2
EXIT_INEXACT = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krampoly",
        description="Krammer polynomial invariants of braid monodromies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--server", help="URL of a running service (default: in-process)")
        p.add_argument(
            "--format",
            choices=("text", "json"),
            default="text",
            dest="output_format",
            help="output format (default: text)",
        )

    def add_word_args(p: argparse.ArgumentParser, n_required: bool = True) -> None:
        p.add_argument("--n", type=int, required=n_required, help="number of strands")
        p.add_argument("--word", help="braid word, e.g. 's1 s2^-1' or '1 -2'")
        p.add_argument("--input", help="read the word (or monodromy JSON) from a file")

    p = sub.add_parser("krammer-matrix", help="Krammer matrix of a braid word")
    add_word_args(p)
    add_common(p)

    p = sub.add_parser("krammer-poly", help="Krammer polynomial of a monodromy")
    add_word_args(p, n_required=False)
    p.add_argument(
        "--minor-cap",
        type=int,
        dest="minor_cap",
        help="max minors to enumerate; hitting the cap gives an inexact result",
    )
    add_common(p)

    p = sub.add_parser("alexander", help="Alexander polynomial via reduced Burau")
    add_word_args(p, n_required=False)
    add_common(p)

    p = sub.add_parser("essential", help="check whether a word omits a generator")
    add_word_args(p)
    add_common(p)

    p = sub.add_parser("eigenvector", help="fixed row vector of an essential braid")
    p.add_argument("--n", type=int, required=True, help="number of strands")
    p.add_argument(
        "--missing", type=int, required=True, help="omitted generator index i, 1 < i < n-1"
    )
    add_common(p)

    p = sub.add_parser("relations-check", help="verify the Artin relations hold")
    p.add_argument("--n", type=int, required=True, help="number of strands")
    p.add_argument(
        "--representation",
        choices=("krammer", "burau"),
        default="krammer",
    )
    add_common(p)

    p = sub.add_parser("curve-analyze", help="classify a curve and compute its invariant")
    p.add_argument("--curve", help="curve as inline JSON (list of coefficient lists)")
    p.add_argument("--input", help="read the curve JSON from a file")
    p.add_argument(
        "--monodromy",
        help="monodromy as inline JSON {n, words} or a path to such a file",
    )
    add_common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


class _UsageError(Exception):
    pass


def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc


def _word_payload(args) -> dict:
    if args.word is not None and args.input is not None:
        raise _UsageError("give either --word or --input, not both")
    if args.input is not None:
        word = _read_file(args.input).strip()
    else:
        word = (args.word or "").strip()
    if args.n is None:
        raise _UsageError("--n is required")
    return {"n": args.n, "word": word}


def _monodromy_payload(args) -> dict:
    """{n, words} from --word, a word file, or a JSON monodromy file."""
    if args.word is not None and args.input is not None:
        raise _UsageError("give either --word or --input, not both")
    if args.input is not None:
        raw = _read_file(args.input).strip()
        if raw.startswith("{"):
            try:
                data = json.loads(raw)
                n, words = data["n"], data["words"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise _UsageError(f"bad monodromy JSON in {args.input}: {exc}") from exc
            if args.n is not None and args.n != n:
                raise _UsageError(f"--n {args.n} contradicts n={n} from {args.input}")
            return {"n": n, "words": list(words)}
        if args.n is None:
            raise _UsageError("--n is required")
        return {"n": args.n, "words": [raw]}
    if args.n is None:
        raise _UsageError("--n is required")
    return {"n": args.n, "words": [(args.word or "").strip()]}


def _curve_payload(args) -> dict:
    if (args.curve is None) == (args.input is None):
        raise _UsageError("give exactly one of --curve or --input")
    raw = args.curve if args.curve is not None else _read_file(args.input)
    try:
        components = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise _UsageError(f"bad curve JSON: {exc}") from exc
    payload: dict = {"components": components}
    if args.monodromy is not None:
        raw_m = args.monodromy
        if not raw_m.lstrip().startswith("{"):
            raw_m = _read_file(raw_m)
        try:
            data = json.loads(raw_m)
            payload["monodromy"] = {"n": data["n"], "words": list(data["words"])}
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise _UsageError(f"bad monodromy JSON: {exc}") from exc
    return payload


async def _post(server: str | None, path: str, payload: dict) -> tuple[int, dict]:
    if server:
        async with httpx.AsyncClient(base_url=server, timeout=300.0) as client:
            resp = await client.post(path, json=payload)
            return resp.status_code, resp.json()
    from .service import app  # deferred: keeps --help fast

    transport = ASGITransport(app=app)
    async with httpx.AsyncClient(
        transport=transport, base_url="http://krampoly.internal"
    ) as client:
        resp = await client.post(path, json=payload)
        return resp.status_code, resp.json()


def _call(server: str | None, path: str, payload: dict) -> tuple[int, dict]:
    return asyncio.run(_post(server, path, payload))


def _emit_json(body: dict) -> None:
    sys.stdout.write(json.dumps(body, sort_keys=True, separators=(",", ":")) + "\n")


def _fail_http(status: int, body: dict) -> int:
    detail = body.get("detail", body)
    sys.stderr.write(f"error ({status}): {json.dumps(detail, sort_keys=True, default=str)}\n")
    return EXIT_USAGE


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "serve":
        import uvicorn

        uvicorn.run("krampoly.service:app", host=args.host, port=args.port)
        return EXIT_OK

    if cmd == "krammer-matrix":
        status, body = _call(args.server, "/krammer/matrix", _word_payload(args))
        if status != 200:
            return _fail_http(status, body)
        _render(args, body)
        return EXIT_OK

    if cmd == "krammer-poly":
        payload = _monodromy_payload(args)
        if args.minor_cap is not None:
            if args.minor_cap < 1:
                raise _UsageError("--minor-cap must be >= 1")
            payload["minor_cap"] = args.minor_cap
        status, body = _call(args.server, "/krammer/polynomial", payload)
        if status != 200:
            return _fail_http(status, body)
        if args.output_format == "json":
            _emit_json(body)
        else:
            sys.stdout.write(body["text"] + "\n")
            if not body["exact"]:
                sys.stdout.write(
                    f"inexact: capped after {body['minors_enumerated']} minors; "
                    "result is a multiple of the invariant\n"
                )
        return EXIT_OK if body["exact"] else EXIT_INEXACT

    if cmd == "alexander":
        status, body = _call(args.server, "/alexander", _monodromy_payload(args))
        if status != 200:
            return _fail_http(status, body)
        _render(args, body)
        return EXIT_OK

    if cmd == "essential":
        status, body = _call(args.server, "/braid/essential", _word_payload(args))
        if status != 200:
            return _fail_http(status, body)
        _render(args, body)
        return EXIT_OK

    if cmd == "eigenvector":
        payload = {"n": args.n, "missing": args.missing}
        status, body = _call(args.server, "/eigenvector", payload)
        if status != 200:
            return _fail_http(status, body)
        if args.output_format == "json":
            _emit_json(body)
        else:
            lines = [f"n: {body['n']}", f"missing: {body['missing']}", f"scale: {body['scale_text']}"]
            for (i, j), text in zip(body["basis"], body["entries_text"]):
                lines.append(f"({i},{j}): {text}")
            sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_OK

    if cmd == "relations-check":
        payload = {"n": args.n, "representation": args.representation}
        status, body = _call(args.server, "/relations/check", payload)
        if status != 200:
            return _fail_http(status, body)
        _render(args, body)
        return EXIT_OK if body["ok"] else EXIT_RELATIONS_FAILED

    if cmd == "curve-analyze":
        status, body = _call(args.server, "/curves/analyze", _curve_payload(args))
        if status != 200:
            return _fail_http(status, body)
        _render(args, body)
        return EXIT_OK

    raise _UsageError(f"unknown command {cmd!r}")


def _render(args, body: dict) -> None:
    if args.output_format == "json":
        _emit_json(body)
    else:
        sys.stdout.write(body["text"] + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the diagnostic
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except httpx.HTTPError as exc:
        sys.stderr.write(f"error: request failed: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
