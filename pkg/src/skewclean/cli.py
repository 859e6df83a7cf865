"""Command-line client for the analysis/decomposition/verification service.

By default requests are dispatched to an in-process instance of the
service, so one-line invocations need no running server; pass --server to
talk to a remote instance instead.  Exit status: 0 on success, 1 when a
claim fails or a matrix does not decompose, 2 on spec/usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Optional

import httpx

from . import __version__
from .skewtri import DEFAULT_BUDGET
from .theorems import DEFAULT_SAMPLE, DEFAULT_SEED, SUITES


class CliError(Exception):
    """Spec/usage errors surfaced to the user (exit status 2)."""


@dataclass
class RunConfig:
    """One resolved invocation: flags merged over config-file defaults."""

    command: str
    ring_spec: str = ""
    sigma_spec: str = "id"
    n: int = 2
    budget: int = DEFAULT_BUDGET
    sample_size: int = DEFAULT_SAMPLE
    seed: int = DEFAULT_SEED
    output_format: str = "text"

    def __post_init__(self) -> None:
        if self.budget <= 0:
            raise CliError(f"budget must be positive, got {self.budget}")
        if self.sample_size <= 0:
            raise CliError(f"sample size must be positive, got {self.sample_size}")
        if self.command in ("decompose", "sweep") and self.n < 2:
            raise CliError(f"n must be at least 2, got {self.n}")


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read config file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError(f"config file {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise CliError(f"config file {path} must hold a JSON object")
    return data


def _build_parser(cfg: dict) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewclean",
        description="Strong cleanness in skew triangular matrix rings over finite local rings",
    )
    parser.add_argument("--version", action="version", version=f"skewclean {__version__}")
    parser.add_argument("--config", help="JSON file with default flag values")
    parser.add_argument("--server", default=cfg.get("server"),
                        help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, sigma: bool = True) -> None:
        p.add_argument("--ring", default=cfg.get("ring"), required="ring" not in cfg,
                       help="ring spec, e.g. zmod:4, dual:zmod:4, groupring:zmod:4;C2")
        if sigma:
            p.add_argument("--sigma", default=cfg.get("sigma", "id"),
                           help="endomorphism spec: id, negx, aug, table:<path>")
        p.add_argument("--format", choices=("text", "structured"),
                       default=cfg.get("format", "text"))

    p_analyze = sub.add_parser("analyze", help="units, radical, idempotents, locality")
    common(p_analyze, sigma=False)

    p_dec = sub.add_parser("decompose", help="strongly clean decomposition of one matrix")
    common(p_dec)
    p_dec.add_argument("--n", type=int, default=cfg.get("n"),
                       help="matrix dimension (defaults to the literal's row count)")
    p_dec.add_argument("--matrix", required=True,
                       help="upper-triangle literal, e.g. \"[3,1,0;0,1;2]\"")
    p_dec.add_argument("--method", choices=("constructive", "brute", "very-clean"),
                       default=cfg.get("method", "constructive"))
    p_dec.add_argument("--budget", type=_positive_int, default=cfg.get("budget", DEFAULT_BUDGET))

    p_verify = sub.add_parser("verify", help="run the theorem suites")
    common(p_verify)
    p_verify.add_argument("--suite", choices=SUITES, default=cfg.get("suite", "all"))
    p_verify.add_argument("--budget", type=_positive_int, default=cfg.get("budget", DEFAULT_BUDGET))
    p_verify.add_argument("--sample", type=_positive_int, default=cfg.get("sample", DEFAULT_SAMPLE))
    p_verify.add_argument("--seed", type=int, default=cfg.get("seed", DEFAULT_SEED))
    p_verify.add_argument("--sweep-limit", type=_positive_int,
                          default=cfg.get("sweep_limit"),
                          help="raise the exhaustive-sweep cap (default: per-method)")
    p_verify.add_argument("--timings", action="store_true", default=cfg.get("timings", False),
                          help="include wall-clock timings (breaks byte-stable output)")

    p_sweep = sub.add_parser("sweep", help="sweep T_n for strong cleanness")
    common(p_sweep)
    p_sweep.add_argument("--n", type=int, default=cfg.get("n", 2))
    p_sweep.add_argument("--method", choices=("constructive", "brute"),
                         default=cfg.get("method", "constructive"))
    p_sweep.add_argument("--budget", type=_positive_int, default=cfg.get("budget", DEFAULT_BUDGET))
    p_sweep.add_argument("--sample", type=_positive_int, default=cfg.get("sample", DEFAULT_SAMPLE))
    p_sweep.add_argument("--seed", type=int, default=cfg.get("seed", DEFAULT_SEED))
    p_sweep.add_argument("--sweep-limit", type=_positive_int,
                         default=cfg.get("sweep_limit"),
                         help="raise the exhaustive-sweep cap (default: per-method)")
    p_sweep.add_argument("--timings", action="store_true", default=cfg.get("timings", False))

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default=cfg.get("host", "127.0.0.1"))
    p_serve.add_argument("--port", type=int, default=cfg.get("port", 8000))

    return parser


class _InProcessClient:
    """Synchronous facade over the ASGI app; requests still travel the
    full HTTP surface (routing, validation, serialization)."""

    def __init__(self) -> None:
        from .service.app import create_app

        self._app = create_app()

    def post(self, path: str, json: Any = None) -> httpx.Response:
        import asyncio

        async def _go() -> httpx.Response:
            transport = httpx.ASGITransport(app=self._app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://skewclean.internal"
            ) as client:
                return await client.post(path, json=json)

        return asyncio.run(_go())

    def __enter__(self) -> "_InProcessClient":
        return self

    def __exit__(self, *exc: object) -> None:
        return None


def _make_client(server: Optional[str]):
    if server:
        return httpx.Client(base_url=server, timeout=None)
    return _InProcessClient()


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    try:
        resp = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        raise CliError(f"request to {path} failed: {exc}")
    if resp.status_code == 200:
        return resp.json()
    try:
        detail = resp.json().get("detail")
    except ValueError:
        detail = resp.text
    if isinstance(detail, dict) and "message" in detail:
        raise CliError(f"{detail.get('error', 'error')}: {detail['message']}")
    raise CliError(f"{path} returned {resp.status_code}: {detail}")


def _emit_structured(command: str, config: dict, result: dict) -> None:
    envelope = {
        "tool": {"name": "skewclean", "version": __version__},
        "command": command,
        "config": config,
        "result": result,
    }
    print(json.dumps(envelope, indent=2, sort_keys=True))


def _format_set(indices: list[int], names: list[str]) -> str:
    shown = ", ".join(names[i] for i in indices)
    return f"{{{shown}}}"


def _cmd_analyze(client: httpx.Client, args: argparse.Namespace) -> int:
    data = _post(client, "/analyze", {"ring": args.ring})
    if args.format == "structured":
        _emit_structured("analyze", {"ring": args.ring}, data)
        return 0
    names = data["elements"]
    print(f"ring {data['ring']}  (order {data['order']})")
    print(f"  local:            {'yes' if data['is_local'] else 'no'}")
    print(f"  units U(R)        ({len(data['units'])}): {_format_set(data['units'], names)}")
    print(f"  radical J(R)      ({len(data['radical'])}): {_format_set(data['radical'], names)}")
    print(f"  idempotents       ({len(data['idempotents'])}): {_format_set(data['idempotents'], names)}")
    print(f"  J nilpotency index: {data['radical_nilpotency_index']}")
    print(f"  1 = unit + unit:  {'yes' if data['one_is_sum_of_two_units'] else 'no'}")
    if data["is_bleached"] is not None:
        print(f"  bleached:         {'yes' if data['is_bleached'] else 'no'}")
    return 0


def _matrix_lines(rows: list[list[int]]) -> str:
    return "[" + "; ".join(" ".join(str(v) for v in row) for row in rows) + "]"


def _cmd_decompose(client: httpx.Client, args: argparse.Namespace) -> int:
    payload = {
        "ring": args.ring,
        "sigma": args.sigma,
        "matrix": args.matrix,
        "n": args.n,
        "method": args.method,
        "budget": args.budget,
    }
    data = _post(client, "/decompose", payload)
    if args.format == "structured":
        _emit_structured("decompose", payload, data)
        return 0 if data["found"] else 1
    print(f"ring {data['ring']}, sigma {data['sigma']}, n = {data['n']}")
    print(f"A = {data['pretty']['matrix']}")
    if not data["found"]:
        kind = "very clean" if args.method == "very-clean" else "strongly clean"
        print(f"no decomposition: the matrix is not {kind}")
        return 1
    if data["case"] is not None:
        print(f"case: {data['case']}")
    print(f"kind: {data['kind']}")
    print(f"E = {data['pretty']['e']}")
    print(f"U = {data['pretty']['u']}")
    checks = data["checks"]
    sum_label = "U = A + E" if data["kind"] == "very-clean-plus" else "A = E + U"
    for label, key in (
        ("E*E = E", "idempotent"),
        ("E*U = U*E", "commutes"),
        (sum_label, "sum"),
        ("U invertible", "unit"),
    ):
        print(f"  {label}: {'ok' if checks[key] else 'FAIL'}")
    return 0 if all(checks.values()) else 1


def _cmd_verify(client: httpx.Client, args: argparse.Namespace) -> int:
    payload = {
        "ring": args.ring,
        "sigma": args.sigma,
        "suite": args.suite,
        "budget": args.budget,
        "sample_size": args.sample,
        "seed": args.seed,
        "sweep_limit": args.sweep_limit,
        "timings": args.timings,
    }
    data = _post(client, "/verify", payload)
    if args.format == "structured":
        print(json.dumps(data, indent=2, sort_keys=True))
        return 1 if data["failed"] else 0
    print(f"ring {args.ring}, sigma {args.sigma}, suite {args.suite}")
    for rec in data["reports"]:
        line = f"  {rec['claim_id']:<16} {rec['status']:<8} checked={rec['checked']}"
        if rec["mode"]:
            line += f" mode={rec['mode']}"
        if rec["seed"] is not None:
            line += f" seed={rec['seed']}"
        if rec["elapsed_ms"] is not None:
            line += f" ({rec['elapsed_ms']} ms)"
        print(line)
        if rec["status"] == "skipped":
            print(f"      reason: {rec['reason']}")
        if rec["status"] == "fails":
            print(f"      witness: {json.dumps(rec['witness'], sort_keys=True)}")
    counts = {s: sum(1 for r in data["reports"] if r["status"] == s)
              for s in ("holds", "fails", "skipped")}
    print(f"summary: {counts['holds']} hold, {counts['fails']} fail, {counts['skipped']} skipped")
    return 1 if data["failed"] else 0


def _cmd_sweep(client: httpx.Client, args: argparse.Namespace) -> int:
    payload = {
        "ring": args.ring,
        "sigma": args.sigma,
        "n": args.n,
        "method": args.method,
        "budget": args.budget,
        "sample_size": args.sample,
        "seed": args.seed,
        "sweep_limit": args.sweep_limit,
        "timings": args.timings,
    }
    data = _post(client, "/sweep", payload)
    if args.format == "structured":
        _emit_structured("sweep", payload, data)
        return 0 if data["all_clean"] else 1
    line = (
        f"T_{data['n']}({data['ring']}, {data['sigma']}): "
        f"{data['mode']} sweep of {data['checked']} matrices ({data['method']})"
    )
    if data["seed"] is not None:
        line += f", seed {data['seed']}"
    print(line)
    if data["all_clean"]:
        print("all strongly clean")
        return 0
    print(f"found {len(data['failures'])} failure(s):")
    for failure in data["failures"]:
        print(f"  {json.dumps(failure, sort_keys=True)}")
    return 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    try:
        cfg = _load_config(known.config)
        parser = _build_parser(cfg)
        args = parser.parse_args(argv)
        if args.command == "serve":
            return _cmd_serve(args)
        RunConfig(
            command=args.command,
            ring_spec=getattr(args, "ring", "") or "",
            sigma_spec=getattr(args, "sigma", "id"),
            n=getattr(args, "n", None) or 2,
            budget=getattr(args, "budget", DEFAULT_BUDGET),
            sample_size=getattr(args, "sample", DEFAULT_SAMPLE),
            seed=getattr(args, "seed", DEFAULT_SEED),
            output_format=args.format,
        )
        handlers = {
            "analyze": _cmd_analyze,
            "decompose": _cmd_decompose,
            "verify": _cmd_verify,
            "sweep": _cmd_sweep,
        }
        with _make_client(args.server) as client:
            return handlers[args.command](client, args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
