"""Command-line front end.

A thin client over the HTTP service: every subcommand builds a request,
sends it (in-process by default, over the network with --server), and
formats the response. Exit codes: 0 success, 2 input/data errors, 3
unidentifiable fits, 1 anything else. Parameters print at 2 decimals and
sigma at 1; JSON and CSV outputs keep full precision. Set PLMODEL_NO_COLOR
to disable ANSI styling.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

import httpx

from .client import open_client
from .errors import PathLossError
from .report import fit_report

_KIND_CODES = {"input": 2, "unidentifiable": 3}

_PARAM_FLAGS = ("n", "b", "f0", "alpha", "beta", "gamma", "xpd")

_MODEL_TOKENS = (
    "ci",
    "fi",
    "abg",
    "cif",
    "cix",
    "cifx",
    "abgx",
    "3gpp-inh-los",
    "3gpp-inh-nlos-opt1",
    "3gpp-inh-nlos-opt2",
)

_FIT_TOKENS = ("ci", "fi", "abg", "cif", "cix", "cifx", "abgx")


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code
        self.message = message


def _style(text: str, code: str) -> str:
    if os.environ.get("PLMODEL_NO_COLOR") is not None or not sys.stdout.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _parse_pair(raw: str, flag: str) -> tuple[float, float]:
    parts = raw.split(",")
    if len(parts) != 2:
        raise CliError(2, f"{flag} expects 'low,high'")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise CliError(2, f"{flag} expects numeric 'low,high'") from None


def _parse_floats(raw: str, flag: str) -> list[float]:
    try:
        values = [float(p) for p in raw.split(",") if p.strip()]
    except ValueError:
        raise CliError(2, f"{flag} expects a comma-separated list of numbers") from None
    if not values:
        raise CliError(2, f"{flag} expects at least one number")
    return values


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _call(client: httpx.Client, method: str, path: str, **kwargs) -> dict:
    response = client.request(method, path, **kwargs)
    if response.status_code < 400:
        return response.json()
    try:
        detail = response.json().get("detail")
    except ValueError:
        detail = None
    if isinstance(detail, dict):
        kind = detail.get("kind", "error")
        message = detail.get("message", "request failed")
    elif isinstance(detail, list):  # FastAPI validation errors
        kind = "input"
        message = "; ".join(
            ".".join(str(loc) for loc in item.get("loc", [])[1:])
            + ": "
            + str(item.get("msg", "invalid"))
            for item in detail
        )
    else:
        kind = "error"
        message = f"HTTP {response.status_code}"
    raise CliError(_KIND_CODES.get(kind, 1), message)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plmodel",
        description="Path loss model fitting, evaluation, and reporting.",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service (default: run in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit a model family to a measurement CSV")
    p_fit.add_argument("--input", required=True, help="measurement CSV file")
    p_fit.add_argument("--model", required=True, choices=_FIT_TOKENS)
    p_fit.add_argument("--env", choices=("los", "nlos"))
    p_fit.add_argument("--pol", choices=("vv", "vh"))
    p_fit.add_argument("--band", help="inclusive frequency band 'low,high' in GHz")
    p_fit.add_argument("--pin-f0", type=float, dest="pin_f0", help="pin the CIF anchor frequency (GHz)")
    p_fit.add_argument("--output", help="write the fit result as JSON")

    p_eval = sub.add_parser("eval", help="evaluate a model at one (f, d) point")
    p_eval.add_argument("--registry", help="registry key model:band:env:pol")
    p_eval.add_argument("--model", choices=_MODEL_TOKENS)
    for flag in _PARAM_FLAGS:
        p_eval.add_argument(f"--{flag}", type=float, default=None)
    p_eval.add_argument("--sigma", type=float, default=None)
    p_eval.add_argument("--f", type=float, help="frequency in GHz")
    p_eval.add_argument("--d", type=float, required=True, help="distance in meters")

    p_synth = sub.add_parser("synth", help="synthesize a measurement CSV")
    p_synth.add_argument("--model", required=True, choices=_MODEL_TOKENS)
    for flag in _PARAM_FLAGS:
        p_synth.add_argument(f"--{flag}", type=float, default=None)
    p_synth.add_argument("--freqs", required=True, help="comma-separated GHz list")
    p_synth.add_argument("--count", type=int, required=True, help="samples per frequency")
    p_synth.add_argument("--sigma", type=float, default=0.0, help="shadow fading sigma in dB")
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--d-range", dest="d_range", default="1,100", help="distance range 'low,high' in meters")
    p_synth.add_argument("--env", choices=("los", "nlos"), default="los")
    p_synth.add_argument("--pol", choices=("vv", "vh"), default="vv")
    p_synth.add_argument("--output", help="CSV file to write (default: stdout)")

    p_cmp = sub.add_parser("compare", help="test a fit against a 3GPP InH reference, or verify identities")
    p_cmp.add_argument("--input", help="measurement CSV file")
    p_cmp.add_argument(
        "--against",
        choices=("3gpp-inh-los", "3gpp-inh-nlos-opt1", "3gpp-inh-nlos-opt2"),
    )
    p_cmp.add_argument("--env", choices=("los", "nlos"))
    p_cmp.add_argument("--pol", choices=("vv", "vh"))
    p_cmp.add_argument("--band", help="inclusive frequency band 'low,high' in GHz")
    p_cmp.add_argument("--identities", action="store_true", help="verify the built-in model identities")

    p_rep = sub.add_parser("report", help="render a registry or fit report")
    p_rep.add_argument("--registry", help="registry filter, e.g. 'table4' or 'ci:los'")
    p_rep.add_argument("--fit", help="fit result JSON file")
    p_rep.add_argument("--input", help="measurement CSV to overlay as points")
    p_rep.add_argument("--freqs", help="comma-separated GHz list for --series")
    p_rep.add_argument("--format", dest="fmt", choices=("md", "csv", "json"), default="md")
    p_rep.add_argument("--series", action="store_true", help="emit model curves (d = 1..100 m)")
    p_rep.add_argument("--output", help="write the report to a file")

    p_srv = sub.add_parser("serve", help="run the HTTP service")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8000)

    return parser


def _param_dict(args: argparse.Namespace) -> dict:
    params: dict = {"model": args.model}
    for flag in _PARAM_FLAGS:
        value = getattr(args, flag, None)
        if value is not None:
            params[flag] = value
    if getattr(args, "sigma", None) is not None and args.command == "eval":
        params["sigma"] = args.sigma
    return params


def _cmd_fit(client: httpx.Client, args: argparse.Namespace) -> int:
    payload = {
        "csv_text": _read_text(args.input),
        "model": args.model,
        "env": args.env,
        "pol": args.pol,
        "band": _parse_pair(args.band, "--band") if args.band else None,
        "pin_f0": args.pin_f0,
    }
    data = _call(client, "POST", "/fit", json=payload)
    sys.stdout.write(fit_report(data["result"], "md"))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(data["result"], sort_keys=True, indent=2) + "\n")
    return 0


def _cmd_eval(client: httpx.Client, args: argparse.Namespace) -> int:
    if (args.registry is None) == (args.model is None):
        raise CliError(2, "provide exactly one of --registry or --model")
    payload: dict = {"f": args.f, "d": args.d}
    if args.registry:
        payload["registry_key"] = args.registry
    else:
        payload["params"] = _param_dict(args)
    data = _call(client, "POST", "/eval", json=payload)
    print(f"{data['path_loss_db']:.2f} dB")
    return 0


def _cmd_synth(client: httpx.Client, args: argparse.Namespace) -> int:
    payload = {
        "params": _param_dict(args),
        "freqs": _parse_floats(args.freqs, "--freqs"),
        "count": args.count,
        "sigma": args.sigma,
        "seed": args.seed,
        "d_min": _parse_pair(args.d_range, "--d-range")[0],
        "d_max": _parse_pair(args.d_range, "--d-range")[1],
        "env": args.env,
        "pol": args.pol,
    }
    data = _call(client, "POST", "/synth", json=payload)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(data["csv_text"])
        print(f"wrote {data['n_samples']} samples to {args.output}")
    else:
        sys.stdout.write(data["csv_text"])
    return 0


def _cmd_compare(client: httpx.Client, args: argparse.Namespace) -> int:
    if args.identities:
        data = _call(client, "GET", "/equivalence")
        failures = 0
        for claim in data["claims"]:
            ok = claim["holds"]
            failures += 0 if ok else 1
            status = _style("OK", "32") if ok else _style("FAIL", "31")
            print(
                f"{claim['name']}: {status} "
                f"(worst gap {claim['worst_gap_db']:.3e} dB "
                f"at f={claim['worst_freq_ghz']:g} GHz, d={claim['worst_distance_m']:g} m)"
            )
        return 0 if failures == 0 else 1
    if not args.input or not args.against:
        raise CliError(2, "compare needs --input and --against (or --identities)")
    payload = {
        "csv_text": _read_text(args.input),
        "against": args.against,
        "env": args.env,
        "pol": args.pol,
        "band": _parse_pair(args.band, "--band") if args.band else None,
    }
    data = _call(client, "POST", "/compare", json=payload)
    name = data["parameter"]
    lo, hi = data["ci95"]
    verdict = data["verdict"]
    print(f"model: {data['model']}")
    print(f"fitted {name}: {data['fitted']:.2f}")
    print(f"reference {name}: {data['reference']:.2f} ({data['against']})")
    print(f"sigma: {data['sigma']:.1f} dB")
    print(f"n_samples: {data['n_samples']}")
    print(f"ci95({name}): [{lo:.2f}, {hi:.2f}]")
    color = "32" if verdict == "INSIDE" else "31"
    print(f"verdict: {_style(verdict, color)}")
    return 0


def _cmd_report(client: httpx.Client, args: argparse.Namespace) -> int:
    if (args.registry is None) == (args.fit is None):
        raise CliError(2, "provide exactly one of --registry or --fit")
    payload: dict = {"fmt": args.fmt, "series": args.series}
    if args.registry is not None:
        payload["registry"] = args.registry
    else:
        try:
            payload["fit"] = json.loads(_read_text(args.fit))
        except json.JSONDecodeError as exc:
            raise CliError(2, f"bad fit JSON in {args.fit}: {exc}") from None
        if args.input:
            payload["csv_text"] = _read_text(args.input)
        if args.freqs:
            payload["freqs"] = _parse_floats(args.freqs, "--freqs")
    data = _call(client, "POST", "/report", json=payload)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(data["text"])
    else:
        sys.stdout.write(data["text"])
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("plmodel.service.app:app", host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "fit": _cmd_fit,
    "eval": _cmd_eval,
    "synth": _cmd_synth,
    "compare": _cmd_compare,
    "report": _cmd_report,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            return _cmd_serve(args)
        with open_client(args.server) as client:
            return _COMMANDS[args.command](client, args)
    except CliError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.code
    except PathLossError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _KIND_CODES.get(exc.kind, 1)
    except httpx.HTTPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
