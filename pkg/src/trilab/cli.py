"""Command-line front door: a thin client of the service layer.

Requests are built here, handed either to the in-process handlers
(default; no sockets involved) or to a remote server via --server-url,
and the responses are written out. All numeric output is plain decimal
text; identical invocations produce byte-identical files.

Exit codes: 0 ok, 1 verification failed, 2 usage, 3 validation,
4 numeric failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

from pydantic import ValidationError

from . import __version__
from .errors import TrilabError
from .service import handlers
from .service.models import (AppendixVerifyRequest, ChoreoRefineRequest,
                             ChoreoScanRequest, ClosedFormRequest,
                             IntegratorConfigModel, JetsRequest, MassesModel,
                             RepulsiveCheckRequest, SimulateRequest,
                             ThetaRequest)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERIC = 4


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".trilab-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


class _Client:
    """Dispatch requests in-process or over HTTP, same models either way."""

    def __init__(self, server_url: str | None):
        self.server_url = server_url.rstrip("/") if server_url else None

    def call(self, path: str, handler, request):
        if self.server_url is None:
            return handler(request)
        import httpx

        resp = httpx.post(f"{self.server_url}{path}",
                          json=json.loads(request.model_dump_json()),
                          timeout=600.0)
        if resp.status_code == 422:
            raise ValueError(resp.json().get("detail", "validation error"))
        resp.raise_for_status()
        return resp.json()

    @staticmethod
    def as_dict(result) -> dict:
        if isinstance(result, dict):
            return result
        return json.loads(result.model_dump_json())


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    return cfg


def _resolve(args, cfg: dict, key: str, default):
    """Precedence: explicit flag > config file > built-in default."""
    val = getattr(args, key.replace("-", "_"), None)
    if val is not None:
        return val
    if key in cfg:
        return cfg[key]
    return default


def _masses_model(args, cfg) -> MassesModel:
    if getattr(args, "equal_masses", False):
        return MassesModel()
    raw = _resolve(args, cfg, "masses", None)
    if raw is None:
        return MassesModel()
    if isinstance(raw, str):
        parts = [float(p) for p in raw.split(",")]
    else:
        parts = [float(p) for p in raw]
    if len(parts) != 3:
        raise ValueError("--masses needs exactly three comma-separated values")
    return MassesModel(m1=parts[0], m2=parts[1], m3=parts[2])


def _integrator_model(args, cfg) -> IntegratorConfigModel:
    return IntegratorConfigModel(
        rel_tol=_resolve(args, cfg, "rel-tol", 1e-12),
        abs_tol=_resolve(args, cfg, "abs-tol", 1e-14),
        max_step=_resolve(args, cfg, "max-step", None),
        collision_radius=_resolve(args, cfg, "collision-radius", 1e-8),
        max_time=_resolve(args, cfg, "max-time", None))


# ---------------------------------------------------------------------------
# subcommand runners
# ---------------------------------------------------------------------------

def _run_simulate(args, cfg, client: _Client) -> int:
    req = SimulateRequest(alpha=_resolve(args, cfg, "alpha", -1.0),
                          masses=_masses_model(args, cfg),
                          theta=_resolve(args, cfg, "theta", 0.0),
                          t_end=_resolve(args, cfg, "t-end", 10.0),
                          config=_integrator_model(args, cfg))
    out = client.as_dict(client.call("/simulate", handlers.handle_simulate, req))
    csv_text = out.pop("csv")
    if args.out:
        _atomic_write(args.out, csv_text)
        out["csv_path"] = args.out
    _emit(out)
    if args.expect != "any" and out["termination"] != args.expect:
        return EXIT_NUMERIC
    return EXIT_OK


def _run_jets(args, cfg, client: _Client) -> int:
    req = JetsRequest(alpha=_resolve(args, cfg, "alpha", -1.0),
                      masses=_masses_model(args, cfg),
                      theta=_resolve(args, cfg, "theta", None),
                      order=int(_resolve(args, cfg, "order", 6)),
                      dps=int(_resolve(args, cfg, "dps", 60)))
    out = client.as_dict(client.call("/jets", handlers.handle_jets, req))
    if args.out:
        _atomic_write(args.out, json.dumps(out, indent=2) + "\n")
        out["report_path"] = args.out
    _emit(out)
    return EXIT_OK


def _run_theta(args, cfg, client: _Client) -> int:
    req = ThetaRequest(alpha=_resolve(args, cfg, "alpha", -1.0))
    out = client.as_dict(client.call("/theta", handlers.handle_theta, req))
    _emit(out)
    return EXIT_OK


def _run_closed_form(args, cfg, client: _Client) -> int:
    req = ClosedFormRequest(alpha=_resolve(args, cfg, "alpha", 2.0),
                            theta=_resolve(args, cfg, "theta", 0.0),
                            t_end=_resolve(args, cfg, "t-end", None),
                            compare=args.compare,
                            config=_integrator_model(args, cfg))
    out = client.as_dict(client.call("/closed-form", handlers.handle_closed_form, req))
    csv_text = out.pop("csv")
    if args.out:
        _atomic_write(args.out, csv_text)
        out["csv_path"] = args.out
    _emit(out)
    if args.compare:
        ok = (out["max_position_error"] is not None
              and out["max_position_error"] < args.tol_position
              and out["collision_time_error"] is not None
              and out["collision_time_error"] < args.tol_collision
              and out["max_inertia_deviation"] < args.tol_position)
        return EXIT_OK if ok else EXIT_VERIFICATION
    return EXIT_OK


def _run_appendix_verify(args, cfg, client: _Client) -> int:
    req = AppendixVerifyRequest(digits=int(_resolve(args, cfg, "digits", 40)))
    out = client.as_dict(client.call("/appendix-verify",
                                     handlers.handle_appendix_verify, req))
    if args.out:
        _atomic_write(args.out, json.dumps(out, indent=2) + "\n")
    _emit(out)
    return EXIT_OK if out["all_pass"] else EXIT_VERIFICATION


def _run_choreo_scan(args, cfg, client: _Client) -> int:
    req = ChoreoScanRequest(alpha=_resolve(args, cfg, "alpha", -2.0),
                            theta_min=_resolve(args, cfg, "theta-min", 0.0),
                            theta_max=_resolve(args, cfg, "theta-max", math.pi / 2),
                            steps=int(_resolve(args, cfg, "steps", 200)),
                            horizon=_resolve(args, cfg, "horizon", 8.0),
                            rel_tol=_resolve(args, cfg, "rel-tol", 1e-10))
    out = client.as_dict(client.call("/choreo/scan", handlers.handle_choreo_scan, req))
    csv_text = out.pop("csv")
    if args.out:
        _atomic_write(args.out, csv_text)
        out["csv_path"] = args.out
    _emit(out)
    return EXIT_OK


def _run_choreo_refine(args, cfg, client: _Client) -> int:
    req = ChoreoRefineRequest(theta=_resolve(args, cfg, "theta", 0.0),
                              period=_resolve(args, cfg, "period", 7.0),
                              alpha=_resolve(args, cfg, "alpha", -2.0),
                              rel_tol=_resolve(args, cfg, "rel-tol", 1e-12))
    out = client.as_dict(client.call("/choreo/refine",
                                     handlers.handle_choreo_refine, req))
    if args.out:
        _atomic_write(args.out, json.dumps(out, indent=2) + "\n")
    _emit(out)
    return EXIT_OK if out["converged"] else EXIT_VERIFICATION


def _run_repulsive_check(args, cfg, client: _Client) -> int:
    state = None
    raw = _resolve(args, cfg, "state", None)
    if raw is not None:
        state = [float(p) for p in (raw.split(",") if isinstance(raw, str) else raw)]
    req = RepulsiveCheckRequest(alpha=_resolve(args, cfg, "alpha", -1.0),
                                masses=_masses_model(args, cfg),
                                theta=_resolve(args, cfg, "theta", 0.5),
                                state=state)
    out = client.as_dict(client.call("/repulsive-check",
                                     handlers.handle_repulsive_check, req))
    _emit(out)
    return EXIT_OK if out["positive"] else EXIT_VERIFICATION


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with default parameter values")
    p.add_argument("--server-url", help="talk to a running service instead of in-process")


def _add_masses(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--masses", help="three comma-separated masses, e.g. 1,2,3")
    g.add_argument("--equal-masses", action="store_true", help="unit masses (default)")


def _add_integrator(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--abs-tol", type=float)
    p.add_argument("--max-step", type=float)
    p.add_argument("--collision-radius", type=float)
    p.add_argument("--max-time", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trilab",
        description="Three-body dynamics laboratory (alpha = 0 selects log r)")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="integrate a family trajectory to CSV")
    p.add_argument("--alpha", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--t-end", type=float)
    p.add_argument("--out", help="trajectory CSV path")
    p.add_argument("--expect", choices=["any", "t_end", "collision"], default="any",
                   help="exit 4 unless the run terminates this way")
    _add_masses(p)
    _add_integrator(p)
    _add_common(p)
    p.set_defaults(runner=_run_simulate)

    p = sub.add_parser("jets", help="potential-derivative report from Taylor jets")
    p.add_argument("--alpha", type=float)
    p.add_argument("--theta", type=float,
                   help="omit for the equal-mass consistency angle")
    p.add_argument("--order", type=int)
    p.add_argument("--dps", type=int, help="working precision in decimal digits")
    p.add_argument("--out", help="JSON report path")
    _add_masses(p)
    _add_common(p)
    p.set_defaults(runner=_run_jets)

    p = sub.add_parser("theta", help="angles solving the second-order condition")
    p.add_argument("--alpha", type=float)
    _add_common(p)
    p.set_defaults(runner=_run_theta)

    p = sub.add_parser("closed-form", help="integrate alpha=2/4 and compare to the exact orbit")
    p.add_argument("--alpha", type=float)
    p.add_argument("--theta", type=float, help="launch angle (alpha = 2 only)")
    p.add_argument("--t-end", type=float)
    p.add_argument("--compare", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--tol-position", type=float, default=1e-8)
    p.add_argument("--tol-collision", type=float, default=1e-6)
    p.add_argument("--out", help="trajectory CSV path")
    _add_integrator(p)
    _add_common(p)
    p.set_defaults(runner=_run_closed_form)

    p = sub.add_parser("appendix-verify", help="exact certificate of the common-root claim")
    p.add_argument("--digits", type=int, help="enclosure precision (default 40)")
    p.add_argument("--out", help="certificate JSON path")
    _add_common(p)
    p.set_defaults(runner=_run_appendix_verify)

    p = sub.add_parser("choreo-scan", help="residual landscape over launch angles")
    p.add_argument("--alpha", type=float)
    p.add_argument("--theta-min", type=float)
    p.add_argument("--theta-max", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--horizon", type=float)
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--out", help="scan CSV path")
    _add_common(p)
    p.set_defaults(runner=_run_choreo_scan)

    p = sub.add_parser("choreo-refine", help="polish a (theta, period) seed")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--period", type=float, required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--out", help="solution JSON path")
    _add_common(p)
    p.set_defaults(runner=_run_choreo_refine)

    p = sub.add_parser("repulsive-check", help="positivity of d2I/dt2 under the flipped potential")
    p.add_argument("--alpha", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--state", help="12 comma-separated numbers x1,y1,...,vx3,vy3")
    _add_masses(p)
    _add_common(p)
    p.set_defaults(runner=_run_repulsive_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args.config)
        client = _Client(args.server_url)
        return args.runner(args, cfg, client)
    except (ValidationError, ValueError, TrilabError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
