"""Command line front end.

Runs in-process by default; with ``--server URL`` the same commands are
forwarded to a running service instance and the responses rendered
identically.  Exit codes: 0 success, 1 mathematical check failure,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .presets import PRESETS, ConfigError, resolve_file, resolve_preset
from .verify import Report, condense_report, run_suite, selftest

EXIT_OK = 0
EXIT_MATH = 1
EXIT_CONFIG = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galext",
        description="Condense a symmetric subcategory inside a braided"
                    " fusion category and machine-verify the result.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_flags(p, with_example=True):
        if with_example:
            p.add_argument("--preset", help="built-in example name")
            p.add_argument("--spec", help="TOML configuration file")
        p.add_argument("--backend", choices=["exact", "float"],
                       help="arithmetic backend (default: per preset/config)")
        p.add_argument("--tol", type=float, help="numeric tolerance")
        p.add_argument("--seed", type=int, help="random seed")
        p.add_argument("--out", help="write the JSON report to this path")
        p.add_argument("--server", help="forward to a running service URL")

    pc = sub.add_parser("condense", help="run the pipeline, print the simples")
    add_config_flags(pc)

    pv = sub.add_parser("verify", help="run the structural check suite")
    add_config_flags(pv)
    pv.add_argument("--filter", help="only run checks whose name contains this")
    pv.add_argument("--samples", type=int, default=8,
                    help="random draws per sampled check (default 8)")

    ps = sub.add_parser("selftest", help="numeric kernels and fixture sweeps")
    add_config_flags(ps, with_example=False)

    sub.add_parser("presets", help="list the built-in examples")
    return parser


def _resolve(args):
    if bool(args.preset) == bool(args.spec):
        raise ConfigError("provide exactly one of --preset or --spec")
    if args.preset:
        return resolve_preset(args.preset, backend=args.backend,
                              tol=args.tol, seed=args.seed)
    return resolve_file(args.spec, backend=args.backend,
                        tol=args.tol, seed=args.seed)


def _write_out(args, payload: dict):
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def _fmt_dim(v: float) -> str:
    return str(int(round(v))) if abs(v - round(v)) < 1e-6 else f"{v:.9f}"


def _print_condense(report: dict):
    print(f"example {report['example']}  backend {report['backend']}"
          f"  seed {report['seed']}")
    rows = [(s["label"], _fmt_dim(s["dim"]), s["grade"])
            for s in report["simples"]]
    widths = [max(len(r[i]) for r in rows + [("label", "dim", "grade")])
              for i in range(3)]
    header = ("label", "dim", "grade")
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)))
    dims = report["dimensions"]
    print("spectrum:", " ".join(report["spectrum"]))
    print(f"dimension: {_fmt_dim(dims['extension'])} ="
          f" {_fmt_dim(dims['ambient'])} / {dims['group-order']}"
          f"  (residual {dims['ratio-residual']:.3e})")


def _print_verify(report: dict):
    print(f"example {report['example']}  backend {report['backend']}"
          f"  seed {report['seed']}")
    for c in report["checks"]:
        mark = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[c["status"]]
        res = "" if c["residual"] is None else f"  residual {c['residual']:.3e}"
        detail = f"  [{c['detail']}]" if c.get("detail") else ""
        print(f"{mark}  {c['name']}{res}{detail}")
    s = report["summary"]
    print(f"{s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped")


def _server_call(server: str, method: str, path: str, payload: dict | None):
    import httpx

    url = server.rstrip("/") + path
    resp = (httpx.post(url, json=payload, timeout=600.0) if method == "POST"
            else httpx.get(url, params=payload or {}, timeout=600.0))
    if resp.status_code == 400:
        raise ConfigError(resp.json().get("detail", resp.text))
    if resp.status_code >= 500:
        raise RuntimeError(f"server error {resp.status_code}: {resp.text}")
    return resp


def _request_fields(args) -> dict:
    payload = {}
    if getattr(args, "preset", None):
        payload["preset"] = args.preset
    if getattr(args, "spec", None):
        with open(args.spec) as fh:
            payload["spec_toml"] = fh.read()
    for key in ("backend", "tol", "seed"):
        v = getattr(args, key, None)
        if v is not None:
            payload[key] = v
    return payload


def cmd_condense(args) -> int:
    if args.server:
        resp = _server_call(args.server, "POST", "/condense",
                            _request_fields(args))
        if resp.status_code == 422:
            print("mathematical failure:",
                  resp.json().get("detail", ""), file=sys.stderr)
            return EXIT_MATH
        report = resp.json()
    else:
        cfg = _resolve(args)
        try:
            report = condense_report(cfg)
        except Exception as exc:
            print(f"mathematical failure: {type(exc).__name__}: {exc}",
                  file=sys.stderr)
            return EXIT_MATH
    _write_out(args, report)
    _print_condense(report)
    if report["dimensions"]["ratio-residual"] > report["tol"]:
        print("dimension identity violated", file=sys.stderr)
        return EXIT_MATH
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.server:
        payload = _request_fields(args)
        if args.filter:
            payload["filter"] = args.filter
        payload["samples"] = args.samples
        report = _server_call(args.server, "POST", "/verify", payload).json()
    else:
        cfg = _resolve(args)
        report = run_suite(cfg, name_filter=args.filter,
                           samples=args.samples).to_dict()
    _write_out(args, report)
    _print_verify(report)
    return EXIT_MATH if report["summary"]["failed"] else EXIT_OK


def cmd_selftest(args) -> int:
    if args.server:
        params = {k: v for k, v in
                  (("backend", args.backend), ("tol", args.tol),
                   ("seed", args.seed)) if v is not None}
        report = _server_call(args.server, "GET", "/selftest", params).json()
    else:
        report = selftest(backend=args.backend or "float",
                          tol=1e-9 if args.tol is None else args.tol,
                          seed=args.seed or 0).to_dict()
    _write_out(args, report)
    _print_verify(report)
    return EXIT_MATH if report["summary"]["failed"] else EXIT_OK


def cmd_presets(_args) -> int:
    width = max(len(name) for name in PRESETS)
    for name, p in PRESETS.items():
        print(f"{name.ljust(width)}  [{p.default_backend}]  {p.description}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return EXIT_CONFIG if exc.code else EXIT_OK
    handlers = {"condense": cmd_condense, "verify": cmd_verify,
                "selftest": cmd_selftest, "presets": cmd_presets}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
