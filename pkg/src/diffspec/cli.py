"""Command-line front end.

Four commands: ``spectrum`` (compute differential spectra by one or all
methods), ``verify`` (run the full three-way cross-check for a family
instance), ``delta`` (query one difference count, with the structured
case trace when it applies), and ``field-info`` (instance facts).

Instances are selected either by ``--n`` (the exponent-family instance
over GF(2^(4n))) or by ``--m``/``--d`` (any power function).  Elements
on the command line are hex bit vectors of the polynomial-basis
encoding.  Exit codes: 0 success (and, for verify, pass), 1 validation
error, 2 guard exceeded, 3 a structured-solver claim failed.

The environment variable ``DIFFSPEC_MAX_M`` may lower (never raise) the
built-in m <= 24 guard.  Identical configurations produce byte-identical
result payloads; ``--log PATH`` appends one JSON line per run with a
timestamp and wall-clock duration kept outside the payload.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from datetime import datetime, timezone

from . import powerfn, theorem
from .errors import GuardExceededError, TheoremViolationError
from .gf2m import GF2m, MAX_DEGREE

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_GUARD = 2
EXIT_THEOREM = 3

METHODS = ("brute", "structured", "closed-form", "all")
FORMATS = ("json", "csv", "table")


class _UsageError(ValueError):
    """Bad command line; maps to the validation exit code."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    m: int | None = None
    d: int | None = None
    modulus: int | None = None
    method: str = "brute"
    fmt: str = "json"
    out: str | None = None
    log: str | None = None
    a: int | None = None
    b: int | None = None

    def echo(self) -> dict:
        cfg = {"command": self.command, "method": self.method, "format": self.fmt}
        if self.n is not None:
            cfg["n"] = self.n
        if self.m is not None:
            cfg["m"] = self.m
        if self.d is not None:
            cfg["d"] = self.d
        if self.modulus is not None:
            cfg["modulus"] = f"0x{self.modulus:x}"
        if self.a is not None:
            cfg["a"] = f"0x{self.a:x}"
        if self.b is not None:
            cfg["b"] = f"0x{self.b:x}"
        return cfg


@dataclass
class RunRecord:
    timestamp: str
    duration_s: float
    config: dict
    payload: dict


def _hex_int(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise _UsageError(f"expected a hex value, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diffspec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_method=True):
        p.add_argument("--n", type=int, help="family instance over GF(2^(4n))")
        p.add_argument("--m", type=int, help="field degree (requires --d)")
        p.add_argument("--d", type=int, help="exponent (with --m)")
        p.add_argument("--modulus", type=_hex_int, metavar="0xHEX",
                       help="irreducible modulus override")
        if with_method:
            p.add_argument("--method", choices=METHODS, default=None)
        p.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
        p.add_argument("--out", help="write the formatted result to a file")
        p.add_argument("--log", help="append a JSON run record to this file")

    add_common(sub.add_parser("spectrum", help="compute a differential spectrum"))
    add_common(sub.add_parser("verify", help="three-way spectrum cross-check"))
    p_delta = sub.add_parser("delta", help="one difference count delta(a, b)")
    add_common(p_delta, with_method=False)
    p_delta.add_argument("--a", type=_hex_int, metavar="0xHEX", required=True)
    p_delta.add_argument("--b", type=_hex_int, metavar="0xHEX", required=True)
    add_common(sub.add_parser("field-info", help="instance facts"), with_method=False)
    return parser


def _effective_max_m() -> int:
    raw = os.environ.get("DIFFSPEC_MAX_M")
    if raw is None:
        return MAX_DEGREE
    try:
        value = int(raw)
    except ValueError:
        raise _UsageError(f"DIFFSPEC_MAX_M must be an integer, got {raw!r}")
    return min(MAX_DEGREE, value)


def _resolve(args) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        n=args.n,
        m=args.m,
        d=args.d,
        modulus=args.modulus,
        method=getattr(args, "method", None) or
               ("all" if args.command == "verify" else "brute"),
        fmt=args.fmt,
        out=args.out,
        log=args.log,
        a=getattr(args, "a", None),
        b=getattr(args, "b", None),
    )
    if (cfg.n is None) == (cfg.m is None):
        raise _UsageError("select an instance with exactly one of --n or --m/--d")
    max_m = _effective_max_m()
    if cfg.n is not None:
        if cfg.n < 1:
            raise _UsageError(f"--n must be a positive integer, got {cfg.n}")
        if 4 * cfg.n > max_m:
            raise GuardExceededError(
                f"n={cfg.n} needs degree {4 * cfg.n}, beyond the m <= {max_m} guard"
            )
    else:
        if cfg.d is None:
            raise _UsageError("--m requires --d")
        if cfg.m > max_m:
            raise GuardExceededError(f"m={cfg.m} exceeds the m <= {max_m} guard")
        if cfg.method in ("structured", "closed-form", "all"):
            raise _UsageError(f"method {cfg.method!r} needs the --n instance selector")
    return cfg


def _make_instance(cfg: RunConfig):
    """(params or None, PowerFunction) for the selected instance."""
    if cfg.n is not None:
        params = theorem.TheoremParams(cfg.n, cfg.modulus)
        return params, params.power_function()
    field = GF2m(cfg.m, cfg.modulus)
    return None, powerfn.PowerFunction(field, cfg.d)


# -- payload builders --------------------------------------------------------

def _spectrum_payload(cfg: RunConfig) -> dict:
    params, f = _make_instance(cfg)

    def compute(method: str) -> powerfn.Spectrum:
        if method == "brute":
            return powerfn.spectrum_brute(f)
        if method == "closed-form":
            return theorem.spectrum_closed_form(params)
        counts = (theorem.delta_structured(params, b) for b in f.field.elements())
        return powerfn.spectrum_from_counts(counts, f)

    if cfg.method != "all":
        return {**compute(cfg.method).to_json_dict(), "method": cfg.method}

    methods = {name: compute(name) for name in ("brute", "structured", "closed-form")}
    first = methods["brute"]
    return {
        "m": first.m,
        "d": first.d,
        "poly": f"0x{first.poly:x}",
        "agree": all(s.entries == first.entries for s in methods.values()),
        "methods": {
            name.replace("-", "_"): {
                "spectrum": {str(i): c for i, c in sorted(s.entries.items())},
                "uniformity": s.uniformity,
            }
            for name, s in methods.items()
        },
    }


def _verify_payload(cfg: RunConfig) -> dict:
    if cfg.n is None:
        raise _UsageError("verify needs the --n instance selector")
    params = theorem.TheoremParams(cfg.n, cfg.modulus)
    return theorem.verify_conjecture(params).to_json_dict()


def _delta_payload(cfg: RunConfig) -> dict:
    params, f = _make_instance(cfg)
    a, b = cfg.a, cfg.b
    if a is None or b is None:
        raise _UsageError("delta needs --a and --b")
    try:
        f.field.check(a)
        f.field.check(b)
    except ValueError as exc:
        raise _UsageError(str(exc))
    if a == 0:
        raise _UsageError("difference a must be nonzero")
    payload = {
        "m": f.field.degree,
        "d": f.reported_exponent,
        "poly": f"0x{f.field.modulus:x}",
        "a": f"0x{a:x}",
        "b": f"0x{b:x}",
        "delta": powerfn.delta(f, a, b),
        "structured": None,
    }
    if params is not None and a == 1:
        trace = theorem.case_trace(params, b)
        info = {"count": trace.count, "case": trace.case}
        if trace.state is not None:
            st = trace.state
            info["A"] = f"0x{st.norm_term:x}"
            info["B"] = f"0x{st.cross_term:x}"
            info["C"] = f"0x{st.inv_gap:x}"
            info["circle_roots"] = [f"0x{r:x}" for r in st.circle_roots]
        payload["structured"] = info
    return payload


def _field_info_payload(cfg: RunConfig) -> dict:
    import math

    params, f = _make_instance(cfg)
    field, d = f.field, f.reported_exponent
    payload = {
        "m": field.degree,
        "poly": f"0x{field.modulus:x}",
        "field": field.describe(),
        "d": d,
        "gcd": math.gcd(f.exponent, field.order - 1),
    }
    if params is not None:
        payload.update(
            n=params.n,
            niho=theorem.is_niho(params),
            congruence=theorem.check_congruence(params),
            mu_q_plus_1=len(theorem.unit_circle(params)),
        )
    else:
        payload.update(n=None, niho=None, congruence=None, mu_q_plus_1=None)
    return payload


# -- output formatting --------------------------------------------------------

def _csv_rows(command: str, payload: dict) -> list[list]:
    if command == "spectrum":
        if "methods" in payload:
            rows = [["method", "multiplicity", "count"]]
            for name, body in payload["methods"].items():
                rows += [[name, i, c] for i, c in body["spectrum"].items()]
            rows.append(["all", "agree", payload["agree"]])
            return rows
        rows = [["multiplicity", "count"]]
        rows += [[i, c] for i, c in payload["spectrum"].items()]
        return rows
    if command == "verify":
        rows = [["kind", "key", "value"]]
        for key in ("n", "d", "poly"):
            rows.append(["param", key, payload[key]])
        for section in ("closed_form", "brute"):
            rows += [[section, i, c] for i, c in payload[section].items()]
        rows += [["conjecture", k, v] for k, v in payload["conjecture"].items()]
        rows.append(["result", "pass", payload["pass"]])
        rows.append(["result", "mismatches", len(payload["mismatches"])])
        return rows
    # delta / field-info: flat key,value rows
    rows = [["key", "value"]]
    for key, value in payload.items():
        if isinstance(value, dict):
            rows += [[f"{key}.{k}", v] for k, v in value.items()]
        else:
            rows.append([key, value])
    return rows


def _format_table(command: str, payload: dict) -> str:
    lines = []
    if command == "spectrum":
        lines.append(f"m={payload['m']} d={payload['d']} poly={payload['poly']}")
        if "methods" in payload:
            for name, body in payload["methods"].items():
                buckets = "  ".join(f"w{i}={c}" for i, c in body["spectrum"].items())
                lines.append(f"{name:<12} {buckets}")
            lines.append(f"agree: {payload['agree']}")
        else:
            for i, c in payload["spectrum"].items():
                lines.append(f"  w{i} = {c}")
            lines.append(f"uniformity: {payload['uniformity']}")
    elif command == "verify":
        lines.append(f"n={payload['n']} d={payload['d']} poly={payload['poly']}")
        lines.append(f"pass: {payload['pass']}")
        lines.append("closed_form: " + "  ".join(f"w{i}={c}" for i, c in payload["closed_form"].items()))
        lines.append("brute:       " + "  ".join(f"w{i}={c}" for i, c in payload["brute"].items()))
        for key, value in payload["conjecture"].items():
            lines.append(f"{key}: {value}")
        lines.append(f"mismatches: {len(payload['mismatches'])}")
    elif command == "delta":
        lines.append(
            f"delta(a={payload['a']}, b={payload['b']}) = {payload['delta']}"
            f"  [m={payload['m']} d={payload['d']}]"
        )
        info = payload["structured"]
        if info is not None:
            lines.append(f"case={info['case']} structured_count={info['count']}")
            for key in ("A", "B", "C"):
                if key in info:
                    lines.append(f"  {key} = {info[key]}")
            if info.get("circle_roots") is not None:
                lines.append(f"  circle_roots = {info['circle_roots']}")
    else:
        for key, value in payload.items():
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _render(cfg: RunConfig, payload: dict) -> str:
    if cfg.fmt == "json":
        return json.dumps(payload, indent=2)
    if cfg.fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(_csv_rows(cfg.command, payload))
        return buf.getvalue().rstrip("\n")
    return _format_table(cfg.command, payload)


_BUILDERS = {
    "spectrum": _spectrum_payload,
    "verify": _verify_payload,
    "delta": _delta_payload,
    "field-info": _field_info_payload,
}


def run(cfg: RunConfig) -> RunRecord:
    start = time.monotonic()
    payload = _BUILDERS[cfg.command](cfg)
    return RunRecord(
        timestamp=datetime.now(timezone.utc).isoformat(),
        duration_s=round(time.monotonic() - start, 6),
        config=cfg.echo(),
        payload=payload,
    )


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = _resolve(args)
        record = run(cfg)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except GuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except TheoremViolationError as exc:
        print(f"theorem violated: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    text = _render(cfg, record.payload)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if cfg.log:
        with open(cfg.log, "a") as fh:
            fh.write(json.dumps({
                "timestamp": record.timestamp,
                "duration_s": record.duration_s,
                "config": record.config,
                "payload": record.payload,
            }) + "\n")

    if cfg.command == "verify" and not record.payload["pass"]:
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
