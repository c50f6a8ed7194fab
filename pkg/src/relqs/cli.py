"""JSON front end: ``relqs [COMMAND] [--input F] [--output F] [--seed N] [--cases N]``.

A request is ``{"command", "payload", "seed"?}``.  With a positional command
the input document may be the bare payload.  ``--batch`` reads one request
per line and writes one response per line.

Exit codes: 0 ok, 1 domain error, 2 schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import jsonschema

from . import lemmas, selftest as st, serialize as ser
from .errors import RelqsError, SchemaError
from .forms import GroupKind, check_group_membership, check_relative
from .words import eval_word, lift_matrix, lift_word, project_matrix, project_word

COMMANDS = ("eval", "factor", "rewrite", "monomialize", "dilate", "lift", "project", "check", "selftest")
DEFAULT_CASES = 500


@dataclass
class Options:
    command: str | None = None
    seed: int | None = None
    cases: int | None = None
    pretty: bool = False


@lru_cache(maxsize=None)
def schema(name: str) -> dict:
    text = resources.files("relqs").joinpath("schemas", f"{name}.v1.json").read_text()
    return json.loads(text)


def _validator(name: str):
    return jsonschema.Draft202012Validator(schema(name))


# -- payload decoding ------------------------------------------------------------


def _frame(p: dict):
    R = ser.decode_ring(p.get("ring", {"type": "ZZ"}))
    kind = GroupKind.parse(p.get("kind", "linear"))
    ideal = None if p.get("ideal") is None else ser.decode_ideal(R, p["ideal"])
    return R, kind, int(p.get("n", 0)), ideal


def _need(ideal):
    if ideal is None:
        raise SchemaError("this command needs an ideal")
    return ideal


def _eval(p):
    R, kind, n, ideal = _frame(p)
    w = ser.decode_factors(R, kind, n, ideal, p.get("word", []))
    return lambda: ser.encode_matrix(eval_word(w))


def _check(p):
    R, kind, _, ideal = _frame(p)
    M = ser.decode_rows(R, p["matrix"])

    def job():
        group = check_group_membership(M, kind)
        relative = None if ideal is None else check_relative(M, ideal)
        return {"ok": group and relative is not False, "group": group, "relative": relative}
    return job


def _lift(p):
    R, kind, n, ideal = _frame(p)
    ideal = _need(ideal)
    if "matrix" in p:
        M = ser.decode_rows(R, p["matrix"])
        return lambda: ser.encode_matrix(lift_matrix(M, ideal))
    w = ser.decode_factors(R, kind, n, ideal, p.get("word", []))
    return lambda: ser.encode_word(lift_word(w, ideal))


def _project(p):
    R, kind, n, ideal = _frame(p)
    if "matrix" in p:
        M = ser.decode_rows(R, p["matrix"])
        return lambda: ser.encode_matrix(project_matrix(M))
    w = ser.decode_factors(R, kind, n, ideal, p.get("word", []))
    return lambda: ser.encode_word(project_word(w))


def _rank_one(p):
    R, kind, n, ideal = _frame(p)
    ideal = _need(ideal)
    eps = ser.decode_factors(R, kind, n, ideal, p["epsilon"])
    return eps, ser.decode_witnessed_vector(ideal, p["w"]), ideal


def _factor(p):
    eps, w, _ = _rank_one(p)
    return lambda: ser.encode_certificate(lemmas.factor_rank_one(eps, w))


def _monomialize(p):
    eps, w, _ = _rank_one(p)
    d, var = p.get("d"), p.get("var", "X")
    return lambda: ser.encode_certificate(lemmas.monomialize(eps, w, d, var))


def _rewrite(p):
    R, kind, n, ideal = _frame(p)
    ideal = _need(ideal)
    eps = ser.decode_factors(R, kind, n, ideal, p["epsilon"])
    param = ser.decode_ideal_elem(ideal, p["param"])
    i, j, m, var = int(p["i"]), int(p["j"]), int(p["m"]), p.get("var", "X")
    return lambda: ser.encode_certificate(lemmas.word_conjugate_rewrite(eps, i, j, param, m, var))


def _dilate(p):
    R, kind, n, ideal = _frame(p)
    w = ser.decode_factors(R, kind, n, _need(ideal), p["word"])
    d, var = p.get("d"), p.get("var", "X")
    return lambda: ser.encode_dilation(lemmas.dilate(w, d, var))


def _selftest(p, seed, opts: Options):
    seed = opts.seed if opts.seed is not None else seed if seed is not None else p.get("seed", 0)
    cases = opts.cases if opts.cases is not None else p.get("cases", DEFAULT_CASES)
    suites = p.get("suites")
    unknown = set(suites or ()) - set(st.suite_names())
    if unknown:
        raise SchemaError(f"unknown suites: {sorted(unknown)}")
    seed = int(seed)
    return lambda: st.selftest(seed, int(cases), suites)


# Each decoder validates its payload and returns a thunk doing the work.
_DECODERS = {
    "eval": _eval,
    "check": _check,
    "lift": _lift,
    "project": _project,
    "factor": _factor,
    "monomialize": _monomialize,
    "rewrite": _rewrite,
    "dilate": _dilate,
}


def _error(kind: str, message: str) -> tuple[dict, int]:
    return {"status": "error", "error": {"kind": kind, "message": message}}, 2 if kind == "schema-error" else 1


def _relqs_error(exc: RelqsError) -> tuple[dict, int]:
    return _error(exc.kind, str(exc) or type(exc).__name__)


def run(request, opts: Options | None = None) -> tuple[dict, int]:
    """Validate and execute one request; returns ``(response, exit_code)``."""
    opts = opts or Options()
    errors = sorted(_validator("request").iter_errors(request), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        where = "/".join(str(x) for x in e.path) or "request"
        return _error("schema-error", f"{where}: {e.message}")
    command, payload = request["command"], request.get("payload", {})

    # decoding: anything malformed here is a schema error
    try:
        if command == "selftest":
            job = _selftest(payload, request.get("seed"), opts)
        else:
            job = _DECODERS[command](payload)
    except RelqsError as exc:
        return _relqs_error(exc)
    except (KeyError, TypeError, ValueError, ArithmeticError) as exc:
        return _error("schema-error", f"{type(exc).__name__}: {exc}")

    try:
        result = job()
    except RelqsError as exc:
        return _relqs_error(exc)
    except (TypeError, ValueError, ArithmeticError) as exc:
        # precondition violations without a dedicated kind
        return _error("rewrite-failure", f"{type(exc).__name__}: {exc}")
    return {"status": "ok", "result": result}, 0


def _as_request(doc, opts: Options):
    if opts.command is None:
        return doc
    if isinstance(doc, dict) and "command" in doc:
        return doc
    return {"command": opts.command, "payload": doc}


def run_text(text: str, opts: Options) -> tuple[dict, int]:
    try:
        doc = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        return _error("schema-error", f"invalid JSON: {exc}")
    request = _as_request(doc, opts)
    if opts.command is not None and isinstance(request, dict) and request.get("command") != opts.command:
        return _error("schema-error", f"request command {request.get('command')!r} != {opts.command!r}")
    return run(request, opts)


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relqs", description="Exact elementary-group rewriting over R + I.")
    ap.add_argument("command", nargs="?", choices=COMMANDS,
                    help="operation; when given, the input may be the bare payload")
    ap.add_argument("--input", "-i", metavar="FILE", help="request file, '-' for stdin (default)")
    ap.add_argument("--output", "-o", metavar="FILE", help="response file, '-' for stdout (default)")
    ap.add_argument("--seed", type=int, help="selftest master seed")
    ap.add_argument("--cases", type=int, help=f"selftest cases per suite (default {DEFAULT_CASES})")
    ap.add_argument("--pretty", action="store_true", help="indent the JSON output")
    ap.add_argument("--batch", action="store_true", help="newline-delimited requests and responses")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    opts = Options(args.command, args.seed, args.cases, args.pretty)

    if args.batch:
        lines, code = [], 0
        for line in _read(args.input).splitlines():
            if not line.strip():
                continue
            resp, c = run_text(line, opts)
            lines.append(ser.dumps(resp) + "\n")
            code = max(code, c)
        _write(args.output, "".join(lines))
        return code

    if args.command == "selftest" and args.input is None:
        text = ""  # flags alone describe a selftest run
    else:
        text = _read(args.input)
    resp, code = run_text(text, opts)
    _write(args.output, ser.dumps(resp, pretty=args.pretty) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
