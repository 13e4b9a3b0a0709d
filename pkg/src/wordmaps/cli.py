"""Command-line experiment driver.

Every subcommand prints one JSON report (or CSV rows) and exits with 0 on
success, 1 on input errors and 2 when an exhaustive computation is refused by
the budget.  ``batch`` reads JSON-lines configs and emits one report per line.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .classes import commutator_width, conjugacy_classes, covering_numbers, thompson_classes
from .cyclotomic import WeightModule, ng_operator_analysis
from .errors import BudgetExceeded, InputError, WordMapError
from .fields import FieldSpec
from .groups import GroupTable, build_group
from .images import (
    identity_scan,
    image_stats,
    sampled_image,
    trace_image,
    word_counts,
    word_image,
    word_image_with_constants,
)
from .magnus import f_w, magnus_image, prime_set_S
from .parsing import parse_plain_word, parse_word
from .rootsystems import (
    build_root_system,
    characteristic_polynomial,
    coxeter_element,
    d_type_cycle_element,
    identity_element,
    is_fixed_point_free,
    longest_element_is_minus_one,
    parse_type,
    power_map_surjective,
    signed_cycle_structure,
    simple_reflection,
    strictly_firm_parabolic,
)
from .trace import trace_polynomial
from .words import Word

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2


# helpers ----------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InputError(f"expected a comma-separated integer list: {text!r}") from exc


def _matrix_literals(values: Sequence[str] | None) -> list[str]:
    out: list[str] = []
    for v in values or ():
        out += [m for m in v.split("|") if m.strip()]
    return out


def _int_matrix(literal: str) -> list[list[int]]:
    rows = [_int_list(r) for r in literal.split(";")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise InputError(f"matrix literal must look like 'a,b;c,d': {literal!r}")
    return rows


def _group(ns) -> GroupTable:
    if ns.q is None:
        raise InputError("--q is required")
    modulus = _int_list(ns.modulus) if ns.modulus else None
    return build_group(ns.group, FieldSpec.of_order(ns.q, modulus))


def _word(ns, plain: bool = False):
    if not ns.word:
        raise InputError("--word is required")
    return parse_plain_word(ns.word) if plain else parse_word(ns.word)


def _constants(ns, G: GroupTable, w) -> list[int]:
    sigma = [G.parse_element(m) for m in _matrix_literals(ns.constants)]
    if isinstance(w, Word):
        if sigma:
            raise InputError("constants given for a word without constant slots")
        return []
    if len(sigma) != w.num_constants:
        raise InputError(f"word uses {w.num_constants} constant(s), {len(sigma)} given")
    return sigma


def _frac(x: Fraction) -> int | str:
    return x.numerator if x.denominator == 1 else str(x)


def _vector(v) -> list:
    return [_frac(x) for x in v]


def _type(ns) -> tuple[str, int]:
    if not ns.type:
        raise InputError("--type is required")
    return parse_type(ns.type, ns.rank)


# subcommands ----------------------------------------------------------------------
# Each returns (results, mode, rows); rows is a list of CSV dicts or None.

def cmd_image(ns):
    G, w = _group(ns), _word(ns, plain=True)
    if ns.samples is not None:
        if ns.seed is None:
            raise InputError("--seed is required with --samples")
        image = sampled_image(w, G, ns.samples, ns.seed, workers=ns.workers)
        mode = "sampled"
    else:
        image = word_image(w, G, workers=ns.workers, budget=ns.budget)
        mode = "exhaustive"
    res = {
        "group": G.describe(),
        "word": str(w),
        "image_size": len(image),
        "surjective": image.is_full(),
        "stats": image_stats(image, G),
    }
    if mode == "sampled":
        res["lower_bound"] = True
    if ns.dump:
        res["image_hex"] = image.to_hex()
    return res, mode, None


def cmd_image_const(ns):
    G, w = _group(ns), _word(ns)
    sigma = _constants(ns, G, w)
    if ns.samples is not None:
        if ns.seed is None:
            raise InputError("--seed is required with --samples")
        image = sampled_image(w, G, ns.samples, ns.seed, sigma=sigma, workers=ns.workers)
        mode = "sampled"
    else:
        image = word_image_with_constants(w, sigma, G, strict=not ns.relaxed, workers=ns.workers, budget=ns.budget)
        mode = "exhaustive"
    res = {
        "group": G.describe(),
        "word": str(w),
        "constants": [str(G.element(s)) for s in sigma],
        "image_size": len(image),
        "surjective": image.is_full(),
        "stats": image_stats(image, G),
    }
    if mode == "sampled":
        res["lower_bound"] = True
    if ns.dump:
        res["image_hex"] = image.to_hex()
    return res, mode, None


def cmd_trace_image(ns):
    G, w = _group(ns), _word(ns)
    sigma = _constants(ns, G, w)
    res = {"group": G.describe(), "word": str(w)}
    res.update(trace_image(w, G, sigma, workers=ns.workers, budget=ns.budget))
    return res, "exhaustive", None


def cmd_stats(ns):
    G, w = _group(ns), _word(ns)
    sigma = _constants(ns, G, w)
    image = word_image_with_constants(w, sigma, G, strict=False, workers=ns.workers, budget=ns.budget) \
        if sigma else word_image(w, G, workers=ns.workers, budget=ns.budget)
    return {"group": G.describe(), "word": str(w), "stats": image_stats(image, G)}, "exhaustive", None


def cmd_magnus(ns):
    w = _word(ns, plain=True)
    m = magnus_image(w)
    return {
        "word": str(w),
        "alpha": str(m.alpha),
        "beta": str(m.beta),
        "in_F2": m.is_identity(),
        "json": m.to_json(),
    }, "exact", None


def cmd_primeset(ns):
    w = _word(ns, plain=True)
    f = f_w(w)
    return {"word": str(w), "f_w": str(f), "content": f.content(), "S_w": prime_set_S(w)}, "exact", None


def cmd_trace_poly(ns):
    w = _word(ns)
    mats = [_int_matrix(m) for m in _matrix_literals(ns.constants)]
    sigma = [_int_matrix(m) for m in _matrix_literals(ns.sigma)]
    psi = trace_polynomial(w, mats, sigma)
    return {"word": str(w), "psi": str(psi), "psi_0_0": psi.evaluate([0, 0]), "json": psi.to_json()}, "exact", None


def cmd_counts(ns):
    G, w = _group(ns), _word(ns)
    sigma = _constants(ns, G, w)
    res = {"group": G.describe(), "word": str(w)}
    res.update(word_counts(w, G, sigma, workers=ns.workers, budget=ns.budget))
    if "count_Tw" in res:
        res["heuristic_note"] = "q^(3n-1) reported for comparison only"
    return res, "exhaustive", None


def cmd_width(ns):
    G = _group(ns)
    return {"group": G.describe(), "commutator_width": commutator_width(G, workers=ns.workers)}, "exhaustive", None


def cmd_covering(ns):
    G = _group(ns)
    res = {"group": G.describe()}
    res.update(covering_numbers(G))
    return res, "exhaustive", None


def cmd_thompson(ns):
    G = _group(ns)
    found = thompson_classes(G)
    return {
        "group": G.describe(),
        "num_classes": len(conjugacy_classes(G)),
        "classes_with_square_G": [{"representative": str(G.element(c.representative)), "size": c.size} for c in found],
        "exists": bool(found),
    }, "exhaustive", None


def cmd_identity_scan(ns):
    G = _group(ns)
    res = {"group": G.describe()}
    res.update(identity_scan(G, ns.max_length))
    return res, "exhaustive", None


def _ordering(ns, r: int) -> list[int]:
    return _int_list(ns.ordering) if ns.ordering else list(range(1, r + 1))


def cmd_coxeter(ns):
    letter, r = _type(ns)
    rs = build_root_system(letter, r)
    order = _ordering(ns, r)
    c = coxeter_element(rs, order)
    fpf = is_fixed_point_free(c, rs)
    res = {
        "type": rs.type_label,
        "rank": r,
        "ordering": order,
        "order": c.order(),
        "fixed_point_free": fpf,
        "char_poly": _vector(characteristic_polynomial(c.on_root_span(rs))),
        "permutes_roots": c.permutes_roots(rs),
    }
    row = {"type": rs.type_label, "rank": r, "param": " ".join(map(str, order)), "result": fpf, "witness": ""}
    return res, "exact", [row]


def cmd_fpf(ns):
    letter, r = _type(ns)
    rs = build_root_system(letter, r)
    kind = ns.element
    if kind == "coxeter":
        w = coxeter_element(rs, _ordering(ns, r))
    elif kind == "dcycle":
        w = d_type_cycle_element(rs)
    elif kind == "identity":
        w = identity_element(rs)
    elif kind == "reflection":
        w = simple_reflection(rs, 1)
    else:
        raise InputError(f"unknown element kind {kind!r}")
    fpf = is_fixed_point_free(w, rs)
    res = {
        "type": rs.type_label,
        "rank": r,
        "element": kind,
        "fixed_point_free": fpf,
        "order": w.order(),
        "signed_cycle_structure": signed_cycle_structure(w),
        "longest_element_is_minus_one": longest_element_is_minus_one(letter, r),
    }
    row = {"type": rs.type_label, "rank": r, "param": kind, "result": fpf, "witness": ""}
    return res, "exact", [row]


def cmd_firm(ns):
    letter, r = _type(ns)
    ks = [ns.k] if ns.k is not None else list(range(1, r + 1))
    rows, results = [], []
    for k in ks:
        out = strictly_firm_parabolic(letter, r, k)
        wit = _vector(out["witness"]) if out["witness"] is not None else None
        results.append({"k": k, "passes": out["passes"], "witness": wit})
        rows.append({"type": f"{letter}{r}", "rank": r, "param": k, "result": out["passes"],
                     "witness": "" if wit is None else " ".join(map(str, wit))})
    res = {"type": f"{letter}{r}", "rank": r, "results": results}
    if len(results) == 1:
        res.update(passes=results[0]["passes"], witness=results[0]["witness"])
    return res, "exact", rows


def cmd_power_surj(ns):
    letter, r = _type(ns)
    iso: str | int = ns.isogeny
    if iso not in ("simply_connected", "adjoint", "sc", "ad"):
        iso = int(iso) if str(iso).isdigit() else iso
    ms = [ns.m] if ns.m is not None else list(range(1, 61))
    results = [{"m": m, "surjective": power_map_surjective(letter, r, iso, ns.p, m)} for m in ms]
    rows = [{"type": f"{letter}{r}", "rank": r, "param": x["m"], "result": x["surjective"], "witness": ""} for x in results]
    res = {"type": f"{letter}{r}", "rank": r, "isogeny": ns.isogeny, "char_exponent": ns.p, "results": results}
    if len(results) == 1:
        res["surjective"] = results[0]["surjective"]
    return res, "exact", rows


def cmd_ng(ns):
    if ns.weights is None or ns.m is None or ns.g_order is None:
        raise InputError("--weights, --m and --g-order are required")
    module = WeightModule(tuple(_int_list(ns.weights)), ns.label or "")
    return ng_operator_analysis(module, ns.m, ns.g_order), "exact", None


COMMANDS = {
    "image": cmd_image,
    "image-const": cmd_image_const,
    "trace-image": cmd_trace_image,
    "stats": cmd_stats,
    "magnus": cmd_magnus,
    "primeset": cmd_primeset,
    "trace-poly": cmd_trace_poly,
    "counts": cmd_counts,
    "width": cmd_width,
    "covering": cmd_covering,
    "thompson": cmd_thompson,
    "identity-scan": cmd_identity_scan,
    "coxeter": cmd_coxeter,
    "fpf": cmd_fpf,
    "firm": cmd_firm,
    "power-surj": cmd_power_surj,
    "ng": cmd_ng,
}


# parser ---------------------------------------------------------------------------

class _ArgumentError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # raise instead of exiting so batch can report inline
        raise _ArgumentError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--budget", type=lambda s: int(float(s)), default=None,
                        help="max |G|^n tuples for exhaustive runs (default 1e10 or $WORDMAP_BUDGET)")
    common.add_argument("--timing", action="store_true", help="record wall-clock time (breaks byte-identity)")
    common.add_argument("--word")
    common.add_argument("--group", default="sl2", type=str.lower, choices=("sl2", "gl2", "pgl2", "psl2"))
    common.add_argument("--q", type=int)
    common.add_argument("--modulus", help="coefficients c0,c1,...,ck of the defining polynomial")
    common.add_argument("--constants", action="append",
                        help="matrix literal 'a,b;c,d'; repeat the flag or separate with '|'")
    common.add_argument("--sigma", action="append", help="integer constants for trace-poly words with constants")
    common.add_argument("--samples", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--relaxed", action="store_true", help="allow central constants")
    common.add_argument("--dump", action="store_true", help="include the image bitset as hex")
    common.add_argument("--max-length", type=int, default=6)
    common.add_argument("--type")
    common.add_argument("--rank", type=int)
    common.add_argument("--ordering", help="comma-separated permutation of the simple roots")
    common.add_argument("--element", default="coxeter", choices=("coxeter", "dcycle", "identity", "reflection"))
    common.add_argument("--k", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--isogeny", default="simply_connected")
    common.add_argument("--p", type=int, default=1, help="characteristic exponent (1 or a prime)")
    common.add_argument("--weights")
    common.add_argument("--g-order", type=int)
    common.add_argument("--label")

    parser = _Parser(prog="wordmaps", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"wordmaps {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    batch = sub.add_parser("batch", help="run JSON-lines configs, one report per line")
    batch.add_argument("path")
    batch.add_argument("--workers", type=int, default=1)
    batch.add_argument("--out")
    return parser


_GROUP = ("group", "q", "modulus")
_RUN = ("workers", "budget")
RELEVANT = {
    "image": ("word", *_GROUP, *_RUN, "samples", "seed", "dump"),
    "image-const": ("word", *_GROUP, "constants", *_RUN, "samples", "seed", "relaxed", "dump"),
    "trace-image": ("word", *_GROUP, "constants", *_RUN),
    "stats": ("word", *_GROUP, "constants", *_RUN),
    "magnus": ("word",),
    "primeset": ("word",),
    "trace-poly": ("word", "constants", "sigma"),
    "counts": ("word", *_GROUP, "constants", *_RUN),
    "width": (*_GROUP, "workers"),
    "covering": _GROUP,
    "thompson": _GROUP,
    "identity-scan": (*_GROUP, "max_length"),
    "coxeter": ("type", "rank", "ordering"),
    "fpf": ("type", "rank", "element", "ordering"),
    "firm": ("type", "rank", "k"),
    "power-surj": ("type", "rank", "isogeny", "p", "m"),
    "ng": ("weights", "m", "g_order", "label"),
}


def _config_echo(ns) -> dict:
    cfg = vars(ns)
    return {"command": ns.command, **{k: cfg[k] for k in RELEVANT[ns.command] if cfg.get(k) is not None}}


def execute(ns) -> tuple[dict, int, list | None]:
    """Run a parsed subcommand; returns ``(report, exit_code, csv_rows)``."""
    start = time.perf_counter()
    base = {"schema": SCHEMA, "command": ns.command}
    try:
        results, mode, rows = COMMANDS[ns.command](ns)
        code = EXIT_OK
        report = {**base, **results}
    except BudgetExceeded as exc:
        report, code, rows, mode = {**base, "error": {"type": "budget", "message": str(exc)}}, EXIT_BUDGET, None, None
    except (WordMapError, ValueError) as exc:
        report, code, rows, mode = {**base, "error": {"type": "input", "message": str(exc)}}, EXIT_INPUT, None, None
    report["config"] = _config_echo(ns)
    report["timing_ms"] = round((time.perf_counter() - start) * 1000, 3) if ns.timing else None
    report["workers"] = ns.workers
    report["provenance"] = {
        "tool": "wordmaps",
        "version": __version__,
        "mode": mode,
        "exhaustive": mode == "exhaustive",
    }
    return report, code, rows


def run(config: dict) -> tuple[dict, int]:
    """Run one config mapping (``{"command": ..., "word": ..., ...}``)."""
    ns = parse_config(config)
    report, code, _ = execute(ns)
    return report, code


def parse_config(config: dict):
    config = dict(config)
    command = config.pop("command", None)
    if command not in COMMANDS:
        raise _ArgumentError(f"unknown subcommand {command!r}")
    argv = [command]
    for key, val in config.items():
        flag = "--" + key.replace("_", "-")
        if isinstance(val, bool):
            if val:
                argv.append(flag)
        elif isinstance(val, list):
            for item in val:
                argv += [flag, str(item)]
        elif val is not None:
            argv += [flag, str(val)]
    return build_parser().parse_args(argv)


def _dumps(report: dict) -> str:
    return json.dumps(report, ensure_ascii=False, separators=(", ", ": "))


def _csv(rows: list[dict] | None, report: dict) -> str:
    buf = io.StringIO()
    if rows is None:
        flat = {k: v for k, v in report.items() if not isinstance(v, (dict, list))}
        rows = [flat]
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def run_batch(path: str, workers: int = 1) -> list[dict]:
    """One report per non-blank line; errors are reported inline."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in (l.strip() for l in fh) if ln and not ln.startswith("#")]

    def one(line: str) -> dict:
        try:
            cfg = json.loads(line)
            if not isinstance(cfg, dict):
                raise InputError("each batch line must be a JSON object")
            report, _ = run(cfg)
            return report
        except (WordMapError, ValueError) as exc:
            return {"schema": SCHEMA, "command": None, "error": {"type": "input", "message": str(exc)}, "config": line}

    if workers <= 1:
        return [one(l) for l in lines]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, lines))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except _ArgumentError as exc:
        sys.stderr.write(f"wordmaps: error: {exc}\n")
        return EXIT_INPUT
    if ns.command is None:
        parser.print_help()
        return EXIT_INPUT
    if ns.command == "batch":
        try:
            reports = run_batch(ns.path, ns.workers)
        except OSError as exc:
            sys.stderr.write(f"wordmaps: error: {exc}\n")
            return EXIT_INPUT
        _emit("".join(_dumps(r) + "\n" for r in reports), ns.out)
        return EXIT_OK
    report, code, rows = execute(ns)
    if ns.format == "csv" and code == EXIT_OK:
        _emit(_csv(rows, report), ns.out)
    else:
        _emit(_dumps(report) + "\n", ns.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
