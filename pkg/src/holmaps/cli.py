"""Command-line front end: ``holmaps {sp,hol,map,le,strata,ext,verify}``."""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field

from . import __version__
from .algebra import PoincarePolynomial, format_poly
from .cache import ResultCache, cache_key
from .errors import ParameterError, ResourceLimitError, UnsupportedRegimeError
from .extor import ext_vg_closed, minimal_resolution
from .specseq import hol_poincare_genus1, hol_stable_survivors, map_poincare
from .strata import HYPERELLIPTIC, CurveClass, le_poincare, w_k_t
from .symprod import sp_poincare

EXIT_OK, EXIT_FAIL, EXIT_PARAM, EXIT_REGIME = 0, 1, 2, 3
KINDS = ("poincare", "bigraded", "betti", "boolean-report")


@dataclass
class QueryRecord:
    command: str
    params: dict
    version: str = __version__
    timestamp: str | None = None  # left empty so output is reproducible


@dataclass
class SeriesDocument:
    query: QueryRecord
    kind: str
    payload: list[list[int]]
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown document kind {self.kind!r}")
        keys = [tuple(row[:-1]) for row in self.payload]
        if keys != sorted(set(keys)):
            raise ValueError("payload keys must be strictly increasing")
        if self.kind != "boolean-report" and any(row[-1] <= 0 for row in self.payload):
            raise ValueError("payload dimensions must be positive")

    def to_dict(self) -> dict:
        return {"query": asdict(self.query), "kind": self.kind,
                "payload": [list(r) for r in self.payload], "notes": list(self.notes)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SeriesDocument":
        d = json.loads(text)
        return cls(QueryRecord(**d["query"]), d["kind"], d["payload"], d["notes"])

    def to_text(self) -> str:
        lines = [f"{self.query.command} " + " ".join(f"{k}={v}" for k, v in sorted(self.query.params.items()))]
        if self.kind == "poincare":
            lines.append(format_poly({d: v for d, v in self.payload}))
        elif self.kind == "boolean-report":
            lines.append("PASS" if all(r[-1] for r in self.payload) else "FAIL")
        else:
            lines.extend(f"({', '.join(map(str, r[:-1]))}): {r[-1]}" for r in self.payload)
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        width = len(self.payload[0]) - 1 if self.payload else 1
        header = {1: ["degree"], 2: ["l", "m"]}.get(width, [f"index{i}" for i in range(width)])
        w.writerow(header + ["dim"])
        w.writerows(self.payload)
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "text": self.to_text, "csv": self.to_csv}[fmt]()


def _poly_payload(p: PoincarePolynomial) -> list[list[int]]:
    return [[d, v] for d, v in p.items()]


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise ParameterError(f"--{name.replace('_', '-')} is required")


def cmd_sp(args) -> SeriesDocument:
    _need(args, "genus", "k")
    p = sp_poincare(args.genus, args.k)
    return SeriesDocument(QueryRecord("sp", {"genus": args.genus, "k": args.k}), "poincare", _poly_payload(p))


def cmd_hol(args) -> SeriesDocument:
    _need(args, "genus", "k", "n")
    if args.genus == 1:
        res = hol_poincare_genus1(args.k, args.n)
    else:
        res = hol_stable_survivors(args.genus, args.k, args.n)
    return SeriesDocument(QueryRecord("hol", {"genus": args.genus, "k": args.k, "n": args.n}),
                          "poincare", _poly_payload(res.dual_series), [f"series: {res.kind}"] + res.notes)


def cmd_map(args) -> SeriesDocument:
    _need(args, "genus", "n")
    p = map_poincare(args.genus, args.n, args.truncate)
    params = {"genus": args.genus, "n": args.n, "truncate": args.truncate}
    return SeriesDocument(QueryRecord("map", params), "poincare", _poly_payload(p))


def cmd_le(args) -> SeriesDocument:
    _need(args, "genus", "v", "n")
    t = le_poincare(CurveClass.for_genus(args.genus), args.v, args.n)
    return SeriesDocument(QueryRecord("le", {"genus": args.genus, "v": args.v, "n": args.n}),
                          "poincare", _poly_payload(t.total), [f"regime {t.regime}"] + t.notes)


def cmd_strata(args) -> SeriesDocument:
    _need(args, "genus", "k", "t")
    s = w_k_t(CurveClass(args.genus, HYPERELLIPTIC), args.k, args.t)
    return SeriesDocument(QueryRecord("strata", {"genus": args.genus, "k": args.k, "t": args.t}),
                          "poincare", _poly_payload(s.homology), [f"translate of W_{s.reduced_to}"])


def cmd_ext(args) -> SeriesDocument:
    _need(args, "genus", "max_l")
    table = minimal_resolution(args.genus, args.max_l)
    closed = ext_vg_closed(args.genus, args.max_l)
    notes = []
    if table.entries() != closed.entries():
        notes.append(f"closed form disagrees with the resolution: {closed.entries()}")
    return SeriesDocument(QueryRecord("ext", {"genus": args.genus, "max_l": args.max_l}),
                          "betti", [[l, m, v] for (l, m), v in table.entries()], notes)


COMMANDS = {"sp": cmd_sp, "hol": cmd_hol, "map": cmd_map, "le": cmd_le, "strata": cmd_strata, "ext": cmd_ext}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache", default=None, help="cache directory (overrides $HOLMAPS_CACHE_DIR)")
    p = argparse.ArgumentParser(prog="holmaps", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    flags = {
        "sp": ("genus", "k"), "hol": ("genus", "k", "n"), "map": ("genus", "n", "truncate"),
        "le": ("genus", "v", "n"), "strata": ("genus", "k", "t"), "ext": ("genus", "max_l"),
    }
    for name, fl in flags.items():
        sp = sub.add_parser(name, parents=[common])
        for f in fl:
            default = 20 if f == "truncate" else None
            sp.add_argument("--" + f.replace("_", "-"), dest=f, type=int, default=default)
    v = sub.add_parser("verify")
    v.add_argument("--suite", choices=("fast", "all"), default="fast")
    v.add_argument("--s-rule", choices=("primitive", "adjacent"), default="primitive",
                   help="coefficient rule used for S_r (adjacent is the regression fixture)")
    return p


def _run_query(args) -> str:
    fn = COMMANDS[args.command]
    cache = ResultCache.from_env(args.cache)
    if cache is None:
        return fn(args).render(args.format)
    params = {k: v for k, v in vars(args).items() if k not in ("command", "cache")}
    key = cache_key(__version__, args.command, params)
    return cache.get_or_compute(key, lambda: fn(args).render(args.format))


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_PARAM if e.code else EXIT_OK
    if args.command == "verify":
        from .verify import run_suite
        return run_suite(args.suite, s_rule=args.s_rule)
    try:
        out = _run_query(args)
    except ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAM
    except (UnsupportedRegimeError, ResourceLimitError) as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return EXIT_REGIME
    sys.stdout.write(out)
    return EXIT_OK


def run(argv) -> tuple[int, str]:
    """Run the CLI in-process and capture standard output."""
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main(argv)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
