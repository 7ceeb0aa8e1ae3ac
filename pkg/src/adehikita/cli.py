"""Command-line interface: ``adehikita <command> ...``.

Exit codes: 0 success or verified, 1 verification mismatch, 2 usage or
construction error.  Output is deterministic: JSON keys are sorted and no
timings are written unless ``--timing`` is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import __version__
from .rootsystem import LieType, build_root_system

SCHEMA_VERSION = "1.0"
CACHE_ENV = "ADEHIKITA_CACHE_DIR"

_ENTRY = {
    "type": "object",
    "required": ["i", "j", "c0", "c"],
    "properties": {
        "i": {"type": "integer"}, "j": {"type": "integer"},
        "c0": {"type": "string"}, "c": {"type": "array", "items": {"type": "string"}},
    },
}
_BASE = {
    "type": "object",
    "required": ["schema_version", "command"],
    "properties": {"schema_version": {"const": SCHEMA_VERSION}, "command": {"type": "string"}},
}

SCHEMAS = {
    "roots": {**_BASE, "required": _BASE["required"] + ["type", "cartan", "positive_roots"],
              "properties": {**_BASE["properties"],
                             "cartan": {"type": "array", "items": {"type": "array"}},
                             "positive_roots": {"type": "array", "items": {"type": "array"}}}},
    "freudenthal": {**_BASE, "required": _BASE["required"] + ["type", "highest", "zero_multiplicity", "dominant"]},
    "pairing": {**_BASE, "required": _BASE["required"] + ["type", "unit_unit", "unit_basis", "gram"]},
    "mult-table": {**_BASE, "required": _BASE["required"] + ["type", "kind", "source", "table"],
                   "properties": {**_BASE["properties"],
                                  "table": {"type": "object", "required": ["entries", "base_vars"],
                                            "properties": {"entries": {"type": "array", "items": _ENTRY}}}}},
    "verify": {**_BASE, "required": _BASE["required"] + ["type", "verdict", "pairs"],
               "properties": {**_BASE["properties"], "verdict": {"enum": ["match", "mismatch"]}}},
    "errata": {**_BASE, "required": _BASE["required"] + ["records"],
               "properties": {**_BASE["properties"],
                              "records": {"type": "array", "items": {
                                  "type": "object",
                                  "required": ["type", "entry", "paper_value", "computed_value"]}}}},
}


class UsageError(Exception):
    pass


class HeavyRefused(Exception):
    pass


@dataclass
class Config:
    lie_type: Optional[LieType]
    format: str
    cache_dir: Optional[str]
    allow_heavy: bool
    orientation: Optional[frozenset]
    threads: int
    timing: bool

    @property
    def rank(self) -> Optional[int]:
        return self.lie_type.rank if self.lie_type else None


def parse_orientation(text: str) -> frozenset:
    """``"3>1,4>3"`` or ``"3->1 4->3"`` into a set of directed edges."""
    edges = []
    for tok in text.replace(" ", ",").split(","):
        tok = tok.strip()
        if not tok:
            continue
        parts = tok.replace("->", ">").split(">")
        if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
            raise UsageError(f"cannot parse orientation edge {tok!r}; use i>j")
        edges.append((int(parts[0]), int(parts[1])))
    return frozenset(edges)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--cache-dir", default=None, help=f"cache directory (default ${CACHE_ENV})")
    p.add_argument("--allow-heavy", action="store_true", help="permit E7/E8 ideal closures")
    p.add_argument("--threads", type=int, default=1, help="worker cap (computation is single process)")
    p.add_argument("--orientation", default=None, help="Dynkin orientation, e.g. 3>1,4>3,4>5,5>6,4>2")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="adehikita", description="ADE cohomology and B-algebra tables")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="Cartan matrix and positive roots")
    p.add_argument("type")
    _common(p)

    p = sub.add_parser("freudenthal", help="weight multiplicities of an irreducible module")
    p.add_argument("type")
    p.add_argument("--weight", default="2theta",
                   help="'2theta', 'theta' or comma-separated simple-root coordinates")
    _common(p)

    p = sub.add_parser("pairing", help="equivariant pairing on the type-A resolution")
    p.add_argument("type")
    _common(p)

    p = sub.add_parser("mult-table", help="cohomology or B-algebra multiplication table")
    p.add_argument("kind", choices=("cohomology", "balgebra"))
    p.add_argument("type")
    p.add_argument("--source", default=None,
                   help="cohomology: localization|bg|paper; balgebra: closure|paper")
    _common(p)

    p = sub.add_parser("verify", help="compare B-algebra and cohomology tables")
    p.add_argument("type")
    p.add_argument("--cohomology", choices=("localization", "bg"), default=None)
    p.add_argument("--balgebra", choices=("closure", "paper"), default="closure")
    p.add_argument("--convention", choices=("derived", "reference"), default="derived",
                   help="type-A substitution sign (see README)")
    _common(p)

    p = sub.add_parser("errata", help="reference values that disagree with computation")
    p.add_argument("types", nargs="*")
    _common(p)
    return ap


def _config(args) -> Config:
    t = None
    if getattr(args, "type", None):
        try:
            t = LieType.parse(args.type)
        except ValueError as e:
            raise UsageError(str(e))
    cache = args.cache_dir or os.environ.get(CACHE_ENV) or None
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    orient = parse_orientation(args.orientation) if args.orientation else None
    if args.allow_heavy and cache:
        os.makedirs(cache, exist_ok=True)
        if not os.access(cache, os.W_OK):
            raise UsageError(f"cache directory {cache} is not writable")
    return Config(t, args.format, cache, args.allow_heavy, orient, args.threads, args.timing)


def _emit_json(cmd: str, payload: dict, out) -> None:
    doc = {"schema_version": SCHEMA_VERSION, "command": cmd, **payload}
    out.write(json.dumps(doc, sort_keys=True, indent=2))
    out.write("\n")


def _emit_csv(rows: List[list], out) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(r)
    out.write(buf.getvalue())


def _table_csv(table, basis: str) -> List[list]:
    rows = [["i", "j", "1"] + [f"{basis}{k}" for k in range(1, table.n + 1)]]
    for i, j in table.pairs():
        e = table.entry(i, j)
        rows.append([i, j, e.c0.to_text()] + [c.to_text() for c in e.c])
    return rows


def _heavy_estimate(t: LieType) -> str:
    rs = build_root_system(t)
    dim_sym = rs.dim * (rs.dim + 1) // 2
    v2 = rs.weyl_dimension([2 * x for x in rs.highest_root])
    return (f"{t}: the ideal closure spans {dim_sym - v2} of the {dim_sym} dimensions of Sym^2 g "
            f"(about a few seconds to a minute of exact linear algebra); rerun with --allow-heavy")


def _check_heavy(cfg: Config, t: LieType, orientation=None) -> None:
    from .joseph import HEAVY_TYPES, _cache_file, convention_fingerprint
    from .enveloping import chevalley_algebra
    if str(t) not in HEAVY_TYPES or cfg.allow_heavy:
        return
    if cfg.cache_dir:
        alg = chevalley_algebra(t, orientation)
        for mode in ("zero", "full"):
            path = _cache_file(cfg.cache_dir, t, convention_fingerprint(alg), mode)
            if path is not None and path.exists():
                return
    raise HeavyRefused(_heavy_estimate(t))


# -- commands --------------------------------------------------------------

def cmd_roots(cfg: Config, out) -> int:
    rs = build_root_system(cfg.lie_type)
    if cfg.format == "json":
        _emit_json("roots", {"type": str(rs.lie_type), "rank": rs.rank, "dimension": rs.dim,
                             "cartan": [list(r) for r in rs.cartan],
                             "positive_roots": [list(r) for r in rs.positive_roots],
                             "highest_root": list(rs.highest_root)}, out)
    elif cfg.format == "csv":
        _emit_csv([[f"a{k}" for k in range(1, rs.rank + 1)] + ["height"]]
                  + [list(r) + [sum(r)] for r in rs.positive_roots], out)
    else:
        out.write(f"{rs.lie_type}: rank {rs.rank}, dimension {rs.dim}\n")
        out.write("Cartan matrix:\n")
        for row in rs.cartan:
            out.write("  " + " ".join(f"{x:2d}" for x in row) + "\n")
        out.write(f"{len(rs.positive_roots)} positive roots:\n")
        for r in rs.positive_roots:
            out.write("  " + " ".join(str(x) for x in r) + "\n")
        out.write(f"highest root: {' '.join(str(x) for x in rs.highest_root)}\n")
    return 0


def _parse_weight(rs, text: str):
    text = text.strip().lower()
    if text in ("2theta", "2*theta"):
        return tuple(2 * x for x in rs.highest_root)
    if text == "theta":
        return tuple(rs.highest_root)
    try:
        w = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse weight {text!r}")
    if len(w) != rs.rank:
        raise UsageError(f"weight needs {rs.rank} coordinates")
    return w


def cmd_freudenthal(cfg: Config, args, out) -> int:
    from .weights import freudenthal_table
    rs = build_root_system(cfg.lie_type)
    lam = _parse_weight(rs, args.weight)
    try:
        table = freudenthal_table(rs, lam, cache_dir=cfg.cache_dir)
    except ValueError as e:
        raise UsageError(str(e))
    m0 = table[(0,) * rs.rank]
    data = table.to_json()
    if cfg.format == "json":
        _emit_json("freudenthal", {"type": str(rs.lie_type), "highest": list(lam),
                                   "zero_multiplicity": m0, "dimension": table.dimension(),
                                   "dominant": data["dominant"]}, out)
    elif cfg.format == "csv":
        _emit_csv([["weight", "multiplicity", "orbit_size"]]
                  + [[" ".join(str(x) for x in r["weight"]), r["mult"], r["orbit_size"]]
                     for r in data["dominant"]], out)
    else:
        out.write(f"{rs.lie_type} V({' '.join(str(x) for x in lam)}): m(0)={m0}, "
                  f"dimension {table.dimension()}\n")
        for r in data["dominant"]:
            out.write(f"  {' '.join(str(x) for x in r['weight'])}: {r['mult']}  (orbit {r['orbit_size']})\n")
    return 0


def cmd_pairing(cfg: Config, out) -> int:
    from .cohomology import RingElement, T1T2, an_fixed_point_data, an_pairing
    t = cfg.lie_type
    if t.family != "A":
        raise UsageError("the localization pairing is implemented for type A only")
    n = t.rank
    d = an_fixed_point_data(n)
    one = RingElement.one(n, T1T2)
    e = [RingElement.basis(k, n, T1T2) for k in range(1, n + 1)]
    uu = an_pairing(d, one, one)
    ue = [an_pairing(d, one, x) for x in e]
    gram = [[an_pairing(d, a, b) for b in e] for a in e]
    if cfg.format == "json":
        _emit_json("pairing", {"type": str(t), "unit_unit": uu.to_text(),
                               "unit_basis": [x.to_text() for x in ue],
                               "gram": [[x.to_text() for x in row] for row in gram]}, out)
    elif cfg.format == "csv":
        _emit_csv([["a", "b", "value"], ["1", "1", uu.to_text()]]
                  + [["1", f"e{k + 1}", x.to_text()] for k, x in enumerate(ue)]
                  + [[f"e{i + 1}", f"e{j + 1}", gram[i][j].to_text()] for i in range(n) for j in range(n)],
                  out)
    else:
        out.write(f"<1,1> = {uu.to_text()}\n")
        for k, x in enumerate(ue, start=1):
            out.write(f"<1,e{k}> = {x.to_text()}\n")
        out.write("Gram matrix <e_i,e_j>:\n")
        for row in gram:
            out.write("  " + " ".join(f"{x.to_text():>3}" for x in row) + "\n")
    return 0


def cmd_mult_table(cfg: Config, args, out) -> int:
    from .hikita import balgebra_table, cohomology_table
    from .cohomology import bg_cup_table, paper_cohomology_fixture
    t = cfg.lie_type
    if args.kind == "cohomology":
        source = args.source or ("localization" if t.family == "A" else "bg")
        if source == "paper":
            table, _ = paper_cohomology_fixture(t)
        elif source == "bg" and t.family == "A":
            table = bg_cup_table(build_root_system(t))
        else:
            try:
                table = cohomology_table(t, source)
            except ValueError as e:
                raise UsageError(str(e))
        basis = "e"
    else:
        source = args.source or "closure"
        if source not in ("closure", "paper"):
            raise UsageError("balgebra source must be closure or paper")
        if source == "closure":
            _check_heavy(cfg, t, cfg.orientation)
            from .joseph import b_algebra
            table = b_algebra(t, cfg.orientation, cache_dir=cfg.cache_dir)[0].table
        else:
            table = balgebra_table(t, "paper")
        basis = "h"
    if cfg.format == "json":
        _emit_json("mult-table", {"type": str(t), "kind": args.kind, "source": source,
                                  "table": table.to_json()}, out)
    elif cfg.format == "csv":
        _emit_csv(_table_csv(table, basis), out)
    else:
        out.write(f"{t} {args.kind} ({source}) over {', '.join(table.base_vars)}\n")
        for i, j in table.pairs():
            out.write(f"{basis}{i}*{basis}{j} = {table.entry(i, j).to_text(basis)}\n")
    return 0


def cmd_verify(cfg: Config, args, out) -> int:
    from .hikita import compare_tables, cohomology_table, substitution_map
    from .joseph import b_algebra, paper_relation_fixture
    import time
    t = cfg.lie_type
    if args.balgebra == "closure":
        _check_heavy(cfg, t, cfg.orientation)
    source = args.cohomology or ("localization" if t.family == "A" else "bg")
    try:
        t0 = time.perf_counter()
        H = cohomology_table(t, source)
        t1 = time.perf_counter()
        if args.balgebra == "closure":
            B = b_algebra(t, cfg.orientation, cache_dir=cfg.cache_dir)[0].table
        else:
            B = paper_relation_fixture(t).table
        t2 = time.perf_counter()
        smap = substitution_map(t, args.convention)
        if smap.direction == "cohomology->balgebra":
            rep = compare_tables(t, smap.apply_table(H), B)
        else:
            rep = compare_tables(t, smap.apply_table(B), H)
        t3 = time.perf_counter()
    except (ValueError, ArithmeticError) as e:
        raise RuntimeError(str(e))
    rep.cohomology_source, rep.balgebra_source, rep.convention = source, args.balgebra, args.convention
    rep.seconds = {"cohomology": t1 - t0, "balgebra": t2 - t1, "compare": t3 - t2}
    basis = "h" if t.family == "A" else "e"
    if cfg.format == "json":
        payload = rep.to_json(basis)
        if cfg.timing:
            payload["seconds"] = {k: round(v, 3) for k, v in sorted(rep.seconds.items())}
        _emit_json("verify", payload, out)
    elif cfg.format == "csv":
        _emit_csv([["i", "j", "match", "difference"]]
                  + [[o.i, o.j, int(o.match), o.difference.to_text(basis) if o.difference else ""]
                     for o in rep.outcomes], out)
    else:
        out.write(f"{rep.summary()}\n")
        for o in rep.mismatches():
            out.write(f"  ({o.i},{o.j}): difference {o.difference.to_text(basis)}\n")
        if cfg.timing:
            out.write("  " + ", ".join(f"{k} {v:.2f}s" for k, v in sorted(rep.seconds.items())) + "\n")
    return 0 if rep.ok else 1


def cmd_errata(cfg: Config, args, out) -> int:
    from .errata import DEFAULT_TYPES, errata_report
    from .joseph import HEAVY_TYPES
    try:
        types = [LieType.parse(x) for x in (args.types or DEFAULT_TYPES)]
    except ValueError as e:
        raise UsageError(str(e))
    for t in types:
        if str(t) in HEAVY_TYPES:
            _check_heavy(cfg, t)
    records = errata_report(types, cache_dir=cfg.cache_dir, allow_heavy=True)
    if cfg.format == "json":
        _emit_json("errata", {"records": records}, out)
    elif cfg.format == "csv":
        _emit_csv([["type", "kind", "entry", "paper_value", "computed_value"]]
                  + [[r["type"], r["kind"], r["entry"], r["paper_value"], r["computed_value"]]
                     for r in records], out)
    else:
        for r in records:
            out.write(f"{r['type']} {r['kind']} {r['entry']}\n  reference: {r['paper_value']}\n"
                      f"  computed:  {r['computed_value']}\n")
        out.write(f"{len(records)} records\n")
    return 0


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 2
    # Buffer so that a failure never leaves a partial table on stdout.
    buf = io.StringIO()
    try:
        cfg = _config(args)
        if cfg.orientation is not None and cfg.lie_type is not None:
            from .rootsystem import AsymmetryFunction
            try:
                AsymmetryFunction.for_type(cfg.lie_type, cfg.orientation)
            except ValueError as e:
                raise UsageError(str(e))
        cmd = args.command
        if cmd == "roots":
            code = cmd_roots(cfg, buf)
        elif cmd == "freudenthal":
            code = cmd_freudenthal(cfg, args, buf)
        elif cmd == "pairing":
            code = cmd_pairing(cfg, buf)
        elif cmd == "mult-table":
            code = cmd_mult_table(cfg, args, buf)
        elif cmd == "verify":
            code = cmd_verify(cfg, args, buf)
        else:
            code = cmd_errata(cfg, args, buf)
    except UsageError as e:
        err.write(f"adehikita: error: {e}\n")
        return 2
    except HeavyRefused as e:
        err.write(f"adehikita: refusing heavy computation. {e}\n")
        return 2
    except (RuntimeError, ArithmeticError, ValueError) as e:
        err.write(f"adehikita: construction error: {e}\n")
        return 2
    out.write(buf.getvalue())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
