"""Command-line front end: tables, verification suites, caching.

Exit codes: 0 when every reported check passes, 1 when any check fails,
2 on usage or input errors.  Output is deterministic for a fixed command
line, and running with or without a cache directory produces identical
results.
"""

import argparse
import json
import os
import sys

from .center import (
    center_degree,
    center_dims,
    expected_center_dim,
    sigma_surjectivity_check,
)
from .engine import build
from .fields import field_from_descriptor
from .frobenius import (
    CATALOG_NAMES,
    REJECT_NAMES,
    algebra_from_json,
    catalog,
    deformation,
    generic_fiber_matches_catalog,
    is_frobenius,
    make_frobenius,
    special_fiber_matches_catalog,
    specialize_pair,
)
from . import splitcase

SUITES = (
    "ranks",
    "split",
    "center",
    "resolution",
    "sigma",
    "invariants",
    "deformations",
    "classification",
)
RANK_FIELDS = ("q", "fp:2", "fp:3", "fp:5", "fp:7")
CENTER_FIELDS = ("q", "fp:2", "fp:5")
GENERIC_SAMPLE = {2: 1, 3: 1, 4: 2, 5: 2, 6: 3}


class InputError(ValueError):
    """Bad user input: unknown name, unreadable file, invalid algebra."""


def _expected_dim(d):
    return 5 * (d + 1) if d % 2 == 0 else 4 * (d + 1)


def _expected_split(d):
    if d % 2 == 0:
        return d + 1, 4 * (d + 1)
    return 2 * (d + 1), 2 * (d + 1)


def _suite_cap(tag, flag):
    # degree cap: 12 over Q, 16 over a prime field, unless overridden
    if flag is not None:
        return flag
    return 12 if tag == "q" else 16


# ---------------------------------------------------------------------------
# engine builds shared across suites


class _Builds:
    def __init__(self, cache_dir, plan):
        self.cache_dir = cache_dir
        self.plan = plan
        self._memo = {}

    def get(self, name, tag):
        key = (name, tag)
        if key not in self._memo:
            pair = catalog(name, field_from_descriptor(tag))
            self._memo[key] = build(pair, self.plan[tag], cache_dir=self.cache_dir)
        return self._memo[key]


def _build_plan(suites, dmax):
    plan = {}

    def bump(tag, d):
        plan[tag] = max(plan.get(tag, 0), d)

    if "ranks" in suites or "split" in suites:
        for tag in RANK_FIELDS:
            bump(tag, dmax if dmax is not None else 12)
    if "center" in suites:
        for tag in CENTER_FIELDS:
            bump(tag, _suite_cap(tag, dmax) + 1)
    if "sigma" in suites:
        for tag in CENTER_FIELDS:
            bump(tag, max(_suite_cap(tag, dmax), 5))
    if "resolution" in suites:
        bump("q", dmax if dmax is not None else 16)
    if "invariants" in suites:
        bump("q", (dmax if dmax is not None else 12) + 1)
    return plan


# ---------------------------------------------------------------------------
# verification suites; each yields records ending in a boolean "pass"


def _suite_ranks(builds, fields, dmax):
    cap = dmax if dmax is not None else 12
    for name in CATALOG_NAMES:
        for tag in fields:
            g = builds.get(name, tag)
            for d in range(cap + 1):
                dim = g.dim(d)
                exp = _expected_dim(d)
                yield {
                    "suite": "ranks",
                    "pair": name,
                    "field": tag,
                    "degree": d,
                    "dim": dim,
                    "expected": exp,
                    "pass": dim == exp,
                }


def _suite_split(builds, fields, dmax):
    cap = dmax if dmax is not None else 12
    for name in CATALOG_NAMES:
        for tag in fields:
            g = builds.get(name, tag)
            for d in range(cap + 1):
                dr, ds = g.split_dims(d)
                er, es = _expected_split(d)
                yield {
                    "suite": "split",
                    "pair": name,
                    "field": tag,
                    "degree": d,
                    "dim_r": dr,
                    "dim_s": ds,
                    "expected_r": er,
                    "expected_s": es,
                    "pass": (dr, ds) == (er, es),
                }


def _suite_center(builds, fields, dmax):
    for name in CATALOG_NAMES:
        for tag in fields:
            cap = _suite_cap(tag, dmax)
            g = builds.get(name, tag)
            for d in range(cap + 1):
                dim = center_degree(g, d).dim
                exp = expected_center_dim(d)
                yield {
                    "suite": "center",
                    "pair": name,
                    "field": tag,
                    "degree": d,
                    "dim_center": dim,
                    "expected": exp,
                    "pass": dim == exp,
                }


def _suite_resolution(builds, fields, dmax):
    cap = dmax if dmax is not None else 16
    if "q" not in fields:
        return
    for name in CATALOG_NAMES:
        g = builds.get(name, "q")
        hr = [g.split_dims(d)[0] for d in range(cap + 1)]
        hs = [g.split_dims(d)[1] for d in range(cap + 1)]

        def h(seq, d):
            return seq[d] if d >= 0 else 0

        for d in range(cap + 1):
            lhs_r = h(hr, d - 2) - h(hs, d - 1) + hr[d] - (1 if d == 0 else 0)
            lhs_s = h(hs, d - 2) - 4 * h(hr, d - 1) + hs[d] - (4 if d == 0 else 0)
            yield {
                "suite": "resolution",
                "pair": name,
                "field": "q",
                "degree": d,
                "alternating_r": lhs_r,
                "alternating_s": lhs_s,
                "pass": lhs_r == 0 and lhs_s == 0,
            }


def _suite_sigma(builds, fields, dmax):
    for name in CATALOG_NAMES:
        for tag in fields:
            cap = _suite_cap(tag, dmax)
            g = builds.get(name, tag)
            ok = sigma_surjectivity_check(g, cap)
            yield {
                "suite": "sigma",
                "pair": name,
                "field": tag,
                "max_degree": cap,
                "pass": ok,
            }


def _suite_invariants(builds, fields, dmax):
    cap = dmax if dmax is not None else 12
    yield {
        "suite": "invariants",
        "check": "relation",
        "pass": splitcase.invariant_relation_check(),
    }
    yield {
        "suite": "invariants",
        "check": "no-lower-relation",
        "pass": splitcase.no_lower_relation_check(),
    }
    if "q" not in fields:
        return
    g = builds.get("split4", "q")
    inv = splitcase.invariant_dims(cap)
    for d in range(cap + 1):
        zc = center_degree(g, d).dim
        yield {
            "suite": "invariants",
            "check": "dims-vs-center",
            "degree": d,
            "invariant_dim": inv[d],
            "center_dim": zc,
            "pass": inv[d] == zc,
        }


def _deformation_records(n, char2, cap, cache_dir):
    label = f"{n}c" if char2 else str(n)
    fam = deformation(n, char2)
    yield {
        "suite": "deformations",
        "family": label,
        "check": "special-fiber-constants",
        "pass": special_fiber_matches_catalog(n, char2),
    }
    if not char2 and n in GENERIC_SAMPLE:
        at = GENERIC_SAMPLE[n]
        yield {
            "suite": "deformations",
            "family": label,
            "check": f"generic-fiber-at-{at}",
            "pass": generic_fiber_matches_catalog(n, at, char2),
        }
    p_u = make_frobenius(fam.algebra, fam.lam)
    p_0 = specialize_pair(p_u, "q", 0)
    g_u = build(p_u, cap + 1, cache_dir=cache_dir)
    g_0 = build(p_0, cap + 1, cache_dir=cache_dir)
    for d in range(cap + 1):
        du, d0 = g_u.dim(d), g_0.dim(d)
        zu = center_degree(g_u, d).dim
        z0 = center_degree(g_0, d).dim
        yield {
            "suite": "deformations",
            "family": label,
            "check": "fiber-dims",
            "degree": d,
            "dim_generic": du,
            "dim_special": d0,
            "z_generic": zu,
            "z_special": z0,
            "pass": du == d0 and zu == z0,
        }


def _suite_deformations(builds, fields, dmax):
    cap = dmax if dmax is not None else 8
    for n in range(1, 7):
        yield from _deformation_records(n, False, cap, builds.cache_dir)
    yield from _deformation_records(6, True, cap, builds.cache_dir)


def _suite_classification(builds, fields, dmax):
    for name in CATALOG_NAMES + REJECT_NAMES:
        expected = name in CATALOG_NAMES
        alg = catalog(name).algebra if expected else catalog(name)
        ok, witness = is_frobenius(alg)
        yield {
            "suite": "classification",
            "algebra": name,
            "expected_frobenius": expected,
            "computed": ok,
            "witness": "" if witness is None else ",".join(map(str, witness)),
            "pass": ok == expected,
        }


_SUITE_FNS = {
    "ranks": _suite_ranks,
    "split": _suite_split,
    "center": _suite_center,
    "resolution": _suite_resolution,
    "sigma": _suite_sigma,
    "invariants": _suite_invariants,
    "deformations": _suite_deformations,
    "classification": _suite_classification,
}


# ---------------------------------------------------------------------------
# output formatting


def _format_rows(rows, fmt):
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    keys = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    table = [[_cell(k, r.get(k, "")) for k in keys] for r in rows]
    if fmt == "csv":
        lines = [",".join(keys)]
        lines += [",".join(row) for row in table]
        return "\n".join(lines) + "\n"
    widths = [
        max(len(k), max((len(row[i]) for row in table), default=0))
        for i, k in enumerate(keys)
    ]
    out = ["| " + " | ".join(k.ljust(w) for k, w in zip(keys, widths)) + " |"]
    out.append("| " + " | ".join("-" * w for w in widths) + " |")
    for row in table:
        out.append("| " + " | ".join(c.ljust(w) for c, w in zip(row, widths)) + " |")
    return "\n".join(out) + "\n"


def _cell(key, v):
    if isinstance(v, bool):
        if key == "pass":
            return "pass" if v else "FAIL"
        return "true" if v else "false"
    return str(v)


def _emit(rows, fmt, default):
    sys.stdout.write(_format_rows(rows, fmt or default))


def _exit_code(rows):
    return 0 if all(r.get("pass", True) for r in rows) else 1


# ---------------------------------------------------------------------------
# commands


def _cache_dir(args):
    if args.no_cache:
        return None
    return os.environ.get("FROBPI_CACHE") or args.cache_dir


def _resolve_pair(args):
    field = args.field or "q"
    if args.algebra:
        try:
            with open(args.algebra, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise InputError(f"cannot read {args.algebra}: {e}") from e
        try:
            alg, lam = algebra_from_json(text)
        except (ValueError, KeyError) as e:
            raise InputError(f"bad algebra file: {e}") from e
        if lam is None:
            ok, witness = is_frobenius(alg)
            if not ok:
                raise InputError("input algebra is not Frobenius")
            lam = witness
        return make_frobenius(alg, lam), args.algebra
    name = args.pair or "bikwad"
    if name not in CATALOG_NAMES:
        raise InputError(f"unknown pair {name!r}; choose from {', '.join(CATALOG_NAMES)}")
    return catalog(name, field_from_descriptor(field)), name


def cmd_dims(args):
    pair, _ = _resolve_pair(args)
    cap = args.max_degree if args.max_degree is not None else 12
    g = build(pair, max(cap, 1), cache_dir=_cache_dir(args))
    rows = []
    for d in range(cap + 1):
        dim = g.dim(d)
        exp = _expected_dim(d)
        dr, ds = g.split_dims(d)
        er, es = _expected_split(d)
        rows.append(
            {
                "degree": d,
                "dim": dim,
                "expected": exp,
                "dim_r": dr,
                "dim_s": ds,
                "expected_r": er,
                "expected_s": es,
                "pass": dim == exp and (dr, ds) == (er, es),
            }
        )
    _emit(rows, args.format, "md")
    return _exit_code(rows)


def cmd_verify(args):
    if args.suite:
        suites = []
        for part in args.suite.split(","):
            part = part.strip()
            if part not in SUITES:
                raise InputError(f"unknown suite {part!r}; choose from {', '.join(SUITES)}")
            suites.append(part)
    else:
        suites = list(SUITES)
    if args.field:
        field_from_descriptor(args.field)
        restrict = (args.field,)
    else:
        restrict = None

    builds = _Builds(_cache_dir(args), _build_plan(suites, args.max_degree))
    rows = []
    for s in SUITES:
        if s not in suites:
            continue
        full = RANK_FIELDS if s in ("ranks", "split") else CENTER_FIELDS
        fields = full if restrict is None else tuple(t for t in full if t in restrict)
        rows.extend(_SUITE_FNS[s](builds, fields, args.max_degree))
    _emit(rows, args.format, "json")
    return _exit_code(rows)


def cmd_catalog(args):
    rows = []
    for name in CATALOG_NAMES:
        pair = catalog(name)
        rows.append(
            {
                "name": name,
                "frobenius": True,
                "basis": " ".join(pair.algebra.names),
                "functional": ",".join(pair.field.fmt(c) for c in pair.lam),
            }
        )
    for name in REJECT_NAMES:
        alg = catalog(name)
        rows.append(
            {
                "name": name,
                "frobenius": False,
                "basis": " ".join(alg.names),
                "functional": "",
            }
        )
    _emit(rows, args.format, "md")
    return 0


def cmd_deform(args):
    if args.family is None:
        raise InputError("deform needs --family <1..6>")
    if not 1 <= args.family <= 6:
        raise InputError("family number must be 1..6")
    cap = args.max_degree if args.max_degree is not None else 8
    fam = deformation(args.family, args.char2)
    p_u = make_frobenius(fam.algebra, fam.lam)
    p_0 = specialize_pair(p_u, "q", 0)
    g_u = build(p_u, max(cap, 1), cache_dir=_cache_dir(args))
    g_0 = build(p_0, max(cap, 1), cache_dir=_cache_dir(args))
    rows = []
    for d in range(cap + 1):
        du, d0 = g_u.dim(d), g_0.dim(d)
        rows.append(
            {
                "degree": d,
                "dim_special": d0,
                "dim_generic": du,
                "special_fiber": fam.special,
                "generic_fiber": fam.generic,
                "pass": du == d0,
            }
        )
    _emit(rows, args.format, "md")
    return _exit_code(rows)


def cmd_quiver(args):
    n = args.arrows
    if n < 1:
        raise InputError("--arrows must be at least 1")
    cap = args.max_degree if args.max_degree is not None else 12
    if n != 4:
        mats, totals = splitcase.quiver_hilbert(n, cap)
        rows = [
            {
                "degree": d,
                "quiver_total": totals[d],
                "column0_sum": splitcase._column0(mats[d]),
            }
            for d in range(cap + 1)
        ]
        _emit(rows, args.format, "md")
        return 0
    g = build(catalog("split4"), cap + 1, cache_dir=_cache_dir(args))
    rows = [
        {
            "degree": d,
            "quiver_total": qt,
            "engine_dim": ed,
            "invariant_dim": iv,
            "center_dim": zc,
            "pass": qt == ed and iv == zc,
        }
        for d, qt, ed, iv, zc in splitcase.split_table(g, cap)
    ]
    _emit(rows, args.format, "md")
    return _exit_code(rows)


def cmd_invariants(args):
    cap = args.max_degree if args.max_degree is not None else 12
    dims = splitcase.invariant_dims(cap)
    rows = []
    for d in range(cap + 1):
        exp = expected_center_dim(d)
        rows.append(
            {"degree": d, "dim": dims[d], "expected": exp, "pass": dims[d] == exp}
        )
    _emit(rows, args.format, "md")
    return _exit_code(rows)


# ---------------------------------------------------------------------------
# argument parsing


def _parser():
    p = argparse.ArgumentParser(
        prog="frobpi",
        description="Graded algebras of rank-4 Frobenius pairs: tables and checks.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, field=True):
        if field:
            sp.add_argument("--pair", help="catalog algebra name")
            sp.add_argument("--algebra", help="path to an algebra JSON file")
            sp.add_argument("--field", help="q, fp:<p>, or qu (default q)")
        sp.add_argument("--max-degree", type=int, dest="max_degree")
        sp.add_argument("--format", choices=("json", "csv", "md"))
        sp.add_argument("--cache-dir", dest="cache_dir")
        sp.add_argument("--no-cache", action="store_true", dest="no_cache")

    sp = sub.add_parser("dims", help="graded dimension table for one algebra")
    common(sp)
    sp.set_defaults(fn=cmd_dims)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", help="comma-separated: " + ",".join(SUITES))
    common(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("catalog", help="list the classified algebras")
    common(sp, field=False)
    sp.set_defaults(fn=cmd_catalog)

    sp = sub.add_parser("deform", help="fiber dimensions along a family")
    sp.add_argument("--family", type=int)
    sp.add_argument("--char2", action="store_true")
    common(sp, field=False)
    sp.set_defaults(fn=cmd_deform)

    sp = sub.add_parser("quiver", help="star-quiver Hilbert series table")
    sp.add_argument("--arrows", type=int, default=4)
    common(sp, field=False)
    sp.set_defaults(fn=cmd_quiver)

    sp = sub.add_parser("invariants", help="plane invariant dimensions")
    common(sp, field=False)
    sp.set_defaults(fn=cmd_invariants)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        print(f"frobpi: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"frobpi: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
