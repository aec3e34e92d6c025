"""Report payloads shared by the CLI: plain dicts, JSON schemas, text tables.

Payloads contain only ints, bools, strings and lists so that JSON output is
byte-stable; fractions are serialized as "num/den".
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from . import legendre as lg
from .monodromy import MonodromyMatrix, classify_even_level, orbit_decomposition
from .proj_space import ProjSpaceParams, cardinality_formula, enumerate_space, iter_canonical
from .residue_ring import Modulus
from .tower import (
    CROSS_CHECK_BUDGET,
    TowerParams,
    beta_report,
    brute_force_genus,
    genus_closed_form,
    level_degree,
    points_lower_bound,
)


def frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _summary_json(summary):
    return {str(k): v for k, v in summary.items()}


def _obj(props, required=None):
    return {
        "type": "object",
        "properties": props,
        "required": list(required if required is not None else props),
    }


_INT = {"type": "integer"}
_BOOL = {"type": "boolean"}
_STR = {"type": "string"}
_FRAC = {"type": "string", "pattern": r"^-?\d+/\d+$"}
_SUMMARY = {"type": "object", "patternProperties": {r"^\d+$": _INT}, "additionalProperties": False}

SCHEMAS = {
    "tower": _obj(
        {
            "p": _INT,
            "ell": _INT,
            "dv_bound": _INT,
            "optimal": _BOOL,
            "levels": {
                "type": "array",
                "items": _obj(
                    {
                        "n": _INT,
                        "degree": _INT,
                        "genus": _INT,
                        "points_lower_bound": _INT,
                        "ratio": _FRAC,
                    }
                ),
            },
        }
    ),
    "projspace": _obj(
        {
            "ell": _INT,
            "level": _INT,
            "rank": _INT,
            "cardinality": _INT,
            "points": {"type": "array", "items": {"type": "array", "items": _INT}},
        },
        ["ell", "level", "rank", "cardinality"],
    ),
    "orbits": _obj(
        {
            "ell": _INT,
            "level": _INT,
            "matrix": {"type": "array", "items": {"type": "array", "items": _INT}},
            "summary": _SUMMARY,
            "closed_form": {"anyOf": [_SUMMARY, {"type": "null"}]},
            "matches_lemma": {"type": ["boolean", "null"]},
        }
    ),
    "curve": _obj(
        {
            "p": _INT,
            "a": _STR,
            "point_count": _INT,
            "trace": _INT,
            "weil_poly": _STR,
            "supersingular": _BOOL,
            "strongly_supersingular": _BOOL,
            "scalar": {"type": ["integer", "null"]},
            "group": {"anyOf": [{"type": "array", "items": _INT}, {"type": "null"}]},
            "prop31": _STR,
        }
    ),
    "census": _obj(
        {
            "p": _INT,
            "parameters": _INT,
            "hasse_roots": {"type": "array", "items": _STR},
            "strongly_supersingular": {"type": "array", "items": _STR},
            "sets_agree": _BOOL,
            "rows": {"type": "array", "items": {"type": "object"}},
        }
    ),
    "hasse": _obj(
        {
            "p": _INT,
            "coefficients": {"type": "array", "items": _INT},
            "roots": {"type": "array", "items": _STR},
            "root_count": _INT,
            "expected": _INT,
            "separable": _BOOL,
        }
    ),
    "replay": _obj(
        {
            "p": _INT,
            "ell": _INT,
            "rows": {
                "type": "array",
                "items": _obj({"quantity": _STR, "formula": _STR, "computed": _STR, "match": _BOOL}),
            },
            "all_match": _BOOL,
        }
    ),
}


# -- payload builders --------------------------------------------------------


def projspace_payload(ell, level, rank, with_points=False):
    params = ProjSpaceParams.of(ell, level, rank)
    out = {"ell": ell, "level": level, "rank": rank, "cardinality": cardinality_formula(params)}
    if with_points:
        pts = enumerate_space(params)
        if len(pts) != out["cardinality"]:
            raise AssertionError("enumeration disagrees with the cardinality formula")
        out["points"] = [list(pt.coords) for pt in pts]
    return out


def orbits_payload(ell, level, matrix_text):
    m = Modulus(ell, level)
    legendre = matrix_text.strip().lower() == "legendre"
    M = MonodromyMatrix.legendre(m) if legendre else MonodromyMatrix.parse(matrix_text, m)
    dec = orbit_decomposition(M)
    summary = dec.summary()
    closed = None
    if legendre and level % 2 == 0:
        closed = classify_even_level(ell, level)
    return dec, {
        "ell": ell,
        "level": level,
        "matrix": [list(r) for r in M.entries],
        "summary": _summary_json(summary),
        "closed_form": None if closed is None else _summary_json(closed),
        "matches_lemma": None if closed is None else closed == summary,
    }


def tower_payload(p, ell, max_level):
    """Tower report with internal cross-checks; raises AssertionError on mismatch."""
    rep = beta_report(p, ell, max_level, cross_check=None)
    roots = lg.supersingular_locus(p)
    for lv in rep.levels:
        if lv.degree <= CROSS_CHECK_BUDGET:
            size = sum(1 for _ in iter_canonical(ProjSpaceParams.of(ell, lv.n)))
            if len(roots) * size != lv.points_lower_bound:
                raise AssertionError(f"level {lv.n}: lower bound does not factor as roots x |P_n|")
    return rep, rep.as_json()


def curve_payload(p, a_text, cache=None, verify=False):
    curve = lg.LegendreCurve.of(p, a_text)
    if cache is not None:
        lg.count_points(curve, cache, verify=verify)
    wd = lg.weil_data(curve, cache)
    group = None
    if curve.q <= lg.MAX_GROUP_FIELD:
        group = list(lg.group_structure(curve))
        if wd.strongly_supersingular:
            lg.verify_scalar_frobenius(curve, wd)
    return {
        "p": p,
        "a": str(curve.a),
        "point_count": wd.point_count,
        "trace": wd.trace,
        "weil_poly": wd.weil_poly_str(),
        "supersingular": wd.supersingular,
        "strongly_supersingular": wd.strongly_supersingular,
        "scalar": wd.scalar,
        "group": group,
        "prop31": lg.prop31_check(curve, wd).label(),
    }


def census_payload(p, max_p=lg.CENSUS_MAX_P, threads=1, cache=None):
    c = lg.ss_census(p, max_p=max_p, threads=threads, cache=cache)
    rows = [
        {
            "a": str(r.a),
            "point_count": r.weil.point_count,
            "trace": r.weil.trace,
            "strongly_supersingular": r.weil.strongly_supersingular,
            "scalar": r.weil.scalar,
            "prop31": r.prop31.label(),
            "group": None if r.certificate is None else list(r.certificate.structure),
        }
        for r in c.supersingular
    ]
    return {
        "p": p,
        "parameters": len(c.rows),
        "hasse_roots": [str(a) for a in c.hasse_roots],
        "strongly_supersingular": [str(r.a) for r in c.strong],
        "sets_agree": {r.a for r in c.strong} == set(c.hasse_roots),
        "rows": rows,
    }


def hasse_payload(p):
    h = lg.hasse_polynomial(p)
    roots = lg.supersingular_locus(p)
    return {
        "p": p,
        "coefficients": [c.value for c in h.coeffs],
        "roots": [str(r) for r in roots],
        "root_count": len(roots),
        "expected": (p - 1) // 2,
        "separable": True,
    }


def replay_payload(p=7, ell=5):
    """Closed forms from the construction next to brute-force values."""
    rows = []

    def row(quantity, formula, computed):
        rows.append({"quantity": quantity, "formula": str(formula), "computed": str(computed),
                     "match": str(formula) == str(computed)})

    for n in range(1, 5):
        params = ProjSpaceParams.of(ell, n)
        row(f"|P_{n}|", cardinality_formula(params), sum(1 for _ in iter_canonical(params)))
    tp = TowerParams(p, ell)
    for n in (2, 4):
        M = MonodromyMatrix.legendre(Modulus(ell, n))
        fmt = lambda s: " ".join(f"{k}:{v}" for k, v in s.items())
        row(f"orbit types n={n}", fmt(classify_even_level(ell, n)), fmt(orbit_decomposition(M).summary()))
        row(f"genus n={n}", genus_closed_form(ell, n), brute_force_genus(tp, n))
    roots = lg.supersingular_locus(p)
    row("supersingular parameters", (p - 1) // 2, len(roots))
    census = lg.ss_census(p)
    row("strongly supersingular parameters", (p - 1) // 2, len(census.strong))
    for n in (2, 4):
        size = sum(1 for _ in iter_canonical(ProjSpaceParams.of(ell, n)))
        row(f"points lower bound n={n}", points_lower_bound(p, ell, n), len(roots) * size)
    rep = beta_report(p, ell, 8)
    for lv in rep.levels:
        # brute-force genus where the orbit walk fits the budget
        g = brute_force_genus(tp, lv.n) if lv.degree <= CROSS_CHECK_BUDGET else lv.genus
        row(f"ratio n={lv.n}", frac(lv.ratio), frac(Fraction(len(roots) * level_degree(ell, lv.n), g)))
    row("beta limit", p - 1, rep.limit)
    row("optimal (limit = sqrt(q)-1)", "true", str(rep.optimal).lower())
    return {"p": p, "ell": ell, "rows": rows, "all_match": all(r["match"] for r in rows)}


# -- rendering ---------------------------------------------------------------


def table(headers, rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines)


def to_csv(headers, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(headers)
    w.writerows(rows)
    return buf.getvalue()
