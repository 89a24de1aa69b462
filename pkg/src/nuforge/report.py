"""Report assembly. One JSON-ready dict is built; the text form is rendered from it."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from .language import TypeTag, TypingReport
from .pipeline import Analysis
from .qfield import ExtReal, QNum
from .sequence import KRegular, NuSequence
from .oracle import OracleVerdict

SCHEMA = "nu-forge-report/1"
THETA_DIGITS = 20


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _num(v: QNum, digits: int) -> dict[str, str]:
    return {"exact": v.exact(), "a": _frac(v.a), "b": _frac(v.b), "decimal": v.decimal(digits)}


def _type(t: TypeTag, labels: Sequence[str]) -> list:
    return [labels[t.letter], t.offset]


def _typing(rep: TypingReport, labels: Sequence[str], fmt) -> dict[str, Any]:
    return {
        "delay": rep.delay,
        "factor_count": len(rep.factors),
        "factors": [{"factor": fmt(u), "type": _type(rep.typed[u], labels)} for u in rep.factors],
        "separable": rep.separable,
        "type_order": [_type(t, labels) for t in rep.type_order] if rep.type_order else None,
    }


def term_record(n: int, v: ExtReal, digits: int) -> dict[str, Any]:
    return {
        "index": n,
        "value": v.render(),
        "a": _frac(v.value.a),
        "b": _frac(v.value.b),
        "tag": v.tag.word,
        "decimal": v.value.decimal(digits),
    }


def build_report(
    analysis: Analysis,
    seqs: dict[int, NuSequence],
    config: dict[str, Any],
    digits: int = 12,
    recurrence: KRegular | None = None,
    oracle: dict[int, list[OracleVerdict]] | None = None,
) -> dict[str, Any]:
    m = analysis.original
    tr = analysis.trace
    prepared = tr.prepared
    im = analysis.interval_morphism
    final = im.morphism
    field = analysis.field
    out: dict[str, Any] = {"schema": SCHEMA, "input": dict(config, morphism=str(m))}
    out["validity"] = {
        "verdict": analysis.validity.verdict.value,
        "detail": analysis.validity.detail,
        "primitive": analysis.validity.primitive,
        "fixed_points": [m.labels[x] for x in analysis.fixed_letters],
    }
    out["normalization"] = {
        "orientation": analysis.orientation.value,
        "squared": tr.squared,
        "source": str(tr.source),
        "transfers": [m.format(s) for s in tr.transfers],
        "pi": m.format(tr.pi),
        "shift": tr.shift,
        "prepared": str(prepared),
    }
    out["typing"] = _typing(analysis.typing, prepared.labels, prepared.format)
    if analysis.extension is not None:
        ext = analysis.extension
        out["extension"] = {
            "delay": ext.coding.delay,
            "alphabet": [{"label": lab, "factor": f} for lab, f in ext.coding.table()],
            "chi": final.rules(),
            "typing": _typing(analysis.final_typing, final.labels, final.format),
        }
    else:
        out["extension"] = None
    theta = field.theta
    out["interval_morphism"] = {
        "theta": {
            "polynomial": field.polynomial(),
            "trace": field.trace,
            "det": field.det,
            "rational": field.rational_theta is not None,
            **_num(theta, THETA_DIGITS),
        },
        "letter_frequencies": [
            dict(letter=lab, **_num(v, digits)) for lab, v in zip(prepared.labels, analysis.binary_frequencies)
        ],
        "letter_intervals": [
            {"letter": lab, "lo": iv.lo.render(), "hi": iv.hi.render(), "length": iv.length.exact()}
            for lab, iv in zip(final.labels, im.letter_intervals)
        ],
        "type_order": [_type(t, final.labels) for t in im.type_order],
        "pieces": [
            {
                "type": _type(pc.type, final.labels),
                "formula": pc.formula(im.theta_text),
                "intercept": _num(pc.intercept, digits),
                "domain": str(pc.domain),
                "range": str(pc.range),
            }
            for row in im.pieces
            for pc in row
        ],
    }
    out["sequences"] = [
        {
            "fixed_point": m.labels[x],
            "shift": seq.shift,
            "cycles": [list(c) for c in seq.cycles],
            "anchors": [
                {"index": link.index, "piece": _type(link.piece, final.labels)}
                for link in seq.links
                if any(link.index == c[0] for c in seq.cycles)
            ],
            "terms": [term_record(n, v, digits) for n, v in enumerate(seq.terms)],
        }
        for x, seq in seqs.items()
    ]
    if recurrence is not None:
        out["recurrence"] = {
            "k": recurrence.k,
            "constants": [
                dict(type=_type(t, final.labels), **_num(c, digits))
                for t, c in sorted(recurrence.constants.items())
            ],
        }
    else:
        out["recurrence"] = None
    if oracle is not None:
        out["oracle"] = [
            {
                "fixed_point": m.labels[x],
                "checks": [{"name": v.name, "passed": v.passed, "detail": v.detail} for v in verdicts],
            }
            for x, verdicts in oracle.items()
        ]
    else:
        out["oracle"] = None
    return out


def render_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _typed_line(entry: dict) -> str:
    lab, p = entry["type"]
    return f"    {entry['factor']}  ({lab},{p})"


def _order(types) -> str:
    return " < ".join(f"({lab},{p})" for lab, p in types)


def render_text(report: dict[str, Any], verbose: bool = False) -> str:
    lines: list[str] = []
    add = lines.append
    add(f"nu-forge report ({report['schema']})")
    add(f"input: {report['input']['morphism']}")
    add("")
    v = report["validity"]
    add("[1] validity")
    add(f"  verdict: {v['verdict']} ({v['detail']})")
    add(f"  fixed points: {', '.join(v['fixed_points'])}")
    add("")
    n = report["normalization"]
    add("[2] normalization")
    add(f"  orientation: {n['orientation']}")
    add(f"  squared: {'yes, fixed points are unchanged' if n['squared'] else 'no'}")
    add(f"  suffix transfers: {', '.join(n['transfers']) or 'none'}")
    add(f"  pi: {n['pi'] or '(empty)'}  shift {n['shift']}")
    add(f"  prepared morphism: {n['prepared']}")
    add("")
    t = report["typing"]
    add("[3] synchronization delay and typing")
    add(f"  delay D = {t['delay']} (every length-D factor has one type and both letters)")
    add(f"  factors of length D: {t['factor_count']}")
    if verbose:
        lines.extend(_typed_line(e) for e in t["factors"])
    add(f"  separable: {'yes' if t['separable'] else 'no'}")
    if t["type_order"]:
        add(f"  type order: {_order(t['type_order'])}")
    add("")
    ext = report["extension"]
    add("[4] extended alphabet")
    if ext is None:
        add("  not needed")
    else:
        add(f"  letters: {len(ext['alphabet'])} factors of length {ext['delay']}")
        for e in ext["alphabet"]:
            add(f"    {e['label']} = {e['factor']}")
        add("  chi:")
        for r in ext["chi"]:
            add(f"    {r}")
        et = ext["typing"]
        if et["delay"] is None:
            add(f"  chi delay: above the cap {report['input']['delay_cap']}; type order derived from binary extensions")
        else:
            add(f"  chi delay: {et['delay']}  separable: {'yes' if et['separable'] else 'no'}")
        if verbose and et["type_order"]:
            add(f"  chi type order: {_order(et['type_order'])}")
    add("")
    im = report["interval_morphism"]
    add("[5] interval morphism")
    th = im["theta"]
    if th["rational"]:
        add(f"  theta = {th['exact']}")
    else:
        add(f"  theta: {th['polynomial']} = 0, theta = {th['decimal']}")
    for f in im["letter_frequencies"]:
        add(f"  frequency of {f['letter']}: {f['exact']} = {f['decimal']}")
    for iv in im["letter_intervals"]:
        add(f"  I_{iv['letter']} = [{iv['lo']}, {iv['hi']}]")
    add(f"  type order: {_order(im['type_order'])}")
    for pc in im["pieces"]:
        lab, p = pc["type"]
        add(f"  f_{{{lab},{p}}}(x) = {pc['formula']}  on {pc['domain']} onto J = {pc['range']}")
    add("")
    add("[6] sequences")
    for seq in report["sequences"]:
        anchors = ", ".join(f"nu[{a['index']}] fixed by f_{{{a['piece'][0]},{a['piece'][1]}}}" for a in seq["anchors"])
        add(f"  fixed point {seq['fixed_point']}: {anchors}")
        add("n\texact\ttag\tdecimal")
        for term in seq["terms"]:
            add(f"{term['index']}\t{term['value']}\t{term['tag']}\t{term['decimal']}")
        if verbose:
            open_terms = [str(t["index"]) for t in seq["terms"] if t["tag"] == "neutral" and t["value"] not in ("0", "1")]
            if open_terms:
                add(f"  tag unknown for neutral interior terms: {', '.join(open_terms)}")
    rec = report["recurrence"]
    if rec is not None:
        add("")
        add(f"k-regular recurrence: nu[{rec['k']}n+p] = nu[n]/{rec['k']} + C(w[n],p)")
        for c in rec["constants"]:
            add(f"  C({c['type'][0]},{c['type'][1]}) = {c['exact']}")
    if report["oracle"] is not None:
        add("")
        add("oracle checks")
        for block in report["oracle"]:
            for c in block["checks"]:
                add(f"  {block['fixed_point']} {c['name']}: {'pass' if c['passed'] else 'FAIL'} ({c['detail']})")
    return "\n".join(lines) + "\n"
