"""JSON and aligned-text rendering of reports"""
import json
from typing import Dict, Iterable, List, Tuple

from pydantic import BaseModel

from src.core.config import settings
from src.models.cohomology import CoverLift, ModelCount
from src.models.datum import ValidationReport
from src.models.report import AnalysisReport, FanReport

WIDTH = 22


def to_json(model: BaseModel) -> str:
    """Byte-stable JSON: sorted keys, fixed indent"""
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=settings.JSON_INDENT)


def _rows(pairs: Iterable[Tuple[str, object]]) -> List[str]:
    return [f"{label + ':':<{WIDTH}}{value}" for label, value in pairs]


def _cycles(permutation: Dict[str, str]) -> str:
    seen, cycles = set(), []
    for start in sorted(permutation):
        if start in seen or permutation[start] == start:
            seen.add(start)
            continue
        cycle, x = [], start
        while x not in seen:
            seen.add(x)
            cycle.append(x)
            x = permutation[x]
        cycles.append("(" + " ".join(cycle) + ")")
    return "".join(cycles) or "id"


def render_validation(report: ValidationReport) -> str:
    if report.is_valid:
        lines = ["✓ no violations"]
    else:
        lines = [f"✗ {len(report.violations)} violation(s)"]
        lines += [f"  [{v.tag.value}] {v.subject}: {v.message}" for v in report.violations]
    lines.append(f"  checks: {report.check_set} ({report.note})")
    return "\n".join(lines)


def render_count(count: ModelCount) -> str:
    lines = _rows([("models", count.count), ("quotient order", count.quotient_order)])
    if count.oracle_count is not None:
        lines += _rows([("oracle (H1 brute)", count.oracle_count)])
    for orbit in count.orbits:
        lines.append(
            f"  orbit of {orbit.base_point}: size {orbit.size}, "
            f"|stabilizer| = {orbit.stabilizer_order}, |Hom(stab, Z/2)| = {orbit.homs_to_2}"
        )
    lines.append(f"  note: {count.note}")
    return "\n".join(lines)


def render_analysis(report: AnalysisReport) -> str:
    d = report.datum
    lines = [f"datum: {d.name or '<unnamed>'}"]
    if d.notes:
        lines.append(f"  notes: {d.notes}")
    lines.append(render_validation(report.validation))
    if report.verdict is None:
        return "\n".join(lines)

    aut = report.aut
    lines += _rows([
        ("Omega / (1) / (2)", f"{report.omega.omega} / {report.omega.omega1} / {report.omega.omega2}"),
        ("Sigma^N", ", ".join(str(list(v)) for v in aut.sigma_N) or "-"),
        ("X / Lambda", str(aut.character_group)),
        ("self-normalizing", aut.self_normalizing),
        ("spherically closed", aut.spherically_closed),
        ("Gamma", f"{report.galois.group.name or 'finite group'} of order {report.galois.group.order}"),
        ("inner form", report.inner_form.inner_form),
        ("Dynkin automorphisms", report.inner_form.diagram_automorphisms),
        ("preservation for free", f"{report.inner_form.preservation_automatic} ({report.inner_form.reason})"),
        ("invariants preserved", report.preservation.preserved),
        ("verdict", report.verdict.verdict.value),
        ("because", report.verdict.reason),
        ("rule", f"{report.verdict.rule.value}: {report.verdict.citation}"),
    ])
    for orbit in report.orbits:
        lines.append(f"  orbit {[p.key for p in orbit.points]} stabilizer {list(orbit.stabilizer)}")
    if report.count is not None:
        lines.append(render_count(report.count))
    if report.swap_demo is not None:
        demo = report.swap_demo
        lines += _rows([
            ("m_gamma", _cycles(demo.m_gamma)),
            (f"a (swap {demo.swapped_root})", _cycles(demo.a)),
            ("a o m_gamma", _cycles(demo.composed)),
            ("order", demo.order),
        ])
    lines.append(f"  {report.verdict.note}")
    return "\n".join(lines)


def render_cover(lift: CoverLift) -> str:
    lines = ["labeling:"]
    lines += [f"  {point}: {', '.join(names)}" for point, names in sorted(lift.labeling.items())]
    lines.append("m':")
    lines += [f"  {g}: {_cycles(p)}" for g, p in sorted(lift.lifts.items())]
    lines.append("a = m' o m^-1:")
    lines += [f"  {g}: {_cycles(p)}" for g, p in sorted(lift.corrections.items())]
    return "\n".join(lines)


def render_fan(report: FanReport) -> str:
    lines = [f"fan: {report.fan.name or '<unnamed>'} ({len(report.fan.cones)} cone(s), axioms unchecked)"]
    if report.stability is not None:
        s = report.stability
        lines += _rows([("Gamma-stable", s.stable), ("cones permuted", s.fan_permuted)])
        for failure in s.failures:
            moved = ", ".join(
                what for what, flag in (("cone", failure.cone_moved), ("colors", failure.colors_moved)) if flag
            )
            lines.append(f"  cone {failure.cone} under {failure.element}: {moved} moved")
    e = report.embedding
    lines += _rows([("embedding verdict", e.verdict.value), ("rule", f"{e.rule.value}: {e.citation}")])
    if e.failed:
        lines.append(f"  hypotheses not met: {', '.join(h.value for h in e.failed)}")
    lines += [f"  {note}" for note in e.notes]
    return "\n".join(lines)
