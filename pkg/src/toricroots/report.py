"""Report rendering: human-readable text and deterministic JSON.

All ray labels in reports are 1-based input labels.  Dual-basis star
notation (p1*, -p1*+p2*, ...) refers to the canonical basis order, which
the report states explicitly.  Structured output is byte-deterministic for
a fixed input and seed: keys are sorted and sets are emitted sorted.
"""

import json

from .analyze import Analysis
from .errors import InputError
from .lattice import Vec
from .rays import AdditiveStructure
from .roots import dual_coordinates
from .witness import DerivationTuple, SeparationCertificate


def star_notation(structure: AdditiveStructure, vector: Vec) -> str:
    """Render a dual vector on the dual basis, distinguished term first."""
    coords = dual_coordinates(structure, vector)
    order = sorted(range(len(coords)), key=lambda l: (coords[l] != -1, l))
    parts = []
    for l in order:
        c = coords[l]
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        term = f"{mag}p{l + 1}*"
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append(("-" if c < 0 else "+") + term)
    if not parts:
        return "0"
    return "".join(parts)


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _root_set(analysis: Analysis, idx: int) -> str:
    roots = analysis.catalog.per_ray[idx]
    if analysis.structure is not None:
        inner = ", ".join(
            sorted(star_notation(analysis.structure, e) for e in roots)
        )
    else:
        inner = ", ".join(_vec(e) for e in roots)
    return "{" + inner + "}"


def derivation_text(structure: AdditiveStructure, d) -> str:
    """Render a derivation with input ray labels on the variables."""
    if not d.terms:
        return "0"
    parts = []
    for c, mono, target in d.terms:
        factors = []
        if c != 1:
            factors.append(f"({c})")
        labelled = sorted(
            (structure.order[k] + 1, e) for k, e in enumerate(mono) if e
        )
        for label, e in labelled:
            factors.append(f"x{label}" if e == 1 else f"x{label}^{e}")
        factors.append(f"d/dx{structure.order[target] + 1}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def _derivation_json(structure: AdditiveStructure, d) -> list[dict]:
    m = structure.m
    out = []
    for c, mono, target in d.terms:
        exponents = [0] * m
        for k, e in enumerate(mono):
            exponents[structure.order[k]] = e
        out.append(
            {
                "coeff": str(c),
                "exponents": exponents,
                "target": structure.order[target] + 1,
            }
        )
    return out


def _tuple_json(structure: AdditiveStructure, t: DerivationTuple) -> dict:
    return {
        "derivations": [
            _derivation_json(structure, d) for d in t.derivations
        ],
        "text": [derivation_text(structure, d) for d in t.derivations],
        "flags": dict(sorted(t.flags.items())),
    }


def _certificate_json(
    structure: AdditiveStructure, cert: SeparationCertificate
) -> dict:
    return {
        "distinguished_class": list(cert.distinguished_class),
        "witness_poly": f"x{structure.order[cert.witness_variable] + 1}",
        "member_in_normalized": cert.member_in_normalized,
        "member_in_nonnormalized": cert.member_in_nonnormalized,
        "valid": cert.valid,
    }


def report_dict(analysis: Analysis) -> dict:
    """The structured report with its stable field names."""
    s = analysis.structure
    cat = analysis.catalog
    out: dict = {
        "label": analysis.fan.label,
        "dim": analysis.rays.dim,
        "rays": [list(r) for r in analysis.rays.rays],
        "positively_spanning": analysis.spanning,
        "existence": analysis.existence,
        "dim_unipotent": cat.unipotent_dim,
        "roots": {
            "per_ray": [[list(e) for e in roots] for roots in cat.per_ray],
            "semisimple": [list(e) for e in sorted(cat.semisimple)],
            "unipotent": [list(e) for e in sorted(cat.unipotent)],
            "regularizing_vector": list(cat.u) if cat.u is not None else None,
            "positive_system": (
                [list(e) for e in sorted(cat.positive)]
                if cat.positive is not None
                else None
            ),
        },
        "alpha": [list(r) for r in s.alpha] if s else None,
        "basis_rays": [i + 1 for i in s.basis_indices] if s else None,
        "canonical_order": [i + 1 for i in s.order] if s else None,
        "degrees": (
            [list(d) for d in analysis.degrees.degrees]
            if analysis.degrees
            else None
        ),
        "collections": [
            {
                "basis_rays": [i + 1 for i in coll.basis_indices],
                "roots": [list(e) for e in coll.roots],
            }
            for coll in analysis.collections
        ],
        "uniqueness": None,
        "witness": None,
        "assumptions": list(analysis.assumptions),
        "warnings": list(analysis.warnings),
    }
    if analysis.verdict is not None:
        v = analysis.verdict
        evidence = None
        if v.evidence is not None:
            assert s is not None
            evidence = {
                "max_ray": s.order[v.evidence[0]] + 1,
                "dominated_ray": s.order[v.evidence[1]] + 1,
            }
        out["uniqueness"] = {
            "cond_roots": v.cond_roots,
            "cond_positive": v.cond_positive,
            "cond_preorder": v.cond_preorder,
            "unique": v.unique,
            "evidence": evidence,
        }
    if analysis.witness is not None:
        assert s is not None and analysis.certificate is not None
        w = analysis.witness
        out["witness"] = {
            "order": [s.order[pos] + 1 for pos in w.order],
            "twist_degree": w.twist_degree,
            "tuples": {
                "normalized": _tuple_json(s, w.normalized),
                "nonnormalized": _tuple_json(s, w.nonnormalized),
            },
            "certificate": _certificate_json(s, analysis.certificate),
        }
    return out


def render_text(analysis: Analysis) -> str:
    s = analysis.structure
    cat = analysis.catalog
    lines = []
    title = analysis.fan.label or "fan"
    lines.append(f"analysis of {title}")
    lines.append(
        f"dim {analysis.rays.dim}, {analysis.rays.m} rays (input order)"
    )
    for i, ray in enumerate(analysis.rays.rays):
        lines.append(f"  ray {i + 1}: {_vec(ray)}")
    lines.append(f"positively spanning: {_yn(analysis.spanning)}")
    lines.append(f"additive action exists: {_yn(analysis.existence)}")
    if s is not None:
        lines.append(
            "canonical basis rays: "
            + ", ".join(str(i + 1) for i in s.basis_indices)
            + "  (canonical order: "
            + ", ".join(str(i + 1) for i in s.order)
            + ")"
        )
        lines.append("alpha rows (one per extra ray):")
        for j, idx in enumerate(s.extra_indices):
            lines.append(f"  ray {idx + 1}: {_vec(s.alpha[j])}")
        assert analysis.degrees is not None
        degs = ", ".join(
            f"deg x{s.order[pos] + 1} = {_vec(analysis.degrees.degrees[pos])}"
            for pos in range(s.m)
        )
        lines.append(f"degrees: {degs}")
    lines.append("Demazure roots per ray:")
    for i in range(analysis.rays.m):
        lines.append(f"  R_{i + 1} = {_root_set(analysis, i)}")
    lines.append(
        f"semisimple roots: {len(cat.semisimple)}, unipotent roots: "
        f"{len(cat.unipotent)}"
    )
    if cat.u is not None:
        lines.append(f"regularizing vector u = {_vec(cat.u)}")
        assert cat.positive is not None
        if s is not None:
            pos = ", ".join(star_notation(s, e) for e in sorted(cat.positive))
        else:
            pos = ", ".join(_vec(e) for e in sorted(cat.positive))
        lines.append(f"positive system: {{{pos}}}")
    lines.append(f"dim of maximal unipotent subgroup: {cat.unipotent_dim}")
    if analysis.collections:
        lines.append(f"complete collections: {len(analysis.collections)}")
        for coll in analysis.collections:
            basis = ", ".join(str(i + 1) for i in coll.basis_indices)
            roots = ", ".join(_vec(e) for e in coll.roots)
            lines.append(f"  basis rays {basis}: roots {roots}")
    else:
        lines.append("complete collections: none")
    if analysis.verdict is not None:
        v = analysis.verdict
        lines.append(
            "uniqueness conditions: single-root "
            f"{_yn(v.cond_roots)}, positive-system {_yn(v.cond_positive)}, "
            f"trivial-preorder {_yn(v.cond_preorder)}"
        )
        lines.append(f"additive action unique: {_yn(v.unique)}")
        if v.evidence is not None and s is not None:
            i1, i2 = v.evidence
            lines.append(
                f"evidence: ray {s.order[i2] + 1} is below the maximal ray "
                f"{s.order[i1] + 1}"
            )
    elif not analysis.existence:
        lines.append("uniqueness: not applicable (no additive action)")
    if analysis.witness is not None and s is not None:
        w = analysis.witness
        lines.append(f"witness twist degree: {w.twist_degree}")
        lines.append("witness tuples:")
        lines.append(
            "  normalized:    ("
            + ", ".join(
                derivation_text(s, d) for d in w.normalized.derivations
            )
            + ")"
        )
        lines.append(
            "  nonnormalized: ("
            + ", ".join(
                derivation_text(s, d) for d in w.nonnormalized.derivations
            )
            + ")"
        )
        cert = analysis.certificate
        assert cert is not None
        lines.append(
            "separation certificate: witness "
            f"x{s.order[cert.witness_variable] + 1} in class "
            f"{_vec(cert.distinguished_class)}, member in normalized locus: "
            f"{_yn(cert.member_in_normalized)}, in nonnormalized locus: "
            f"{_yn(cert.member_in_nonnormalized)} -> "
            + ("valid" if cert.valid else "INVALID")
        )
    elif analysis.verdict is not None and analysis.verdict.unique:
        lines.append("witness: none (uniqueness holds)")
    lines.append("assumptions: " + "; ".join(analysis.assumptions))
    if analysis.warnings:
        for w in analysis.warnings:
            lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def emit_report(analysis: Analysis, fmt: str = "text") -> bytes:
    """Serialize a report; structured output is byte-deterministic."""
    if fmt == "text":
        return render_text(analysis).encode("utf-8")
    if fmt == "structured":
        doc = json.dumps(
            report_dict(analysis),
            sort_keys=True,
            indent=2,
            ensure_ascii=True,
        )
        return (doc + "\n").encode("utf-8")
    raise InputError(f"unknown report format {fmt!r}")


def load_report(data: bytes | str) -> dict:
    """Parse a structured report back into a dictionary."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return json.loads(data)


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"
