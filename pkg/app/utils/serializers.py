"""
Serializers for exporting relations as DOT and JSON documents

Both formats carry Hasse edges only. Type ids follow the canonical
(rank, display) order, so identical relations always export byte-identical
documents.
"""
from typing import Dict, List, Optional

from app.models.class_table import ClassTable
from app.models.schemas import ExportDocument, ExportFormat, RelationDocument, TypeEntry
from app.models.types import GroundType, Variance, display, outer_variance, rank
from app.services.relation import SubtypingRelation, reduction
from app.utils.parser import parse_type

VARIANCE_COLORS = {
    Variance.COVARIANT: "darkgreen",
    Variance.CONTRAVARIANT: "red3",
}


def type_ids(r: SubtypingRelation) -> Dict[GroundType, int]:
    return {t: i for i, t in enumerate(r.types)}


def to_json(r: SubtypingRelation) -> str:
    ids = type_ids(r)
    document = RelationDocument(
        iteration=r.iteration,
        types=[TypeEntry(id=i, name=display(t), rank=rank(t)) for t, i in ids.items()],
        hasse_edges=sorted((ids[s], ids[t]) for s, t in r.edges),
    )
    return document.model_dump_json(indent=2) + "\n"


def from_json(text: str, table: ClassTable) -> SubtypingRelation:
    """Rebuild a relation from its JSON export"""
    document = RelationDocument.model_validate_json(text)
    types = [parse_type(entry.name, table) for entry in document.types]
    edges = [(types[s], types[t]) for s, t in document.hasse_edges]
    return reduction(types, edges, document.iteration)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _family(t: GroundType) -> Optional[tuple]:
    variance = outer_variance(t)
    if variance is None:
        return None
    return (t.head, variance)


def to_dot(r: SubtypingRelation, numeric_labels: bool = False, name: str = "subtyping") -> str:
    """
    Graphviz digraph of the Hasse diagram, drawn bottom-up.

    Types of equal rank share a layer. Covariant and contravariant
    wildcard types are colored, as are edges inside one such family.
    """
    ids = type_ids(r)
    lines: List[str] = []
    # Legend
    if numeric_labels:
        lines.extend(f"// {i}: {display(t)}" for t, i in ids.items())
    lines.append(f"digraph {name} {{")
    lines.append("  rankdir=BT;")
    lines.append('  node [shape=box, style=rounded, fontname="Helvetica"];')

    # One layer per rank
    layers: Dict[int, List[str]] = {}
    for t, i in ids.items():
        layers.setdefault(rank(t), []).append(f"t{i}")
    for layer, members in sorted(layers.items()):
        lines.append(f"  subgraph rank_{layer} {{ rank=same; {' '.join(m + ';' for m in members)} }}")

    for t, i in ids.items():
        label = str(i) if numeric_labels else display(t)
        attributes = [f"label={_quote(label)}"]
        variance = outer_variance(t)
        if variance in VARIANCE_COLORS:
            attributes.append(f"color={VARIANCE_COLORS[variance]}")
            attributes.append(f"fontcolor={VARIANCE_COLORS[variance]}")
        lines.append(f"  t{i} [{', '.join(attributes)}];")

    # Edges inside one wildcard family share its color
    for s, t in sorted(r.edges, key=lambda e: (ids[e[0]], ids[e[1]])):
        family = _family(s)
        attributes = ""
        if family is not None and family == _family(t) and family[1] in VARIANCE_COLORS:
            attributes = f" [color={VARIANCE_COLORS[family[1]]}]"
        lines.append(f"  t{ids[s]} -> t{ids[t]}{attributes};")

    lines.append("}")
    return "\n".join(lines) + "\n"


def export(r: SubtypingRelation, fmt: ExportFormat, numeric_labels: bool = False) -> ExportDocument:
    if fmt is ExportFormat.JSON:
        return ExportDocument(format=fmt, payload=to_json(r))
    return ExportDocument(format=fmt, payload=to_dot(r, numeric_labels=numeric_labels))
