"""File formats: graphs, labelings, generator reports and decompositions.

Everything is JSON with sorted keys, integer values only and edges in
canonical (sorted id) order, so serialization is byte-for-byte
reproducible.  Reports also render as plain text and CSV.
"""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

from .generators import GeneratorReport
from .graph import Graph, GraphError
from .semigroup import Labeling

PathLike = Union[str, Path]

ATLAS_COLUMNS = ("family", "params", "betti", "n_edges", "max_degree", "cap_hit", "wall_time")


class FormatError(ValueError):
    """Malformed file content."""


def _flat(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _render(obj: Any, indent: int) -> str:
    # objects nest; lists of records get one record per line
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(obj, dict) and obj:
        items = [f"{inner}{_flat(k)}: {_render(obj[k], indent + 2)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and obj and all(isinstance(x, (dict, list)) for x in obj):
        return "[\n" + ",\n".join(inner + _flat(x) for x in obj) + "\n" + pad + "]"
    return _flat(obj)


def _dumps(obj: Any) -> str:
    return _render(obj, 0) + "\n"


def _loads(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{what}: invalid JSON ({exc})") from None


# -- graphs ----------------------------------------------------------------------


def graph_to_dict(g: Graph) -> Dict[str, Any]:
    return {"name": g.name, "edges": [{"id": e.id, "ends": [e.u, e.v]} for e in g.edges]}


def graph_from_dict(d: Any) -> Graph:
    if not isinstance(d, dict) or not isinstance(d.get("edges"), list):
        raise FormatError("graph: expected an object with an 'edges' array")
    name = d.get("name", "")
    if not isinstance(name, str):
        raise FormatError("graph: 'name' must be a string")
    edges = []
    for rec in d["edges"]:
        if not isinstance(rec, dict):
            raise FormatError(f"graph: edge record {rec!r} is not an object")
        eid, ends = rec.get("id"), rec.get("ends")
        if not isinstance(eid, str) or not isinstance(ends, list) or len(ends) != 2 \
                or not all(isinstance(x, str) for x in ends):
            raise FormatError(f"graph: bad edge record {rec!r}")
        edges.append((eid, ends[0], ends[1]))
    try:
        return Graph.from_edges(edges, name)
    except GraphError as exc:
        raise FormatError(f"graph: {exc}") from None


def dumps_graph(g: Graph) -> str:
    return _dumps(graph_to_dict(g))


def loads_graph(text: str) -> Graph:
    return graph_from_dict(_loads(text, "graph"))


def load_graph(path: PathLike) -> Graph:
    return loads_graph(Path(path).read_text())


def save_graph(g: Graph, path: PathLike) -> None:
    Path(path).write_text(dumps_graph(g))


# -- labelings -------------------------------------------------------------------


def labeling_to_dict(w: Labeling) -> Dict[str, Any]:
    return {"degree": w.degree, "labels": dict(w.items)}


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def labeling_from_dict(d: Any) -> Labeling:
    if not isinstance(d, dict) or not _is_int(d.get("degree")) or not isinstance(d.get("labels"), dict):
        raise FormatError("labeling: expected {degree: int, labels: {edge-id: int}}")
    labels = d["labels"]
    bad = [k for k, v in labels.items() if not _is_int(v)]
    if bad:
        raise FormatError(f"labeling: non-integer labels on {sorted(bad)}")
    return Labeling.of(d["degree"], labels)


def dumps_labeling(w: Labeling) -> str:
    return _dumps(labeling_to_dict(w))


def loads_labeling(text: str) -> Labeling:
    return labeling_from_dict(_loads(text, "labeling"))


def load_labeling(path: PathLike) -> Labeling:
    return loads_labeling(Path(path).read_text())


def save_labeling(w: Labeling, path: PathLike) -> None:
    Path(path).write_text(dumps_labeling(w))


def dumps_decomposition(pieces: Sequence[Labeling]) -> str:
    return _dumps([labeling_to_dict(p) for p in pieces])


def loads_decomposition(text: str) -> List[Labeling]:
    data = _loads(text, "decomposition")
    if not isinstance(data, list):
        raise FormatError("decomposition: expected an array of labelings")
    return [labeling_from_dict(x) for x in data]


# -- generator reports ------------------------------------------------------------


def report_to_dict(r: GeneratorReport) -> Dict[str, Any]:
    tags = r.tags or [""] * len(r.generators)
    return {
        "graph": graph_to_dict(r.graph),
        "cap_used": r.cap_used,
        "cap_hit": r.cap_hit,
        "max_degree": r.max_degree,
        "per_degree_counts": {str(d): n for d, n in sorted(r.per_degree_counts.items())},
        "generators": [dict(labeling_to_dict(w), tag=t) for w, t in zip(r.generators, tags)],
        "notes": list(r.notes),
    }


def report_from_dict(d: Any) -> GeneratorReport:
    try:
        g = graph_from_dict(d["graph"])
        gens = [labeling_from_dict(x) for x in d["generators"]]
        tags = [x.get("tag", "") for x in d["generators"]]
        counts = {int(k): int(v) for k, v in d["per_degree_counts"].items()}
        return GeneratorReport(g, gens, counts, int(d["max_degree"]), int(d["cap_used"]),
                               bool(d["cap_hit"]), tags, list(d.get("notes", [])))
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise FormatError(f"report: {exc}") from None


def dumps_report(r: GeneratorReport) -> str:
    return _dumps(report_to_dict(r))


def report_csv(r: GeneratorReport) -> str:
    """One row per generator: degree, labels in canonical edge order, tag."""
    eids = r.graph.edge_ids
    buf = _io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["degree", *eids, "tag"])
    tags = r.tags or [""] * len(r.generators)
    for w, t in zip(r.generators, tags):
        out.writerow([w.degree, *w.vector(eids), t])
    return buf.getvalue()


def report_text(r: GeneratorReport) -> str:
    counts = ", ".join(f"{d}:{n}" for d, n in sorted(r.per_degree_counts.items()))
    lines = [
        f"graph {r.graph.name or '?'}: {len(r.generators)} minimal generators up to degree {r.cap_used}",
        f"per degree {{{counts}}}  max_degree={r.max_degree}  cap_hit={str(r.cap_hit).lower()}",
    ]
    tags = r.tags or [""] * len(r.generators)
    for w, t in zip(r.generators, tags):
        lines.append(f"  {w}  {t}".rstrip())
    lines += [f"note: {n}" for n in r.notes]
    return "\n".join(lines) + "\n"


__all__ = [
    "ATLAS_COLUMNS", "FormatError", "graph_to_dict", "graph_from_dict", "dumps_graph", "loads_graph",
    "load_graph", "save_graph", "labeling_to_dict", "labeling_from_dict", "dumps_labeling",
    "loads_labeling", "load_labeling", "save_labeling", "dumps_decomposition", "loads_decomposition",
    "report_to_dict", "report_from_dict", "dumps_report", "report_csv", "report_text",
]
