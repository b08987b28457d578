"""Batch table of measured maximal generator degrees over a graph family."""

from __future__ import annotations

import csv
import os
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, TextIO, Tuple

from .families import family
from .generators import default_cap, minimal_generators
from .graph import first_betti_number
from .io import ATLAS_COLUMNS


def parse_range(text: str) -> List[int]:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise ValueError(f"bad parameter range {text!r}; expected a..b") from None
    if lo > hi:
        raise ValueError(f"empty parameter range {text!r}")
    return list(range(lo, hi + 1))


def thread_limit() -> int:
    env = os.environ.get("PHYLOSEMI_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def atlas_row(name: str, param: int, cap: Optional[int] = None) -> Dict[str, str]:
    g = family(name, param)
    used = default_cap(g) if cap is None else cap
    t0 = time.perf_counter()
    rep = minimal_generators(g, used)
    dt = time.perf_counter() - t0
    return {
        "family": name,
        "params": str(param),
        "betti": str(first_betti_number(g)),
        "n_edges": str(len(g.edges)),
        "max_degree": str(rep.max_degree),
        "cap_hit": str(rep.cap_hit).lower(),
        "wall_time": f"{dt:.3f}",
    }


def _row_job(args: Tuple[str, int, Optional[int]]) -> Dict[str, str]:
    return atlas_row(*args)


def iter_rows(name: str, params: Sequence[int], cap: Optional[int] = None,
              workers: Optional[int] = None) -> Iterator[Dict[str, str]]:
    """Rows in parameter order; computed in worker processes when more than one is allowed."""
    jobs = [(name, p, cap) for p in params]
    limit = thread_limit()
    n = min(min(workers, limit) if workers else limit, len(jobs))
    if n <= 1:
        for j in jobs:
            yield _row_job(j)
        return
    with ProcessPoolExecutor(max_workers=n) as ex:
        yield from ex.map(_row_job, jobs)


def read_rows(path: Path) -> List[Dict[str, str]]:
    if not path.exists() or path.stat().st_size == 0:
        return []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != ATLAS_COLUMNS:
            raise ValueError(f"{path}: unexpected atlas header {reader.fieldnames}")
        return list(reader)


def run_atlas(name: str, params: Sequence[int], out: Path, cap: Optional[int] = None,
              resume: bool = False, workers: Optional[int] = None,
              echo: Optional[TextIO] = None) -> List[Dict[str, str]]:
    """Write the table to ``out`` row by row; with ``resume`` keep rows already there."""
    existing = read_rows(out) if resume else []
    done = {(r["family"], r["params"]) for r in existing}
    todo = [p for p in params if (name, str(p)) not in done]
    rows = list(existing)
    with out.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=ATLAS_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(existing)
        fh.flush()
        for row in iter_rows(name, todo, cap, workers):
            writer.writerow(row)
            fh.flush()
            rows.append(row)
            if echo is not None:
                echo.write(",".join(row[c] for c in ATLAS_COLUMNS) + "\n")
                echo.flush()
    return rows
