"""
Benchmark harness: the index against a full-window linear rescan and a
rebuild-from-scratch index, at evenly spaced points of a corpus replay.
"""

import csv
import json
import logging
import time
from typing import List, Optional, Sequence

import numpy as np
from rich.console import Console
from rich.table import Table

from .matcher import kmp_find
from .models import BenchReport, BenchRow
from .slider import SlidingIndex

logger = logging.getLogger('slider.bench')

CSV_COLUMNS = ['shift', 'query', 'occ', 'index_ms', 'rescan_ms', 'rebuild_ms', 'visited_ratio', 'agree']


def sample_points(total: int, samples: int) -> List[int]:
    """Shift counts after which queries run; always includes the end of the corpus."""
    if total == 0:
        return []
    points = np.linspace(total / samples, total, num=samples)
    return sorted({max(1, int(round(p))) for p in points})


def _printable(q: bytes) -> str:
    return ''.join(chr(c) if 32 <= c < 127 and c != 92 else f'\\x{c:02x}' for c in q)


def _ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000.0


def _measure(index: SlidingIndex, q: bytes) -> BenchRow:
    t0 = time.perf_counter()
    result = index.find(q)
    index_ms = _ms(t0)

    content = index.window_content()
    t0 = time.perf_counter()
    rescan = kmp_find(content, q)
    rescan_ms = _ms(t0)

    t0 = time.perf_counter()
    fresh = SlidingIndex(index.capacity)
    fresh.feed(content)
    rebuilt = fresh.find(q)
    rebuild_ms = _ms(t0)

    relative = result.relative_to(index.start)
    agree = relative == rescan == rebuilt.positions
    if not agree:
        logger.warning(json.dumps({'event': 'bench_mismatch', 'shift': index.n, 'query': _printable(q)}))
    return BenchRow(
        shift=index.n,
        query=_printable(q),
        occ=result.occ,
        index_ms=round(index_ms, 4),
        rescan_ms=round(rescan_ms, 4),
        rebuild_ms=round(rebuild_ms, 4),
        visited_ratio=round(result.work_ratio(), 4),
        agree=agree,
    )


def run_bench(corpus: bytes, capacity: int, queries: Sequence[bytes], samples: int = 4) -> BenchReport:
    index = SlidingIndex(capacity)
    points = sample_points(len(corpus), samples) if queries else []
    rows: List[BenchRow] = []
    feed_seconds = 0.0
    fed = 0
    for point in points:
        t0 = time.perf_counter()
        index.feed(corpus[fed:point])
        feed_seconds += time.perf_counter() - t0
        fed = point
        for q in queries:
            rows.append(_measure(index, q))
        logger.info(json.dumps({'event': 'bench_sample', 'shift': point, 'queries': len(queries)}))
    t0 = time.perf_counter()
    index.feed(corpus[fed:])
    feed_seconds += time.perf_counter() - t0

    counters = index.counters()
    ratios = np.array([r.visited_ratio for r in rows], dtype=float)
    report = BenchReport(
        corpus_bytes=len(corpus),
        capacity=capacity,
        feed_seconds=round(feed_seconds, 6),
        shift_counters=counters,
        ops_per_shift=round(counters.per_shift(), 4),
        rows=rows,
        max_visited_ratio=float(ratios.max()) if ratios.size else None,
    )
    logger.info(json.dumps({'event': 'bench_done', 'corpus_bytes': len(corpus), 'capacity': capacity,
                            'ops_per_shift': report.ops_per_shift, 'rows': len(rows)}))
    return report


def render_table(report: BenchReport, console: Optional[Console] = None) -> None:
    console = console or Console()
    table = Table(title=f'sliding index bench (window {report.capacity}, {report.corpus_bytes} bytes)',
                  show_header=True, header_style='bold magenta')
    for name in CSV_COLUMNS:
        table.add_column(name, justify='left' if name == 'query' else 'right')
    for row in report.rows:
        table.add_row(str(row.shift), row.query, str(row.occ), f'{row.index_ms:.3f}', f'{row.rescan_ms:.3f}',
                      f'{row.rebuild_ms:.3f}', f'{row.visited_ratio:.2f}', 'yes' if row.agree else 'NO')
    console.print(table)

    c = report.shift_counters
    console.print(f'feed {report.feed_seconds:.3f}s  shifts={c.shifts}  structural ops/shift={report.ops_per_shift:.3f}  '
                  f'marker relabels={c.marker_relabels}')
    if report.rows:
        index_ms = np.array([r.index_ms for r in report.rows])
        rescan_ms = np.array([r.rescan_ms for r in report.rows])
        console.print(f'median ms: index {np.median(index_ms):.3f}  rescan {np.median(rescan_ms):.3f}  '
                      f'max work ratio {report.max_visited_ratio:.2f}')


def write_csv(report: BenchReport, path: str) -> None:
    with open(path, 'w', newline='', encoding='utf-8') as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in report.rows:
            writer.writerow(row.model_dump())
