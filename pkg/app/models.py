from pydantic import BaseModel, Field
from typing import Optional, List


class QueryCounters(BaseModel):
    visited_nodes: int = 0
    link_checks: int = 0
    scan_chars: int = 0

    @property
    def work(self) -> int:
        return self.visited_nodes + self.link_checks + self.scan_chars


class QueryResult(BaseModel):
    positions: List[int] = Field(default_factory=list)  # sorted absolute stream positions
    counters: QueryCounters = Field(default_factory=QueryCounters)
    query_length: int = 0

    @property
    def occ(self) -> int:
        return len(self.positions)

    def work_ratio(self) -> float:
        """Instrumented work per unit of (|Q| + occ + 1)."""
        return self.counters.work / (self.query_length + self.occ + 1)

    def relative_to(self, start: int) -> List[int]:
        return [p - start for p in self.positions]


class StructureCounters(BaseModel):
    node_creations: int = 0
    node_deletions: int = 0
    rescan_hops: int = 0
    credit_deposits: int = 0
    label_repairs: int = 0
    marker_ops: int = 0
    marker_relabels: int = 0  # order-maintenance relabel moves, the ancestry mode's extra factor
    expand_steps: int = 0
    buffer_steps: int = 0
    shifts: int = 0

    @property
    def structural_ops(self) -> int:
        return (self.node_creations + self.node_deletions + self.rescan_hops
                + self.credit_deposits + self.label_repairs + self.marker_ops)

    @property
    def builder_work(self) -> int:
        return self.expand_steps + self.buffer_steps + self.rescan_hops

    def per_shift(self) -> float:
        return self.structural_ops / self.shifts if self.shifts else 0.0


class IndexStats(BaseModel):
    capacity: int
    n: int
    start: int
    fill: int
    b: int
    leaves: int
    internal: int

    def line(self) -> str:
        return (f'n={self.n} start={self.start} fill={self.fill} b={self.b} '
                f'leaves={self.leaves} internal={self.internal}')


class AuditReport(BaseModel):
    violations: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class BenchRow(BaseModel):
    shift: int
    query: str
    occ: int
    index_ms: float
    rescan_ms: float
    rebuild_ms: float
    visited_ratio: float
    agree: bool


class BenchReport(BaseModel):
    corpus_bytes: int
    capacity: int
    feed_seconds: float
    shift_counters: StructureCounters
    ops_per_shift: float
    rows: List[BenchRow] = Field(default_factory=list)
    max_visited_ratio: Optional[float] = None
