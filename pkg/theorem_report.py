"""Per-instance theorem records and the campaign report built from them."""

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


@dataclass(frozen=True)
class TheoremRecord:
    """What one instance says about the reduction's cost identity and leaf claim."""

    index: int
    gsmt_cost: int
    smt_cost: int
    m_value: int
    group_count: int
    identity_holds: bool
    all_dummies_leaves: bool
    extraction_feasible: bool
    heuristic_gap: int
    sandwich_holds: bool = True
    extracted_cost: Optional[int] = None

    @property
    def dummy_total(self) -> int:
        return self.m_value * self.group_count

    @property
    def heuristic_sound(self) -> bool:
        return self.heuristic_gap >= 0

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization (field order preserved)."""
        return asdict(self)

    def to_line(self) -> str:
        return json.dumps({"kind": "record", **self.to_dict()})

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TheoremRecord":
        fields = {k: v for k, v in data.items() if k != "kind"}
        return cls(**fields)


@dataclass
class TheoremReport:
    """Records of one campaign, ordered by instance index, plus its replay parameters."""

    seed: int
    params: Dict[str, Any]
    records: List[TheoremRecord] = field(default_factory=list)

    def add_record(self, record: TheoremRecord):
        """Add a record, keeping index order."""
        self.records.append(record)
        self.records.sort(key=lambda r: r.index)

    def get_counts(self) -> Dict[str, int]:
        """Aggregate pass counts over all records."""
        return {
            "instances": len(self.records),
            "identity_holds": sum(r.identity_holds for r in self.records),
            "all_dummies_leaves": sum(r.all_dummies_leaves for r in self.records),
            "extraction_feasible": sum(r.extraction_feasible for r in self.records),
            "sandwich_holds": sum(r.sandwich_holds for r in self.records),
            "heuristic_sound": sum(r.heuristic_sound for r in self.records),
        }

    @property
    def passed(self) -> bool:
        """Every record keeps the identity and yields a feasible extraction."""
        return bool(self.records) and all(
            r.identity_holds and r.extraction_feasible for r in self.records
        )

    def failing_indices(self) -> List[int]:
        return [r.index for r in self.records if not (r.identity_holds and r.extraction_feasible)]

    def render(self) -> str:
        """Header line, one line per record, summary line; JSON objects throughout."""
        lines = [json.dumps({"kind": "header", "seed": self.seed, "params": self.params})]
        lines.extend(record.to_line() for record in self.records)
        lines.append(json.dumps({"kind": "summary", **self.get_counts()}))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "TheoremReport":
        report: Optional[TheoremReport] = None
        for raw in text.splitlines():
            if not raw.strip():
                continue
            data = json.loads(raw)
            if data.get("kind") == "header":
                report = cls(seed=data["seed"], params=data["params"])
            elif data.get("kind") == "record" and report is not None:
                report.add_record(TheoremRecord.from_dict(data))
        if report is None:
            raise ValueError("report has no header line")
        return report

    def print_summary(self, file=None):
        """Print a human-readable summary of the campaign."""
        counts = self.get_counts()
        total = counts["instances"]
        print("\n📊 Theorem Verification Summary", file=file)
        print("=" * 50, file=file)
        print(f"Seed: {self.seed}", file=file)
        print(f"Instances: {total:,}", file=file)
        print(f"Cost identity (gsmt = smt - M*|groups|): {counts['identity_holds']}/{total}", file=file)
        print(f"Every dummy vertex a leaf: {counts['all_dummies_leaves']}/{total}", file=file)
        print(f"Extraction feasible: {counts['extraction_feasible']}/{total}", file=file)
        print(f"Leaf-augmented oracle tree bounds smt: {counts['sandwich_holds']}/{total}", file=file)
        print(f"Heuristic never beats the optimum: {counts['heuristic_sound']}/{total}", file=file)
        if self.records:
            worst = max(self.records, key=lambda r: r.heuristic_gap)
            print(f"Largest heuristic gap: {worst.heuristic_gap:,} (instance {worst.index})", file=file)
